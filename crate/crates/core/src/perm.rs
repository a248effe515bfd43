//! Permutations in one-line notation and the pattern containment order.
//!
//! Positions and values are 1-based in every public signature; the empty
//! permutation ε is the permutation of length zero.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `1..=n`, stored as its one-line notation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

/// The three symmetries that preserve inversion graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Inverse,
    ReverseComplement,
    /// `(π^rc)^-1`
    RcInverse,
}

impl Symmetry {
    pub const ALL: [Symmetry; 3] = [
        Symmetry::Inverse,
        Symmetry::ReverseComplement,
        Symmetry::RcInverse,
    ];
}

impl FromStr for Symmetry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inverse" | "inv" => Ok(Symmetry::Inverse),
            "reverse-complement" | "rc" => Ok(Symmetry::ReverseComplement),
            "rc-inverse" | "rc-inv" => Ok(Symmetry::RcInverse),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// Direct sum (⊕) or skew sum (⊖).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Direct,
    Skew,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" | "sum" | "+" => Ok(Direction::Direct),
            "skew" | "-" => Ok(Direction::Skew),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// Reduces a sequence of pairwise distinct values to the order-isomorphic permutation.
pub fn reduce<T: PartialOrd>(seq: &[T]) -> Result<Permutation> {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    let mut incomparable = false;
    order.sort_by(|&a, &b| {
        seq[a].partial_cmp(&seq[b]).unwrap_or_else(|| {
            incomparable = true;
            std::cmp::Ordering::Equal
        })
    });
    if incomparable {
        return Err(Error::InvalidInput("sequence has incomparable entries".into()));
    }
    if order.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
        return Err(Error::InvalidInput("sequence has duplicate entries".into()));
    }
    let mut values = vec![0; seq.len()];
    for (rank, &pos) in order.iter().enumerate() {
        values[pos] = rank + 1;
    }
    Ok(Permutation(values))
}

/// Reduction of distinct integers; infallible for internal use.
pub(crate) fn reduce_distinct(seq: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..seq.len()).collect();
    order.sort_unstable_by_key(|&i| seq[i]);
    let mut values = vec![0; seq.len()];
    for (rank, &pos) in order.iter().enumerate() {
        values[pos] = rank + 1;
    }
    Permutation(values)
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "{values:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `π(i)` for a 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n)
            .permutations(n)
            .map(Permutation)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation(self.0.iter().map(|&v| n + 1 - v).collect())
    }

    pub fn apply(&self, which: Symmetry) -> Self {
        match which {
            Symmetry::Inverse => self.inverse(),
            Symmetry::ReverseComplement => self.reverse().complement(),
            Symmetry::RcInverse => self.reverse().complement().inverse(),
        }
    }

    /// Where the entry at position `i` lands after applying `which` (1-based).
    pub fn symmetry_position_map(&self, which: Symmetry) -> Vec<usize> {
        let n = self.len();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &v)| match which {
                Symmetry::Inverse => v,
                Symmetry::ReverseComplement => n - i,
                Symmetry::RcInverse => n + 1 - v,
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &Permutation) -> Self {
        let m = self.len();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&x| x + m));
        Permutation(v)
    }

    pub fn skew_sum(&self, other: &Permutation) -> Self {
        let n = other.len();
        let mut v: Vec<usize> = self.0.iter().map(|&x| x + n).collect();
        v.extend_from_slice(&other.0);
        Permutation(v)
    }

    pub fn sum(&self, other: &Permutation, direction: Direction) -> Self {
        match direction {
            Direction::Direct => self.direct_sum(other),
            Direction::Skew => self.skew_sum(other),
        }
    }

    /// Folds a list with [`Permutation::sum`]; the empty list gives ε.
    pub fn sum_all<'a, I>(parts: I, direction: Direction) -> Self
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        parts
            .into_iter()
            .fold(Permutation::empty(), |acc, p| acc.sum(p, direction))
    }

    /// The unique finest decomposition into sum (or skew) indecomposable blocks.
    pub fn components(&self, direction: Direction) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut start = 0;
        let (mut lo, mut hi) = (usize::MAX, 0);
        for (i, &v) in self.0.iter().enumerate() {
            lo = lo.min(v);
            hi = hi.max(v);
            let width = i + 1 - start;
            // The prefix block closes once it occupies the lowest (or highest) values.
            let closed = match direction {
                Direction::Direct => lo == start + 1 && hi == i + 1,
                Direction::Skew => {
                    let n = self.len();
                    hi == n - start && lo == n - start - width + 1
                }
            };
            if closed {
                out.push(reduce_distinct(&self.0[start..=i]));
                start = i + 1;
                lo = usize::MAX;
                hi = 0;
            }
        }
        out
    }

    pub fn is_sum_decomposable(&self) -> bool {
        self.components(Direction::Direct).len() > 1
    }

    pub fn is_skew_decomposable(&self) -> bool {
        self.components(Direction::Skew).len() > 1
    }

    /// Removes the entry at 1-based position `i` and reduces.
    pub fn delete_entry(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len(),
            });
        }
        let removed = self.0[i - 1];
        let v = self
            .0
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i - 1)
            .map(|(_, &x)| if x > removed { x - 1 } else { x })
            .collect();
        Ok(Permutation(v))
    }

    /// The reduction of the entries at the given 1-based positions (in the given order).
    pub fn pattern_at(&self, positions: &[usize]) -> Permutation {
        let sub: Vec<usize> = positions.iter().map(|&i| self.0[i - 1]).collect();
        reduce_distinct(&sub)
    }

    /// Lexicographically least occurrence of `pattern` in `self`, as 1-based positions.
    pub fn find_occurrence(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        embed(pattern.values(), self.values(), |_, _| true)
            .map(|w| w.into_iter().map(|i| i + 1).collect())
    }

    /// True iff `pattern` is contained in `self`.
    pub fn contains(&self, pattern: &Permutation) -> bool {
        embed(pattern.values(), self.values(), |_, _| true).is_some()
    }

    pub fn avoids(&self, pattern: &Permutation) -> bool {
        !self.contains(pattern)
    }

    /// Proper intervals `(start, end)`, 1-based and inclusive, of length `2..n-1`.
    pub fn intervals(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            let (mut lo, mut hi) = (self.0[a], self.0[a]);
            for b in a + 1..n {
                lo = lo.min(self.0[b]);
                hi = hi.max(self.0[b]);
                let len = b - a + 1;
                if len < n && hi - lo + 1 == len {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }

    /// Simple: length at least two and no proper intervals.
    pub fn is_simple(&self) -> bool {
        self.len() >= 2 && self.intervals().is_empty()
    }

    /// `self[α₁, …, α_m]`: every entry replaced by an interval order-isomorphic to `αᵢ`.
    pub fn inflate(&self, blocks: &[Permutation]) -> Result<Self> {
        if blocks.len() != self.len() {
            return Err(Error::ArityMismatch {
                expected: self.len(),
                got: blocks.len(),
            });
        }
        if let Some(i) = blocks.iter().position(|b| b.is_empty()) {
            return Err(Error::EmptyBlock(i + 1));
        }
        // offset[v] = number of entries in blocks whose skeleton value is below v
        let mut size_by_value = vec![0; self.len() + 1];
        for (i, &v) in self.0.iter().enumerate() {
            size_by_value[v] = blocks[i].len();
        }
        let mut offset = vec![0; self.len() + 1];
        for v in 2..=self.len() {
            offset[v] = offset[v - 1] + size_by_value[v - 1];
        }
        let values = self
            .0
            .iter()
            .zip(blocks)
            .flat_map(|(&v, b)| {
                let shift = offset[v];
                b.0.iter().map(move |&x| x + shift)
            })
            .collect();
        Ok(Permutation(values))
    }

    /// Every pattern of length `k`, sorted.
    pub fn patterns_of_length(&self, k: usize) -> BTreeSet<Permutation> {
        if k > self.len() {
            return BTreeSet::new();
        }
        (0..self.len())
            .combinations(k)
            .map(|idx| {
                let sub: Vec<usize> = idx.iter().map(|&i| self.0[i]).collect();
                reduce_distinct(&sub)
            })
            .collect()
    }

    /// The permutations obtained by deleting one entry, sorted and deduplicated.
    pub fn one_point_deletions(&self) -> BTreeSet<Permutation> {
        (1..=self.len())
            .map(|i| self.delete_entry(i).expect("position in range"))
            .collect()
    }

    /// Number of inversions, i.e. edges of the inversion graph.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Digits without separators when every value is a single digit.
    pub fn to_compact(&self) -> String {
        if self.len() <= 9 {
            self.0.iter().map(|v| v.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

/// Depth-first embedding search, lexicographically least first.
///
/// `accept(j, i)` is an extra per-entry test of pattern index `j` against
/// text index `i` (both 0-based); labels plug in here.
pub(crate) fn embed<F>(pattern: &[usize], text: &[usize], mut accept: F) -> Option<Vec<usize>>
where
    F: FnMut(usize, usize) -> bool,
{
    let k = pattern.len();
    let n = text.len();
    if k > n {
        return None;
    }
    // For each j: the earlier pattern index with the nearest smaller and nearest larger value.
    let mut below = vec![None; k];
    let mut above = vec![None; k];
    for j in 0..k {
        for jj in 0..j {
            if pattern[jj] < pattern[j] {
                if below[j].is_none_or(|b: usize| pattern[b] < pattern[jj]) {
                    below[j] = Some(jj);
                }
            } else if above[j].is_none_or(|a: usize| pattern[a] > pattern[jj]) {
                above[j] = Some(jj);
            }
        }
    }

    let mut chosen = Vec::with_capacity(k);
    fn go<F: FnMut(usize, usize) -> bool>(
        j: usize,
        start: usize,
        text: &[usize],
        k: usize,
        below: &[Option<usize>],
        above: &[Option<usize>],
        chosen: &mut Vec<usize>,
        accept: &mut F,
    ) -> bool {
        if j == k {
            return true;
        }
        let lo = below[j].map_or(0, |b| text[chosen[b]]);
        let hi = above[j].map_or(usize::MAX, |a| text[chosen[a]]);
        let last = text.len() - (k - j);
        for i in start..=last {
            let v = text[i];
            if v <= lo || v >= hi || !accept(j, i) {
                continue;
            }
            chosen.push(i);
            if go(j + 1, i + 1, text, k, below, above, chosen, accept) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if go(0, 0, text, k, &below, &above, &mut chosen, &mut accept) {
        Some(chosen)
    } else {
        None
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// Whitespace-separated one-line notation; ε is the empty string.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" "))
    }
}

/// Accepts `4 7 9 8`, `4,7,9,8`, or compact digits `4798` (n ≤ 9). Empty input is ε.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = if s == "ε" || s == "e" { "" } else { s };
        let values: Vec<usize> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(s.to_string())))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(s.to_string()))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values).map_err(|e| Error::Parse(format!("{s}: {e}")))
    }
}

/// Shorthand for tests and examples: `perm("2413")`. Panics on bad input.
pub fn perm(s: &str) -> Permutation {
    s.parse().unwrap_or_else(|e| panic!("bad permutation {s:?}: {e}"))
}
