//! The increasing oscillating sequence, increasing oscillations, and
//! generators for four infinite antichain families with pairwise
//! incomparability checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invgraph::inversion_graph;
use crate::labels::{find_good_pair, LabeledPermutation, FILLED, HOLLOW};
use crate::perm::{reduce, reduce_distinct, Permutation};

/// First `k` terms of `2, 4, 1, 6, 3, 8, 5, …`.
pub fn oscillating_sequence(k: usize) -> Vec<usize> {
    (1..=k).map(oscillating_term).collect()
}

fn oscillating_term(m: usize) -> usize {
    match m {
        1 => 2,
        _ if m.is_multiple_of(2) => m + 2,
        _ => m - 2,
    }
}

/// Which of the two oscillations of a given length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Start {
    /// `2 4 1 6 3 …`
    Two,
    /// `3 1 5 2 7 …`, the inverse of [`Start::Two`].
    Three,
}

/// The increasing oscillation of length `n` beginning as `start` does.
/// For `n ≤ 2` both starts give the same permutation.
pub fn oscillation(n: usize, start: Start) -> Permutation {
    // Even lengths skip the n-th term so the last entry is not a maximum.
    let terms: Vec<usize> = if n % 2 == 1 {
        oscillating_sequence(n)
    } else {
        let mut t = oscillating_sequence(n.saturating_sub(1));
        if n > 0 {
            t.push(oscillating_term(n + 1));
        }
        t
    };
    let two = reduce_distinct(&terms);
    match start {
        Start::Two => two,
        Start::Three => two.inverse(),
    }
}

/// The increasing oscillations of length `n`, sorted.
pub fn increasing_oscillations(n: usize) -> Vec<Permutation> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = vec![oscillation(n, Start::Two), oscillation(n, Start::Three)];
    out.sort();
    out.dedup();
    out
}

/// The two entries of degree at most one in the path `G_π` (1-based, ascending).
fn path_endpoints(pi: &Permutation) -> Vec<usize> {
    let g = inversion_graph(pi);
    (1..=pi.len()).filter(|&v| g.degree(v) <= 1).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Oscillation whose two end entries are each inflated by `12`.
    AmrOscillation,
    /// Odd oscillation `2 4 1 6 3 …` with a new entry just below its maximum inserted second.
    AmrTarjan,
    /// Anticlockwise spiral of `4k` points.
    Widdershins,
    /// Oscillation `3 1 5 2 …` with its two path endpoints labeled filled.
    LabeledPath,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::AmrOscillation,
        Family::AmrTarjan,
        Family::Widdershins,
        Family::LabeledPath,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::AmrOscillation => "amr-oscillation",
            Family::AmrTarjan => "amr-tarjan",
            Family::Widdershins => "widdershins",
            Family::LabeledPath => "labeled-path",
        }
    }

    /// Length of the `k`-th member.
    pub fn member_len(self, k: usize) -> usize {
        match self {
            Family::AmrOscillation => 2 * k + 4,
            Family::AmrTarjan => 2 * k + 2,
            Family::Widdershins => 4 * k,
            Family::LabeledPath => k + 1,
        }
    }

    /// The index whose member has length `n`, if any.
    pub fn index_of_len(self, n: usize) -> Option<usize> {
        (1..=n).find(|&k| self.member_len(k) == n)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

fn check_index(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidInput("family indices start at 1".into()))
    } else {
        Ok(())
    }
}

/// The unlabeled `k`-th member; labeled-path members are returned without labels.
pub fn antichain_member(family: Family, k: usize) -> Result<Permutation> {
    check_index(k)?;
    Ok(match family {
        Family::AmrOscillation => {
            let body = oscillation(2 * k + 2, Start::Three);
            let ends = path_endpoints(&body);
            let blocks: Vec<Permutation> = (1..=body.len())
                .map(|i| Permutation::identity(if ends.contains(&i) { 2 } else { 1 }))
                .collect();
            body.inflate(&blocks)?
        }
        Family::AmrTarjan => {
            let m = 2 * k + 1;
            let body = oscillation(m, Start::Two);
            let mut v: Vec<usize> = body
                .values()
                .iter()
                .map(|&x| if x == m { m + 1 } else { x })
                .collect();
            v.insert(1, m);
            Permutation::new(v)?
        }
        Family::Widdershins => reduce(&spiral_points(k).into_iter().map(|p| p.1).collect::<Vec<_>>())?,
        Family::LabeledPath => oscillation(k + 1, Start::Three),
    })
}

/// Spiral points sorted by x.
fn spiral_points(k: usize) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = (1..=k as i64)
        .flat_map(|j| {
            [
                (2 * j, -2 * j),
                (2 * j - 1, 2 * j),
                (-2 * j, 2 * j - 1),
                (-(2 * j - 1), -(2 * j + 3)),
            ]
        })
        .collect();
    pts.sort();
    pts
}

/// Positions of the innermost and outermost spiral points.
fn spiral_ends(k: usize) -> Vec<usize> {
    let k = k as i64;
    let mut ends: Vec<usize> = spiral_points(k as usize)
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == (2, -2) || p == (-(2 * k - 1), -(2 * k + 3)))
        .map(|(i, _)| i + 1)
        .collect();
    ends.sort();
    ends
}

/// The `k`-th widdershins spiral with its two ends hollow and every other entry filled.
pub fn labeled_widdershins(k: usize) -> Result<LabeledPermutation> {
    let perm = antichain_member(Family::Widdershins, k)?;
    let ends = spiral_ends(k);
    let labels = (1..=perm.len())
        .map(|i| if ends.contains(&i) { HOLLOW } else { FILLED })
        .collect();
    LabeledPermutation::new(perm, labels)
}

/// The `k`-th labeled-path member over the 2-antichain: endpoints filled, the rest hollow.
pub fn labeled_antichain_member(k: usize) -> Result<LabeledPermutation> {
    let perm = antichain_member(Family::LabeledPath, k)?;
    let ends = path_endpoints(&perm);
    let labels = (1..=perm.len())
        .map(|i| if ends.contains(&i) { FILLED } else { HOLLOW })
        .collect();
    LabeledPermutation::new(perm, labels)
}

/// Positions of the anchor entries: inflated end blocks, the inserted entry,
/// spiral ends, or path endpoints.
pub fn anchor_positions(family: Family, k: usize) -> Result<Vec<usize>> {
    check_index(k)?;
    Ok(match family {
        Family::AmrOscillation => {
            let body = oscillation(2 * k + 2, Start::Three);
            let ends = path_endpoints(&body);
            // Each end entry at body position e occupies member positions e + (earlier blocks).
            let mut out = Vec::new();
            for (i, &e) in ends.iter().enumerate() {
                let start = e + i;
                out.extend([start, start + 1]);
            }
            out
        }
        Family::AmrTarjan => vec![2],
        Family::Widdershins => spiral_ends(k),
        Family::LabeledPath => path_endpoints(&antichain_member(family, k)?),
    })
}

/// `None` when the members are pairwise incomparable, else the first comparable pair
/// `(i, j)` (1-based, `i < j`) in either direction.
pub fn verify_antichain<T, F>(members: &[T], leq: F) -> Option<(usize, usize)>
where
    F: Fn(&T, &T) -> bool,
{
    let forward = find_good_pair(members, &leq);
    let backward = find_good_pair(members, |a: &T, b: &T| leq(b, a));
    match (forward, backward) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}
