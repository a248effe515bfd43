//! Finite label quasi-orders, labeled containment and the label encodings
//! used to move between classes: last-entry deletion, zero-label stripping
//! and the compass encoding of one-point extensions.
//!
//! Labels are indices into a [`FinitePoset`]; names only appear at the I/O
//! boundary.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{embed, reduce_distinct, Permutation, Symmetry};

/// A finite quasi-order on named atoms, stored as its reflexive-transitive closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// Serialized form: `{"elements": [...], "leq": [["a","b"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub leq: Vec<[String; 2]>,
}

impl FinitePoset {
    /// Builds the closure of `pairs` (each `(a, b)` meaning `a ≤ b`).
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        if let Some(dup) = names.iter().duplicates().next() {
            return Err(Error::InvalidInput(format!("duplicate poset element {dup:?}")));
        }
        let index = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownName(s.to_string()))
        };
        let idx_pairs = pairs
            .iter()
            .map(|(a, b)| Ok((index(a.as_ref())?, index(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_relation(names, &idx_pairs))
    }

    fn from_relation(names: Vec<String>, pairs: &[(usize, usize)]) -> Self {
        let n = names.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            leq[a][b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        FinitePoset { names, leq }
    }

    pub fn from_spec(spec: &PosetSpec) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = spec
            .leq
            .iter()
            .map(|[a, b]| (a.as_str(), b.as_str()))
            .collect();
        let elements: Vec<&str> = spec.elements.iter().map(|s| s.as_str()).collect();
        Self::new(&elements, &pairs)
    }

    pub fn to_spec(&self) -> PosetSpec {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && self.leq[i][j] {
                    leq.push([self.names[i].clone(), self.names[j].clone()]);
                }
            }
        }
        PosetSpec {
            elements: self.names.clone(),
            leq,
        }
    }

    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Self {
        let names = elements.iter().map(|s| s.as_ref().to_string()).collect();
        Self::from_relation(names, &[])
    }

    /// `elements[0] < elements[1] < …`
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Self {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let pairs: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Self::from_relation(names, &pairs)
    }

    /// The antichain `{o, *}`: index [`HOLLOW`] is `o`, index [`FILLED`] is `*`.
    pub fn two_antichain() -> Self {
        Self::antichain(&["o", "*"])
    }

    /// Adjoins a new minimum. Existing indices are kept; the new element is last.
    pub fn with_bottom(&self, name: &str) -> Result<Self> {
        if self.index_of(name).is_some() {
            return Err(Error::InvalidInput(format!("{name:?} already in poset")));
        }
        let mut names = self.names.clone();
        names.push(name.to_string());
        let n = names.len();
        let mut leq: Vec<Vec<bool>> = self
            .leq
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(false);
                r
            })
            .collect();
        leq.push(vec![true; n]);
        Ok(FinitePoset { names, leq })
    }

    /// Componentwise order on tuples; element index is the mixed-radix number
    /// of the component indices, first component most significant.
    pub fn product(parts: &[&FinitePoset]) -> Self {
        let tuples: Vec<Vec<usize>> = parts
            .iter()
            .map(|p| 0..p.len())
            .multi_cartesian_product()
            .collect();
        let tuples = if parts.is_empty() { vec![vec![]] } else { tuples };
        let names = tuples
            .iter()
            .map(|t| {
                let inner = t
                    .iter()
                    .zip(parts)
                    .map(|(&i, p)| p.name(i))
                    .join(",");
                format!("({inner})")
            })
            .collect();
        let leq = tuples
            .iter()
            .map(|a| {
                tuples
                    .iter()
                    .map(|b| a.iter().zip(b).zip(parts).all(|((&x, &y), p)| p.leq(x, y)))
                    .collect()
            })
            .collect();
        FinitePoset { names, leq }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    /// True when the quasi-order is a partial order.
    pub fn is_antisymmetric(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
    }

    pub(crate) fn check(&self, label: usize) -> Result<()> {
        if label < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownLabel {
                label,
                size: self.len(),
            })
        }
    }
}

pub const HOLLOW: usize = 0;
pub const FILLED: usize = 1;

/// Componentwise comparison of label tuples over a product of posets.
pub fn product_leq(a: &[usize], b: &[usize], posets: &[&FinitePoset]) -> Result<bool> {
    if a.len() != b.len() || a.len() != posets.len() {
        return Err(Error::ArityMismatch {
            expected: posets.len(),
            got: if a.len() != posets.len() { a.len() } else { b.len() },
        });
    }
    for ((&x, &y), p) in a.iter().zip(b).zip(posets) {
        p.check(x)?;
        p.check(y)?;
    }
    Ok(a.iter().zip(b).zip(posets).all(|((&x, &y), p)| p.leq(x, y)))
}

/// A permutation with one label (poset index) per position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledPermutation {
    pub perm: Permutation,
    pub labels: Vec<usize>,
}

/// Serialized form: `{"perm": [...], "labels": [...]}` with label names.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabeledPermutationSpec {
    pub perm: Vec<usize>,
    pub labels: Vec<String>,
}

impl LabeledPermutation {
    pub fn new(perm: Permutation, labels: Vec<usize>) -> Result<Self> {
        if perm.len() != labels.len() {
            return Err(Error::ArityMismatch {
                expected: perm.len(),
                got: labels.len(),
            });
        }
        Ok(LabeledPermutation { perm, labels })
    }

    pub fn constant(perm: Permutation, label: usize) -> Self {
        let labels = vec![label; perm.len()];
        LabeledPermutation { perm, labels }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// The symmetry image with each label carried along with its entry.
    pub fn apply(&self, which: Symmetry) -> Self {
        let map = self.perm.symmetry_position_map(which);
        let mut labels = vec![0; self.len()];
        for (i, &l) in self.labels.iter().enumerate() {
            labels[map[i] - 1] = l;
        }
        LabeledPermutation {
            perm: self.perm.apply(which),
            labels,
        }
    }

    pub fn check(&self, poset: &FinitePoset) -> Result<()> {
        self.labels.iter().try_for_each(|&l| poset.check(l))
    }

    pub fn from_spec(spec: &LabeledPermutationSpec, poset: &FinitePoset) -> Result<Self> {
        let perm = Permutation::new(spec.perm.clone())?;
        let labels = spec
            .labels
            .iter()
            .map(|s| poset.index_of(s).ok_or_else(|| Error::UnknownName(s.clone())))
            .collect::<Result<_>>()?;
        Self::new(perm, labels)
    }

    pub fn to_spec(&self, poset: &FinitePoset) -> LabeledPermutationSpec {
        LabeledPermutationSpec {
            perm: self.perm.values().to_vec(),
            labels: self.labels.iter().map(|&l| poset.name(l).to_string()).collect(),
        }
    }

    /// `pos:label` annotations, e.g. `3 1 5 2 | 2:* 3:o`.
    pub fn display<'a>(&'a self, poset: &'a FinitePoset) -> impl fmt::Display + 'a {
        struct D<'a>(&'a LabeledPermutation, &'a FinitePoset);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{} |", self.0.perm)?;
                for (i, &l) in self.0.labels.iter().enumerate() {
                    write!(f, " {}:{}", i + 1, self.1.name(l))?;
                }
                Ok(())
            }
        }
        D(self, poset)
    }
}

/// Labeled containment of `small` in `big`; returns a 1-based witness.
pub fn labeled_contains(
    small: &LabeledPermutation,
    big: &LabeledPermutation,
    poset: &FinitePoset,
) -> Result<Option<Vec<usize>>> {
    small.check(poset)?;
    big.check(poset)?;
    Ok(embed(small.perm.values(), big.perm.values(), |j, i| {
        poset.leq(small.labels[j], big.labels[i])
    })
    .map(|w| w.into_iter().map(|i| i + 1).collect()))
}

/// A word over a finite poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    /// Word from single-character element names, e.g. `"aba"`.
    pub fn parse(s: &str, poset: &FinitePoset) -> Result<Self> {
        s.chars()
            .map(|c| {
                poset
                    .index_of(&c.to_string())
                    .ok_or_else(|| Error::UnknownName(c.to_string()))
            })
            .collect::<Result<_>>()
            .map(Word)
    }
}

/// Generalized subword order: `v` embeds in `w` with letterwise `≤`.
///
/// Greedy leftmost matching is exact here since the letter test depends only
/// on the pair of letters.
pub fn subword_leq(v: &Word, w: &Word, poset: &FinitePoset) -> bool {
    let mut rest = w.0.iter();
    v.0.iter()
        .all(|&a| rest.by_ref().any(|&b| poset.leq(a, b)))
}

/// The lexicographically least good pair `(i, j)`, 1-based, with `seq[i] ≤ seq[j]`.
pub fn find_good_pair<T, F>(seq: &[T], leq: F) -> Option<(usize, usize)>
where
    F: Fn(&T, &T) -> bool,
{
    (0..seq.len())
        .flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j)))
        .find(|&(i, j)| leq(&seq[i], &seq[j]))
        .map(|(i, j)| (i + 1, j + 1))
}

/// Deletes the last entry; survivors are labeled hollow if they were below it
/// and filled if above. Labels index [`FinitePoset::two_antichain`].
pub fn last_entry_encoding(beta: &Permutation) -> Result<LabeledPermutation> {
    let n = beta.len();
    if n == 0 {
        return Err(Error::InvalidInput("cannot encode the empty permutation".into()));
    }
    let last = beta.at(n);
    let rest = beta.delete_entry(n)?;
    let labels = beta.values()[..n - 1]
        .iter()
        .map(|&v| if v < last { HOLLOW } else { FILLED })
        .collect();
    LabeledPermutation::new(rest, labels)
}

/// Drops every entry labeled `zero`, reducing the rest and keeping their labels.
pub fn strip_zero_labels(p: &LabeledPermutation, zero: usize) -> LabeledPermutation {
    let (values, labels): (Vec<usize>, Vec<usize>) = p
        .perm
        .values()
        .iter()
        .zip(&p.labels)
        .filter(|&(_, &l)| l != zero)
        .map(|(&v, &l)| (v, l))
        .unzip();
    LabeledPermutation {
        perm: reduce_distinct(&values),
        labels,
    }
}

/// Where the deleted entry lies as seen from a surviving entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Compass {
    Sw = 0,
    Se = 1,
    Ne = 2,
    Nw = 3,
}

impl Compass {
    pub const ALL: [Compass; 4] = [Compass::Sw, Compass::Se, Compass::Ne, Compass::Nw];

    pub fn name(self) -> &'static str {
        ["sw", "se", "ne", "nw"][self as usize]
    }

    /// Entry at `(i, v)` relative to the deleted entry at `(a, d)`.
    fn of(i: usize, v: usize, a: usize, d: usize) -> Compass {
        match (i > a, v > d) {
            (true, true) => Compass::Sw,
            (false, true) => Compass::Se,
            (false, false) => Compass::Ne,
            (true, false) => Compass::Nw,
        }
    }

    fn is_left_of_deleted(self) -> bool {
        matches!(self, Compass::Se | Compass::Ne)
    }

    fn is_below_deleted(self) -> bool {
        matches!(self, Compass::Ne | Compass::Nw)
    }
}

/// Label poset of compass encodings over `base`: `base × base × {sw, se, ne, nw}`.
pub fn compass_poset(base: &FinitePoset) -> FinitePoset {
    let dirs = FinitePoset::antichain(&Compass::ALL.map(Compass::name));
    FinitePoset::product(&[base, base, &dirs])
}

/// Index of `(own, deleted, dir)` in [`compass_poset`].
pub fn compass_label(base_len: usize, own: usize, deleted: usize, dir: Compass) -> usize {
    (own * base_len + deleted) * 4 + dir as usize
}

fn split_compass_label(base_len: usize, label: usize) -> (usize, usize, Compass) {
    let dir = Compass::ALL[label % 4];
    let rest = label / 4;
    (rest / base_len, rest % base_len, dir)
}

/// Deletes the entry at 1-based position `a` and records, on every survivor,
/// its own label, the deleted entry's label, and its direction from the survivor.
pub fn compass_encoding(
    p: &LabeledPermutation,
    a: usize,
    base: &FinitePoset,
) -> Result<LabeledPermutation> {
    if p.len() < 2 {
        return Err(Error::InvalidInput(
            "compass encoding needs length at least two".into(),
        ));
    }
    if a == 0 || a > p.len() {
        return Err(Error::IndexOutOfRange {
            index: a,
            len: p.len(),
        });
    }
    p.check(base)?;
    let d = p.perm.at(a);
    let deleted_label = p.labels[a - 1];
    let labels = (1..=p.len())
        .filter(|&i| i != a)
        .map(|i| {
            let dir = Compass::of(i, p.perm.at(i), a, d);
            compass_label(base.len(), p.labels[i - 1], deleted_label, dir)
        })
        .collect();
    LabeledPermutation::new(p.perm.delete_entry(a)?, labels)
}

/// Inverts [`compass_encoding`], returning the original and the deleted position.
pub fn compass_decode(
    q: &LabeledPermutation,
    base: &FinitePoset,
) -> Result<(LabeledPermutation, usize)> {
    if q.is_empty() {
        return Err(Error::InvalidInput("empty compass encoding".into()));
    }
    let size = base.len() * base.len() * 4;
    q.labels.iter().try_for_each(|&l| {
        if l < size {
            Ok(())
        } else {
            Err(Error::UnknownLabel { label: l, size })
        }
    })?;
    let parts: Vec<_> = q
        .labels
        .iter()
        .map(|&l| split_compass_label(base.len(), l))
        .collect();
    let deleted_label = parts[0].1;
    if parts.iter().any(|p| p.1 != deleted_label) {
        return Err(Error::InvalidInput("inconsistent deleted-entry labels".into()));
    }
    let a = parts.iter().filter(|p| p.2.is_left_of_deleted()).count() + 1;
    let d = parts.iter().filter(|p| p.2.is_below_deleted()).count() + 1;
    let n = q.len() + 1;
    let mut values = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for (j, (&v, part)) in q.perm.values().iter().zip(&parts).enumerate() {
        if j + 1 == a {
            values.push(d);
            labels.push(deleted_label);
        }
        let left = j + 1 < a;
        let below = v < d;
        if left != part.2.is_left_of_deleted() || below != part.2.is_below_deleted() {
            return Err(Error::InvalidInput("compass directions are inconsistent".into()));
        }
        values.push(if below { v } else { v + 1 });
        labels.push(part.0);
    }
    if a == n {
        values.push(d);
        labels.push(deleted_label);
    }
    let perm = Permutation::new(values)?;
    Ok((LabeledPermutation::new(perm, labels)?, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use itertools::Itertools;

    fn brute_subword(v: &Word, w: &Word, poset: &FinitePoset) -> bool {
        (0..w.0.len())
            .combinations(v.0.len())
            .any(|idx| idx.iter().zip(&v.0).all(|(&i, &a)| poset.leq(a, w.0[i])))
    }

    #[test]
    fn poset_closure_and_products() {
        let p = FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(2, 0));
        assert!(p.is_antisymmetric());
        let q = FinitePoset::new(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap();
        assert!(!q.is_antisymmetric());
        assert!(FinitePoset::new(&["a", "a"], &[]).is_err());
        assert!(FinitePoset::new(&["a"], &[("a", "z")]).is_err());

        let chain = FinitePoset::chain(&["1", "2", "3"]);
        let prod = FinitePoset::product(&[&chain, &chain]);
        assert_eq!(prod.len(), 9);
        assert_eq!(prod.name(3 + 1), "(2,2)");
        assert!(prod.leq(1, 3 + 1)); // (1,2) ≤ (2,2)
        assert!(!prod.leq(2, 3)); // (1,3) vs (2,1)
        assert!(!prod.leq(3, 2));
    }

    #[test]
    fn product_leq_examples() {
        let chain = FinitePoset::chain(&["1", "2", "3"]);
        let ps = [&chain, &chain];
        assert!(product_leq(&[0, 1], &[1, 1], &ps).unwrap());
        assert!(!product_leq(&[0, 2], &[1, 0], &ps).unwrap());
        assert!(!product_leq(&[1, 0], &[0, 2], &ps).unwrap());
        let single = FinitePoset::antichain(&["x"]);
        assert!(product_leq(&[0], &[0], &[&single]).unwrap());
        assert!(matches!(
            product_leq(&[0], &[0, 1], &ps),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            product_leq(&[0, 7], &[0, 1], &ps),
            Err(Error::UnknownLabel { .. })
        ));
    }

    #[test]
    fn bottom_keeps_indices() {
        let l = FinitePoset::antichain(&["x", "y"]);
        let l0 = l.with_bottom("0").unwrap();
        assert_eq!(l0.index_of("x"), Some(0));
        assert_eq!(l0.index_of("0"), Some(2));
        assert!(l0.leq(2, 0) && l0.leq(2, 1) && !l0.leq(0, 2));
        assert!(l.with_bottom("x").is_err());
    }

    #[test]
    fn labeled_containment_examples() {
        let one = FinitePoset::antichain(&["x"]);
        let s = LabeledPermutation::constant(perm("32514"), 0);
        let p = LabeledPermutation::constant(perm("432679185"), 0);
        assert!(labeled_contains(&s, &p, &one).unwrap().is_some());

        let two = FinitePoset::two_antichain();
        let a = LabeledPermutation::new(perm("321"), vec![FILLED, HOLLOW, HOLLOW]).unwrap();
        let b = LabeledPermutation::new(perm("321"), vec![HOLLOW, FILLED, HOLLOW]).unwrap();
        assert!(labeled_contains(&a, &b, &two).unwrap().is_none());
        assert!(labeled_contains(&b, &a, &two).unwrap().is_none());

        let bad = LabeledPermutation::new(perm("1"), vec![5]).unwrap();
        assert!(labeled_contains(&bad, &a, &two).is_err());
        assert!(LabeledPermutation::new(perm("12"), vec![0]).is_err());
    }

    #[test]
    fn subword_examples() {
        let eq = FinitePoset::antichain(&["a", "b"]);
        let w = |s| Word::parse(s, &eq).unwrap();
        assert!(subword_leq(&w("ba"), &w("aba"), &eq));
        assert!(!subword_leq(&w("ab"), &w("ba"), &eq));
        let lt = FinitePoset::chain(&["a", "b"]);
        let w2 = |s| Word::parse(s, &lt).unwrap();
        assert!(subword_leq(&w2("aa"), &w2("bb"), &lt));
        assert!(!subword_leq(&w2("bb"), &w2("aa"), &lt));
        assert!(subword_leq(&Word(vec![]), &Word(vec![]), &lt));
    }

    #[test]
    fn subword_matches_brute_force() {
        let posets = [
            FinitePoset::antichain(&["a", "b", "c"]),
            FinitePoset::chain(&["a", "b", "c"]),
            FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap(),
        ];
        for poset in &posets {
            for lv in 0..=3 {
                for lw in 0..=5 {
                    for v in (0..lv).map(|_| 0..3).multi_cartesian_product().chain((lv == 0).then(Vec::new)) {
                        for w in (0..lw).map(|_| 0..3).multi_cartesian_product().chain((lw == 0).then(Vec::new)) {
                            let (v, w) = (Word(v.clone()), Word(w));
                            assert_eq!(subword_leq(&v, &w, poset), brute_subword(&v, &w, poset));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn good_pair_examples() {
        let seq = [perm("231"), perm("2413")];
        assert_eq!(find_good_pair(&seq, |a, b| b.contains(a)), Some((1, 2)));
        assert_eq!(find_good_pair(&[7, 7], |a, b| a <= b), Some((1, 2)));
        assert_eq!(find_good_pair(&[3, 2, 1], |a, b| a <= b), None);
        assert_eq!(find_good_pair(&[3, 1, 2], |a, b| a <= b), Some((2, 3)));
    }

    #[test]
    fn last_entry_examples() {
        let e = last_entry_encoding(&perm("287369154")).unwrap();
        assert_eq!(e.perm, perm("27635814"));
        let hollow: Vec<usize> = (1..=8).filter(|&i| e.labels[i - 1] == HOLLOW).collect();
        assert_eq!(hollow, vec![1, 4, 7]);
        let e1 = last_entry_encoding(&perm("1")).unwrap();
        assert!(e1.is_empty());
        let e2 = last_entry_encoding(&perm("21")).unwrap();
        assert_eq!(e2.perm, perm("1"));
        assert_eq!(e2.labels, vec![FILLED]);
        assert!(last_entry_encoding(&Permutation::empty()).is_err());
    }

    #[test]
    fn strip_zero_examples() {
        let l = FinitePoset::antichain(&["x", "y"]);
        let l0 = l.with_bottom("0").unwrap();
        let zero = l0.index_of("0").unwrap();
        let p = LabeledPermutation::new(perm("3142"), vec![zero, 0, zero, 1]).unwrap();
        let q = strip_zero_labels(&p, zero);
        assert_eq!(q.perm, perm("12"));
        assert_eq!(q.labels, vec![0, 1]);
        let all_zero = LabeledPermutation::constant(perm("321"), zero);
        assert!(strip_zero_labels(&all_zero, zero).is_empty());
        let none = LabeledPermutation::new(perm("213"), vec![0, 1, 0]).unwrap();
        assert_eq!(strip_zero_labels(&none, zero), none);
    }

    #[test]
    fn compass_figure_example() {
        let base = FinitePoset::antichain(&["x"]);
        let p = LabeledPermutation::constant(perm("571834692"), 0);
        let q = compass_encoding(&p, 6, &base).unwrap();
        assert_eq!(q.perm, perm("46173582"));
        let dirs: Vec<Compass> = q.labels.iter().map(|&l| split_compass_label(1, l).2).collect();
        use Compass::*;
        assert_eq!(dirs, vec![Se, Se, Ne, Se, Ne, Sw, Sw, Nw]);
        let (back, a) = compass_decode(&q, &base).unwrap();
        assert_eq!((back, a), (p, 6));
    }

    #[test]
    fn compass_small_cases() {
        let base = FinitePoset::two_antichain();
        let p = LabeledPermutation::new(perm("12"), vec![HOLLOW, FILLED]).unwrap();
        let q = compass_encoding(&p, 1, &base).unwrap();
        assert_eq!(q.perm, perm("1"));
        assert_eq!(q.labels, vec![compass_label(2, FILLED, HOLLOW, Compass::Sw)]);
        let poset = compass_poset(&base);
        assert_eq!(poset.len(), 16);
        assert_eq!(poset.name(q.labels[0]), "(*,o,sw)");
        assert!(compass_encoding(&LabeledPermutation::constant(perm("1"), 0), 1, &base).is_err());
        assert!(compass_encoding(&p, 3, &base).is_err());
    }

    #[test]
    fn compass_round_trip_exhaustive_to_six() {
        let base = FinitePoset::two_antichain();
        for n in 2..=6 {
            for pi in Permutation::all(n) {
                for mask in [0usize, 0b101101, 0b010010, (1 << n) - 1] {
                    let labels = (0..n).map(|i| (mask >> i) & 1).collect();
                    let p = LabeledPermutation::new(pi.clone(), labels).unwrap();
                    for a in 1..=n {
                        let q = compass_encoding(&p, a, &base).unwrap();
                        assert_eq!(compass_decode(&q, &base).unwrap(), (p.clone(), a));
                    }
                }
            }
        }
    }
}
