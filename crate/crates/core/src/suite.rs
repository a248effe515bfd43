//! The desk-scale property battery behind `permpat paper-suite`.
//!
//! Every check compares a library routine against an independent naive
//! oracle from [`naive`] (or against another library route) over an
//! exhaustive range, topped up with seeded samples where exhaustive
//! coverage is out of reach. Checks run concurrently; reports come back in
//! id order.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use itertools::Itertools;
use num::{BigRational, One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::antichains::{
    anchor_positions, antichain_member, increasing_oscillations, labeled_antichain_member,
    labeled_widdershins, verify_antichain, Family,
};
use crate::classes::{
    closure_member, plus_one_basis, plus_one_member, substitution_member_by_tree, ClosureKind,
    PermClass, BASIS_SEARCH_LIMIT, ENUMERATE_LIMIT,
};
use crate::decomposition::SubstitutionTree;
use crate::grids::{
    cell_graph, enumerate_grid, geom_member, grid_member, GeomWitness, GridKind,
    GriddedPermutation, Matrix, GEOM_MEMBER_LIMIT, GRID_ENUM_LIMIT, GRID_MEMBER_LIMIT,
};
use crate::invgraph::{
    induced_embeds, inversion_graph, is_isomorphic, labeled_inversion_graph, preimages,
    symmetry_class, Graph, PREIMAGE_LIMIT,
};
use crate::labels::{
    compass_decode, compass_encoding, compass_poset, labeled_contains, last_entry_encoding,
    strip_zero_labels, subword_leq, FinitePoset, LabeledPermutation, Word,
};
use crate::perm::{Direction, Permutation, Symmetry};

/// Independent brute-force oracles.
pub mod naive {
    use super::*;

    /// Reduction by counting smaller entries.
    pub fn standardize(seq: &[usize]) -> Vec<usize> {
        seq.iter()
            .map(|&v| seq.iter().filter(|&&w| w <= v).count())
            .collect()
    }

    pub fn patterns(pi: &Permutation, k: usize) -> BTreeSet<Vec<usize>> {
        (0..pi.len())
            .combinations(k)
            .map(|c| standardize(&c.iter().map(|&i| pi.values()[i]).collect::<Vec<_>>()))
            .collect()
    }

    pub fn contains(big: &Permutation, small: &Permutation) -> bool {
        small.len() <= big.len() && patterns(big, small.len()).contains(small.values())
    }

    pub fn avoids_all(pi: &Permutation, basis: &[Permutation]) -> bool {
        basis.iter().all(|b| !contains(pi, b))
    }

    /// Labeled containment by subset enumeration; `forced = Some((a, b))` requires
    /// small position `a` to land on big position `b` (1-based).
    pub fn labeled_contains(
        small: &LabeledPermutation,
        big: &LabeledPermutation,
        poset: &FinitePoset,
        forced: Option<(usize, usize)>,
    ) -> bool {
        let k = small.perm.len();
        (0..big.perm.len()).combinations(k).any(|c| {
            if let Some((a, b)) = forced {
                if c[a - 1] != b - 1 {
                    return false;
                }
            }
            let vals: Vec<usize> = c.iter().map(|&i| big.perm.values()[i]).collect();
            standardize(&vals) == small.perm.values()
                && c
                    .iter()
                    .enumerate()
                    .all(|(j, &i)| poset.leq(small.labels[j], big.labels[i]))
        })
    }

    pub fn subword(v: &[usize], w: &[usize], poset: &FinitePoset) -> bool {
        (0..w.len())
            .combinations(v.len())
            .any(|c| c.iter().zip(v).all(|(&i, &a)| poset.leq(a, w[i])))
    }

    /// Separable permutations of length `n`, grown from `1` by sums and skew sums.
    pub fn separables(n: usize) -> BTreeSet<Permutation> {
        let mut by_len: Vec<BTreeSet<Permutation>> = vec![BTreeSet::new(), BTreeSet::from([Permutation::identity(1)])];
        for m in 2..=n {
            let mut set = BTreeSet::new();
            for k in 1..m {
                for a in &by_len[k] {
                    for b in &by_len[m - k] {
                        set.insert(a.direct_sum(b));
                        set.insert(a.skew_sum(b));
                    }
                }
            }
            by_len.push(set);
        }
        by_len.swap_remove(n)
    }

    /// Gridding legality checked from the definition.
    pub fn gridding_ok(g: &GriddedPermutation, pi: &Permutation, m: &Matrix) -> bool {
        let n = pi.len();
        if g.perm != *pi || g.cells.len() != n {
            return false;
        }
        let in_range = g.cells.iter().all(|&(k, l)| {
            (1..=m.cols()).contains(&k) && (1..=m.rows()).contains(&l) && m.get(k, l) != 0
        });
        let cols_ok = (0..n).tuple_windows().all(|(i, j)| g.cells[i].0 <= g.cells[j].0);
        let mut by_value: Vec<usize> = (0..n).collect();
        by_value.sort_by_key(|&i| pi.values()[i]);
        let rows_ok = by_value.iter().tuple_windows().all(|(&i, &j)| g.cells[i].1 <= g.cells[j].1);
        let mono = (0..n).tuple_combinations().all(|(i, j)| {
            g.cells[i] != g.cells[j] || {
                let (k, l) = g.cells[i];
                (pi.values()[i] < pi.values()[j]) == (m.get(k, l) > 0)
            }
        });
        in_range && cols_ok && rows_ok && mono
    }

    /// Every point lies on its cell's diagonal segment and the points reduce to the permutation.
    pub fn drawing_ok(w: &GeomWitness, pi: &Permutation, m: &Matrix) -> bool {
        if !gridding_ok(&w.gridded, pi, m) {
            return false;
        }
        let pts = w.points(m);
        let on_segment = pts.iter().zip(&w.gridded.cells).all(|((x, y), &(k, l))| {
            let fx = x - BigRational::from_integer((k as i64 - 1).into());
            let fy = y - BigRational::from_integer((l as i64 - 1).into());
            let inside = fx > BigRational::zero() && fx < BigRational::one();
            let diag = if m.get(k, l) > 0 { fy == fx } else { fy == BigRational::one() - fx };
            inside && diag
        });
        let mut order: Vec<usize> = (0..pts.len()).collect();
        order.sort_by(|&a, &b| pts[a].0.cmp(&pts[b].0));
        let xs_distinct = order.iter().tuple_windows().all(|(&a, &b)| pts[a].0 < pts[b].0);
        let mut ranks = vec![0; pts.len()];
        let mut by_y = order.clone();
        by_y.sort_by(|&a, &b| pts[a].1.cmp(&pts[b].1));
        let ys_distinct = by_y.iter().tuple_windows().all(|(&a, &b)| pts[a].1 < pts[b].1);
        for (r, &i) in by_y.iter().enumerate() {
            ranks[i] = r + 1;
        }
        let seq: Vec<usize> = order.iter().map(|&i| ranks[i]).collect();
        on_segment && xs_distinct && ys_distinct && seq == pi.values()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Number of sampled pairs for each sampled check.
    pub samples: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, samples: 2000 }
    }
}

type CheckFn = fn(&SuiteConfig) -> std::result::Result<String, String>;

pub struct Check {
    pub id: &'static str,
    pub module: &'static str,
    pub description: &'static str,
    run: CheckFn,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub id: &'static str,
    pub module: &'static str,
    pub description: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl Check {
    pub fn run(&self, cfg: &SuiteConfig) -> CheckReport {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| (self.run)(cfg)))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            });
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        CheckReport {
            id: self.id,
            module: self.module,
            description: self.description,
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        }
    }
}

macro_rules! check {
    ($id:literal, $module:literal, $desc:literal, $f:expr) => {
        Check {
            id: $id,
            module: $module,
            description: $desc,
            run: $f,
        }
    };
}

/// The full battery, in id order.
pub fn checks() -> Vec<Check> {
    vec![
        check!("perm-01", "perm-core", "contains agrees with subsequence enumeration", perm_contains),
        check!("perm-02", "perm-core", "symmetries are involutions; rc-inverse has order dividing 4", perm_symmetries),
        check!("perm-03", "perm-core", "components fold back by sums and are indecomposable", perm_components),
        check!("perm-04", "perm-core", "simple iff no proper interval", perm_simple),
        check!("perm-05", "perm-core", "decomposition trees evaluate back and are reduced", perm_trees),
        check!("perm-06", "perm-core", "inflations contain their skeleton and blocks", perm_inflate),
        check!("labels-01", "labels", "one-element labels reduce to plain containment", labels_trivial),
        check!("labels-02", "labels", "subword order agrees with subsequence search", labels_subword),
        check!("labels-03", "labels", "last-entry encoding reflects containment", labels_last_entry),
        check!("labels-04", "labels", "compass encoding reflects containment with the deleted entries matched", labels_compass),
        check!("labels-05", "labels", "stripping zero labels preserves containment", labels_strip),
        check!("labels-06", "labels", "compass encoding is injective", labels_compass_injective),
        check!("invgraph-01", "invgraph", "symmetries give isomorphic inversion graphs", graph_symmetry),
        check!("invgraph-02", "invgraph", "containment implies induced subgraph", graph_order),
        check!("invgraph-03", "invgraph", "no induced cycles of length 5 to 8", graph_no_long_cycles),
        check!("invgraph-04", "invgraph", "graph properties match pattern classes", graph_correspondences),
        check!("invgraph-05", "invgraph", "simple permutations have exactly their symmetry preimages", graph_gallai),
        check!("invgraph-06", "invgraph", "labeled preimages of simple permutations are symmetry images", graph_labeled_gallai),
        check!("classes-01", "classes", "membership agrees with naive avoidance", classes_member),
        check!("classes-02", "classes", "plus-one bases are antichains of minimal nonmembers", classes_plus_one),
        check!("classes-03", "classes", "substitution closure by simples agrees with tree test", classes_substitution),
        check!("classes-04", "classes", "sum and skew closures sit inside the separable closure", classes_separable),
        check!("classes-05", "classes", "Av(2413, 3142) is generated from 1 by sums and skew sums", classes_bose),
        check!("grids-01", "grids", "geometric grid classes sit inside monotone grid classes", grids_geom_in_grid),
        check!("grids-02", "grids", "forest cell graphs give equal classes; X differs at 3142", grids_forest),
        check!("grids-03", "grids", "Grid(X) agrees with Av(2143, 3412)", grids_stankova),
        check!("grids-04", "grids", "returned griddings and drawings are legal", grids_witnesses),
        check!("grids-05", "grids", "a larger size cap never changes a verdict", grids_guard),
        check!("antichains-01", "antichains", "oscillations are the indecomposable path permutations", osc_paths),
        check!("antichains-02", "antichains", "each oscillation lies in both of the next length", osc_hasse),
        check!("antichains-03", "antichains", "oscillations have no 3-antichain; labeled paths do", osc_wqo_evidence),
        check!("antichains-04", "antichains", "deleting anchors leaves a linear-forest permutation", anchors_deletion),
        check!("antichains-05", "antichains", "every family is an antichain on its first members", families_antichain),
    ]
}

/// Runs the checks whose id or module matches one of `only` (all when empty).
pub fn run_suite(cfg: &SuiteConfig, only: &[String]) -> Vec<CheckReport> {
    let selected: Vec<Check> = checks()
        .into_iter()
        .filter(|c| only.is_empty() || only.iter().any(|o| o == c.id || o == c.module))
        .collect();
    selected.par_iter().map(|c| c.run(cfg)).collect()
}

fn rng(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffle of 1..=n")
}

fn random_labeled(rng: &mut impl Rng, n: usize, labels: usize) -> LabeledPermutation {
    let perm = random_perm(rng, n);
    let l = (0..n).map(|_| rng.gen_range(0..labels)).collect();
    LabeledPermutation { perm, labels: l }
}

/// A random sorted position subset of size `k` out of `1..=n`.
fn random_positions(rng: &mut impl Rng, n: usize, k: usize) -> Vec<usize> {
    let mut pos: Vec<usize> = (1..=n).collect();
    pos.shuffle(rng);
    pos.truncate(k);
    pos.sort();
    pos
}

fn restrict(p: &LabeledPermutation, positions: &[usize]) -> LabeledPermutation {
    LabeledPermutation {
        perm: p.perm.pattern_at(positions),
        labels: positions.iter().map(|&i| p.labels[i - 1]).collect(),
    }
}

fn upto(n: usize) -> impl Iterator<Item = Permutation> {
    (0..=n).flat_map(Permutation::all)
}

fn fail<T>(msg: String) -> std::result::Result<T, String> {
    Err(msg)
}

fn perm_contains(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let mut pairs = 0usize;
    for pi in upto(6) {
        for k in 0..=pi.len() {
            let pats = naive::patterns(&pi, k);
            for s in Permutation::all(k) {
                pairs += 1;
                if pi.contains(&s) != pats.contains(s.values()) {
                    return fail(format!("{s} in {pi}"));
                }
            }
        }
    }
    for pi in Permutation::all(7) {
        for k in 1..=4 {
            let pats = naive::patterns(&pi, k);
            for s in Permutation::all(k) {
                pairs += 1;
                if pi.contains(&s) != pats.contains(s.values()) {
                    return fail(format!("{s} in {pi}"));
                }
            }
        }
    }
    let mut r = rng(cfg, 1);
    for i in 0..cfg.samples {
        let n = r.gen_range(7..=8);
        let pi = random_perm(&mut r, n);
        let k = r.gen_range(2..=n);
        let s = if i % 2 == 0 {
            pi.pattern_at(&random_positions(&mut r, n, k))
        } else {
            random_perm(&mut r, k)
        };
        pairs += 1;
        if pi.contains(&s) != naive::contains(&pi, &s) {
            return fail(format!("{s} in {pi}"));
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn perm_symmetries(_: &SuiteConfig) -> std::result::Result<String, String> {
    for pi in upto(8) {
        for s in [Symmetry::Inverse, Symmetry::ReverseComplement] {
            if pi.apply(s).apply(s) != pi {
                return fail(format!("{s:?} on {pi}"));
            }
        }
        let mut q = pi.clone();
        for _ in 0..4 {
            q = q.apply(Symmetry::RcInverse);
        }
        if q != pi {
            return fail(format!("rc-inverse^4 on {pi}"));
        }
    }
    Ok("all lengths to 8".into())
}

fn perm_components(_: &SuiteConfig) -> std::result::Result<String, String> {
    for pi in upto(9) {
        for dir in [Direction::Direct, Direction::Skew] {
            let parts = pi.components(dir);
            if Permutation::sum_all(&parts, dir) != pi {
                return fail(format!("{dir:?} fold of {pi}"));
            }
            let split = |c: &Permutation| match dir {
                Direction::Direct => c.is_sum_decomposable(),
                Direction::Skew => c.is_skew_decomposable(),
            };
            if parts.iter().any(split) {
                return fail(format!("{dir:?} component of {pi} decomposes"));
            }
        }
    }
    Ok("all lengths to 9".into())
}

fn perm_simple(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut simples = 0;
    for n in 2..=9 {
        for pi in Permutation::all(n) {
            let s = pi.is_simple();
            simples += s as usize;
            if s != pi.intervals().is_empty() {
                return fail(format!("{pi}"));
            }
        }
    }
    Ok(format!("{simples} simple permutations of length 2 to 9"))
}

fn perm_trees(_: &SuiteConfig) -> std::result::Result<String, String> {
    for pi in (1..=9).flat_map(Permutation::all) {
        let t = SubstitutionTree::decompose(&pi).map_err(|e| e.to_string())?;
        if t.evaluate() != pi {
            return fail(format!("{pi} evaluates to {}", t.evaluate()));
        }
        for node in t.nodes() {
            let bad = match node {
                SubstitutionTree::Sum(ch) => ch.iter().any(|c| matches!(c, SubstitutionTree::Sum(_))),
                SubstitutionTree::Skew(ch) => ch.iter().any(|c| matches!(c, SubstitutionTree::Skew(_))),
                SubstitutionTree::Simple { skeleton, .. } => !skeleton.is_simple(),
                SubstitutionTree::Leaf => false,
            };
            if bad {
                return fail(format!("unreduced node in the tree of {pi}"));
            }
        }
    }
    Ok("all lengths 1 to 9".into())
}

fn perm_inflate(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let mut r = rng(cfg, 6);
    for _ in 0..cfg.samples {
        let m = r.gen_range(1..=5);
        let sigma = random_perm(&mut r, m);
        let mut budget = 9 - m;
        let blocks: Vec<Permutation> = (0..m)
            .map(|_| {
                let extra = r.gen_range(0..=budget.min(3));
                budget -= extra;
                random_perm(&mut r, 1 + extra)
            })
            .collect();
        let big = sigma.inflate(&blocks).map_err(|e| e.to_string())?;
        if !naive::contains(&big, &sigma) || blocks.iter().any(|b| !naive::contains(&big, b)) {
            return fail(format!("{sigma} inflated by {blocks:?}"));
        }
    }
    Ok(format!("{} sampled inflations of length at most 9", cfg.samples))
}

fn labels_trivial(_: &SuiteConfig) -> std::result::Result<String, String> {
    let one = FinitePoset::antichain(&["x"]);
    let check = |s: &Permutation, pi: &Permutation| {
        let a = LabeledPermutation::constant(s.clone(), 0);
        let b = LabeledPermutation::constant(pi.clone(), 0);
        labeled_contains(&a, &b, &one).expect("valid labels").is_some() == pi.contains(s)
    };
    let mut pairs = 0;
    for pi in upto(6) {
        for s in upto(pi.len()) {
            pairs += 1;
            if !check(&s, &pi) {
                return fail(format!("{s} in {pi}"));
            }
        }
    }
    for pi in Permutation::all(7) {
        for s in upto(7) {
            pairs += 1;
            if !check(&s, &pi) {
                return fail(format!("{s} in {pi}"));
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn labels_subword(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let posets = [
        FinitePoset::chain(&["a", "b", "c"]),
        FinitePoset::antichain(&["a", "b", "c"]),
        FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).expect("valid poset"),
        FinitePoset::antichain(&["a", "b"]),
    ];
    let words = |alpha: usize, len: usize| -> Vec<Vec<usize>> {
        (0..=len)
            .flat_map(|l| (0..l).map(|_| 0..alpha).multi_cartesian_product())
            .chain(std::iter::once(Vec::new()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    };
    let mut pairs = 0;
    for p in &posets {
        for v in words(p.len(), 3) {
            for w in words(p.len(), 5) {
                pairs += 1;
                if subword_leq(&Word(v.clone()), &Word(w.clone()), p) != naive::subword(&v, &w, p) {
                    return fail(format!("{v:?} vs {w:?}"));
                }
            }
        }
    }
    let mut r = rng(cfg, 12);
    for _ in 0..cfg.samples {
        let p = &posets[r.gen_range(0..posets.len())];
        let v: Vec<usize> = (0..r.gen_range(0..=5)).map(|_| r.gen_range(0..p.len())).collect();
        let w: Vec<usize> = (0..r.gen_range(0..=8)).map(|_| r.gen_range(0..p.len())).collect();
        pairs += 1;
        if subword_leq(&Word(v.clone()), &Word(w.clone()), p) != naive::subword(&v, &w, p) {
            return fail(format!("{v:?} vs {w:?}"));
        }
    }
    Ok(format!("{pairs} word pairs"))
}

fn labels_last_entry(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let two = FinitePoset::two_antichain();
    let encoded: Vec<(Permutation, LabeledPermutation)> = (1..=6)
        .flat_map(Permutation::all)
        .map(|b| {
            let e = last_entry_encoding(&b).expect("nonempty");
            (b, e)
        })
        .collect();
    let mut premises = 0;
    for (b, eb) in &encoded {
        for (g, eg) in &encoded {
            if labeled_contains(eb, eg, &two).expect("valid").is_some() {
                premises += 1;
                if !g.contains(b) {
                    return fail(format!("{b} vs {g}"));
                }
            }
        }
    }
    let mut r = rng(cfg, 13);
    for i in 0..cfg.samples {
        let g = random_perm(&mut r, 7);
        let k = r.gen_range(1..=7);
        let b = if i % 2 == 0 {
            random_perm(&mut r, k)
        } else {
            g.pattern_at(&random_positions(&mut r, 7, k))
        };
        let (eb, eg) = (last_entry_encoding(&b).expect("nonempty"), last_entry_encoding(&g).expect("nonempty"));
        if labeled_contains(&eb, &eg, &two).expect("valid").is_some() {
            premises += 1;
            if !naive::contains(&g, &b) {
                return fail(format!("{b} vs {g}"));
            }
        }
    }
    Ok(format!(
        "all {} pairs of length at most 6 plus {} sampled at length 7; {premises} premises held",
        encoded.len() * encoded.len(),
        cfg.samples
    ))
}

fn labels_compass(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let two = FinitePoset::two_antichain();
    let cp = compass_poset(&two);
    let mut r = rng(cfg, 14);
    let mut premises = 0;
    let samples = cfg.samples.max(1000);
    for i in 0..samples {
        let n = r.gen_range(2..=7);
        let big = random_labeled(&mut r, n, 2);
        let b = r.gen_range(1..=n);
        let (small, a) = if i % 2 == 0 {
            let k = r.gen_range(2..=n);
            let mut pos = random_positions(&mut r, n, k);
            if !pos.contains(&b) {
                pos[0] = b;
                pos.sort();
            }
            let a = pos.iter().position(|&p| p == b).expect("b kept") + 1;
            (restrict(&big, &pos), a)
        } else {
            let k = r.gen_range(2..=n);
            (random_labeled(&mut r, k, 2), r.gen_range(1..=k))
        };
        let es = compass_encoding(&small, a, &two).map_err(|e| e.to_string())?;
        let eb = compass_encoding(&big, b, &two).map_err(|e| e.to_string())?;
        if labeled_contains(&es, &eb, &cp).map_err(|e| e.to_string())?.is_some() {
            premises += 1;
            if !naive::labeled_contains(&small, &big, &two, Some((a, b))) {
                return fail(format!(
                    "{} at {a} vs {} at {b}",
                    small.display(&two),
                    big.display(&two)
                ));
            }
        }
    }
    Ok(format!("{samples} sampled pairs; {premises} premises held"))
}

fn labels_strip(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let two = FinitePoset::two_antichain();
    let with_zero = two.with_bottom("0").map_err(|e| e.to_string())?;
    let zero = with_zero.len() - 1;
    let mut r = rng(cfg, 15);
    let mut premises = 0;
    for i in 0..cfg.samples {
        let n = r.gen_range(1..=7);
        let big = random_labeled(&mut r, n, 3);
        let small = if i % 2 == 0 {
            let k = r.gen_range(0..=n);
            let mut s = restrict(&big, &random_positions(&mut r, n, k));
            // lowering labels keeps the containment
            for l in &mut s.labels {
                if r.gen_bool(0.3) {
                    *l = zero;
                }
            }
            s
        } else {
            let k = r.gen_range(0..=n);
            random_labeled(&mut r, k, 3)
        };
        if labeled_contains(&small, &big, &with_zero).map_err(|e| e.to_string())?.is_some() {
            premises += 1;
            let (a, b) = (strip_zero_labels(&small, zero), strip_zero_labels(&big, zero));
            if !naive::labeled_contains(&a, &b, &two, None) {
                return fail(format!("{} vs {}", small.display(&with_zero), big.display(&with_zero)));
            }
        }
    }
    Ok(format!("{} sampled pairs; {premises} premises held", cfg.samples))
}

fn labels_compass_injective(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let two = FinitePoset::two_antichain();
    let roundtrip = |p: &LabeledPermutation, a: usize| -> std::result::Result<(), String> {
        let q = compass_encoding(p, a, &two).map_err(|e| e.to_string())?;
        let back = compass_decode(&q, &two).map_err(|e| e.to_string())?;
        if back != (p.clone(), a) {
            return fail(format!("{} at {a}", p.display(&two)));
        }
        Ok(())
    };
    let mut count = 0;
    for n in 2..=6 {
        for perm in Permutation::all(n) {
            for labels in (0..n).map(|_| 0..2).multi_cartesian_product() {
                let p = LabeledPermutation { perm: perm.clone(), labels };
                for a in 1..=n {
                    count += 1;
                    roundtrip(&p, a)?;
                }
            }
        }
    }
    let mut r = rng(cfg, 16);
    for _ in 0..cfg.samples {
        let p = random_labeled(&mut r, 7, 2);
        count += 1;
        roundtrip(&p, r.gen_range(1..=7))?;
    }
    Ok(format!("{count} encodings decoded back"))
}

fn graph_symmetry(_: &SuiteConfig) -> std::result::Result<String, String> {
    for pi in upto(7) {
        let g = inversion_graph(&pi);
        for s in Symmetry::ALL {
            if !is_isomorphic(&g, &inversion_graph(&pi.apply(s))) {
                return fail(format!("{s:?} of {pi}"));
            }
        }
    }
    Ok("all lengths to 7".into())
}

fn graph_order(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut pairs = 0;
    for pi in upto(7) {
        let g = inversion_graph(&pi);
        for k in 0..=pi.len() {
            for pat in naive::patterns(&pi, k) {
                pairs += 1;
                let s = Permutation::new(pat).expect("standardized");
                if induced_embeds(&inversion_graph(&s), &g).is_none() {
                    return fail(format!("{s} in {pi}"));
                }
            }
        }
    }
    Ok(format!("{pairs} containments"))
}

fn graph_no_long_cycles(_: &SuiteConfig) -> std::result::Result<String, String> {
    let cycles: Vec<Graph> = (5..=8).map(|k| Graph::cycle(k).expect("k >= 3")).collect();
    for pi in upto(8) {
        let g = inversion_graph(&pi);
        if let Some(c) = cycles.iter().find(|c| c.len() <= g.len() && induced_embeds(c, &g).is_some()) {
            return fail(format!("C{} in the graph of {pi}", c.len()));
        }
    }
    Ok("all lengths to 8".into())
}

fn graph_correspondences(_: &SuiteConfig) -> std::result::Result<String, String> {
    let av = |b: &[&str]| -> Vec<Permutation> { b.iter().map(|s| s.parse().expect("literal")).collect() };
    let (b321, forest, linear, cograph) = (
        av(&["321"]),
        av(&["321", "3412"]),
        av(&["321", "2341", "3412", "4123"]),
        av(&["2413", "3142"]),
    );
    for pi in upto(8) {
        let g = inversion_graph(&pi);
        let rows = [
            ("bipartite", g.is_bipartite(), naive::avoids_all(&pi, &b321)),
            ("forest", g.is_forest(), naive::avoids_all(&pi, &forest)),
            ("linear forest", g.is_linear_forest(), naive::avoids_all(&pi, &linear)),
            ("connected", g.is_connected(), !pi.is_empty() && pi.components(Direction::Direct).len() == 1),
            ("cograph", g.is_cograph(), naive::avoids_all(&pi, &cograph)),
        ];
        if let Some((name, ..)) = rows.iter().find(|(_, a, b)| a != b) {
            return fail(format!("{name} at {pi}"));
        }
    }
    Ok("all lengths to 8".into())
}

fn graph_gallai(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut count = 0;
    for n in 4..=7 {
        for sigma in Permutation::all(n).filter(|p| p.is_simple()) {
            let g = inversion_graph(&sigma);
            if !g.is_prime() {
                continue;
            }
            count += 1;
            let pre = preimages(&g, n, PREIMAGE_LIMIT).map_err(|e| e.to_string())?;
            if pre != symmetry_class(&sigma) {
                return fail(format!("{sigma}"));
            }
        }
    }
    Ok(format!("{count} simple permutations of length 4 to 7"))
}

fn graph_labeled_gallai(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut count = 0;
    for n in 4..=6 {
        for sigma in Permutation::all(n).filter(|p| p.is_simple()) {
            let g = inversion_graph(&sigma);
            let candidates: Vec<Permutation> = Permutation::all(n)
                .filter(|t| is_isomorphic(&inversion_graph(t), &g))
                .collect();
            for ls in (0..n).map(|_| 0..2).multi_cartesian_product() {
                let lp = LabeledPermutation { perm: sigma.clone(), labels: ls };
                let lg = labeled_inversion_graph(&lp);
                let images: BTreeSet<(Permutation, Vec<usize>)> = std::iter::once(lp.clone())
                    .chain(Symmetry::ALL.iter().map(|&s| lp.apply(s)))
                    .map(|q| (q.perm, q.labels))
                    .collect();
                for tau in &candidates {
                    for lt in (0..n).map(|_| 0..2).multi_cartesian_product() {
                        let lq = LabeledPermutation { perm: tau.clone(), labels: lt };
                        if is_isomorphic(&labeled_inversion_graph(&lq), &lg) {
                            count += 1;
                            if !images.contains(&(lq.perm.clone(), lq.labels.clone())) {
                                return fail(format!("{sigma} {:?} vs {tau} {:?}", lp.labels, lq.labels));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{count} labeled isomorphisms, all symmetry images"))
}

fn sample_classes() -> Vec<PermClass> {
    ["321", "2413,3142", "123,4321", "231", "2143,3412"]
        .iter()
        .map(|s| s.parse().expect("literal class"))
        .collect()
}

fn classes_member(_: &SuiteConfig) -> std::result::Result<String, String> {
    let classes = sample_classes();
    for pi in upto(7) {
        for c in &classes {
            if c.member(&pi) != naive::avoids_all(&pi, c.basis()) {
                return fail(format!("{pi} in {c}"));
            }
        }
    }
    Ok(format!("{} classes, all lengths to 7", classes.len()))
}

fn classes_plus_one(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut out = Vec::new();
    for c in ["1", "12", "21"] {
        let c: PermClass = c.parse().map_err(|e: crate::Error| e.to_string())?;
        let res = plus_one_basis(&c, None, BASIS_SEARCH_LIMIT).map_err(|e| e.to_string())?;
        let basis = res.basis.basis();
        for (i, a) in basis.iter().enumerate() {
            if plus_one_member(a, &c) {
                return fail(format!("{a} is in {c}+1"));
            }
            if a.one_point_deletions().iter().any(|d| !plus_one_member(d, &c)) {
                return fail(format!("{a} is not minimal for {c}+1"));
            }
            if basis.iter().enumerate().any(|(j, b)| i != j && naive::contains(b, a)) {
                return fail(format!("{a} is not an antichain element"));
            }
        }
        out.push(format!("{c}+1: {} elements", basis.len()));
    }
    Ok(out.join("; "))
}

fn classes_substitution(_: &SuiteConfig) -> std::result::Result<String, String> {
    let classes = sample_classes();
    for pi in upto(8) {
        for c in &classes {
            if closure_member(&pi, c, ClosureKind::Substitution) != substitution_member_by_tree(&pi, c) {
                return fail(format!("{pi} against {c}"));
            }
        }
    }
    Ok(format!("{} classes, all lengths to 8", classes.len()))
}

fn classes_separable(_: &SuiteConfig) -> std::result::Result<String, String> {
    let classes = sample_classes();
    for pi in upto(8) {
        for c in &classes {
            let sep = closure_member(&pi, c, ClosureKind::Separable);
            for kind in [ClosureKind::Sum, ClosureKind::Skew] {
                if closure_member(&pi, c, kind) && !sep {
                    return fail(format!("{pi} against {c} ({kind:?})"));
                }
            }
        }
    }
    Ok(format!("{} classes, all lengths to 8", classes.len()))
}

fn classes_bose(_: &SuiteConfig) -> std::result::Result<String, String> {
    let sep: PermClass = "2413,3142".parse().map_err(|e: crate::Error| e.to_string())?;
    let mut counts = Vec::new();
    for n in 1..=7 {
        let listed: BTreeSet<Permutation> = sep.enumerate(n, ENUMERATE_LIMIT).map_err(|e| e.to_string())?.into_iter().collect();
        if listed != naive::separables(n) {
            return fail(format!("length {n}"));
        }
        counts.push(listed.len().to_string());
    }
    Ok(format!("counts {}", counts.join(", ")))
}

fn small_matrices() -> Vec<Matrix> {
    [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .flat_map(|&(c, r)| Matrix::all_of_shape(c, r))
        .filter(|m| !m.nonzero_cells().is_empty())
        .collect()
}

fn grid_sets(m: &Matrix, n: usize) -> std::result::Result<(BTreeSet<Permutation>, BTreeSet<Permutation>), String> {
    let g = enumerate_grid(m, n, GridKind::Monotone, GRID_ENUM_LIMIT).map_err(|e| e.to_string())?;
    let h = enumerate_grid(m, n, GridKind::Geometric, GRID_ENUM_LIMIT).map_err(|e| e.to_string())?;
    Ok((g.into_iter().collect(), h.into_iter().collect()))
}

fn grids_geom_in_grid(_: &SuiteConfig) -> std::result::Result<String, String> {
    let ms = small_matrices();
    for m in &ms {
        for n in 0..=6 {
            let (grid, geom) = grid_sets(m, n)?;
            if !geom.is_subset(&grid) {
                return fail(format!("{m} at length {n}"));
            }
        }
    }
    Ok(format!("{} matrices, lengths to 6", ms.len()))
}

fn grids_forest(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut forests = 0;
    for m in small_matrices() {
        if !cell_graph(&m).0.is_forest() {
            continue;
        }
        forests += 1;
        for n in 0..=6 {
            let (grid, geom) = grid_sets(&m, n)?;
            if grid != geom {
                return fail(format!("{m} at length {n}"));
            }
        }
    }
    let (grid, geom) = grid_sets(&Matrix::x(), 4)?;
    let diff: Vec<String> = grid.difference(&geom).map(|p| p.to_compact()).collect();
    if !grid.difference(&geom).any(|p| p.values() == [3, 1, 4, 2]) {
        return fail(format!("X at length 4 differs by {diff:?}"));
    }
    Ok(format!("{forests} forest matrices equal to length 6; X differs by {}", diff.join(", ")))
}

fn grids_stankova(_: &SuiteConfig) -> std::result::Result<String, String> {
    let av: PermClass = "2143,3412".parse().map_err(|e: crate::Error| e.to_string())?;
    let mut counts = Vec::new();
    for n in 0..=6 {
        let (grid, _) = grid_sets(&Matrix::x(), n)?;
        let expected: BTreeSet<Permutation> = Permutation::all(n).filter(|p| naive::avoids_all(p, av.basis())).collect();
        if grid != expected {
            return fail(format!("length {n}"));
        }
        counts.push(grid.len().to_string());
    }
    Ok(format!("counts {}", counts.join(", ")))
}

fn grids_witnesses(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let ms = small_matrices();
    let mut r = rng(cfg, 24);
    let (mut grids, mut drawings) = (0, 0);
    for _ in 0..cfg.samples {
        let m = &ms[r.gen_range(0..ms.len())];
        let n = r.gen_range(1..=6);
        let pi = random_perm(&mut r, n);
        if let Some(g) = grid_member(&pi, m, GRID_MEMBER_LIMIT).map_err(|e| e.to_string())? {
            grids += 1;
            if !naive::gridding_ok(&g, &pi, m) {
                return fail(format!("gridding of {pi} in {m}"));
            }
        }
        if let Some(w) = geom_member(&pi, m, GEOM_MEMBER_LIMIT).map_err(|e| e.to_string())? {
            drawings += 1;
            if !naive::drawing_ok(&w, &pi, m) {
                return fail(format!("drawing of {pi} in {m}"));
            }
        }
    }
    Ok(format!("{grids} griddings and {drawings} drawings re-validated"))
}

fn grids_guard(cfg: &SuiteConfig) -> std::result::Result<String, String> {
    let ms = small_matrices();
    let mut r = rng(cfg, 25);
    for _ in 0..cfg.samples / 4 {
        let m = &ms[r.gen_range(0..ms.len())];
        let n = r.gen_range(1..=7);
        let pi = random_perm(&mut r, n);
        let small = geom_member(&pi, m, 7).map_err(|e| e.to_string())?.is_some();
        let big = geom_member(&pi, m, GEOM_MEMBER_LIMIT).map_err(|e| e.to_string())?.is_some();
        if small != big {
            return fail(format!("{pi} in {m}"));
        }
        if n > 1 && geom_member(&pi, m, n - 1).is_ok() {
            return fail(format!("cap {} accepted {pi}", n - 1));
        }
    }
    Ok(format!("{} sampled verdicts stable", cfg.samples / 4))
}

fn osc_paths(_: &SuiteConfig) -> std::result::Result<String, String> {
    for n in 1..=8 {
        let filtered: Vec<Permutation> = Permutation::all(n)
            .filter(|p| p.components(Direction::Direct).len() == 1 && inversion_graph(p).is_path())
            .collect();
        if increasing_oscillations(n) != filtered {
            return fail(format!("length {n}"));
        }
    }
    Ok("lengths 1 to 8".into())
}

fn osc_hasse(_: &SuiteConfig) -> std::result::Result<String, String> {
    for n in 3..=7 {
        for a in increasing_oscillations(n) {
            for b in increasing_oscillations(n + 1) {
                if !naive::contains(&b, &a) {
                    return fail(format!("{a} not in {b}"));
                }
            }
        }
    }
    Ok("lengths 3 to 7".into())
}

fn osc_wqo_evidence(_: &SuiteConfig) -> std::result::Result<String, String> {
    let osc: Vec<Permutation> = (3..=8).flat_map(increasing_oscillations).collect();
    for trio in osc.iter().combinations(3) {
        if verify_antichain(&trio, |a, b| b.contains(a)).is_none() {
            return fail(format!("antichain {trio:?}"));
        }
    }
    let two = FinitePoset::two_antichain();
    let labeled: Vec<LabeledPermutation> = (1..=5).map(|k| labeled_antichain_member(k).expect("k >= 1")).collect();
    if let Some(pair) = verify_antichain(&labeled, |a, b| naive::labeled_contains(a, b, &two, None)) {
        return fail(format!("labeled paths comparable at {pair:?}"));
    }
    Ok(format!("{} oscillations; labeled paths 1 to 5 incomparable", osc.len()))
}

fn anchors_deletion(_: &SuiteConfig) -> std::result::Result<String, String> {
    let linear: Vec<Permutation> = ["321", "2341", "3412", "4123"].iter().map(|s| s.parse().expect("literal")).collect();
    let mut count = 0;
    for f in [Family::AmrOscillation, Family::AmrTarjan] {
        for k in (1..).take_while(|&k| f.member_len(k) <= 18) {
            let m = antichain_member(f, k).map_err(|e| e.to_string())?;
            let anchors = anchor_positions(f, k).map_err(|e| e.to_string())?;
            let rest: Vec<usize> = (1..=m.len()).filter(|i| !anchors.contains(i)).collect();
            count += 1;
            if !naive::avoids_all(&m.pattern_at(&rest), &linear) {
                return fail(format!("{f} member {k}"));
            }
        }
    }
    Ok(format!("{count} members"))
}

fn families_antichain(_: &SuiteConfig) -> std::result::Result<String, String> {
    let mut notes = Vec::new();
    let mut failed = Vec::new();
    for f in [Family::AmrOscillation, Family::AmrTarjan, Family::Widdershins] {
        let members: Vec<Permutation> = (1..=5).map(|k| antichain_member(f, k).expect("k >= 1")).collect();
        match verify_antichain(&members, |a, b| naive::contains(b, a)) {
            None => notes.push(format!("{f} ok")),
            Some(p) => failed.push(format!("{f} comparable at {p:?}")),
        }
    }
    let two = FinitePoset::two_antichain();
    let le = |a: &LabeledPermutation, b: &LabeledPermutation| naive::labeled_contains(a, b, &two, None);
    let labeled: Vec<_> = (1..=5).map(|k| labeled_antichain_member(k).expect("k >= 1")).collect();
    match verify_antichain(&labeled, le) {
        None => notes.push("labeled-path ok".into()),
        Some(p) => failed.push(format!("labeled-path comparable at {p:?}")),
    }
    let spirals: Vec<_> = (1..=5).map(|k| labeled_widdershins(k).expect("k >= 1")).collect();
    notes.push(format!(
        "end-labeled spirals {}",
        if verify_antichain(&spirals, le).is_none() { "incomparable" } else { "comparable" }
    ));
    if failed.is_empty() {
        Ok(notes.join("; "))
    } else {
        Err(format!("{}; {}", failed.join("; "), notes.join("; ")))
    }
}
