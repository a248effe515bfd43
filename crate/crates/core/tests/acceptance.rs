//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.
//!
//! Oracles here are test-local brute force (subset enumeration, definition
//! checks) and never call the routine they check.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use permpat::antichains::{
    antichain_member, increasing_oscillations, labeled_antichain_member, verify_antichain, Family,
};
use permpat::classes::{closure_member, plus_one_basis, substitution_member_by_tree, ClosureKind, BASIS_SEARCH_LIMIT};
use permpat::grids::{cell_graph, enumerate_grid, geom_member, GridKind, Matrix, GEOM_MEMBER_LIMIT, GRID_ENUM_LIMIT};
use permpat::invgraph::{
    automorphisms, induced_embeds, inversion_graph, preimages, symmetry_automorphisms, Graph,
    AUTOMORPHISM_LIMIT, PREIMAGE_LIMIT,
};
use permpat::labels::{compass_encoding, compass_poset, labeled_contains, last_entry_encoding, FinitePoset};
use permpat::{perm, LabeledPermutation, PermClass, Permutation, SubstitutionTree};

type Outcome = Result<String, String>;

fn standardize(seq: &[usize]) -> Vec<usize> {
    seq.iter().map(|&v| seq.iter().filter(|&&w| w <= v).count()).collect()
}

fn occurs(small: &[usize], big: &[usize]) -> bool {
    (0..big.len())
        .combinations(small.len())
        .any(|c| standardize(&c.iter().map(|&i| big[i]).collect::<Vec<_>>()) == small)
}

fn avoids(pi: &Permutation, basis: &[&str]) -> bool {
    basis.iter().all(|b| !occurs(perm(b).values(), pi.values()))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_containment() -> Outcome {
    let text = perm("432679185");
    let w = text
        .find_occurrence(&perm("32514"))
        .ok_or("32514 not found in 432679185")?;
    ensure(text.pattern_at(&w) == perm("32514"), || format!("witness {w:?} does not reduce to 32514"))?;
    ensure(text.contains(&perm("32514")), || "contains(32514) false".into())?;
    ensure(!text.contains(&perm("54321")), || "54321 found".into())?;
    Ok(format!("witness {}", w.iter().join(" ")))
}

fn c2_inflation() -> Outcome {
    let blocks = ["1", "132", "321", "12"].map(perm);
    let p = perm("2413").inflate(&blocks).map_err(|e| e.to_string())?;
    ensure(p == perm("479832156"), || format!("got {p}"))?;
    use SubstitutionTree::*;
    let expected = Simple {
        skeleton: perm("2413"),
        children: vec![
            Leaf,
            Sum(vec![Leaf, Skew(vec![Leaf, Leaf])]),
            Skew(vec![Leaf, Leaf, Leaf]),
            Sum(vec![Leaf, Leaf]),
        ],
    };
    let t = SubstitutionTree::decompose(&p).map_err(|e| e.to_string())?;
    ensure(t == expected, || format!("tree {t}"))?;
    ensure(t.evaluate() == p, || "tree does not evaluate back".into())?;
    Ok(format!("{p} = {t}"))
}

fn c3_correspondences() -> Outcome {
    let cycles: Vec<Graph> = (5..=7).map(|k| Graph::cycle(k).expect("k >= 3")).collect();
    let mut count = 0;
    for pi in (0..=7).flat_map(Permutation::all) {
        count += 1;
        let g = inversion_graph(&pi);
        let sum_indecomposable = !pi.is_empty()
            && !(1..pi.len()).any(|k| pi.values()[..k].iter().all(|&v| v <= k));
        let rows = [
            ("bipartite", g.is_bipartite(), avoids(&pi, &["321"])),
            ("forest", g.is_forest(), avoids(&pi, &["321", "3412"])),
            ("linear forest", g.is_linear_forest(), avoids(&pi, &["321", "2341", "3412", "4123"])),
            ("cograph", g.is_cograph(), avoids(&pi, &["2413", "3142"])),
            ("connected", g.is_connected(), sum_indecomposable),
        ];
        if let Some((name, got, want)) = rows.iter().find(|(_, a, b)| a != b) {
            return Err(format!("{name} at {pi}: graph says {got}, patterns say {want}"));
        }
        if let Some(c) = cycles.iter().find(|c| c.len() <= pi.len() && induced_embeds(c, &g).is_some()) {
            return Err(format!("induced C{} in G({pi})", c.len()));
        }
    }
    Ok(format!("{count} permutations of length 0 to 7"))
}

fn c4_gallai() -> Outcome {
    let mut count = 0;
    let mut sizes = BTreeSet::new();
    for n in 4..=6 {
        for sigma in Permutation::all(n).filter(|p| p.is_simple()) {
            count += 1;
            let g = inversion_graph(&sigma);
            let expected: BTreeSet<Permutation> = [
                sigma.clone(),
                sigma.inverse(),
                sigma.reverse().complement(),
                sigma.reverse().complement().inverse(),
            ]
            .into_iter()
            .collect();
            let pre = preimages(&g, n, PREIMAGE_LIMIT).map_err(|e| e.to_string())?;
            ensure(pre == expected, || format!("preimages of G({sigma}) = {pre:?}"))?;
            let auts = automorphisms(&g, AUTOMORPHISM_LIMIT).map_err(|e| e.to_string())?;
            ensure([1, 2, 4].contains(&auts.len()), || format!("{} automorphisms for {sigma}", auts.len()))?;
            sizes.insert(auts.len());
            let realized = symmetry_automorphisms(&sigma);
            for a in &auts {
                ensure(realized.contains(a), || format!("automorphism {a:?} of G({sigma}) is not a symmetry"))?;
            }
        }
    }
    Ok(format!("{count} simple permutations; automorphism group sizes {sizes:?}"))
}

fn c5_atkinson_beals() -> Outcome {
    let c: PermClass = "12".parse().map_err(|e: permpat::Error| e.to_string())?;
    let r = plus_one_basis(&c, None, BASIS_SEARCH_LIMIT).map_err(|e| e.to_string())?;
    ensure(r.searched_to == 6 && r.bound == 6 && r.exact, || format!("searched to {} of {}", r.searched_to, r.bound))?;
    let basis = r.basis.basis();
    ensure(basis.contains(&perm("123")), || "123 missing".into())?;
    for (a, b) in basis.iter().tuple_combinations() {
        ensure(!occurs(a.values(), b.values()) && !occurs(b.values(), a.values()), || format!("{a} and {b} comparable"))?;
    }
    // member of Av(12)+1: some single deletion leaves a decreasing sequence
    let plus_one = |v: &[usize]| {
        v.is_empty()
            || (0..v.len()).any(|i| {
                let rest: Vec<usize> = v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                rest.windows(2).all(|w| w[0] > w[1])
            })
    };
    for p in basis {
        ensure(!plus_one(p.values()), || format!("{p} is a member"))?;
    }
    let extra: Vec<Permutation> = Permutation::all(7)
        .filter(|p| {
            !plus_one(p.values())
                && (0..7).all(|i| {
                    let d: Vec<usize> = p.values().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
                    plus_one(&standardize(&d))
                })
        })
        .collect();
    ensure(extra.is_empty(), || format!("length-7 basis elements {extra:?}"))?;
    Ok(format!("basis {} searched to 6; none at length 7", r.basis))
}

fn random_labeled(rng: &mut ChaCha8Rng, n: usize) -> LabeledPermutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    let labels = (0..n).map(|_| rng.gen_range(0..2)).collect();
    LabeledPermutation::new(Permutation::new(v).unwrap(), labels).unwrap()
}

fn c6_order_reflection() -> Outcome {
    let two = FinitePoset::two_antichain();
    let encoded: Vec<(Permutation, LabeledPermutation)> = (1..=6)
        .flat_map(Permutation::all)
        .map(|b| {
            let e = last_entry_encoding(&b).unwrap();
            (b, e)
        })
        .collect();
    let mut premises = 0;
    for (b, eb) in &encoded {
        for (g, eg) in &encoded {
            if labeled_contains(eb, eg, &two).unwrap().is_some() {
                premises += 1;
                ensure(occurs(b.values(), g.values()), || format!("last-entry: {b} vs {g}"))?;
            }
        }
    }
    let cp = compass_poset(&two);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut compass_premises = 0;
    let pairs = 1000;
    for i in 0..pairs {
        let n = rng.gen_range(2..=6);
        let big = random_labeled(&mut rng, n);
        let b = rng.gen_range(1..=n);
        let (small, a) = if i % 2 == 0 {
            // a sub-pattern through b, so the premise is exercised
            let k = rng.gen_range(2..=n);
            let mut others: Vec<usize> = (1..=n).filter(|&p| p != b).collect();
            others.shuffle(&mut rng);
            let mut pos: Vec<usize> = others[..k - 1].to_vec();
            pos.push(b);
            pos.sort();
            let a = pos.iter().position(|&p| p == b).unwrap() + 1;
            let sub = LabeledPermutation::new(big.perm.pattern_at(&pos), pos.iter().map(|&p| big.labels[p - 1]).collect()).unwrap();
            (sub, a)
        } else {
            let k = rng.gen_range(2..=6);
            (random_labeled(&mut rng, k), rng.gen_range(1..=k))
        };
        let es = compass_encoding(&small, a, &two).map_err(|e| e.to_string())?;
        let eb = compass_encoding(&big, b, &two).map_err(|e| e.to_string())?;
        if labeled_contains(&es, &eb, &cp).unwrap().is_some() {
            compass_premises += 1;
            let matched = (0..n).combinations(small.perm.len()).any(|c| {
                c[a - 1] == b - 1
                    && standardize(&c.iter().map(|&i| big.perm.values()[i]).collect::<Vec<_>>()) == small.perm.values()
                    && c.iter().enumerate().all(|(j, &i)| small.labels[j] == big.labels[i])
            });
            ensure(matched, || format!("compass: {small:?}@{a} vs {big:?}@{b}"))?;
        }
    }
    Ok(format!(
        "last-entry {} pairs ({premises} premises); compass {pairs} pairs ({compass_premises} premises); 0 violations",
        encoded.len() * encoded.len()
    ))
}

fn c7_stankova() -> Outcome {
    let x = Matrix::x();
    let mut counts = Vec::new();
    for n in 0..=6 {
        let grid: BTreeSet<Permutation> = enumerate_grid(&x, n, GridKind::Monotone, GRID_ENUM_LIMIT)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let geom: BTreeSet<Permutation> = enumerate_grid(&x, n, GridKind::Geometric, GRID_ENUM_LIMIT)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let skew_merged: BTreeSet<Permutation> = Permutation::all(n).filter(|p| avoids(p, &["2143", "3412"])).collect();
        let both: BTreeSet<Permutation> = skew_merged.iter().filter(|p| avoids(p, &["2413", "3142"])).cloned().collect();
        ensure(grid == skew_merged, || format!("Grid(X) differs from Av(2143, 3412) at length {n}"))?;
        ensure(geom == both, || format!("Geom(X) differs from skew-merged separables at length {n}"))?;
        if n == 4 {
            ensure(grid.len() == 22 && geom.len() == 20, || format!("counts {} and {}", grid.len(), geom.len()))?;
        }
        counts.push(format!("{}/{}", grid.len(), geom.len()));
    }
    let g = geom_member(&perm("3142"), &x, GEOM_MEMBER_LIMIT).map_err(|e| e.to_string())?;
    ensure(g.is_none(), || "3142 drawn in X".into())?;
    Ok(format!("Grid/Geom counts n=0..6: {}", counts.join(" ")))
}

fn c8_forest_criterion() -> Outcome {
    let matrices: Vec<Matrix> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .iter()
        .flat_map(|&(c, r)| Matrix::all_of_shape(c, r))
        .collect();
    let mut violations = Vec::new();
    let mut cyclic_differing = 0;
    for m in &matrices {
        let forest = cell_graph(m).0.is_forest();
        let mut equal = true;
        for n in 0..=5 {
            let grid = enumerate_grid(m, n, GridKind::Monotone, GRID_ENUM_LIMIT).map_err(|e| e.to_string())?;
            let geom = enumerate_grid(m, n, GridKind::Geometric, GRID_ENUM_LIMIT).map_err(|e| e.to_string())?;
            if grid != geom {
                equal = false;
                break;
            }
        }
        if !forest && !equal {
            cyclic_differing += 1;
        }
        if equal != forest {
            violations.push(format!("[{m}]"));
        }
    }
    let shape_differs = cyclic_differing > 0;
    let summary = format!(
        "{} matrices; C4 shape differs for {cyclic_differing} of 16 sign patterns",
        matrices.len()
    );
    if violations.is_empty() && shape_differs {
        Ok(summary)
    } else {
        Err(format!(
            "{summary}; equality up to n=5 fails to track the forest property for {}: {}",
            violations.len(),
            violations.join(" ")
        ))
    }
}

fn c9_antichains() -> Outcome {
    let anchors = [
        (Family::AmrOscillation, "4 1 2 6 3 8 5 10 7 12 9 14 11 15 16 13"),
        (Family::AmrTarjan, "2 15 4 1 6 3 8 5 10 7 12 9 14 11 16 13"),
        (Family::Widdershins, "15 1 13 2 11 4 9 6 10 8 12 7 14 5 16 3"),
    ];
    for (f, want) in anchors {
        let k = f.index_of_len(16).ok_or(format!("{f} has no member of length 16"))?;
        let got = antichain_member(f, k).map_err(|e| e.to_string())?;
        ensure(got == perm(want), || format!("{f} length 16: {got}"))?;
    }
    let mut problems = Vec::new();
    for f in [Family::AmrOscillation, Family::AmrTarjan, Family::Widdershins] {
        let members: Vec<Permutation> = (1..=4).map(|k| antichain_member(f, k).unwrap()).collect();
        if let Some((i, j)) = verify_antichain(&members, |a, b| occurs(a.values(), b.values())) {
            problems.push(format!("{f} members {i} and {j} comparable"));
        }
    }
    let two = FinitePoset::two_antichain();
    let labeled: Vec<LabeledPermutation> = (1..=5).map(|k| labeled_antichain_member(k).unwrap()).collect();
    if let Some((i, j)) = verify_antichain(&labeled, |a, b| labeled_contains(a, b, &two).unwrap().is_some()) {
        problems.push(format!("labeled-path members {i} and {j} comparable"));
    }
    for n in 3..=7 {
        for a in increasing_oscillations(n) {
            for b in increasing_oscillations(n + 1) {
                if !occurs(a.values(), b.values()) {
                    problems.push(format!("oscillation {a} not in {b}"));
                }
            }
        }
    }
    if problems.is_empty() {
        Ok("anchors exact; families incomparable; Hasse property holds".into())
    } else {
        Err(format!("anchors exact; {}", problems.join("; ")))
    }
}

fn c10_closure_consistency() -> Outcome {
    let classes: Vec<PermClass> = ["321", "2413,3142", "123,4321", "231", "2143,3412"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    for pi in Permutation::all(7) {
        for c in &classes {
            let a = closure_member(&pi, c, ClosureKind::Substitution);
            let b = substitution_member_by_tree(&pi, c);
            ensure(a == b, || format!("{pi} against {c}: simples {a}, tree {b}"))?;
        }
    }
    Ok(format!("5040 permutations x {} classes agree", classes.len()))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    // --list and filters from the test runner are accepted and ignored
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "containment anchor", budget: secs(1), run: c1_containment },
        Criterion { id: 2, name: "inflation anchor and tree", budget: secs(1), run: c2_inflation },
        Criterion { id: 3, name: "inversion-graph correspondences n<=7", budget: secs(120), run: c3_correspondences },
        Criterion { id: 4, name: "simple permutations and their graphs", budget: secs(60), run: c4_gallai },
        Criterion { id: 5, name: "plus-one basis of Av(12)", budget: secs(30), run: c5_atkinson_beals },
        Criterion { id: 6, name: "order reflection of encodings", budget: secs(120), run: c6_order_reflection },
        Criterion { id: 7, name: "X-class enumerations", budget: secs(300), run: c7_stankova },
        Criterion { id: 8, name: "forest criterion up to 2x2, n<=5", budget: secs(300), run: c8_forest_criterion },
        Criterion { id: 9, name: "antichain anchors and incomparability", budget: secs(120), run: c9_antichains },
        Criterion { id: 10, name: "substitution closure two routes on S7", budget: secs(120), run: c10_closure_consistency },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, budget {:?}", c.budget)),
            Err(d) => (false, d),
        };
        failed += !ok as usize;
        println!(
            "{} criterion {:>2} {:<40} {:>9.2?}  {detail}",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
