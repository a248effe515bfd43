//! Inversion graphs and small-graph machinery: induced subgraph search,
//! isomorphism, structural predicates, primality, automorphisms and
//! permutation preimages.
//!
//! Vertices are `1..=n` at the interface and bit positions `0..n` inside;
//! graphs are limited to 64 vertices.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{guard, Error, Result};
use crate::labels::{FinitePoset, LabeledPermutation};
use crate::perm::{Permutation, Symmetry};

pub const MAX_VERTICES: usize = 64;
pub const AUTOMORPHISM_LIMIT: usize = 10;
pub const PREIMAGE_LIMIT: usize = 8;

/// A simple undirected graph, optionally carrying one poset label per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<u64>,
    labels: Option<Vec<usize>>,
}

/// Adjacency-list form: `{"vertices": n, "adjacency": [[2], [1, 3], [2]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdjacencyJson {
    pub vertices: usize,
    pub adjacency: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_path: bool,
    pub is_cycle: bool,
    pub is_linear_forest: bool,
    pub is_forest: bool,
    pub is_bipartite: bool,
    pub is_connected: bool,
    pub is_cograph: bool,
    pub is_prime: bool,
}

impl Graph {
    /// Graph on `1..=n` with the given 1-based edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeGuard {
                what: "graph vertices",
                requested: n,
                limit: MAX_VERTICES,
            });
        }
        let mut g = Graph {
            adj: vec![0; n],
            labels: None,
        };
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::IndexOutOfRange { index: v, len: n });
                }
            }
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            g.add_edge(a - 1, b - 1);
        }
        Ok(g)
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    pub fn with_labels(mut self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::ArityMismatch {
                expected: self.len(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// 1-based adjacency test.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a - 1] >> (b - 1) & 1 == 1
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v - 1].count_ones() as usize
    }

    /// Edges `(a, b)` with `a < b`, 1-based, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.adjacent(a, b))
            .map(|(a, b)| (a + 1, b + 1))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn complete(k: usize) -> Self {
        let edges: Vec<_> = (1..=k)
            .flat_map(|a| (a + 1..=k).map(move |b| (a, b)))
            .collect();
        Graph::new(k, &edges).expect("valid complete graph")
    }

    pub fn edgeless(k: usize) -> Self {
        Graph::new(k, &[]).expect("valid edgeless graph")
    }

    /// `P_k`, the path on `k` vertices.
    pub fn path(k: usize) -> Self {
        let edges: Vec<_> = (1..k).map(|i| (i, i + 1)).collect();
        Graph::new(k, &edges).expect("valid path")
    }

    /// `C_k` for `k ≥ 3`.
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidInput(format!("no simple cycle on {k} vertices")));
        }
        let mut edges: Vec<_> = (1..k).map(|i| (i, i + 1)).collect();
        edges.push((1, k));
        Graph::new(k, &edges)
    }

    /// `K_{1,3}`.
    pub fn claw() -> Self {
        Graph::new(4, &[(1, 2), (1, 3), (1, 4)]).expect("valid claw")
    }

    /// Builds one of the named graphs `K<k>`, `P<k>`, `C<k>`, `E<k>` (edgeless) or `claw`.
    pub fn named(name: &str) -> Result<Self> {
        if name == "claw" {
            return Ok(Graph::claw());
        }
        let mut chars = name.chars();
        let kind = chars.next().ok_or_else(|| Error::UnknownName(name.into()))?;
        let k: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownName(name.into()))?;
        guard("graph vertices", k, MAX_VERTICES)?;
        match kind.to_ascii_uppercase() {
            'K' => Ok(Graph::complete(k)),
            'P' => Ok(Graph::path(k)),
            'C' => Graph::cycle(k),
            'E' => Ok(Graph::edgeless(k)),
            _ => Err(Error::UnknownName(name.into())),
        }
    }

    /// The subgraph induced on the given 1-based vertices, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut h = Graph::edgeless(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    h.add_edge(i, j);
                }
            }
        }
        h.labels = self
            .labels
            .as_ref()
            .map(|l| vertices.iter().map(|&v| l[v - 1]).collect());
        h
    }

    fn components(&self) -> usize {
        let n = self.len();
        let mut seen = 0u64;
        let mut count = 0;
        for s in 0..n {
            if seen >> s & 1 == 1 {
                continue;
            }
            count += 1;
            let mut frontier = 1u64 << s;
            seen |= frontier;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !seen;
                seen |= fresh;
                frontier |= fresh;
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components() == self.len()
    }

    pub fn is_linear_forest(&self) -> bool {
        self.is_forest() && (1..=self.len()).all(|v| self.degree(v) <= 2)
    }

    pub fn is_path(&self) -> bool {
        self.is_connected() && self.is_linear_forest()
    }

    pub fn is_cycle(&self) -> bool {
        self.len() >= 3 && self.is_connected() && (1..=self.len()).all(|v| self.degree(v) == 2)
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.len();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let c = color[v].expect("colored before push");
                for w in 0..n {
                    if self.adjacent(v, w) {
                        match color[w] {
                            None => {
                                color[w] = Some(!c);
                                stack.push(w);
                            }
                            Some(cw) if cw == c => return false,
                            _ => {}
                        }
                    }
                }
            }
        }
        true
    }

    /// No induced `P_4`.
    pub fn is_cograph(&self) -> bool {
        induced_embeds(&Graph::path(4), &self.unlabeled()).is_none()
    }

    /// The smallest module containing vertices `a` and `b` (0-based), as a bitmask.
    fn module_closure(&self, a: usize, b: usize) -> u64 {
        let n = self.len();
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut module = (1u64 << a) | (1u64 << b);
        loop {
            let outside = all & !module;
            let mut grow = 0u64;
            let mut rest = outside;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let nbrs = self.adj[w] & module;
                if nbrs != 0 && nbrs != module {
                    grow |= 1 << w;
                }
            }
            if grow == 0 {
                return module;
            }
            module |= grow;
        }
    }

    /// No module `X` with `1 < |X| < n`.
    ///
    /// Every nontrivial module contains a pair, and the module generated by a
    /// pair is the intersection of all modules containing it, so it suffices
    /// to close every pair.
    pub fn is_prime(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (a + 1..n).all(|b| self.module_closure(a, b).count_ones() as usize == n)
        })
    }

    pub fn classify(&self) -> Classification {
        Classification {
            is_path: self.is_path(),
            is_cycle: self.is_cycle(),
            is_linear_forest: self.is_linear_forest(),
            is_forest: self.is_forest(),
            is_bipartite: self.is_bipartite(),
            is_connected: self.is_connected(),
            is_cograph: self.is_cograph(),
            is_prime: self.is_prime(),
        }
    }

    fn unlabeled(&self) -> Graph {
        Graph {
            adj: self.adj.clone(),
            labels: None,
        }
    }

    /// DOT text; labels, when present, are named through `poset`.
    pub fn to_dot(&self, name: &str, poset: Option<&FinitePoset>) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in 1..=self.len() {
            match (&self.labels, poset) {
                (Some(l), Some(p)) => {
                    writeln!(out, "  {v} [label=\"{v}:{}\"];", p.name(l[v - 1])).unwrap()
                }
                (Some(l), None) => writeln!(out, "  {v} [label=\"{v}:{}\"];", l[v - 1]).unwrap(),
                _ => writeln!(out, "  {v};").unwrap(),
            }
        }
        for (a, b) in self.edges() {
            writeln!(out, "  {a} -- {b};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_adjacency(&self, poset: Option<&FinitePoset>) -> AdjacencyJson {
        AdjacencyJson {
            vertices: self.len(),
            adjacency: (1..=self.len())
                .map(|a| (1..=self.len()).filter(|&b| self.has_edge(a, b)).collect())
                .collect(),
            labels: self.labels.as_ref().map(|l| {
                l.iter()
                    .map(|&x| poset.map_or_else(|| x.to_string(), |p| p.name(x).to_string()))
                    .collect()
            }),
        }
    }

    pub fn from_adjacency(json: &AdjacencyJson) -> Result<Self> {
        if json.adjacency.len() != json.vertices {
            return Err(Error::ArityMismatch {
                expected: json.vertices,
                got: json.adjacency.len(),
            });
        }
        let edges: Vec<_> = json
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().map(move |&b| (a + 1, b)))
            .collect();
        let g = Graph::new(json.vertices, &edges)?;
        for (a, b) in &edges {
            if !json.adjacency.get(b - 1).is_some_and(|ns| ns.contains(a)) {
                return Err(Error::InvalidInput(format!("edge {a}-{b} is not symmetric")));
            }
        }
        Ok(g)
    }
}

/// `G_π`: vertices are positions, edges are inversions.
pub fn inversion_graph(pi: &Permutation) -> Graph {
    let v = pi.values();
    let mut g = Graph::edgeless(v.len());
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// `(G_π, ℓ_π)`.
pub fn labeled_inversion_graph(p: &LabeledPermutation) -> Graph {
    let mut g = inversion_graph(&p.perm);
    g.labels = Some(p.labels.clone());
    g
}

/// Backtracking induced-subgraph search. `compat(h_vertex, g_vertex)` filters
/// candidate images (0-based). Returns the 0-based image of each `h` vertex.
fn search<F>(h: &Graph, g: &Graph, compat: F, mut on_found: impl FnMut(&[usize]) -> bool)
where
    F: Fn(usize, usize) -> bool,
{
    let k = h.len();
    if k > g.len() {
        return;
    }
    // Map high-degree vertices first, then vertices adjacent to already-ordered ones.
    let mut order: Vec<usize> = Vec::with_capacity(k);
    let mut placed = 0u64;
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((h.adj[v] & placed).count_ones(), h.adj[v].count_ones(), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed |= 1 << next;
        order.push(next);
    }

    let mut image = vec![usize::MAX; k];
    let mut used = 0u64;
    fn go<F: Fn(usize, usize) -> bool>(
        depth: usize,
        order: &[usize],
        h: &Graph,
        g: &Graph,
        compat: &F,
        image: &mut [usize],
        used: &mut u64,
        on_found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return on_found(image);
        }
        let v = order[depth];
        let dv = h.adj[v].count_ones();
        for w in 0..g.len() {
            if *used >> w & 1 == 1 || g.adj[w].count_ones() < dv || !compat(v, w) {
                continue;
            }
            let consistent = order[..depth]
                .iter()
                .all(|&u| h.adjacent(u, v) == g.adjacent(image[u], w));
            if !consistent {
                continue;
            }
            image[v] = w;
            *used |= 1 << w;
            if go(depth + 1, order, h, g, compat, image, used, on_found) {
                return true;
            }
            *used &= !(1 << w);
            image[v] = usize::MAX;
        }
        false
    }
    go(0, &order, h, g, &compat, &mut image, &mut used, &mut on_found);
}

fn first_embedding<F: Fn(usize, usize) -> bool>(h: &Graph, g: &Graph, compat: F) -> Option<Vec<usize>> {
    let mut found = None;
    search(h, g, compat, |img| {
        found = Some(img.iter().map(|&w| w + 1).collect());
        true
    });
    found
}

/// An induced copy of `h` in `g`, ignoring labels; `witness[i]` is the image of vertex `i + 1`.
pub fn induced_embeds(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    first_embedding(h, g, |_, _| true)
}

/// Labeled induced subgraph: each label of `h` must be `≤` its image's label.
pub fn labeled_induced_embeds(h: &Graph, g: &Graph, poset: &FinitePoset) -> Result<Option<Vec<usize>>> {
    let (hl, gl) = both_labels(h, g, poset)?;
    Ok(first_embedding(h, g, |v, w| poset.leq(hl[v], gl[w])))
}

fn both_labels<'a>(h: &'a Graph, g: &'a Graph, poset: &FinitePoset) -> Result<(&'a [usize], &'a [usize])> {
    let hl = h.labels().ok_or_else(|| Error::InvalidInput("graph has no labels".into()))?;
    let gl = g.labels().ok_or_else(|| Error::InvalidInput("graph has no labels".into()))?;
    for &l in hl.iter().chain(gl) {
        poset.check(l)?;
    }
    Ok((hl, gl))
}

fn degree_sequence(g: &Graph) -> Vec<u32> {
    let mut d: Vec<u32> = g.adj.iter().map(|m| m.count_ones()).collect();
    d.sort_unstable();
    d
}

/// Isomorphism; labels, when both graphs carry them, must match exactly.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.len() != h.len() || g.edge_count() != h.edge_count() || degree_sequence(g) != degree_sequence(h) {
        return false;
    }
    match (g.labels(), h.labels()) {
        (Some(gl), Some(hl)) => first_embedding(g, h, |v, w| gl[v] == hl[w]).is_some(),
        _ => induced_embeds(g, h).is_some(),
    }
}

/// All automorphisms as 1-based images, lexicographically sorted. Labels must be fixed.
pub fn automorphisms(g: &Graph, limit: usize) -> Result<Vec<Vec<usize>>> {
    guard("automorphism vertices", g.len(), limit)?;
    let mut out = Vec::new();
    let labels = g.labels();
    search(
        g,
        g,
        |v, w| labels.is_none_or(|l| l[v] == l[w]),
        |img| {
            out.push(img.iter().map(|&w| w + 1).collect());
            false
        },
    );
    out.sort();
    Ok(out)
}

/// Every permutation of length `n` whose inversion graph is isomorphic to `g`.
pub fn preimages(g: &Graph, n: usize, limit: usize) -> Result<BTreeSet<Permutation>> {
    guard("preimage length", n, limit)?;
    if g.len() != n {
        return Ok(BTreeSet::new());
    }
    let target = g.unlabeled();
    Ok(Permutation::all(n)
        .filter(|pi| pi.inversions() == target.edge_count() && is_isomorphic(&inversion_graph(pi), &target))
        .collect())
}

/// The four symmetry images `{σ, σ⁻¹, σ^rc, (σ^rc)⁻¹}`.
pub fn symmetry_class(sigma: &Permutation) -> BTreeSet<Permutation> {
    std::iter::once(sigma.clone())
        .chain(Symmetry::ALL.iter().map(|&s| sigma.apply(s)))
        .collect()
}

/// Automorphisms of `G_σ` induced by symmetries fixing `σ` (identity included).
pub fn symmetry_automorphisms(sigma: &Permutation) -> BTreeSet<Vec<usize>> {
    std::iter::once((1..=sigma.len()).collect())
        .chain(
            Symmetry::ALL
                .iter()
                .filter(|&&s| sigma.apply(s) == *sigma)
                .map(|&s| sigma.symmetry_position_map(s)),
        )
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labels::{FILLED, HOLLOW};
    use crate::perm::perm;
    use itertools::Itertools;

    fn brute_is_prime(g: &Graph) -> bool {
        let n = g.len();
        (0u64..1 << n).all(|x| {
            let size = x.count_ones() as usize;
            if size <= 1 || size >= n {
                return true;
            }
            let is_module = (0..n).filter(|&w| x >> w & 1 == 0).all(|w| {
                let nb = g.adj[w] & x;
                nb == 0 || nb == x
            });
            !is_module
        })
    }

    fn brute_induced(h: &Graph, g: &Graph) -> bool {
        (1..=g.len())
            .permutations(h.len())
            .any(|img| g.induced(&img).edges() == h.edges())
    }

    #[test]
    fn inversion_graph_examples() {
        assert_eq!(inversion_graph(&perm("4321")), Graph::complete(4));
        assert_eq!(inversion_graph(&perm("12345")).edge_count(), 0);
        assert_eq!(
            inversion_graph(&perm("25413")).edges(),
            vec![(1, 4), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5)]
        );
    }

    #[test]
    fn induced_embedding_examples() {
        let w = induced_embeds(&Graph::path(4), &inversion_graph(&perm("36285714"))).unwrap();
        let g = inversion_graph(&perm("36285714"));
        assert_eq!(g.induced(&w).edges(), Graph::path(4).edges());
        assert!(induced_embeds(&Graph::complete(3), &Graph::complete(4)).is_some());
        assert!(induced_embeds(&Graph::path(3), &Graph::complete(4)).is_none());
        assert!(induced_embeds(&Graph::edgeless(0), &Graph::edgeless(0)).is_some());
        assert!(induced_embeds(&Graph::path(3), &Graph::path(2)).is_none());
    }

    #[test]
    fn induced_matches_brute_force() {
        let hs = [
            Graph::path(3),
            Graph::path(4),
            Graph::claw(),
            Graph::cycle(4).unwrap(),
            Graph::complete(3),
            Graph::edgeless(3),
        ];
        for pi in Permutation::all(6).step_by(7) {
            let g = inversion_graph(&pi);
            for h in &hs {
                assert_eq!(induced_embeds(h, &g).is_some(), brute_induced(h, &g), "{h:?} in {pi}");
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        assert!(is_isomorphic(&inversion_graph(&perm("2413")), &inversion_graph(&perm("3142"))));
        assert!(is_isomorphic(&inversion_graph(&perm("2413")), &Graph::path(4)));
        assert!(!is_isomorphic(&Graph::complete(3), &Graph::path(3)));
        let a = labeled_inversion_graph(
            &LabeledPermutation::new(perm("321"), vec![HOLLOW, FILLED, FILLED]).unwrap(),
        );
        let b = labeled_inversion_graph(
            &LabeledPermutation::new(perm("321"), vec![FILLED, HOLLOW, FILLED]).unwrap(),
        );
        assert!(is_isomorphic(&a, &b));
        let c = labeled_inversion_graph(
            &LabeledPermutation::new(perm("321"), vec![FILLED, HOLLOW, HOLLOW]).unwrap(),
        );
        assert!(!is_isomorphic(&a, &c));
    }

    #[test]
    fn labeled_embedding_respects_poset() {
        let two = FinitePoset::two_antichain();
        let h = Graph::path(2).with_labels(vec![FILLED, FILLED]).unwrap();
        let g = Graph::path(3).with_labels(vec![FILLED, HOLLOW, FILLED]).unwrap();
        assert!(labeled_induced_embeds(&h, &g, &two).unwrap().is_none());
        let g2 = Graph::path(3).with_labels(vec![FILLED, FILLED, HOLLOW]).unwrap();
        assert_eq!(labeled_induced_embeds(&h, &g2, &two).unwrap(), Some(vec![1, 2]));
        assert!(labeled_induced_embeds(&Graph::path(2), &g2, &two).is_err());
    }

    #[test]
    fn classification_examples() {
        let c = inversion_graph(&perm("2341")).classify();
        assert!(!c.is_path && !c.is_linear_forest && c.is_forest);
        assert!(inversion_graph(&perm("321")).classify().is_cycle);
        let c4 = inversion_graph(&perm("3412")).classify();
        assert!(c4.is_cycle && c4.is_bipartite && !c4.is_forest);
        let p4 = inversion_graph(&perm("2413")).classify();
        assert!(p4.is_path && p4.is_prime && !p4.is_cograph);
        assert!(!Graph::cycle(5).unwrap().is_bipartite());
        assert!(!Graph::edgeless(0).is_connected());
        assert!(Graph::path(1).is_path());
    }

    #[test]
    fn prime_matches_brute_force() {
        for n in 0..=6 {
            for pi in Permutation::all(n) {
                let g = inversion_graph(&pi);
                assert_eq!(g.is_prime(), brute_is_prime(&g), "{pi}");
            }
        }
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.is_prime(), brute_is_prime(&c5));
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(automorphisms(&Graph::complete(3), AUTOMORPHISM_LIMIT).unwrap().len(), 6);
        assert_eq!(
            automorphisms(&Graph::path(4), AUTOMORPHISM_LIMIT).unwrap(),
            vec![vec![1, 2, 3, 4], vec![4, 3, 2, 1]]
        );
        let s = perm("2413");
        let auts = automorphisms(&inversion_graph(&s), AUTOMORPHISM_LIMIT).unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts.into_iter().collect::<BTreeSet<_>>(), symmetry_automorphisms(&s));
        assert!(matches!(
            automorphisms(&Graph::edgeless(11), AUTOMORPHISM_LIMIT),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn preimage_examples() {
        let p4: Vec<_> = preimages(&Graph::path(4), 4, PREIMAGE_LIMIT).unwrap().into_iter().collect();
        assert_eq!(p4, vec![perm("2413"), perm("3142")]);
        let k3: Vec<_> = preimages(&Graph::complete(3), 3, PREIMAGE_LIMIT).unwrap().into_iter().collect();
        assert_eq!(k3, vec![perm("321")]);
        assert!(preimages(&Graph::cycle(5).unwrap(), 5, PREIMAGE_LIMIT).unwrap().is_empty());
        assert!(preimages(&Graph::path(9), 9, PREIMAGE_LIMIT).is_err());
    }

    #[test]
    fn named_graphs_and_formats() {
        assert_eq!(Graph::named("K4").unwrap(), Graph::complete(4));
        assert_eq!(Graph::named("C5").unwrap().edge_count(), 5);
        assert!(Graph::named("Z3").is_err());
        let g = inversion_graph(&perm("231"));
        let dot = g.to_dot("G", None);
        assert!(dot.contains("1 -- 3;") && dot.contains("2 -- 3;"));
        let json = g.to_adjacency(None);
        assert_eq!(json.adjacency, vec![vec![3], vec![3], vec![1, 2]]);
        assert_eq!(Graph::from_adjacency(&json).unwrap(), g);
        let bad = AdjacencyJson {
            vertices: 2,
            adjacency: vec![vec![2], vec![]],
            labels: None,
        };
        assert!(Graph::from_adjacency(&bad).is_err());
    }

    #[test]
    fn symmetry_images_have_isomorphic_graphs() {
        for n in 0..=7 {
            for pi in Permutation::all(n) {
                let g = inversion_graph(&pi);
                for s in Symmetry::ALL {
                    assert!(is_isomorphic(&g, &inversion_graph(&pi.apply(s))));
                }
            }
        }
    }
}
