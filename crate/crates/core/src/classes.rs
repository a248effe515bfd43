//! Permutation classes given by finite bases, and derived classes given by
//! membership oracles: one-point extensions, unions, and sum, skew,
//! substitution and separable closures.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::decomposition::SubstitutionTree;
use crate::error::{guard, Error, Result};
use crate::invgraph::inversion_graph;
use crate::perm::{Direction, Permutation};

pub const ENUMERATE_LIMIT: usize = 10;
pub const BASIS_SEARCH_LIMIT: usize = 9;

/// `Av(B)` for a finite antichain `B`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassJson", into = "ClassJson")]
pub struct PermClass {
    basis: Vec<Permutation>,
    name: Option<String>,
}

/// `{"basis": [[2,4,1,3],[3,1,4,2]], "name": "separable"}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassJson {
    pub basis: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl TryFrom<ClassJson> for PermClass {
    type Error = Error;
    fn try_from(j: ClassJson) -> Result<Self> {
        let basis = j
            .basis
            .into_iter()
            .map(Permutation::new)
            .collect::<Result<Vec<_>>>()?;
        let mut c = PermClass::new(basis);
        c.name = j.name;
        Ok(c)
    }
}

impl From<PermClass> for ClassJson {
    fn from(c: PermClass) -> Self {
        ClassJson {
            basis: c.basis.into_iter().map(Vec::from).collect(),
            name: c.name,
        }
    }
}

/// Drops duplicates and every element containing another, then sorts.
pub fn minimalize(elements: impl IntoIterator<Item = Permutation>) -> Vec<Permutation> {
    let mut all: Vec<Permutation> = elements.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    all.sort_by_key(|p| p.len());
    let mut kept: Vec<Permutation> = Vec::new();
    for p in all {
        if !kept.iter().any(|q| p.contains(q)) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

impl PermClass {
    pub fn new(basis: impl IntoIterator<Item = Permutation>) -> Self {
        PermClass {
            basis: minimalize(basis),
            name: None,
        }
    }

    /// `Av()`, every permutation.
    pub fn all() -> Self {
        PermClass::new([])
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn basis(&self) -> &[Permutation] {
        &self.basis
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Length of the longest basis element, 0 for `Av()`.
    pub fn max_basis_len(&self) -> usize {
        self.basis.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    pub fn member(&self, pi: &Permutation) -> bool {
        self.basis.iter().all(|b| !pi.contains(b))
    }

    /// Members of length `n`, in lexicographic order.
    pub fn enumerate(&self, n: usize, limit: usize) -> Result<Vec<Permutation>> {
        guard("enumeration length", n, limit)?;
        Ok(Permutation::all(n).filter(|p| self.member(p)).collect())
    }
}

impl fmt::Display for PermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Av(")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if b.is_empty() {
                write!(f, "ε")?;
            } else {
                write!(f, "{}", b.to_compact())?;
            }
        }
        write!(f, ")")
    }
}

/// Parses `Av(2413, 3142)` or a bare list `2413,3142`; `Av()` is every permutation.
impl FromStr for PermClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix("Av(")
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(t);
        let basis = inner
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(Permutation::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(PermClass::new(basis))
    }
}

/// All `π` with `|π| ≤ nmax` rejected by `oracle` but whose one-point deletions are
/// all accepted. `oracle` must describe a downward-closed set.
pub fn minimal_nonmembers<F>(oracle: F, nmax: usize, limit: usize) -> Result<Vec<Permutation>>
where
    F: Fn(&Permutation) -> bool,
{
    guard("basis search length", nmax, limit)?;
    let mut out = Vec::new();
    let empty = Permutation::empty();
    if !oracle(&empty) {
        return Ok(vec![empty]);
    }
    let mut members: HashSet<Permutation> = HashSet::from([empty]);
    for _ in 1..=nmax {
        let mut next = HashSet::new();
        let mut candidates: BTreeSet<Permutation> = BTreeSet::new();
        for p in &members {
            candidates.extend(one_point_extensions(p));
        }
        for c in candidates {
            if !c.one_point_deletions().iter().all(|d| members.contains(d)) {
                continue;
            }
            if oracle(&c) {
                next.insert(c);
            } else {
                out.push(c);
            }
        }
        members = next;
        if members.is_empty() {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Every permutation obtained by inserting one new entry into `p`.
pub fn one_point_extensions(p: &Permutation) -> BTreeSet<Permutation> {
    let n = p.len();
    let mut out = BTreeSet::new();
    for pos in 0..=n {
        for val in 1..=n + 1 {
            let mut v: Vec<usize> = p
                .values()
                .iter()
                .map(|&x| if x >= val { x + 1 } else { x })
                .collect();
            v.insert(pos, val);
            out.insert(Permutation::new(v).expect("insertion yields a permutation"));
        }
    }
    out
}

/// Exact basis of `C ∪ D`. Every basis element is a union of a copy of a basis
/// element of each class, so the search stops at the sum of their longest lengths.
pub fn union_basis(c: &PermClass, d: &PermClass, limit: usize) -> Result<PermClass> {
    if c.basis.is_empty() || d.basis.is_empty() {
        return Ok(PermClass::all());
    }
    let bound = c.max_basis_len() + d.max_basis_len();
    let basis = minimal_nonmembers(|p| c.member(p) || d.member(p), bound, limit)?;
    Ok(PermClass::new(basis))
}

/// Membership in `C⁺¹`: `π = ε` or some one-point deletion of `π` lies in `C`.
pub fn plus_one_member(pi: &Permutation, c: &PermClass) -> bool {
    pi.is_empty() || pi.one_point_deletions().iter().any(|d| c.member(d))
}

/// Result of a basis search for `C⁺¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlusOneBasis {
    pub basis: PermClass,
    /// Longest length searched.
    pub searched_to: usize,
    /// `m(m+1)` for the longest basis length `m` of `C`.
    pub bound: usize,
    /// True when the search reached `bound`; otherwise the basis is only bounded evidence.
    pub exact: bool,
}

/// Basis of `C⁺¹`, searched up to `m(m+1)`. If that exceeds `limit`, an
/// `evidence_cap` gives an explicitly partial search; without one the guard refuses.
pub fn plus_one_basis(c: &PermClass, evidence_cap: Option<usize>, limit: usize) -> Result<PlusOneBasis> {
    let m = c.max_basis_len();
    let bound = m * (m + 1);
    let searched_to = if bound <= limit {
        bound
    } else if let Some(cap) = evidence_cap {
        guard("plus-one evidence cap", cap, limit)?;
        cap.min(bound)
    } else {
        return Err(Error::SizeGuard {
            what: "plus-one basis bound m(m+1)",
            requested: bound,
            limit,
        });
    };
    let basis = minimal_nonmembers(|p| plus_one_member(p, c), searched_to, limit)?;
    Ok(PlusOneBasis {
        basis: PermClass::new(basis),
        searched_to,
        bound,
        exact: searched_to == bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureKind {
    Sum,
    Skew,
    Substitution,
    Separable,
}

impl ClosureKind {
    pub const ALL: [ClosureKind; 4] = [
        ClosureKind::Sum,
        ClosureKind::Skew,
        ClosureKind::Substitution,
        ClosureKind::Separable,
    ];
}

impl FromStr for ClosureKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(ClosureKind::Sum),
            "skew" => Ok(ClosureKind::Skew),
            "substitution" => Ok(ClosureKind::Substitution),
            "separable" => Ok(ClosureKind::Separable),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Every simple pattern of `π`, sorted.
pub fn simple_patterns(pi: &Permutation) -> BTreeSet<Permutation> {
    (2..=pi.len())
        .flat_map(|k| pi.patterns_of_length(k))
        .filter(|p| p.is_simple())
        .collect()
}

/// Membership in a closure of `c`. Substitution closure is decided by the
/// simple patterns of `π`.
pub fn closure_member(pi: &Permutation, c: &PermClass, kind: ClosureKind) -> bool {
    match kind {
        ClosureKind::Sum => pi.components(Direction::Direct).iter().all(|x| c.member(x)),
        ClosureKind::Skew => pi.components(Direction::Skew).iter().all(|x| c.member(x)),
        ClosureKind::Substitution => {
            if pi.is_empty() {
                return c.member(pi);
            }
            c.member(&Permutation::identity(1)) && simple_patterns(pi).iter().all(|s| c.member(s))
        }
        ClosureKind::Separable => separable_closure_member(pi, c),
    }
}

fn separable_closure_member(pi: &Permutation, c: &PermClass) -> bool {
    if c.member(pi) {
        return true;
    }
    [Direction::Direct, Direction::Skew].into_iter().any(|dir| {
        let parts = pi.components(dir);
        parts.len() > 1 && parts.iter().all(|x| separable_closure_member(x, c))
    })
}

/// Substitution-closure membership read off the decomposition tree: every node
/// skeleton (`1` for leaves, `12`/`21` for sum/skew nodes) lies in `c`.
pub fn substitution_member_by_tree(pi: &Permutation, c: &PermClass) -> bool {
    match SubstitutionTree::decompose(pi) {
        Err(_) => c.member(pi),
        Ok(tree) => tree.nodes().iter().all(|node| c.member(&node.node_skeleton())),
    }
}

/// Simple members of `c` with length in `[2, nmax]`.
pub fn simples_in_class(c: &PermClass, nmax: usize, limit: usize) -> Result<Vec<Permutation>> {
    guard("simple search length", nmax, limit)?;
    Ok((2..=nmax)
        .flat_map(Permutation::all)
        .filter(|p| p.is_simple() && c.member(p))
        .collect())
}

/// All length-`n` patterns of members of `xs`.
pub fn downward_closure(xs: &[Permutation], n: usize) -> BTreeSet<Permutation> {
    xs.iter().flat_map(|x| x.patterns_of_length(n)).collect()
}

pub type Oracle = Box<dyn Fn(&Permutation) -> bool>;

/// A named downward-closed membership oracle for basis searches.
pub fn named_oracle(name: &str) -> Result<Oracle> {
    let av = |b: &[&str]| PermClass::new(b.iter().map(|s| s.parse().expect("literal permutation")));
    Ok(match name {
        "linear-forest" => Box::new(|p: &Permutation| inversion_graph(p).is_linear_forest()),
        "forest" => Box::new(|p: &Permutation| inversion_graph(p).is_forest()),
        "bipartite" => Box::new(|p: &Permutation| inversion_graph(p).is_bipartite()),
        "cograph" => Box::new(|p: &Permutation| inversion_graph(p).is_cograph()),
        "separable" => {
            let c = av(&["2413", "3142"]);
            Box::new(move |p: &Permutation| c.member(p))
        }
        "skew-merged" => {
            let c = av(&["2143", "3412"]);
            Box::new(move |p: &Permutation| c.member(p))
        }
        "skew-merged-separable" => {
            let c = av(&["2143", "3412", "2413", "3142"]);
            Box::new(move |p: &Permutation| c.member(p))
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

pub const NAMED_ORACLES: [&str; 7] = [
    "linear-forest",
    "forest",
    "bipartite",
    "cograph",
    "separable",
    "skew-merged",
    "skew-merged-separable",
];
