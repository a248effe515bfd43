//! Monotone and geometric grid classes of 0/±1 matrices.
//!
//! Matrices use Cartesian indexing: `M(k, ℓ)` is column `k` from the left and
//! row `ℓ` from the bottom, both 1-based. The JSON form lists rows top first.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num::{BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::classes::PermClass;
use crate::error::{guard, Error, Result};
use crate::feasibility::{solve, Inequality};
use crate::invgraph::Graph;
use crate::perm::{reduce, Direction, Permutation};

pub const GRID_MEMBER_LIMIT: usize = 12;
pub const GEOM_MEMBER_LIMIT: usize = 10;
pub const GRID_ENUM_LIMIT: usize = 7;
pub const GRIDDABILITY_LIMIT: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixJson", into = "MatrixJson")]
pub struct Matrix {
    cols: usize,
    rows: usize,
    /// Column-major: `cells[(k-1)*rows + (ℓ-1)]`.
    cells: Vec<i8>,
}

/// `{"cols": t, "rows": u, "entries": [[..top row..], .., [..bottom row..]]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub cols: usize,
    pub rows: usize,
    pub entries: Vec<Vec<i8>>,
}

impl TryFrom<MatrixJson> for Matrix {
    type Error = Error;
    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::InvalidInput(format!(
                "entries must be {} rows of {} columns",
                j.rows, j.cols
            )));
        }
        Matrix::from_rows_top_first(&j.entries)
    }
}

impl From<Matrix> for MatrixJson {
    fn from(m: Matrix) -> Self {
        MatrixJson {
            cols: m.cols,
            rows: m.rows,
            entries: m.rows_top_first(),
        }
    }
}

impl Matrix {
    /// Builds from rows listed top to bottom, as the matrix is displayed.
    pub fn from_rows_top_first(rows: &[Vec<i8>]) -> Result<Self> {
        let u = rows.len();
        let t = rows.first().map_or(0, |r| r.len());
        if t == 0 || u == 0 {
            return Err(Error::InvalidInput("a grid matrix needs at least one cell".into()));
        }
        if rows.iter().any(|r| r.len() != t) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let mut cells = vec![0; t * u];
        for (r, row) in rows.iter().enumerate() {
            for (c, &e) in row.iter().enumerate() {
                if !(-1..=1).contains(&e) {
                    return Err(Error::InvalidInput(format!("entry {e} is not 0 or ±1")));
                }
                cells[c * u + (u - 1 - r)] = e;
            }
        }
        Ok(Matrix { cols: t, rows: u, cells })
    }

    /// The matrix whose cell graph is a 4-cycle: increasing on the main
    /// diagonal cells, decreasing off it.
    pub fn x() -> Self {
        Matrix::from_rows_top_first(&[vec![-1, 1], vec![1, -1]]).expect("valid X matrix")
    }

    /// A `1 × t` row vector.
    pub fn row_vector(entries: &[i8]) -> Result<Self> {
        Matrix::from_rows_top_first(&[entries.to_vec()])
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `M(k, ℓ)`, 1-based Cartesian.
    pub fn get(&self, k: usize, l: usize) -> i8 {
        self.cells[(k - 1) * self.rows + (l - 1)]
    }

    pub fn rows_top_first(&self) -> Vec<Vec<i8>> {
        (1..=self.rows)
            .rev()
            .map(|l| (1..=self.cols).map(|k| self.get(k, l)).collect())
            .collect()
    }

    /// Nonzero cells in (column, row) order.
    pub fn nonzero_cells(&self) -> Vec<(usize, usize)> {
        (1..=self.cols)
            .cartesian_product(1..=self.rows)
            .filter(|&(k, l)| self.get(k, l) != 0)
            .collect()
    }

    /// Every 0/±1 matrix of the given shape, in a fixed order.
    pub fn all_of_shape(cols: usize, rows: usize) -> Vec<Matrix> {
        (0..cols * rows)
            .map(|_| [-1i8, 0, 1])
            .multi_cartesian_product()
            .map(|cells| Matrix { cols, rows, cells })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.rows_top_first();
        for (i, r) in rows.iter().enumerate() {
            if i > 0 {
                write!(f, " / ")?;
            }
            write!(f, "{}", r.iter().map(|e| format!("{e:+}").replace("+0", "0")).join(" "))?;
        }
        Ok(())
    }
}

/// Vertices are the nonzero cells in [`Matrix::nonzero_cells`] order; two cells
/// are adjacent when they share a row or column with no nonzero cell between.
pub fn cell_graph(m: &Matrix) -> (Graph, Vec<(usize, usize)>) {
    let cells = m.nonzero_cells();
    let mut edges = Vec::new();
    for (i, &(k1, l1)) in cells.iter().enumerate() {
        for (j, &(k2, l2)) in cells.iter().enumerate().skip(i + 1) {
            let between_empty = if k1 == k2 {
                (l1.min(l2) + 1..l1.max(l2)).all(|l| m.get(k1, l) == 0)
            } else if l1 == l2 {
                (k1.min(k2) + 1..k1.max(k2)).all(|k| m.get(k, l1) == 0)
            } else {
                false
            };
            if between_empty {
                edges.push((i + 1, j + 1));
            }
        }
    }
    (Graph::new(cells.len(), &edges).expect("cell count is small"), cells)
}

/// A permutation with a cell `(column, row)` for each position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GriddedPermutation {
    pub perm: Permutation,
    pub cells: Vec<(usize, usize)>,
}

impl GriddedPermutation {
    /// Checks the gridding from scratch: cells inside the matrix and nonzero, columns
    /// weakly increasing left to right, rows weakly increasing bottom to top, and
    /// every cell's entries monotone in its direction.
    pub fn validate(&self, m: &Matrix) -> Result<()> {
        let n = self.perm.len();
        if self.cells.len() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: self.cells.len(),
            });
        }
        for &(k, l) in &self.cells {
            if k == 0 || k > m.cols() || l == 0 || l > m.rows() || m.get(k, l) == 0 {
                return Err(Error::InvalidInput(format!("cell ({k},{l}) is not a nonzero cell")));
            }
        }
        if self.cells.windows(2).any(|w| w[0].0 > w[1].0) {
            return Err(Error::InvalidInput("columns decrease left to right".into()));
        }
        let inv = self.perm.inverse();
        if inv
            .values()
            .windows(2)
            .any(|w| self.cells[w[0] - 1].1 > self.cells[w[1] - 1].1)
        {
            return Err(Error::InvalidInput("rows decrease bottom to top".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.cells[i] == self.cells[j] {
                    let (k, l) = self.cells[i];
                    let up = self.perm.values()[i] < self.perm.values()[j];
                    if up != (m.get(k, l) == 1) {
                        return Err(Error::InvalidInput(format!("cell ({k},{l}) is not monotone")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Weakly increasing interior cut sequences `0 ≤ c_1 ≤ … ≤ c_{parts-1} ≤ n`, lexicographic.
fn cut_sequences(n: usize, parts: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n)
        .combinations_with_replacement(parts - 1)
}

fn block_of(cuts: &[usize], i: usize) -> usize {
    // i is 1-based; block b (1-based) holds cuts[b-2] < i <= cuts[b-1]
    cuts.iter().take_while(|&&c| c < i).count() + 1
}

/// Every legal gridding of `pi` in `m`: column cuts outer, row cuts inner, both lexicographic.
pub fn griddings<'a>(pi: &'a Permutation, m: &'a Matrix) -> impl Iterator<Item = GriddedPermutation> + 'a {
    let n = pi.len();
    let rows = m.rows();
    cut_sequences(n, m.cols()).flat_map(move |ccuts| {
        let col_of: Vec<usize> = (1..=n).map(|i| block_of(&ccuts, i)).collect();
        cut_sequences(n, rows).filter_map(move |rcuts| {
            let cells: Vec<(usize, usize)> = (1..=n)
                .map(|i| (col_of[i - 1], block_of(&rcuts, pi.at(i))))
                .collect();
            legal(pi, m, &cells).then(|| GriddedPermutation {
                perm: pi.clone(),
                cells,
            })
        })
    })
}

fn legal(pi: &Permutation, m: &Matrix, cells: &[(usize, usize)]) -> bool {
    let v = pi.values();
    let mut last: Vec<Option<usize>> = vec![None; m.cols() * m.rows()];
    for (i, &(k, l)) in cells.iter().enumerate() {
        let sign = m.get(k, l);
        if sign == 0 {
            return false;
        }
        let slot = &mut last[(k - 1) * m.rows() + (l - 1)];
        if let Some(prev) = *slot {
            if (v[i] > prev) != (sign == 1) {
                return false;
            }
        }
        *slot = Some(v[i]);
    }
    true
}

/// Monotone grid class membership with the first legal gridding found.
pub fn grid_member(pi: &Permutation, m: &Matrix, limit: usize) -> Result<Option<GriddedPermutation>> {
    guard("grid membership length", pi.len(), limit)?;
    Ok(griddings(pi, m).next())
}

/// A drawing of a permutation on the standard figure: the gridding plus one
/// parameter `t ∈ (0, 1)` per entry, placing entry `i` at
/// `(k-1+t, ℓ-1+t)` in a `+1` cell and `(k-1+t, ℓ-t)` in a `-1` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomWitness {
    pub gridded: GriddedPermutation,
    pub params: Vec<BigRational>,
}

impl GeomWitness {
    pub fn points(&self, m: &Matrix) -> Vec<(BigRational, BigRational)> {
        self.gridded
            .cells
            .iter()
            .zip(&self.params)
            .map(|(&(k, l), t)| {
                let x = BigRational::from_integer((k as i64 - 1).into()) + t;
                let y = if m.get(k, l) == 1 {
                    BigRational::from_integer((l as i64 - 1).into()) + t
                } else {
                    BigRational::from_integer((l as i64).into()) - t
                };
                (x, y)
            })
            .collect()
    }

    /// Recomputes the points and checks they lie on the figure's open segments,
    /// are in general position, and reduce to the permutation.
    pub fn verify(&self, m: &Matrix) -> Result<()> {
        self.gridded.validate(m)?;
        if self.params.iter().any(|t| !(t > &BigRational::zero() && t < &BigRational::one())) {
            return Err(Error::InvalidInput("parameter outside (0, 1)".into()));
        }
        let pts = self.points(m);
        let xs: BTreeSet<_> = pts.iter().map(|p| &p.0).collect();
        let ys: BTreeSet<_> = pts.iter().map(|p| &p.1).collect();
        if xs.len() != pts.len() || ys.len() != pts.len() {
            return Err(Error::InvalidInput("points share a coordinate".into()));
        }
        let mut sorted = pts.clone();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let ys: Vec<_> = sorted.into_iter().map(|p| p.1).collect();
        if reduce(&ys)? != self.gridded.perm {
            return Err(Error::InvalidInput("points do not reduce to the permutation".into()));
        }
        Ok(())
    }

    pub fn param_strings(&self) -> Vec<String> {
        self.params.iter().map(|t| t.to_string()).collect()
    }
}

/// The linear system whose solutions are drawings of `g` on the standard figure.
pub fn drawing_constraints(g: &GriddedPermutation, m: &Matrix) -> Vec<Inequality> {
    let n = g.perm.len();
    let mut sys = Vec::new();
    for i in 0..n {
        sys.push(Inequality::sparse(n, &[(i, -1)], 0, true));
        sys.push(Inequality::sparse(n, &[(i, 1)], 1, true));
    }
    // Same column: left to right means increasing t.
    for k in 1..=m.cols() {
        let members: Vec<usize> = (0..n).filter(|&i| g.cells[i].0 == k).collect();
        for w in members.windows(2) {
            sys.push(Inequality::sparse(n, &[(w[0], 1), (w[1], -1)], 0, true));
        }
    }
    // Same row: bottom to top in value order.
    let by_value = g.perm.inverse();
    for l in 1..=m.rows() {
        let members: Vec<usize> = by_value
            .values()
            .iter()
            .map(|&pos| pos - 1)
            .filter(|&i| g.cells[i].1 == l)
            .collect();
        for w in members.windows(2) {
            let (p, qq) = (w[0], w[1]);
            let sp = m.get(g.cells[p].0, l);
            let sq = m.get(g.cells[qq].0, l);
            sys.push(match (sp, sq) {
                (1, 1) => Inequality::sparse(n, &[(p, 1), (qq, -1)], 0, true),
                (-1, -1) => Inequality::sparse(n, &[(qq, 1), (p, -1)], 0, true),
                (1, -1) => Inequality::sparse(n, &[(p, 1), (qq, 1)], 1, true),
                _ => Inequality::sparse(n, &[(p, -1), (qq, -1)], -1, true),
            });
        }
    }
    sys
}

/// Geometric grid class membership: some legal gridding admits a drawing.
pub fn geom_member(pi: &Permutation, m: &Matrix, limit: usize) -> Result<Option<GeomWitness>> {
    guard("geometric membership length", pi.len(), limit)?;
    Ok(griddings(pi, m).find_map(|g| {
        let sys = drawing_constraints(&g, m);
        solve(&sys, pi.len()).map(|params| GeomWitness { gridded: g, params })
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    Monotone,
    Geometric,
}

impl std::str::FromStr for GridKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" | "grid" => Ok(GridKind::Monotone),
            "geometric" | "geom" => Ok(GridKind::Geometric),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Members of length `n`, lexicographic.
pub fn enumerate_grid(m: &Matrix, n: usize, kind: GridKind, limit: usize) -> Result<Vec<Permutation>> {
    guard("grid enumeration length", n, limit)?;
    Ok(Permutation::all(n)
        .filter(|p| match kind {
            GridKind::Monotone => griddings(p, m).next().is_some(),
            GridKind::Geometric => griddings(p, m).any(|g| solve(&drawing_constraints(&g, m), n).is_some()),
        })
        .collect())
}

/// Chain statuses for the two canonical griddability obstructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GriddabilityReport {
    /// `sum_chain[j-1]`: whether `21 ⊕ … ⊕ 21` (`j` copies) lies in the class.
    pub sum_chain: Vec<bool>,
    /// `skew_chain[j-1]`: whether `12 ⊖ … ⊖ 12` (`j` copies) lies in the class.
    pub skew_chain: Vec<bool>,
    pub note: &'static str,
}

pub const GRIDDABILITY_NOTE: &str = "chain statuses only; \"does not contain both\" reads either as \
not (A and B) or as (not A) and (not B), so no griddability verdict is given";

pub fn griddability_evidence(c: &PermClass, depth: usize, limit: usize) -> Result<GriddabilityReport> {
    guard("griddability chain length", 2 * depth, limit)?;
    let chain = |unit: Permutation, dir: Direction| -> Vec<bool> {
        (1..=depth)
            .map(|j| c.member(&Permutation::sum_all(&vec![unit.clone(); j], dir)))
            .collect()
    };
    Ok(GriddabilityReport {
        sum_chain: chain(Permutation::decreasing(2), Direction::Direct),
        skew_chain: chain(Permutation::identity(2), Direction::Skew),
        note: GRIDDABILITY_NOTE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;

    fn brute_grid(pi: &Permutation, m: &Matrix) -> bool {
        // Every assignment of cells to entries, validated independently.
        let cells = m.nonzero_cells();
        (0..pi.len())
            .map(|_| cells.iter().copied())
            .multi_cartesian_product()
            .chain((pi.is_empty()).then(Vec::new))
            .any(|assign| {
                GriddedPermutation {
                    perm: pi.clone(),
                    cells: assign,
                }
                .validate(m)
                .is_ok()
            })
    }

    #[test]
    fn matrix_indexing_and_json() {
        let x = Matrix::x();
        assert_eq!((x.get(1, 1), x.get(2, 1), x.get(1, 2), x.get(2, 2)), (1, -1, -1, 1));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"cols":2,"rows":2,"entries":[[-1,1],[1,-1]]}"#);
        assert_eq!(serde_json::from_str::<Matrix>(&s).unwrap(), x);
        assert!(serde_json::from_str::<Matrix>(r#"{"cols":2,"rows":1,"entries":[[1]]}"#).is_err());
        assert!(Matrix::from_rows_top_first(&[vec![2]]).is_err());
        assert_eq!(Matrix::all_of_shape(2, 1).len(), 9);
    }

    #[test]
    fn cell_graph_examples() {
        let (g, _) = cell_graph(&Matrix::x());
        assert!(g.is_cycle() && g.len() == 4);
        let (p, _) = cell_graph(&Matrix::row_vector(&[-1, 1, -1, 1]).unwrap());
        assert!(p.is_path() && p.len() == 4);
        let (k1, _) = cell_graph(&Matrix::row_vector(&[1]).unwrap());
        assert_eq!(k1.len(), 1);
        let (gap, _) = cell_graph(&Matrix::row_vector(&[1, 0, -1]).unwrap());
        assert_eq!(gap.edges(), vec![(1, 2)]);
        let (l, cells) = cell_graph(&Matrix::from_rows_top_first(&[vec![1, 0], vec![-1, 1]]).unwrap());
        assert_eq!(cells, vec![(1, 1), (1, 2), (2, 1)]);
        assert!(l.is_path());
    }

    #[test]
    fn grid_membership_examples() {
        let x = Matrix::x();
        let g = grid_member(&perm("3142"), &x, GRID_MEMBER_LIMIT).unwrap().unwrap();
        g.validate(&x).unwrap();
        assert!(grid_member(&perm("2143"), &x, GRID_MEMBER_LIMIT).unwrap().is_none());
        assert!(grid_member(&Permutation::empty(), &x, GRID_MEMBER_LIMIT).unwrap().is_some());
        assert!(grid_member(&Permutation::identity(13), &x, GRID_MEMBER_LIMIT).is_err());
    }

    #[test]
    fn grid_search_matches_brute_assignment() {
        let ms = [
            Matrix::x(),
            Matrix::from_rows_top_first(&[vec![1, 0], vec![-1, 1]]).unwrap(),
            Matrix::row_vector(&[-1, 1]).unwrap(),
            Matrix::from_rows_top_first(&[vec![1], vec![1]]).unwrap(),
        ];
        for m in &ms {
            for n in 0..=5 {
                for p in Permutation::all(n) {
                    assert_eq!(grid_member(&p, m, 12).unwrap().is_some(), brute_grid(&p, m), "{p} in {m}");
                }
            }
        }
    }

    #[test]
    fn geometric_examples() {
        let x = Matrix::x();
        assert!(geom_member(&perm("3142"), &x, GEOM_MEMBER_LIMIT).unwrap().is_none());
        let m = Matrix::from_rows_top_first(&[vec![-1, 0, 1], vec![1, -1, -1]]).unwrap();
        let w = geom_member(&perm("7143526"), &m, GEOM_MEMBER_LIMIT).unwrap().unwrap();
        w.verify(&m).unwrap();
        let single = Matrix::row_vector(&[-1]).unwrap();
        let w = geom_member(&perm("321"), &single, GEOM_MEMBER_LIMIT).unwrap().unwrap();
        w.verify(&single).unwrap();
        assert!(geom_member(&Permutation::identity(11), &single, GEOM_MEMBER_LIMIT).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let x = Matrix::x();
        let mono = enumerate_grid(&x, 4, GridKind::Monotone, GRID_ENUM_LIMIT).unwrap();
        let geo = enumerate_grid(&x, 4, GridKind::Geometric, GRID_ENUM_LIMIT).unwrap();
        assert_eq!((mono.len(), geo.len()), (22, 20));
        let diff: Vec<_> = mono.iter().filter(|p| !geo.contains(p)).cloned().collect();
        assert_eq!(diff, vec![perm("2413"), perm("3142")]);
        let inc = Matrix::row_vector(&[1]).unwrap();
        for kind in [GridKind::Monotone, GridKind::Geometric] {
            assert_eq!(enumerate_grid(&inc, 5, kind, GRID_ENUM_LIMIT).unwrap(), vec![perm("12345")]);
        }
    }

    #[test]
    fn geometric_witnesses_verify() {
        let ms = [Matrix::x(), Matrix::from_rows_top_first(&[vec![1, -1], vec![0, 1]]).unwrap()];
        for m in &ms {
            for n in 0..=5 {
                for p in Permutation::all(n) {
                    if let Some(w) = geom_member(&p, m, GEOM_MEMBER_LIMIT).unwrap() {
                        w.verify(m).unwrap();
                        assert!(grid_member(&p, m, GRID_MEMBER_LIMIT).unwrap().is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn griddability_examples() {
        let r = griddability_evidence(&"321".parse().unwrap(), 3, GRIDDABILITY_LIMIT).unwrap();
        assert_eq!(r.sum_chain, vec![true, true, true]);
        assert_eq!(r.skew_chain, vec![true, true, false]);
        let r = griddability_evidence(&"21".parse().unwrap(), 2, GRIDDABILITY_LIMIT).unwrap();
        assert_eq!((r.sum_chain, r.skew_chain), (vec![false, false], vec![true, false]));
        let r = griddability_evidence(&PermClass::all(), 2, GRIDDABILITY_LIMIT).unwrap();
        assert!(r.sum_chain.iter().chain(&r.skew_chain).all(|&b| b));
        assert!(griddability_evidence(&PermClass::all(), 5, GRIDDABILITY_LIMIT).is_err());
    }
}
