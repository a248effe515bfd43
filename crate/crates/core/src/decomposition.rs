//! Substitution decomposition trees.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{reduce_distinct, Direction, Permutation};

/// A node of a substitution decomposition tree.
///
/// Sum and skew nodes have at least two children, and a sum node never has a
/// sum child (likewise for skew), so simple skeletons always have length ≥ 4.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SubstitutionTree {
    Leaf,
    Sum(Vec<SubstitutionTree>),
    Skew(Vec<SubstitutionTree>),
    Simple {
        skeleton: Permutation,
        children: Vec<SubstitutionTree>,
    },
}

impl SubstitutionTree {
    /// Builds the tree of a nonempty permutation.
    pub fn decompose(pi: &Permutation) -> Result<Self> {
        if pi.is_empty() {
            return Err(Error::InvalidInput(
                "the empty permutation has no decomposition tree".into(),
            ));
        }
        Ok(decompose_nonempty(pi))
    }

    /// Recursive inflation back to a permutation.
    pub fn evaluate(&self) -> Permutation {
        match self {
            SubstitutionTree::Leaf => Permutation::identity(1),
            SubstitutionTree::Sum(ch) => {
                let parts: Vec<_> = ch.iter().map(|c| c.evaluate()).collect();
                Permutation::sum_all(&parts, Direction::Direct)
            }
            SubstitutionTree::Skew(ch) => {
                let parts: Vec<_> = ch.iter().map(|c| c.evaluate()).collect();
                Permutation::sum_all(&parts, Direction::Skew)
            }
            SubstitutionTree::Simple { skeleton, children } => {
                let parts: Vec<_> = children.iter().map(|c| c.evaluate()).collect();
                skeleton
                    .inflate(&parts)
                    .expect("skeleton arity matches its children")
            }
        }
    }

    pub fn children(&self) -> &[SubstitutionTree] {
        match self {
            SubstitutionTree::Leaf => &[],
            SubstitutionTree::Sum(ch) | SubstitutionTree::Skew(ch) => ch,
            SubstitutionTree::Simple { children, .. } => children,
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            SubstitutionTree::Leaf => 1,
            _ => self.children().iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Pre-order traversal of all nodes.
    pub fn nodes(&self) -> Vec<&SubstitutionTree> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.extend(node.children());
            i += 1;
        }
        out
    }

    /// The simple permutation a node inflates: `1` for leaves, `12`/`21` for
    /// sum/skew nodes, the skeleton otherwise.
    pub fn node_skeleton(&self) -> Permutation {
        match self {
            SubstitutionTree::Leaf => Permutation::identity(1),
            SubstitutionTree::Sum(_) => Permutation::identity(2),
            SubstitutionTree::Skew(_) => Permutation::decreasing(2),
            SubstitutionTree::Simple { skeleton, .. } => skeleton.clone(),
        }
    }
}

fn decompose_nonempty(pi: &Permutation) -> SubstitutionTree {
    if pi.len() == 1 {
        return SubstitutionTree::Leaf;
    }
    let direct = pi.components(Direction::Direct);
    if direct.len() > 1 {
        return SubstitutionTree::Sum(direct.iter().map(decompose_nonempty).collect());
    }
    let skew = pi.components(Direction::Skew);
    if skew.len() > 1 {
        return SubstitutionTree::Skew(skew.iter().map(decompose_nonempty).collect());
    }

    // Neither sum nor skew decomposable: the maximal proper intervals partition
    // the positions, and their representatives reduce to a simple skeleton.
    let intervals = pi.intervals();
    let n = pi.len();
    let mut blocks = Vec::new();
    let mut pos = 1;
    while pos <= n {
        let end = intervals
            .iter()
            .filter(|&&(a, b)| a <= pos && pos <= b)
            .map(|&(a, b)| (b - a, b))
            .max()
            .map_or(pos, |(_, b)| b);
        blocks.push((pos, end));
        pos = end + 1;
    }
    let reps: Vec<usize> = blocks.iter().map(|&(a, _)| pi.at(a)).collect();
    let skeleton = reduce_distinct(&reps);
    let children = blocks
        .iter()
        .map(|&(a, b)| decompose_nonempty(&reduce_distinct(&pi.values()[a - 1..b])))
        .collect();
    SubstitutionTree::Simple { skeleton, children }
}

/// `2413[1, +(1, -(1, 1)), -(1, 1, 1), +(1, 1)]`
impl fmt::Display for SubstitutionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, ch: &[SubstitutionTree]| -> fmt::Result {
            for (i, c) in ch.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            Ok(())
        };
        match self {
            SubstitutionTree::Leaf => write!(f, "1"),
            SubstitutionTree::Sum(ch) => {
                write!(f, "+(")?;
                list(f, ch)?;
                write!(f, ")")
            }
            SubstitutionTree::Skew(ch) => {
                write!(f, "-(")?;
                list(f, ch)?;
                write!(f, ")")
            }
            SubstitutionTree::Simple { skeleton, children } => {
                write!(f, "{}[", skeleton.to_compact())?;
                list(f, children)?;
                write!(f, "]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perm;
    use SubstitutionTree::*;

    #[test]
    fn figure_tree_shape() {
        let t = SubstitutionTree::decompose(&perm("479832156")).unwrap();
        let expected = Simple {
            skeleton: perm("2413"),
            children: vec![
                Leaf,
                Sum(vec![Leaf, Skew(vec![Leaf, Leaf])]),
                Skew(vec![Leaf, Leaf, Leaf]),
                Sum(vec![Leaf, Leaf]),
            ],
        };
        assert_eq!(t, expected);
        assert_eq!(t.evaluate(), perm("479832156"));
        assert_eq!(t.to_string(), "2413[1, +(1, -(1, 1)), -(1, 1, 1), +(1, 1)]");
    }

    #[test]
    fn small_trees() {
        assert_eq!(
            SubstitutionTree::decompose(&perm("123")).unwrap(),
            Sum(vec![Leaf, Leaf, Leaf])
        );
        assert_eq!(
            SubstitutionTree::decompose(&perm("3142")).unwrap(),
            Simple {
                skeleton: perm("3142"),
                children: vec![Leaf; 4]
            }
        );
        assert_eq!(SubstitutionTree::decompose(&perm("1")).unwrap(), Leaf);
        assert!(SubstitutionTree::decompose(&Permutation::empty()).is_err());
    }

    #[test]
    fn round_trip_and_shape_up_to_seven() {
        for n in 1..=7 {
            for pi in Permutation::all(n) {
                let t = SubstitutionTree::decompose(&pi).unwrap();
                assert_eq!(t.evaluate(), pi);
                assert_eq!(t.leaf_count(), n);
                for node in t.nodes() {
                    match node {
                        Sum(ch) => {
                            assert!(ch.len() >= 2);
                            assert!(ch.iter().all(|c| !matches!(c, Sum(_))));
                        }
                        Skew(ch) => {
                            assert!(ch.len() >= 2);
                            assert!(ch.iter().all(|c| !matches!(c, Skew(_))));
                        }
                        Simple { skeleton, children } => {
                            assert!(skeleton.len() >= 4 && skeleton.is_simple());
                            assert_eq!(skeleton.len(), children.len());
                        }
                        Leaf => {}
                    }
                }
            }
        }
    }
}
