//! Permutation pattern machinery: containment and labeled containment,
//! inversion graphs, substitution decomposition, classes given by finite
//! bases, monotone and geometric grid classes, and infinite antichain
//! families with brute-force incomparability checks.

pub mod antichains;
pub mod classes;
pub mod decomposition;
pub mod error;
pub mod feasibility;
pub mod grids;
pub mod invgraph;
pub mod labels;
pub mod perm;
pub mod suite;

pub use antichains::Family;
pub use classes::{ClosureKind, PermClass};
pub use decomposition::SubstitutionTree;
pub use error::{Error, Result};
pub use grids::{GriddedPermutation, GridKind, Matrix};
pub use invgraph::{inversion_graph, Graph};
pub use labels::{FinitePoset, LabeledPermutation, Word};
pub use perm::{perm, reduce, Direction, Permutation, Symmetry};
