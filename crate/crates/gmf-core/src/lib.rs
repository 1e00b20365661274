//! Core algorithms for generalized matrix functions on symmetry classes of
//! tensors: determinant- and permanent-like functionals attached to a
//! permutation group and a degree-one character, the induced maps they
//! define on tensor powers, and randomized verification of the matrix
//! inequalities they satisfy on positive semidefinite inputs.

pub mod caps;
pub mod error;
pub mod gmf;
pub mod harness;
pub mod induced;
pub mod linalg;
pub mod perm;
pub mod symclass;

pub use caps::Caps;
pub use error::{Error, Result};
pub use gmf::GmfSpec;
pub use harness::{SuiteReport, TrialConfig};
pub use induced::StarBasis;
pub use linalg::{BlockMatrix, ComplexMatrix, C64};
pub use perm::{Character, Permutation, PermutationGroup};
pub use symclass::SymmetryClass;
