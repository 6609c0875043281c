//! Quantum resource measures on small algorithm states.
//!
//! The crate builds the exact statevectors of Grover search half-steps and
//! the closed-form stage states of a worked three-qubit HHL instance, then
//! evaluates three resource measures on them:
//!
//! - Frobenius coherence: distance to the closest diagonal state,
//! - quantum discord: mutual information minus the best classical
//!   correlation extractable by a projective measurement,
//! - geometric measure of entanglement: `-2 log2` of the best overlap with
//!   a pure product state.
//!
//! Every optimized quantity has an independent brute-force counterpart in
//! [`oracle`] for cross-checking. All computation is deterministic: no
//! randomness, fixed optimizer start points, and a dependency-free Jacobi
//! eigensolver.

pub mod eig;
pub mod error;
pub mod grover;
pub mod hhl;
pub mod matrix;
pub mod measures;
pub mod optim;
pub mod oracle;
pub mod state;

pub use eig::{hermitian_eig, hermitian_eigenvalues, EigenDecomposition};
pub use error::{Error, Result};
pub use matrix::{frobenius_distance, kron, ComplexMatrix};
pub use state::{outer, partial_trace, von_neumann_entropy, DensityMatrix, PureState};
