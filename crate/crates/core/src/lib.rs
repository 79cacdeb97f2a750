//! # qportrait
//!
//! Entropic inequalities for single-qudit density matrices.
//!
//! A qudit state has no subsystems, but positive trace-preserving "portrait"
//! maps ([`portraits`]) reshape it the way a partial trace reshapes a bipartite
//! state. Monotonicity of quantum relative entropy then gives inequalities for
//! any pair of states of equal dimension:
//!
//! ```text
//! S(rho||sigma) >= S(M(rho)||M(sigma))
//! ```
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`hermitian`] | Complex Jacobi eigensolver, spectral matrix functions |
//! | [`states`] | Density matrices, seeded samplers, partial trace |
//! | [`portraits`] | Fold and block-trace maps, permutations, chains, qubit portraits |
//! | [`entropy`] | Von Neumann / relative entropy, inequality reports |
//! | [`scalar`] | Exp-entropy bound, pairwise exponential sum, Gibbs gap |
//! | [`search`] | Fuzzing and simplex minimization of inequality gaps |
//! | [`cli`] | The `qportrait` command line |
//!
//! ```
//! use qportrait::{entropy, portraits::{BlockPartition, PortraitKind}, states::DensityMatrix, Tolerances};
//!
//! let rho = DensityMatrix::from_diagonal(&[0.5, 0.25, 0.25]).unwrap();
//! let sigma = DensityMatrix::maximally_mixed(3).unwrap();
//! let p = BlockPartition::with_lower(3, 1).unwrap();
//! let report = entropy::monotonicity_gap(
//!     &rho, &sigma, PortraitKind::FoldDiagonalBlocks, p, &Tolerances::default(),
//! ).unwrap();
//! assert!(report.holds);
//! ```

#![forbid(unsafe_code)]

pub mod cli;
pub mod entropy;
pub mod error;
pub mod hermitian;
pub mod io;
pub mod matrix;
pub mod portraits;
pub mod scalar;
pub mod search;
pub mod simplex;
pub mod states;
mod tolerances;

pub use error::{Error, Result};
pub use tolerances::Tolerances;
