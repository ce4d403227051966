//! Privacy-preserving outsourcing of QUBO problems.
//!
//! A client holding a QUBO model matrix `Q` wants an untrusted solver to
//! minimize `x^T Q x` over binary `x` without revealing `Q`. The toolkit
//! normalizes `Q` into `(-1, 1)`, splits it into signed base-`r` digit
//! matrices, permutes each one independently, shuffles the send order
//! (optionally mixing in decoy matrices), and ships the pile to the solver.
//! From the per-matrix optima the client undoes the shuffle, forms a
//! weighted per-bit probability estimate, samples candidate vectors, and
//! keeps the best one under the original objective.
//!
//! Crate layout:
//! - [`matrix`]: model matrices, integer matrices, objective evaluation,
//!   random instance generation.
//! - [`solve`]: exact (Gray-code) and simulated-annealing solvers.
//! - [`obfuscate`]: normalization, digit split, permutation, decoys.
//! - [`recover`]: unshuffle, weighted average, sampling, selection.
//! - [`privacy`]: sign-matrix automorphisms, recovery-probability bounds,
//!   digit-uniformity diagnostics, and an empirical guessing attack.
//! - [`protocol`]: framed JSON client/server for the solver service.
//! - [`experiment`]: accuracy/error sweeps and cost-scaling measurements.

pub mod error;
pub mod experiment;
pub mod matrix;
pub mod obfuscate;
pub mod perm;
pub mod privacy;
pub mod protocol;
pub mod recover;
pub mod rng;
pub mod solve;

pub use error::{Error, Result};
pub use matrix::{IntMatrix, MatrixGenSpec, QuboMatrix};
pub use obfuscate::{
    DigitMatrix, ObfuscationParams, ObfuscationSecret, TransmitSet,
};
pub use perm::Permutation;
pub use solve::{SolutionVector, SolverBackend};
