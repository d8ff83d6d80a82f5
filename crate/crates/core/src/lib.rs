//! Greedy sparse recovery from noisy linear measurements `y = H beta + eta`.
//!
//! The crate implements the Orthogonal Least-Squares (OLS) and Orthogonal
//! Matching Pursuit (OMP) solvers together with the machinery needed to
//! study when they provably succeed:
//!
//! - [`linalg`]: dense projectors, incremental projector downdates,
//!   least squares and the induced (1,1) operator norm.
//! - [`solvers`]: OLS, OMP, the exhaustive l0 oracle and the
//!   noise/residual decomposition used by the recovery analysis.
//! - [`certificates`]: exact-recovery certificates (`M_OMP`, per-iteration
//!   `M_{i+1}`), the selection ratio `rho` and the beta_min condition.
//! - [`ensembles`]: reproducible Gaussian/Bernoulli measurement matrices,
//!   sparse signals, bounded noise and concentration experiments.
//! - [`bounds`]: closed-form success-probability lower bounds and the
//!   sample-complexity expression.
//! - [`experiments`]: Monte Carlo harnesses (phase transitions,
//!   bound-vs-empirical comparisons, certificate soundness sweeps).

pub mod bounds;
pub mod certificates;
pub mod ensembles;
pub mod experiments;
pub mod linalg;
pub mod solvers;

pub use linalg::{DenseMatrix, DenseVector, LinalgError, Projector, SpectralExtremes};
pub use solvers::{Algorithm, MeasurementInstance, SolverError, SolverOptions, SolverTrace};
