//! Strong-rate measurement for the Euler-Maruyama scheme on additive-noise
//! SDEs dX_t = b(X_t) dt + dL_t driven by symmetric Levy processes.
//!
//! The library couples a coarse Euler-Maruyama path with a fine-grid
//! reference built from the same noise lattice, measures pathwise error
//! functionals, estimates L_p errors by Monte Carlo, and fits empirical
//! convergence rates against the predicted exponent
//! 1/2 + min(beta/alpha, alpha_tilde/(alpha p), 1/2) for beta-Holder drifts.
//!
//! Modules:
//! - [`levy`]: increment samplers for the process catalog (Brownian,
//!   isotropic/cylindrical stable, tempered and truncated stable, sums),
//!   characteristic exponents, and statistical self-validation.
//! - [`sde`]: Holder drift catalog and the Euler-Maruyama integrator on
//!   shared-noise lattices.
//! - [`analysis`]: error functionals, Monte Carlo L_p estimation, rate
//!   fitting, admissibility and rate formulas, pathwise-rate experiments.
//! - [`harness`]: experiment configs, deterministic parallel execution,
//!   persistence, and verdicts.

pub mod analysis;
pub mod error;
pub mod harness;
pub mod levy;
mod quad;
pub mod rng;
pub mod sde;
pub mod stats;

pub use error::{Error, Result};
