//! Error measurement and rate analysis for coupled Euler runs: functionals of
//! the coupled difference, Monte Carlo L_p estimation, log-log rate fitting,
//! pathwise quantile stability, and the theoretical predictions the empirical
//! slopes are compared against.

pub mod estimate;
pub mod fit;
pub mod functional;
pub mod pathwise;
pub mod rates;

pub use estimate::{estimate_lp_error, ladder_functionals, ErrorEstimate, LpEstimateConfig};
pub use fit::{fit_rate, RateFit, RatePoint, RateReport, EXACT_FLOOR};
pub use functional::{error_functional, ErrorFunctional};
pub use pathwise::{
    as_rate_experiment, stability_from_matrix, PathwiseConfig, PathwiseReport, PathwiseStability,
};
pub use rates::{baseline_lipschitz_rate, check_admissible, theoretical_rate, Admissibility};
