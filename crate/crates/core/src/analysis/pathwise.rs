//! Pathwise (almost-sure) rate evidence via quantile stability.
//!
//! For each sample path the whole n-ladder runs on shared noise, and
//!
//!   eta_K = max_{k <= K} n_k^{1/2 - epsilon} * ||X - X^{n_k}||_{C^tau}
//!
//! is tracked as the ladder prefix K extends. If the scheme converges at the
//! pathwise rate 1/2 - epsilon, eta_K stabilizes to an almost-surely finite
//! random variable; its empirical quantiles then settle as rungs are added.
//! The criterion is that the chosen quantile grows by less than 30% over the
//! last extension. A finite ladder can only ever support this as
//! stochastic-boundedness evidence, never as proof.
//!
//! The C^tau norm is the sup norm plus, for tau > 0, the Holder seminorm.

use crate::analysis::estimate::ladder_functionals;
use crate::analysis::fit::EXACT_FLOOR;
use crate::analysis::functional::ErrorFunctional;
use crate::error::{Error, Result};
use crate::levy::LevySpec;
use crate::sde::DriftSpec;
use serde::Serialize;

/// Largest admissible growth of the tracked quantile over the last ladder
/// extension.
pub const STABLE_GROWTH: f64 = 0.30;

/// Inputs for one pathwise-rate experiment.
#[derive(Debug, Clone, Copy)]
pub struct PathwiseConfig<'a> {
    pub levy: &'a LevySpec,
    pub drift: &'a DriftSpec,
    pub x0: &'a [f64],
    pub ladder: &'a [usize],
    pub n_ref: usize,
    pub samples: usize,
    pub epsilon: f64,
    pub tau: f64,
    pub quantile: f64,
    pub seed: u64,
}

/// Quantile trajectory of eta over ladder prefixes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathwiseStability {
    pub quantiles_by_prefix: Vec<f64>,
    /// Relative quantile growth per ladder extension (always >= 0: prefix
    /// maxima cannot shrink).
    pub growth: Vec<f64>,
    pub stable: bool,
}

/// Full record of one pathwise-rate experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathwiseReport {
    pub ladder: Vec<usize>,
    pub epsilon: f64,
    pub tau: f64,
    pub quantile: f64,
    pub samples: usize,
    #[serde(flatten)]
    pub stability: PathwiseStability,
}

/// Empirical quantile by order statistic: the ceil(q m)-th smallest value.
fn empirical_quantile(values: &mut [f64], q: f64) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("NaN in quantile input"));
    let m = values.len();
    let rank = ((q * m as f64).ceil() as usize).clamp(1, m);
    values[rank - 1]
}

/// Quantile-stability verdict from a stored functional matrix (entry [i][k] =
/// path i, ladder rung k). Pure in its inputs, so stability can be recomputed
/// from persisted matrices and synthetic profiles can serve as controls.
pub fn stability_from_matrix(
    ladder: &[usize],
    epsilon: f64,
    quantile: f64,
    matrix: &[Vec<f64>],
) -> Result<PathwiseStability> {
    if ladder.len() < 2 {
        return Err(Error::invalid(
            "ladder",
            "need at least two rungs to judge stability",
        ));
    }
    if !ladder.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::invalid("ladder", "rungs must strictly increase"));
    }
    if !(0.0..=0.5).contains(&epsilon) {
        return Err(Error::invalid("epsilon", format!("{epsilon} not in [0, 1/2]")));
    }
    if !(quantile > 0.0 && quantile < 1.0) {
        return Err(Error::invalid("quantile", format!("{quantile} not in (0, 1)")));
    }
    if matrix.is_empty() || matrix.iter().any(|row| row.len() != ladder.len()) {
        return Err(Error::InsufficientData(
            "functional matrix does not match the ladder".into(),
        ));
    }
    let weights: Vec<f64> = ladder
        .iter()
        .map(|&n| (n as f64).powf(0.5 - epsilon))
        .collect();
    let mut quantiles = Vec::with_capacity(ladder.len());
    let mut eta: Vec<f64> = vec![0.0; matrix.len()];
    for k in 0..ladder.len() {
        for (e, row) in eta.iter_mut().zip(matrix) {
            *e = e.max(weights[k] * row[k]);
        }
        let mut snapshot = eta.clone();
        quantiles.push(empirical_quantile(&mut snapshot, quantile));
    }
    // Quantiles at rounding level come from scheme-exact configurations;
    // treat them as zero so their ratios do not masquerade as growth.
    let floor = |q: f64| if q <= EXACT_FLOOR { 0.0 } else { q };
    let growth: Vec<f64> = quantiles
        .windows(2)
        .map(|w| {
            let (a, b) = (floor(w[0]), floor(w[1]));
            if b == a {
                0.0
            } else if a == 0.0 {
                f64::INFINITY
            } else {
                (b - a) / a
            }
        })
        .collect();
    let stable = growth.last().copied().unwrap_or(0.0) < STABLE_GROWTH;
    Ok(PathwiseStability {
        quantiles_by_prefix: quantiles,
        growth,
        stable,
    })
}

/// Run the coupled ladder and judge quantile stability of eta.
pub fn as_rate_experiment(cfg: &PathwiseConfig) -> Result<PathwiseReport> {
    if !(cfg.tau >= 0.0 && cfg.tau < 0.5) {
        return Err(Error::invalid("tau", format!("{} not in [0, 1/2)", cfg.tau)));
    }
    let mut matrix = ladder_functionals(
        cfg.levy,
        cfg.drift,
        cfg.x0,
        cfg.ladder,
        cfg.n_ref,
        cfg.samples,
        ErrorFunctional::SupNorm,
        cfg.seed,
        "pathwise",
    )?;
    if cfg.tau > 0.0 {
        // Same label, so the seminorm pass reruns the identical lattices; the
        // two matrices are path-aligned by construction.
        let seminorms = ladder_functionals(
            cfg.levy,
            cfg.drift,
            cfg.x0,
            cfg.ladder,
            cfg.n_ref,
            cfg.samples,
            ErrorFunctional::HolderSeminorm { tau: cfg.tau },
            cfg.seed,
            "pathwise",
        )?;
        for (row, extra) in matrix.iter_mut().zip(&seminorms) {
            for (v, s) in row.iter_mut().zip(extra) {
                *v += s;
            }
        }
    }
    let stability = stability_from_matrix(cfg.ladder, cfg.epsilon, cfg.quantile, &matrix)?;
    Ok(PathwiseReport {
        ladder: cfg.ladder.to_vec(),
        epsilon: cfg.epsilon,
        tau: cfg.tau,
        quantile: cfg.quantile,
        samples: cfg.samples,
        stability,
    })
}
