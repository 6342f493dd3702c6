//! Monte Carlo estimation of L_p discretization errors on coupled paths.
//!
//! One sample = one fine lattice, one reference solution on it, and one (or a
//! ladder of) coarse Euler runs on block sums of the same lattice. The
//! functional of the coupled difference is averaged in p-th power across
//! paths; the confidence interval comes from 16 batch means on the powers,
//! carried to the p-th root by the delta method.
//!
//! Because the noise cancels under the coupling, every functional value is
//! bounded by twice the drift sup bound; all moments exist, so the batch-means
//! interval is valid even for drivers with no moments of their own. The bound
//! is asserted on every sampled path.

use crate::analysis::functional::{error_functional, ErrorFunctional};
use crate::error::{Error, Result};
use crate::levy::{IncrementLattice, LevySpec};
use crate::rng::RngFactory;
use crate::sde::{euler_maruyama, reference_solution, DriftSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// One measured cell: the L_p error at step count `n` from `samples` coupled
/// paths, with a 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorEstimate {
    pub n: usize,
    pub value: f64,
    pub ci_half_width: f64,
    pub samples: usize,
}

/// Inputs for one L_p error estimate.
#[derive(Debug, Clone, Copy)]
pub struct LpEstimateConfig<'a> {
    pub levy: &'a LevySpec,
    pub drift: &'a DriftSpec,
    pub x0: &'a [f64],
    pub n: usize,
    pub n_ref: usize,
    pub p: f64,
    pub samples: usize,
    pub functional: ErrorFunctional,
    pub seed: u64,
}

fn validate_inputs(
    levy: &LevySpec,
    drift: &DriftSpec,
    x0: &[f64],
    ladder: &[usize],
    n_ref: usize,
    samples: usize,
    functional: ErrorFunctional,
) -> Result<()> {
    levy.validate()?;
    drift.validate()?;
    functional.validate()?;
    if drift.dim != levy.dim {
        return Err(Error::GridMismatch(format!(
            "drift dimension {} differs from driver dimension {}",
            drift.dim, levy.dim
        )));
    }
    if x0.len() != levy.dim {
        return Err(Error::GridMismatch(format!(
            "x0 length {} differs from dimension {}",
            x0.len(),
            levy.dim
        )));
    }
    if !n_ref.is_power_of_two() {
        return Err(Error::invalid(
            "n_ref",
            format!("{n_ref} is not a power of two"),
        ));
    }
    if ladder.is_empty() {
        return Err(Error::invalid("n", "empty step-count ladder"));
    }
    for &n in ladder {
        if n == 0 || n_ref % n != 0 {
            return Err(Error::invalid(
                "n",
                format!("{n} does not divide n_ref = {n_ref}"),
            ));
        }
        if n > n_ref / 8 {
            return Err(Error::invalid(
                "n",
                format!("{n} exceeds n_ref/8 = {}; the reference would contaminate the estimate", n_ref / 8),
            ));
        }
    }
    if samples < 100 {
        return Err(Error::invalid(
            "samples",
            format!("{samples} is below the minimum of 100"),
        ));
    }
    Ok(())
}

/// Functional values for `samples` coupled paths at every rung of the ladder,
/// all rungs of one row sharing the same lattice. Row order is path order,
/// independent of how the work was scheduled.
fn functional_matrix(
    levy: &LevySpec,
    drift: &DriftSpec,
    x0: &[f64],
    ladder: &[usize],
    n_ref: usize,
    samples: usize,
    functional: ErrorFunctional,
    factory: &RngFactory,
) -> Result<Vec<Vec<f64>>> {
    let sup = drift.sup_bound();
    let rows: Vec<Result<Vec<f64>>> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = factory.stream(i as u64);
            let lattice = IncrementLattice::sample(levy, n_ref, &mut rng)?;
            let reference = reference_solution(drift, &lattice, x0)?;
            let magnitude = reference
                .states()
                .iter()
                .fold(0.0f64, |acc, v| acc.max(v.abs()));
            let bound = 2.0 * sup + 1e-9 * (1.0 + magnitude);
            let mut row = Vec::with_capacity(ladder.len());
            for &n in ladder {
                let approx = euler_maruyama(drift, &lattice, n, x0)?;
                let value = error_functional(&reference, &approx, functional)?;
                assert!(
                    value <= bound,
                    "coupling bound violated: path {i}, n = {n}: {value} > {bound}"
                );
                row.push(value);
            }
            Ok(row)
        })
        .collect();
    let mut matrix = Vec::with_capacity(samples);
    for row in rows {
        matrix.push(row?);
    }
    Ok(matrix)
}

/// Mean of p-th powers, taken to the p-th root.
#[cfg(test)]
pub(crate) fn lp_mean(values: &[f64], p: f64) -> f64 {
    let mean = values.iter().map(|v| v.powf(p)).sum::<f64>() / values.len() as f64;
    mean.powf(1.0 / p)
}

/// Estimate the L_p error of the n-step scheme against the coupled reference.
pub fn estimate_lp_error(cfg: &LpEstimateConfig) -> Result<ErrorEstimate> {
    if !(cfg.p >= 1.0) {
        return Err(Error::invalid("p", format!("{} must be at least 1", cfg.p)));
    }
    validate_inputs(
        cfg.levy,
        cfg.drift,
        cfg.x0,
        &[cfg.n],
        cfg.n_ref,
        cfg.samples,
        cfg.functional,
    )?;
    let label = format!("{}|p={}|n={}", cfg.functional.label(), cfg.p, cfg.n);
    let factory = RngFactory::new(cfg.seed).derive(&label);
    let matrix = functional_matrix(
        cfg.levy,
        cfg.drift,
        cfg.x0,
        &[cfg.n],
        cfg.n_ref,
        cfg.samples,
        cfg.functional,
        &factory,
    )?;
    let powers: Vec<f64> = matrix.iter().map(|row| row[0].powf(cfg.p)).collect();
    let (mean, half) = crate::stats::batch_means_ci(&powers, 16)?;
    if mean <= 0.0 {
        return Ok(ErrorEstimate {
            n: cfg.n,
            value: 0.0,
            ci_half_width: 0.0,
            samples: cfg.samples,
        });
    }
    // d/dm m^{1/p} = (1/p) m^{1/p - 1}: carry the half-width to the root.
    let value = mean.powf(1.0 / cfg.p);
    let ci_half_width = half * (1.0 / cfg.p) * mean.powf(1.0 / cfg.p - 1.0);
    Ok(ErrorEstimate {
        n: cfg.n,
        value,
        ci_half_width,
        samples: cfg.samples,
    })
}

/// Per-path functional values across a whole n-ladder on shared noise, for
/// pathwise statistics and paired comparisons. Entry [i][k] is path i at
/// ladder rung k. The RNG domain is `label`, so distinct callers can keep
/// their draws unrelated under one master seed.
pub fn ladder_functionals(
    levy: &LevySpec,
    drift: &DriftSpec,
    x0: &[f64],
    ladder: &[usize],
    n_ref: usize,
    samples: usize,
    functional: ErrorFunctional,
    seed: u64,
    label: &str,
) -> Result<Vec<Vec<f64>>> {
    validate_inputs(levy, drift, x0, ladder, n_ref, samples, functional)?;
    let factory = RngFactory::new(seed).derive(label);
    functional_matrix(
        levy, drift, x0, ladder, n_ref, samples, functional, &factory,
    )
}
