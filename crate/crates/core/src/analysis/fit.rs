//! Weighted log-log regression of error estimates against step counts.
//!
//! The empirical rate is the negated slope of log2(error) on log2(n), fit by
//! weighted least squares with weights 1/CI^2. Estimates are usable only if
//! their relative half-width is below 1/2; a fit needs at least three usable
//! points spanning at least three octaves of n. Estimates at rounding level
//! (at or below 1e-12) come from scheme-exact configurations and are excluded;
//! if every point is at that level the whole ladder is reported as exact.
//!
//! The slope over the last usable octave is reported separately: if the
//! reference grid contaminates the finest rungs, that slope inflates first.

use crate::analysis::estimate::ErrorEstimate;
use crate::analysis::rates::Admissibility;
use crate::error::{Error, Result};
use crate::stats::weighted_line_fit;
use serde::Serialize;
use std::io::Write;

/// Estimates at or below this value are treated as exact zeros; the scheme
/// is exact for them and the residue is accumulated rounding.
pub const EXACT_FLOOR: f64 = 1e-12;

/// Fits with a slope below this are flagged as showing no convergence.
const NO_CONVERGENCE_SLOPE: f64 = 0.1;

/// One ladder rung as it enters the regression.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePoint {
    pub n: usize,
    pub value: f64,
    pub ci_half_width: f64,
    pub samples: usize,
    pub usable: bool,
}

/// Outcome of the rate regression over one estimate ladder.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateFit {
    pub points: Vec<RatePoint>,
    pub fitted_slope: Option<f64>,
    pub intercept: Option<f64>,
    pub last_octave_slope: Option<f64>,
    pub exact: bool,
    pub no_convergence: bool,
}

/// Fit the empirical convergence rate from per-n error estimates.
pub fn fit_rate(estimates: &[ErrorEstimate]) -> Result<RateFit> {
    if estimates.is_empty() {
        return Err(Error::InsufficientData("no estimates to fit".into()));
    }
    let points: Vec<RatePoint> = estimates
        .iter()
        .map(|e| RatePoint {
            n: e.n,
            value: e.value,
            ci_half_width: e.ci_half_width,
            samples: e.samples,
            usable: e.value > EXACT_FLOOR && e.ci_half_width / e.value < 0.5,
        })
        .collect();
    if estimates.iter().all(|e| e.value <= EXACT_FLOOR) {
        return Ok(RateFit {
            points,
            fitted_slope: None,
            intercept: None,
            last_octave_slope: None,
            exact: true,
            no_convergence: false,
        });
    }
    let mut usable: Vec<&RatePoint> = points.iter().filter(|p| p.usable).collect();
    usable.sort_by_key(|p| p.n);
    if usable.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "{} usable estimates, need at least 3",
            usable.len()
        )));
    }
    let span = (usable.last().unwrap().n as f64 / usable[0].n as f64).log2();
    if span < 3.0 - 1e-9 {
        return Err(Error::InsufficientData(format!(
            "usable estimates span {span:.2} octaves, need at least 3"
        )));
    }
    let xs: Vec<f64> = usable.iter().map(|p| (p.n as f64).log2()).collect();
    let ys: Vec<f64> = usable.iter().map(|p| p.value.log2()).collect();
    // 1/CI^2 weights, with the half-width floored at a relative sliver so
    // synthetic exact inputs (CI = 0) stay finite.
    let ws: Vec<f64> = usable
        .iter()
        .map(|p| 1.0 / p.ci_half_width.max(1e-9 * p.value).powi(2))
        .collect();
    let (intercept, slope) = weighted_line_fit(&xs, &ys, &ws)?;
    let fitted = -slope;
    let last = usable[usable.len() - 1];
    let prev = usable[usable.len() - 2];
    let last_octave = (prev.value.log2() - last.value.log2())
        / ((last.n as f64).log2() - (prev.n as f64).log2());
    Ok(RateFit {
        points,
        fitted_slope: Some(fitted),
        intercept: Some(intercept),
        last_octave_slope: Some(last_octave),
        exact: false,
        no_convergence: fitted < NO_CONVERGENCE_SLOPE,
    })
}

/// Full per-(functional, p) record: the estimates, the regression, and the
/// predictions they are measured against.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateReport {
    pub functional: String,
    pub p: f64,
    pub n_values: Vec<usize>,
    pub errors: Vec<ErrorEstimate>,
    pub fit: RateFit,
    pub theoretical_rate: Option<f64>,
    pub baseline_rate: Option<f64>,
    pub admissible: Option<Admissibility>,
}

impl RateReport {
    /// Writes the estimate table as CSV with columns n, error, ci, M.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "n,error,ci,M")?;
        for e in &self.errors {
            writeln!(w, "{},{},{},{}", e.n, e.value, e.ci_half_width, e.samples)?;
        }
        Ok(())
    }
}
