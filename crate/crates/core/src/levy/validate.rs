//! Statistical guards for the increment samplers.
//!
//! Two independent fingerprints are checked. The characteristic-function test
//! compares the empirical mean of cos<lambda, dL> against exp(-dt Phi(lambda))
//! on a grid of frequencies; it catches wrong laws, wrong scalings, and wrong
//! cutoff handling. The moment-scaling test fits the small-time growth of the
//! clamped moments E[|L_t|^p ∧ 1] in log-log coordinates and compares the
//! slope with min(p, alpha_tilde)/alpha.

use crate::error::{Error, Result};
use crate::levy::{sample_increment, LevySpec};
use crate::stats::weighted_line_fit;
use rand::Rng;
use serde::Serialize;

/// Allowed empirical-CF discrepancy at sample count m: three standard errors
/// of a bounded variable plus a flat numerical allowance.
pub fn cf_threshold(m: usize) -> f64 {
    3.0 / (m as f64).sqrt() + 0.005
}

/// Two-sided tolerance on the fitted moment-scaling slope.
pub const H3_SLOPE_TOL: f64 = 0.1;

/// Extra one-sided slack when p reaches the moment index and the clamp
/// dominates the scaling.
pub const H3_HEAVY_SLACK: f64 = 0.15;

#[derive(Debug, Clone, Serialize)]
pub struct CharFnRow {
    pub lambda: Vec<f64>,
    pub empirical: f64,
    pub target: f64,
    pub gap: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CharFnReport {
    pub dt: f64,
    pub samples: usize,
    pub threshold: f64,
    pub rows: Vec<CharFnRow>,
    pub pass: bool,
}

/// Standard frequency grid: eight vectors per dimension count. In one
/// dimension both signs of four magnitudes; otherwise four magnitudes along
/// the first axis and along the diagonal. Magnitudes stay at or below 4 so
/// the small-jump Gaussian compensation of the tempered and truncated
/// samplers cannot move the CF by more than a fraction of the threshold.
pub fn default_lambda_grid(dim: usize) -> Vec<Vec<f64>> {
    let magnitudes = [0.5, 1.0, 2.0, 4.0];
    let mut grid = Vec::with_capacity(8);
    if dim == 1 {
        for &m in &magnitudes {
            grid.push(vec![m]);
            grid.push(vec![-m]);
        }
    } else {
        for &m in &magnitudes {
            let mut axis = vec![0.0; dim];
            axis[0] = m;
            grid.push(axis);
            grid.push(vec![m / (dim as f64).sqrt(); dim]);
        }
    }
    grid
}

/// Mean of cos<lambda, x> over step-major draws.
fn mean_cos(draws: &[f64], dim: usize, lambda: &[f64]) -> f64 {
    let m = draws.len() / dim;
    let mut acc = 0.0;
    for row in draws.chunks_exact(dim) {
        let dot: f64 = row.iter().zip(lambda).map(|(x, l)| x * l).sum();
        acc += dot.cos();
    }
    acc / m as f64
}

/// Draws m increments from `sample_spec` and tests them against the
/// characteristic exponent of `target_spec`. Splitting the two specs gives
/// negative controls: a deliberately mismatched target must fail.
pub fn cross_validate_char_exponent(
    sample_spec: &LevySpec,
    target_spec: &LevySpec,
    dt: f64,
    m: usize,
    lambdas: &[Vec<f64>],
    rng: &mut impl Rng,
) -> Result<CharFnReport> {
    if m < 10_000 {
        return Err(Error::invalid(
            "samples",
            format!("characteristic-function test needs at least 10^4 draws, got {m}"),
        ));
    }
    if sample_spec.dim != target_spec.dim {
        return Err(Error::invalid(
            "target",
            "sample and target specs must share a dimension",
        ));
    }
    let dim = sample_spec.dim;
    let mut draws = Vec::with_capacity(m * dim);
    for _ in 0..m {
        draws.extend_from_slice(&sample_increment(sample_spec, dt, rng)?);
    }
    let threshold = cf_threshold(m);
    let mut rows = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        let empirical = mean_cos(&draws, dim, lambda);
        let target = (-dt * target_spec.char_exponent(lambda)?).exp();
        let gap = (empirical - target).abs();
        rows.push(CharFnRow {
            lambda: lambda.clone(),
            empirical,
            target,
            gap,
            pass: gap < threshold,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(CharFnReport {
        dt,
        samples: m,
        threshold,
        rows,
        pass,
    })
}

/// Characteristic-function self-test of one catalog member.
pub fn validate_char_exponent(
    spec: &LevySpec,
    dt: f64,
    m: usize,
    lambdas: &[Vec<f64>],
    rng: &mut impl Rng,
) -> Result<CharFnReport> {
    cross_validate_char_exponent(spec, spec, dt, m, lambdas, rng)
}

#[derive(Debug, Clone, Serialize)]
pub struct H3Report {
    pub p: f64,
    /// Fitted log-log slope of t -> E[|L_t|^p ∧ 1].
    pub slope: f64,
    /// Expected slope min(p, alpha_tilde)/alpha.
    pub target: f64,
    /// True when p >= alpha_tilde, where the clamp dominates and only the
    /// one-sided bound slope <= target + slack is meaningful.
    pub heavy_tail: bool,
    pub pass: bool,
    /// (t, moment estimate) pairs behind the fit.
    pub points: Vec<(f64, f64)>,
}

/// Default time grid: log-spaced with two-octave steps across [2^-12, 2^-2].
pub fn default_t_grid() -> Vec<f64> {
    (0..6).map(|k| 2f64.powi(2 * k - 12)).collect()
}

/// Fits the small-time scaling of the clamped p-th moment and compares it
/// with the catalog prediction.
pub fn verify_h3_moments(
    spec: &LevySpec,
    p: f64,
    t_grid: &[f64],
    m: usize,
    rng: &mut impl Rng,
) -> Result<H3Report> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::invalid(
            "p",
            format!("moment order must be positive and finite, got {p}"),
        ));
    }
    if t_grid.len() < 3 {
        return Err(Error::invalid(
            "t_grid",
            format!("moment-scaling fit needs at least 3 times, got {}", t_grid.len()),
        ));
    }
    if t_grid.iter().any(|&t| !(t > 0.0 && t <= 1.0)) {
        return Err(Error::invalid("t_grid", "times must lie in (0, 1]"));
    }
    let mut points = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let mut acc = 0.0;
        for _ in 0..m {
            let x = sample_increment(spec, t, rng)?;
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            acc += norm.powf(p).min(1.0);
        }
        let value = acc / m as f64;
        if value <= 0.0 {
            return Err(Error::InsufficientData(format!(
                "clamped moment vanished at t = {t}; cannot fit a slope"
            )));
        }
        points.push((t, value));
    }
    let xs: Vec<f64> = points.iter().map(|(t, _)| t.log2()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, v)| v.log2()).collect();
    let weights = vec![1.0; xs.len()];
    let (_, slope) = weighted_line_fit(&xs, &ys, &weights)?;

    let alpha = spec.alpha();
    let tilde = spec.alpha_tilde();
    let heavy_tail = tilde.is_finite() && p >= tilde;
    let target = p.min(tilde) / alpha;
    let pass = if heavy_tail {
        slope <= target + H3_HEAVY_SLACK
    } else {
        (slope - target).abs() <= H3_SLOPE_TOL
    };
    Ok(H3Report {
        p,
        slope,
        target,
        heavy_tail,
        pass,
        points,
    })
}
