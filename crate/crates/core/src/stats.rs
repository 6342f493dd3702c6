//! Small statistical toolbox: Kolmogorov-Smirnov distances, batch-means
//! confidence intervals, and weighted straight-line fits.
//!
//! These are the only inferential tools the validation and rate machinery
//! needs, so they live here rather than behind an external stats crate.

use crate::error::{Error, Result};

/// One-sample KS statistic: sup |F_n(x) - cdf(x)| over the sample.
pub fn ks_statistic<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::InsufficientData("empty sample for KS test".into()));
    }
    let mut xs = sample.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("NaN in KS sample"));
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n);
    }
    Ok(d)
}

/// Two-sample KS statistic: sup |F_a(x) - F_b(x)|.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InsufficientData("empty sample for KS test".into()));
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(|u, v| u.partial_cmp(v).expect("NaN in KS sample"));
    ys.sort_by(|u, v| u.partial_cmp(v).expect("NaN in KS sample"));
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        if xs[i] <= ys[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// Mean of `values` with a 95% half-width from `batches` batch means.
///
/// The values are split into consecutive batches in their given order, so the
/// result is a pure function of the value sequence. For i.i.d. inputs this is
/// just a slightly conservative variant of the plain normal interval.
pub fn batch_means_ci(values: &[f64], batches: usize) -> Result<(f64, f64)> {
    if values.len() < batches || batches < 2 {
        return Err(Error::InsufficientData(format!(
            "{} values cannot fill {} batches",
            values.len(),
            batches
        )));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let mut batch_means = Vec::with_capacity(batches);
    for b in 0..batches {
        let lo = b * values.len() / batches;
        let hi = (b + 1) * values.len() / batches;
        let slice = &values[lo..hi];
        batch_means.push(slice.iter().sum::<f64>() / slice.len() as f64);
    }
    let var = batch_means
        .iter()
        .map(|m| (m - mean).powi(2))
        .sum::<f64>()
        / (batches as f64 - 1.0);
    let half_width = 1.96 * (var / batches as f64).sqrt();
    Ok((mean, half_width))
}

/// Weighted least-squares fit of y = intercept + slope * x.
pub fn weighted_line_fit(xs: &[f64], ys: &[f64], weights: &[f64]) -> Result<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() != weights.len() {
        return Err(Error::InsufficientData("mismatched fit inputs".into()));
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData(
            "need at least two points for a line fit".into(),
        ));
    }
    let wsum: f64 = weights.iter().sum();
    if !(wsum > 0.0) {
        return Err(Error::InsufficientData("non-positive total weight".into()));
    }
    let xbar = xs.iter().zip(weights).map(|(x, w)| w * x).sum::<f64>() / wsum;
    let ybar = ys.iter().zip(weights).map(|(y, w)| w * y).sum::<f64>() / wsum;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for ((x, y), w) in xs.iter().zip(ys).zip(weights) {
        sxx += w * (x - xbar) * (x - xbar);
        sxy += w * (x - xbar) * (y - ybar);
    }
    if sxx == 0.0 {
        return Err(Error::InsufficientData(
            "all abscissae coincide in line fit".into(),
        ));
    }
    let slope = sxy / sxx;
    Ok((ybar - slope * xbar, slope))
}
