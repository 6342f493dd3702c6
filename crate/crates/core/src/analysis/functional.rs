//! Error functionals between a coupled reference path and a coarse path.
//!
//! The difference E_k = X_ref(k/n) - X_approx(k/n) is taken over the coarse
//! grid, with the reference subsampled at the shared times. Three functionals
//! are offered: the sup norm max_k |E_k|, the terminal error |E_n|, and the
//! Holder seminorm sup_{s<t} |E_t - E_s| / (t-s)^tau with tau in [0, 1/2).
//! The seminorm is exact (all O(n^2) grid pairs) up to n = 4096 and restricted
//! to dyadic gaps t - s = 2^j / n beyond that.

use crate::error::{Error, Result};
use crate::sde::SolutionPath;
use serde::{Deserialize, Serialize};

/// Largest coarse grid for which the Holder seminorm scans all pairs.
const EXACT_PAIR_LIMIT: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ErrorFunctional {
    SupNorm,
    HolderSeminorm { tau: f64 },
    Terminal,
}

impl ErrorFunctional {
    pub fn validate(&self) -> Result<()> {
        if let ErrorFunctional::HolderSeminorm { tau } = self {
            if !(*tau >= 0.0 && *tau < 0.5) {
                return Err(Error::invalid("tau", format!("{tau} not in [0, 1/2)")));
            }
        }
        Ok(())
    }

    /// Stable identifier used in file names and report tables.
    pub fn label(&self) -> String {
        match self {
            ErrorFunctional::SupNorm => "sup_norm".to_string(),
            ErrorFunctional::HolderSeminorm { tau } => format!("holder_{tau}"),
            ErrorFunctional::Terminal => "terminal".to_string(),
        }
    }
}

fn squared_gap(diffs: &[f64], dim: usize, j: usize, k: usize) -> f64 {
    let a = &diffs[j * dim..(j + 1) * dim];
    let b = &diffs[k * dim..(k + 1) * dim];
    let mut acc = 0.0;
    for i in 0..dim {
        let d = b[i] - a[i];
        acc += d * d;
    }
    acc
}

/// Squared gap weights (g/n)^{-2 tau} for gaps g = 1..=n.
fn squared_weights(n: usize, tau: f64) -> Vec<f64> {
    let h = 1.0 / n as f64;
    (1..=n)
        .map(|g| (g as f64 * h).powf(-2.0 * tau))
        .collect()
}

fn holder_exact(diffs: &[f64], dim: usize, n: usize, tau: f64) -> f64 {
    let w2 = squared_weights(n, tau);
    let mut best = 0.0f64;
    for j in 0..n {
        for k in (j + 1)..=n {
            best = best.max(squared_gap(diffs, dim, j, k) * w2[k - j - 1]);
        }
    }
    best.sqrt()
}

fn holder_dyadic(diffs: &[f64], dim: usize, n: usize, tau: f64) -> f64 {
    let w2 = squared_weights(n, tau);
    let mut best = 0.0f64;
    let mut g = 1usize;
    while g <= n {
        for k in 0..=(n - g) {
            best = best.max(squared_gap(diffs, dim, k, k + g) * w2[g - 1]);
        }
        g *= 2;
    }
    best.sqrt()
}

/// Evaluate the functional on the coupled pair. The approximate path's grid
/// must divide the reference grid; the reference is subsampled at the coarse
/// times before differencing.
pub fn error_functional(
    reference: &SolutionPath,
    approx: &SolutionPath,
    functional: ErrorFunctional,
) -> Result<f64> {
    functional.validate()?;
    if reference.dim() != approx.dim() {
        return Err(Error::GridMismatch(format!(
            "reference dimension {} differs from approximation dimension {}",
            reference.dim(),
            approx.dim()
        )));
    }
    let n = approx.grid_n();
    if n == 0 || reference.grid_n() % n != 0 {
        return Err(Error::GridMismatch(format!(
            "approximation grid {} does not divide reference grid {}",
            n,
            reference.grid_n()
        )));
    }
    let stride = reference.grid_n() / n;
    let dim = reference.dim();
    let mut diffs = Vec::with_capacity((n + 1) * dim);
    for k in 0..=n {
        let r = reference.state(k * stride);
        let a = approx.state(k);
        for i in 0..dim {
            diffs.push(r[i] - a[i]);
        }
    }
    let norm_at = |k: usize| {
        diffs[k * dim..(k + 1) * dim]
            .iter()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    };
    Ok(match functional {
        ErrorFunctional::SupNorm => (0..=n).map(norm_at).fold(0.0, f64::max),
        ErrorFunctional::Terminal => norm_at(n),
        ErrorFunctional::HolderSeminorm { tau } => {
            if tau == 0.0 && dim == 1 {
                // sup_{s<t} |E_t - E_s| over scalars is the range.
                let max = diffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = diffs.iter().copied().fold(f64::INFINITY, f64::min);
                max - min
            } else if n <= EXACT_PAIR_LIMIT {
                holder_exact(&diffs, dim, n, tau)
            } else {
                holder_dyadic(&diffs, dim, n, tau)
            }
        }
    })
}
