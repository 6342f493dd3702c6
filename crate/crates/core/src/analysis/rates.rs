//! Predicted strong convergence rates for the Euler scheme.
//!
//! The drift regularity beta, the stability index alpha and the moment index
//! alpha_tilde of the driver decide whether a strong rate is certified at
//! all, and if so how fast it is. The admissibility condition is strict:
//!
//!   beta > max(1 - alpha/2, 2 - alpha - alpha_tilde),
//!
//! and for admissible parameters and p > 2 the predicted L_p rate is
//!
//!   1/2 + min(beta/alpha, alpha_tilde/(alpha p), 1/2),
//!
//! always between 1/2 and 1. The classical Lipschitz-drift benchmark
//! min(1/alpha, 1/p) is kept alongside to show the improvement.

use crate::error::{Error, Result};
use serde::Serialize;

/// Serializes possibly-infinite indices as the string "inf" rather than JSON
/// null, so reports stay grep-able and parse back through f64::from_str.
pub(crate) fn serialize_extended<S: serde::Serializer>(
    v: &f64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else if *v > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

/// Outcome of the admissibility check for a (alpha, alpha_tilde, beta)
/// triple, with the threshold and the (possibly negative) margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    pub threshold: f64,
    /// Infinite for constant-like drifts (beta = inf).
    #[serde(serialize_with = "serialize_extended")]
    pub margin: f64,
}

fn validate_indices(alpha: f64, alpha_tilde: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid("alpha", format!("{alpha} not in (0, 2]")));
    }
    if !(alpha_tilde > 0.0) || alpha_tilde.is_nan() {
        return Err(Error::invalid(
            "alpha_tilde",
            format!("{alpha_tilde} not in (0, inf]"),
        ));
    }
    Ok(())
}

/// Check whether beta strictly exceeds max(1 - alpha/2, 2 - alpha - alpha_tilde).
///
/// `alpha_tilde` and `beta` may be infinite (Brownian driver, constant
/// drift). The margin is beta minus the threshold; admissibility requires a
/// strictly positive margin, so sitting exactly on the threshold fails.
pub fn check_admissible(alpha: f64, alpha_tilde: f64, beta: f64) -> Result<Admissibility> {
    validate_indices(alpha, alpha_tilde)?;
    if !(beta > 0.0) || beta.is_nan() {
        return Err(Error::invalid("beta", format!("{beta} not in (0, inf]")));
    }
    let threshold = (1.0 - alpha / 2.0).max(2.0 - alpha - alpha_tilde);
    let margin = beta - threshold;
    Ok(Admissibility {
        admissible: margin > 0.0,
        threshold,
        margin,
    })
}

/// Predicted L_p rate 1/2 + min(beta/alpha, alpha_tilde/(alpha p), 1/2) for
/// admissible parameters and p > 2.
pub fn theoretical_rate(alpha: f64, alpha_tilde: f64, beta: f64, p: f64) -> Result<f64> {
    let adm = check_admissible(alpha, alpha_tilde, beta)?;
    if !adm.admissible {
        return Err(Error::Inadmissible {
            beta,
            threshold: adm.threshold,
            margin: adm.margin,
        });
    }
    if !(p > 2.0) {
        return Err(Error::invalid("p", format!("{p} must exceed 2")));
    }
    Ok(0.5 + (beta / alpha).min(alpha_tilde / (alpha * p)).min(0.5))
}

/// Classical strong-rate benchmark min(1/alpha, 1/p) for Lipschitz drift.
pub fn baseline_lipschitz_rate(alpha: f64, p: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(Error::invalid("alpha", format!("{alpha} not in (0, 2]")));
    }
    if !(p >= 1.0) {
        return Err(Error::invalid("p", format!("{p} must be at least 1")));
    }
    Ok((1.0 / alpha).min(1.0 / p))
}
