//! Bounded Holder drift catalog.
//!
//! Every member acts coordinate-wise, b(x)_i = g(x_i), for a scalar profile g
//! chosen so that the Holder exponent beta is exact by construction and the
//! sup bound and seminorm have closed forms. The seminorm is measured in
//! Euclidean norms on both sides, which brings in the dimensional factor
//! d^{(1-beta)/2} relative to the scalar profile.
//!
//! An optional constant `offset` kappa turns b into b - kappa. That is the
//! drift half of the shift identity: integrating b - kappa while adding
//! kappa*dt to every noise increment reproduces the original dynamics.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DriftKind {
    Zero,
    Constant {
        values: Vec<f64>,
    },
    /// amplitude * sin(frequency * x_i): smooth, Lipschitz constant
    /// amplitude * frequency.
    SmoothSine {
        amplitude: f64,
        frequency: f64,
    },
    /// amplitude * sign(u) * (|u|^beta ∧ 1) with u = x_i - center: exactly
    /// C^beta and nothing better at the center.
    HolderPower {
        beta: f64,
        amplitude: f64,
        center: f64,
    },
    /// amplitude * sum_{k=0}^{terms} base^{-beta k} cos(base^k x_i): the
    /// classical nowhere-smoother C^beta profile, truncated.
    Weierstrass {
        beta: f64,
        base: u32,
        terms: u32,
        amplitude: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriftSpec {
    #[serde(flatten)]
    pub kind: DriftKind,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<f64>>,
}

impl DriftSpec {
    pub fn new(kind: DriftKind, dim: usize) -> Result<DriftSpec> {
        let spec = DriftSpec {
            kind,
            dim,
            offset: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::invalid("dim", "dimension must be at least 1"));
        }
        if let Some(offset) = &self.offset {
            if offset.len() != self.dim {
                return Err(Error::invalid(
                    "offset",
                    format!("offset length {} differs from dim {}", offset.len(), self.dim),
                ));
            }
            if offset.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("offset", "offset entries must be finite"));
            }
        }
        match &self.kind {
            DriftKind::Zero => {}
            DriftKind::Constant { values } => {
                if values.len() != self.dim {
                    return Err(Error::invalid(
                        "values",
                        format!("constant length {} differs from dim {}", values.len(), self.dim),
                    ));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("values", "constant entries must be finite"));
                }
            }
            DriftKind::SmoothSine {
                amplitude,
                frequency,
            } => {
                check_amplitude(*amplitude)?;
                if !(*frequency > 0.0) || !frequency.is_finite() {
                    return Err(Error::invalid(
                        "frequency",
                        format!("frequency must be positive and finite, got {frequency}"),
                    ));
                }
            }
            DriftKind::HolderPower {
                beta,
                amplitude,
                center,
            } => {
                check_amplitude(*amplitude)?;
                if !(*beta > 0.0 && *beta <= 1.0) {
                    return Err(Error::invalid(
                        "beta",
                        format!("Holder exponent must lie in (0, 1], got {beta}"),
                    ));
                }
                if !center.is_finite() {
                    return Err(Error::invalid("center", "center must be finite"));
                }
            }
            DriftKind::Weierstrass {
                beta,
                base,
                terms,
                amplitude,
            } => {
                check_amplitude(*amplitude)?;
                if !(*beta > 0.0 && *beta < 1.0) {
                    return Err(Error::invalid(
                        "beta",
                        format!("Weierstrass exponent must lie in (0, 1), got {beta}"),
                    ));
                }
                if *base < 2 {
                    return Err(Error::invalid("base", "base must be an integer >= 2"));
                }
                if *terms < 1 || *terms > 48 {
                    return Err(Error::invalid(
                        "terms",
                        "term count must lie in 1..=48 (frequency base^terms must stay well inside f64 range)",
                    ));
                }
            }
        }
        Ok(())
    }

    /// Declared Holder exponent. Constant drifts are smooth, reported as
    /// infinity so rate formulas see an unconstrained beta.
    pub fn beta(&self) -> f64 {
        match &self.kind {
            DriftKind::Zero | DriftKind::Constant { .. } => f64::INFINITY,
            DriftKind::SmoothSine { .. } => 1.0,
            DriftKind::HolderPower { beta, .. } | DriftKind::Weierstrass { beta, .. } => *beta,
        }
    }

    /// Upper bound on |b(x)| in the Euclidean norm, offset included.
    pub fn sup_bound(&self) -> f64 {
        let offset_norm = |off: &Option<Vec<f64>>| -> f64 {
            off.as_ref()
                .map(|o| o.iter().map(|v| v * v).sum::<f64>().sqrt())
                .unwrap_or(0.0)
        };
        match &self.kind {
            DriftKind::Zero => offset_norm(&self.offset),
            DriftKind::Constant { values } => {
                let zeros = vec![0.0; self.dim];
                let off = self.offset.as_deref().unwrap_or(&zeros);
                values
                    .iter()
                    .zip(off)
                    .map(|(v, o)| (v - o) * (v - o))
                    .sum::<f64>()
                    .sqrt()
            }
            DriftKind::SmoothSine { amplitude, .. } => {
                amplitude * (self.dim as f64).sqrt() + offset_norm(&self.offset)
            }
            DriftKind::HolderPower { amplitude, .. } => {
                amplitude * (self.dim as f64).sqrt() + offset_norm(&self.offset)
            }
            DriftKind::Weierstrass {
                beta,
                base,
                terms,
                amplitude,
            } => {
                let damp = (*base as f64).powf(-beta);
                let mut geometric = 0.0;
                let mut w = 1.0;
                for _ in 0..=*terms {
                    geometric += w;
                    w *= damp;
                }
                amplitude * geometric * (self.dim as f64).sqrt() + offset_norm(&self.offset)
            }
        }
    }

    /// Holder seminorm bound [b]_beta in Euclidean norms; constant shifts
    /// leave it unchanged.
    pub fn holder_seminorm(&self) -> f64 {
        let dim_factor = |beta: f64| (self.dim as f64).powf((1.0 - beta) / 2.0);
        match &self.kind {
            DriftKind::Zero | DriftKind::Constant { .. } => 0.0,
            DriftKind::SmoothSine {
                amplitude,
                frequency,
            } => amplitude * frequency,
            DriftKind::HolderPower {
                beta, amplitude, ..
            } => amplitude * 2f64.powf(1.0 - beta) * dim_factor(*beta),
            DriftKind::Weierstrass {
                beta,
                terms,
                amplitude,
                ..
            } => amplitude * 2f64.powf(1.0 - beta) * (*terms as f64 + 1.0) * dim_factor(*beta),
        }
    }

    /// Writes b(x) into `out`.
    pub fn evaluate(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        match &self.kind {
            DriftKind::Zero => out.fill(0.0),
            DriftKind::Constant { values } => out.copy_from_slice(values),
            DriftKind::SmoothSine {
                amplitude,
                frequency,
            } => {
                for (o, &xi) in out.iter_mut().zip(x) {
                    *o = amplitude * (frequency * xi).sin();
                }
            }
            DriftKind::HolderPower {
                beta,
                amplitude,
                center,
            } => {
                for (o, &xi) in out.iter_mut().zip(x) {
                    let u = xi - center;
                    *o = amplitude * u.signum() * u.abs().powf(*beta).min(1.0);
                }
            }
            DriftKind::Weierstrass {
                beta,
                base,
                terms,
                amplitude,
            } => {
                let damp = (*base as f64).powf(-beta);
                for (o, &xi) in out.iter_mut().zip(x) {
                    let mut acc = 0.0;
                    let mut weight = 1.0;
                    let mut freq = 1.0;
                    for _ in 0..=*terms {
                        acc += weight * (freq * xi).cos();
                        weight *= damp;
                        freq *= *base as f64;
                    }
                    *o = amplitude * acc;
                }
            }
        }
        if let Some(offset) = &self.offset {
            for (o, k) in out.iter_mut().zip(offset) {
                *o -= k;
            }
        }
    }

    pub fn evaluate_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.evaluate(x, &mut out);
        out
    }

    /// The drift b - kappa. Zero and constant kinds fold the shift into the
    /// constant exactly (collapsing to Zero when nothing remains); the other
    /// kinds accumulate it in `offset`.
    pub fn shift(&self, kappa: &[f64]) -> Result<DriftSpec> {
        if kappa.len() != self.dim {
            return Err(Error::invalid(
                "kappa",
                format!("shift length {} differs from dim {}", kappa.len(), self.dim),
            ));
        }
        if kappa.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("kappa", "shift entries must be finite"));
        }
        let shifted = match &self.kind {
            DriftKind::Zero | DriftKind::Constant { .. } => {
                let current = match &self.kind {
                    DriftKind::Constant { values } => values.clone(),
                    _ => vec![0.0; self.dim],
                };
                let mut offset = self.offset.clone().unwrap_or_else(|| vec![0.0; self.dim]);
                for (o, k) in offset.iter_mut().zip(kappa) {
                    *o += k;
                }
                let folded: Vec<f64> = current.iter().zip(&offset).map(|(v, o)| v - o).collect();
                if folded.iter().all(|&v| v == 0.0) {
                    DriftSpec {
                        kind: DriftKind::Zero,
                        dim: self.dim,
                        offset: None,
                    }
                } else {
                    DriftSpec {
                        kind: DriftKind::Constant { values: folded },
                        dim: self.dim,
                        offset: None,
                    }
                }
            }
            _ => {
                let mut offset = self.offset.clone().unwrap_or_else(|| vec![0.0; self.dim]);
                for (o, k) in offset.iter_mut().zip(kappa) {
                    *o += k;
                }
                let offset = if offset.iter().all(|&v| v == 0.0) {
                    None
                } else {
                    Some(offset)
                };
                DriftSpec {
                    kind: self.kind.clone(),
                    dim: self.dim,
                    offset,
                }
            }
        };
        Ok(shifted)
    }

    /// Probes the declared Holder bound with random pairs |x - y| <= 1 and
    /// returns the largest observed ratio |b(x)-b(y)| / (seminorm |x-y|^beta).
    /// Gap lengths are drawn log-uniformly so the small-distance regime where
    /// the bound is tight gets exercised.
    pub fn empirical_holder_ratio(&self, pairs: usize, rng: &mut impl rand::Rng) -> Result<f64> {
        self.validate()?;
        let seminorm = self.holder_seminorm();
        let beta = self.beta().min(1.0);
        let mut worst: f64 = 0.0;
        let mut bx = vec![0.0; self.dim];
        let mut by = vec![0.0; self.dim];
        for _ in 0..pairs {
            let x: Vec<f64> = (0..self.dim).map(|_| rng.random::<f64>() * 6.0 - 3.0).collect();
            let gap = 10f64.powf(rng.random::<f64>() * 6.0 - 6.0);
            let mut dir: Vec<f64> = (0..self.dim).map(|_| rng.random::<f64>() - 0.5).collect();
            let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 {
                continue;
            }
            for d in dir.iter_mut() {
                *d *= gap / norm;
            }
            let y: Vec<f64> = x.iter().zip(&dir).map(|(a, b)| a + b).collect();
            self.evaluate(&x, &mut bx);
            self.evaluate(&y, &mut by);
            let diff = bx
                .iter()
                .zip(&by)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            if seminorm == 0.0 {
                if diff != 0.0 {
                    return Err(Error::InsufficientData(
                        "constant drift produced a nonzero increment".into(),
                    ));
                }
                continue;
            }
            let dist = dir.iter().map(|v| v * v).sum::<f64>().sqrt();
            if dist == 0.0 {
                continue;
            }
            worst = worst.max(diff / (seminorm * dist.powf(beta)));
        }
        Ok(worst)
    }
}

fn check_amplitude(amplitude: f64) -> Result<()> {
    if !(amplitude >= 0.0) || !amplitude.is_finite() {
        return Err(Error::invalid(
            "amplitude",
            format!("amplitude must be nonnegative and finite, got {amplitude}"),
        ));
    }
    Ok(())
}
