//! Euler-Maruyama integration on shared-noise lattices.
//!
//! The scheme freezes the drift at the left grid point and adds the exact
//! noise increment: X_{(k+1)/n} = X_{k/n} + b(X_{k/n})/n + dL_k. Because a
//! coarse run and a fine reference can both be driven by one lattice (the
//! coarse one through block sums), their difference contains no noise at
//! shared grid times; it is pure discretization error and is bounded by twice
//! the drift sup bound.

pub mod drift;

pub use drift::{DriftKind, DriftSpec};

use crate::error::{Error, Result};
use crate::levy::IncrementLattice;
use std::io::Write;

/// A discrete solution path on the grid {k/n : k = 0..=n}.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionPath {
    grid_n: usize,
    dim: usize,
    x0: Vec<f64>,
    /// (grid_n + 1) states, step-major.
    states: Vec<f64>,
}

impl SolutionPath {
    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x0(&self) -> &[f64] {
        &self.x0
    }

    /// State at time k / grid_n.
    pub fn state(&self, k: usize) -> &[f64] {
        &self.states[k * self.dim..(k + 1) * self.dim]
    }

    pub fn terminal(&self) -> &[f64] {
        self.state(self.grid_n)
    }

    pub fn states(&self) -> &[f64] {
        &self.states
    }

    /// Writes the path as CSV with columns t, x1, .., xd.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "t")?;
        for j in 1..=self.dim {
            write!(w, ",x{j}")?;
        }
        writeln!(w)?;
        for k in 0..=self.grid_n {
            write!(w, "{}", k as f64 / self.grid_n as f64)?;
            for v in self.state(k) {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn from_states(dim: usize, x0: Vec<f64>, states: Vec<f64>) -> SolutionPath {
        assert_eq!(states.len() % dim, 0);
        let grid_n = states.len() / dim - 1;
        assert_eq!(&states[..dim], &x0[..]);
        SolutionPath {
            grid_n,
            dim,
            x0,
            states,
        }
    }
}

fn integrate(
    drift: &DriftSpec,
    lattice: &IncrementLattice,
    n: usize,
    x0: &[f64],
    noise_shift: Option<&[f64]>,
) -> Result<SolutionPath> {
    drift.validate()?;
    let dim = lattice.dim();
    if drift.dim != dim {
        return Err(Error::GridMismatch(format!(
            "drift dimension {} differs from lattice dimension {}",
            drift.dim, dim
        )));
    }
    if x0.len() != dim {
        return Err(Error::GridMismatch(format!(
            "x0 length {} differs from lattice dimension {}",
            x0.len(),
            dim
        )));
    }
    if n == 0 || lattice.n_fine() % n != 0 {
        return Err(Error::GridMismatch(format!(
            "step count {} does not divide the lattice's {} fine steps",
            n,
            lattice.n_fine()
        )));
    }
    if let Some(kappa) = noise_shift {
        if kappa.len() != dim {
            return Err(Error::GridMismatch(format!(
                "noise shift length {} differs from dimension {}",
                kappa.len(),
                dim
            )));
        }
    }
    let coarse = lattice.coarsen(lattice.n_fine() / n)?;
    let h = 1.0 / n as f64;
    let mut states = Vec::with_capacity((n + 1) * dim);
    states.extend_from_slice(x0);
    let mut x = x0.to_vec();
    let mut b = vec![0.0; dim];
    for k in 0..n {
        drift.evaluate(&x, &mut b);
        let inc = coarse.step(k);
        match noise_shift {
            None => {
                for i in 0..dim {
                    x[i] += b[i] * h + inc[i];
                }
            }
            Some(kappa) => {
                for i in 0..dim {
                    x[i] += b[i] * h + (inc[i] + kappa[i] * h);
                }
            }
        }
        states.extend_from_slice(&x);
    }
    Ok(SolutionPath {
        grid_n: n,
        dim,
        x0: x0.to_vec(),
        states,
    })
}

/// Euler-Maruyama with n steps on [0,1], driven by block sums of the lattice.
pub fn euler_maruyama(
    drift: &DriftSpec,
    lattice: &IncrementLattice,
    n: usize,
    x0: &[f64],
) -> Result<SolutionPath> {
    integrate(drift, lattice, n, x0, None)
}

/// Euler-Maruyama for the shifted system: drift as given, plus kappa*dt added
/// to every noise increment. Pairing this with `DriftSpec::shift` reproduces
/// the unshifted dynamics.
pub fn euler_maruyama_with_shift(
    drift: &DriftSpec,
    lattice: &IncrementLattice,
    n: usize,
    x0: &[f64],
    kappa: &[f64],
) -> Result<SolutionPath> {
    integrate(drift, lattice, n, x0, Some(kappa))
}

/// The coupling reference: the scheme run on every fine step of the lattice.
/// Its own bias is controlled by keeping measured step counts at or below
/// n_fine / 8.
pub fn reference_solution(
    drift: &DriftSpec,
    lattice: &IncrementLattice,
    x0: &[f64],
) -> Result<SolutionPath> {
    euler_maruyama(drift, lattice, lattice.n_fine(), x0)
}

/// Splits the dynamics dX = b(X)dt + dL into the shifted form with drift
/// b - kappa and noise L_t + kappa t. Returns the shifted drift together with
/// the noise shift to hand to `euler_maruyama_with_shift`.
pub fn shift_reduce(drift: &DriftSpec, kappa: &[f64]) -> Result<(DriftSpec, Vec<f64>)> {
    Ok((drift.shift(kappa)?, kappa.to_vec()))
}
