//! Characteristic exponents of the tempered and truncated jump kinds.
//!
//! Both exponents are integrals of (1 - cos(lambda r)) against a jump density
//! on the positive half line, doubled for symmetry:
//!
//!   tempered:  Phi(l) = 2 int_0^inf  (1 - cos(l r)) r^{-1-alpha} e^{-c r} dr
//!   truncated: Phi(l) = 2 int_0^1    (1 - cos(l r)) r^{-1-alpha} dr
//!
//! Rescaling y = l r reduces both to the kernels
//!
//!   F(alpha, m) = int_0^inf (1 - cos y) y^{-1-alpha} e^{-m y} dy,  m = c / l,
//!   G(alpha, L) = int_0^L   (1 - cos y) y^{-1-alpha} dy,           L = l,
//!
//! with Phi = 2 l^alpha F (resp. G). The kernels are integrated by panels:
//! geometrically graded panels absorb the y^{1-alpha} behaviour at the
//! origin, half-period panels resolve the oscillation, and the far tail is
//! handled analytically through integration by parts, so the cost stays
//! bounded for every alpha in (0, 2), every tempering rate and every lambda.

use crate::quad::{gl16, gl32};
use std::f64::consts::PI;

const MAX_BODY_PANELS: usize = 4000;
const TAIL_TOL: f64 = 1e-13;

/// 1 - cos(y) without cancellation near the origin.
#[inline]
fn one_minus_cos(y: f64) -> f64 {
    let s = (0.5 * y).sin();
    2.0 * s * s
}

/// Characteristic exponent of the symmetric tempered jump density
/// r^{-1-alpha} e^{-c r}, evaluated at a scalar frequency.
pub fn tempered_exponent_1d(alpha: f64, tempering: f64, lambda: f64) -> f64 {
    let l = lambda.abs();
    if l == 0.0 {
        return 0.0;
    }
    2.0 * l.powf(alpha) * kernel_f(alpha, tempering / l)
}

/// Characteristic exponent of the symmetric truncated jump density
/// r^{-1-alpha} 1_{r <= 1}, evaluated at a scalar frequency.
pub fn truncated_exponent_1d(alpha: f64, lambda: f64) -> f64 {
    let l = lambda.abs();
    if l == 0.0 {
        return 0.0;
    }
    2.0 * l.powf(alpha) * kernel_g(alpha, l)
}

/// Variance of the jumps below `delta`: 2 int_0^delta r^{2} nu(dr), where nu
/// is the tempered density r^{-1-alpha} e^{-c r}. Used to size the Gaussian
/// compensation of the small jumps.
pub(crate) fn tempered_small_jump_variance(alpha: f64, tempering: f64, delta: f64) -> f64 {
    // int_0^delta r^{1-alpha} e^{-c r} dr, graded panels plus a series bottom.
    let eps = delta * 1e-8;
    let mut acc = eps.powf(2.0 - alpha) / (2.0 - alpha);
    let gl = gl32();
    let mut a = eps;
    while a < delta {
        let b = (2.0 * a).min(delta);
        acc += gl.integrate(a, b, |r| r.powf(1.0 - alpha) * (-tempering * r).exp());
        a = b;
    }
    2.0 * acc
}

/// F(alpha, m) = int_0^inf (1 - cos y) y^{-1-alpha} e^{-m y} dy.
fn kernel_f(alpha: f64, m: f64) -> f64 {
    let mut acc = head_integral(alpha, m, PI);
    let gl = gl16();
    let mut k = 1usize;
    loop {
        let y0 = k as f64 * PI;
        let phi0 = y0.powf(-1.0 - alpha) * (-m * y0).exp();
        let curvature = (1.0 + alpha) * (2.0 + alpha) / (y0 * y0)
            + 2.0 * m * (1.0 + alpha) / y0
            + m * m;
        // Once twice-integrating by parts leaves a remainder below tolerance,
        // close the integral analytically instead of walking more panels.
        if 2.0 * curvature * phi0 <= TAIL_TOL * (1.0 + acc.abs()) || k >= MAX_BODY_PANELS {
            let phi1 = -((1.0 + alpha) / y0 + m) * phi0;
            acc += smooth_tail(alpha, m, y0) + y0.sin() * phi0 + y0.cos() * phi1;
            break;
        }
        acc += gl.integrate(y0, y0 + PI, |y| {
            one_minus_cos(y) * y.powf(-1.0 - alpha) * (-m * y).exp()
        });
        k += 1;
    }
    acc
}

/// G(alpha, L) = int_0^L (1 - cos y) y^{-1-alpha} dy.
fn kernel_g(alpha: f64, upper: f64) -> f64 {
    let far = MAX_BODY_PANELS as f64 * PI;
    if upper > far {
        // int_0^L = int_0^inf - int_L^inf, with the remainder handled the
        // same way as the tempered tail (at zero tempering).
        let phi0 = upper.powf(-1.0 - alpha);
        let phi1 = -(1.0 + alpha) / upper * phi0;
        return kernel_f(alpha, 0.0)
            - (smooth_tail(alpha, 0.0, upper) + upper.sin() * phi0 + upper.cos() * phi1);
    }
    let mut acc = head_integral(alpha, 0.0, upper.min(PI));
    let gl = gl16();
    let mut a = PI;
    while a < upper {
        let b = (a + PI).min(upper);
        acc += gl.integrate(a, b, |y| one_minus_cos(y) * y.powf(-1.0 - alpha));
        a = b;
    }
    acc
}

/// int_0^upper of the kernel integrand, upper <= pi: geometric panels down to
/// a series bottom that absorbs the y^{1-alpha} origin behaviour.
fn head_integral(alpha: f64, m: f64, upper: f64) -> f64 {
    let eps = 1e-12f64.min(0.01 / m.max(1.0)).min(upper);
    // Below eps the integrand is y^{1-alpha}/2 up to O(eps^2 + m eps).
    let mut acc = eps.powf(2.0 - alpha) / (2.0 * (2.0 - alpha));
    let gl = gl32();
    let mut a = eps;
    while a < upper {
        let b = (2.0 * a).min(upper);
        acc += gl.integrate(a, b, |y| {
            one_minus_cos(y) * y.powf(-1.0 - alpha) * (-m * y).exp()
        });
        a = b;
    }
    acc
}

/// int_{y0}^inf y^{-1-alpha} e^{-m y} dy via the substitution y = y0 e^s.
fn smooth_tail(alpha: f64, m: f64, y0: f64) -> f64 {
    let my0 = m * y0;
    let gl = gl16();
    let mut acc = 0.0;
    let mut s = 0.0;
    loop {
        let t = s + 0.5;
        let panel = gl.integrate(s, t, |u| (-alpha * u - my0 * u.exp()).exp());
        acc += panel;
        s = t;
        if my0 * s.exp() > 745.0 {
            break; // further panels underflow to zero
        }
        if s > 45.0 / alpha {
            break;
        }
        if panel < 1e-16 * acc {
            break;
        }
    }
    y0.powf(-alpha) * acc
}
