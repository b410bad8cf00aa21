//! Adaptive quadrature on top of the double-exponential rule from the
//! `quadrature` crate.

use crate::error::{Error, Result};

const MAX_DEPTH: u32 = 24;

/// `∫_a^b f` to absolute tolerance `tol`. The interval is bisected until the
/// whole-interval estimate and the sum of the two halves agree.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return integrate(f, b, a, tol).map(|v| -v);
    }
    let whole = quadrature::integrate(&f, a, b, tol).integral;
    adapt(&f, a, b, whole, tol, 0)
}

fn adapt(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> Result<f64> {
    let mid = 0.5 * (a + b);
    let left = quadrature::integrate(f, a, mid, tol / 2.0).integral;
    let right = quadrature::integrate(f, mid, b, tol / 2.0).integral;
    let refined = left + right;
    if !refined.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
    }
    // Below this the comparison only measures rounding.
    let floor = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if (refined - whole).abs() <= tol.max(floor) {
        return Ok(refined);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "no convergence on [{a}, {b}] (difference {:.3e}, tolerance {tol:.3e})",
            (refined - whole).abs()
        )));
    }
    // Halving by √2 rather than 2 lets isolated discontinuities converge.
    let sub = tol / std::f64::consts::SQRT_2;
    Ok(adapt(f, a, mid, left, sub, depth + 1)? + adapt(f, mid, b, right, sub, depth + 1)?)
}

/// `∫_a^∞ f` via `x = a + t/(1−t)`.
pub fn integrate_to_infinity(f: impl Fn(f64) -> f64, a: f64, tol: f64) -> Result<f64> {
    integrate(
        |t| {
            if t >= 1.0 {
                return 0.0;
            }
            let s = 1.0 - t;
            f(a + t / s) / (s * s)
        },
        0.0,
        1.0,
        tol,
    )
}

/// `∫_{−∞}^{∞} f`.
pub fn integrate_line(f: impl Fn(f64) -> f64, tol: f64) -> Result<f64> {
    Ok(integrate_to_infinity(&f, 0.0, tol / 2.0)? + integrate_to_infinity(|x| f(-x), 0.0, tol / 2.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn smooth_integrals() {
        assert!((integrate(f64::sin, 0.0, PI, 1e-12).unwrap() - 2.0).abs() < 1e-11);
        assert!((integrate(|x| x * x, 1.0, 0.0, 1e-12).unwrap() + 1.0 / 3.0).abs() < 1e-12);
        let g = integrate_line(|x| (-x * x / 2.0).exp(), 1e-12).unwrap();
        assert!((g - (2.0 * PI).sqrt()).abs() < 1e-10);
        let e = integrate_to_infinity(|x| (-x).exp(), 1.0, 1e-12).unwrap();
        assert!((e - (-1.0f64).exp()).abs() < 1e-11);
    }

    #[test]
    fn kinked_integrand() {
        let v = integrate(|x: f64| (x - 0.3).abs(), -1.0, 1.0, 1e-10).unwrap();
        assert!((v - (1.3f64 * 1.3 + 0.7 * 0.7) / 2.0).abs() < 1e-9);
    }
}
