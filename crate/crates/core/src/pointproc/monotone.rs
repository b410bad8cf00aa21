//! Piecewise-linear nondecreasing functions on a grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Knots `x_i ↦ u_i`, both nondecreasing, evaluated by linear interpolation.
/// A repeated abscissa encodes a jump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotoneFnView {
    x: Vec<f64>,
    u: Vec<f64>,
}

/// Result of a generalized inverse lookup.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Preimage {
    /// `inf{x : u(x) ≥ y}`.
    pub x: f64,
    /// `y` is attained on a segment of positive length; `x` is its left end.
    pub on_flat: bool,
}

impl MonotoneFnView {
    pub fn new(x: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        if x.len() != u.len() || x.is_empty() {
            return Err(Error::InvalidParameter(
                "grid and values must be nonempty and of equal length".into(),
            ));
        }
        if x.iter().chain(&u).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("grid and values must be finite".into()));
        }
        if x.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter("grid must be nondecreasing".into()));
        }
        if let Some(i) = u.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(format!("values decrease at knot {i}")));
        }
        Ok(MonotoneFnView { x, u })
    }

    /// Samples `f` on the grid; `f` must be nondecreasing.
    pub fn from_fn(x: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let u = x.iter().map(|&t| f(t)).collect();
        Self::new(x, u)
    }

    pub fn grid(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    pub fn range(&self) -> (f64, f64) {
        (self.u[0], self.u[self.u.len() - 1])
    }

    /// Linear interpolation, clamped outside the domain. At a jump the right
    /// limit is returned.
    pub fn eval(&self, t: f64) -> f64 {
        let i = self.x.partition_point(|&xi| xi <= t);
        if i == 0 {
            return self.u[0];
        }
        if i == self.x.len() {
            return self.u[i - 1];
        }
        let (x0, x1, u0, u1) = (self.x[i - 1], self.x[i], self.u[i - 1], self.u[i]);
        u0 + (u1 - u0) * (t - x0) / (x1 - x0)
    }

    /// Generalized inverse for `y ∈ [u_0, u_last]`; `None` outside.
    pub fn inverse(&self, y: f64) -> Option<Preimage> {
        let (lo, hi) = self.range();
        if !(y >= lo && y <= hi) {
            return None;
        }
        let i = self.u.partition_point(|&v| v < y);
        let x = if i == 0 {
            self.x[0]
        } else {
            let (x0, x1, u0, u1) = (self.x[i - 1], self.x[i], self.u[i - 1], self.u[i]);
            if x1 == x0 {
                x1
            } else {
                (x0 + (x1 - x0) * (y - u0) / (u1 - u0)).clamp(x0, x1)
            }
        };
        let on_flat = self.u[i] == y && self.u[i + 1..].first() == Some(&y) && self.x[i + 1] > self.x[i];
        Some(Preimage { x, on_flat })
    }

    pub fn shifted(&self, c: f64) -> Self {
        MonotoneFnView {
            x: self.x.clone(),
            u: self.u.iter().map(|v| v + c).collect(),
        }
    }

    /// `[u]_k`: the interpolant through `k+1` equally spaced knots of
    /// `[a, b]`, endpoints included.
    pub fn linear_interpolation(&self, k: usize, a: f64, b: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if !(a < b) {
            return Err(Error::InvalidParameter("window must satisfy a < b".into()));
        }
        let knots: Vec<f64> = (0..=k).map(|j| a + (b - a) * j as f64 / k as f64).collect();
        Self::from_fn(knots, |t| self.eval(t))
    }
}

// ∫_0^h |p + (q − p) s/h| ds for a linear function with end values p, q.
fn abs_linear_integral(p: f64, q: f64, h: f64) -> f64 {
    if p * q >= 0.0 {
        0.5 * h * (p.abs() + q.abs())
    } else {
        0.5 * h * (p * p + q * q) / (p.abs() + q.abs())
    }
}

/// `∫_a^b |u − v|`, exact for piecewise-linear inputs.
pub fn l1_distance(u: &MonotoneFnView, v: &MonotoneFnView, a: f64, b: f64) -> f64 {
    let mut knots: Vec<f64> = u.x.iter().chain(&v.x).copied().filter(|&t| t > a && t < b).collect();
    knots.push(a);
    knots.push(b);
    knots.sort_by(f64::total_cmp);
    knots.dedup();
    knots
        .windows(2)
        .map(|w| {
            let h = w[1] - w[0];
            // Evaluate just inside the cell so that jumps at knots are ignored.
            let eps = 1e-12 * h;
            let left = u.eval(w[0] + eps) - v.eval(w[0] + eps);
            let right = u.eval(w[1] - eps) - v.eval(w[1] - eps);
            abs_linear_integral(left, right, h)
        })
        .sum()
}
