//! Finite configurations, the Θ-map and functionals of configurations.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::monotone::MonotoneFnView;
use crate::error::{Error, Result};

/// Points closer than this to a window edge are flagged.
pub const EDGE_TOLERANCE: f64 = 1e-9;

/// A sorted finite multiset of reals inside a closed window.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Configuration {
    points: Vec<f64>,
    window: (f64, f64),
    /// Points within [`EDGE_TOLERANCE`] of a window edge.
    pub near_edge: Vec<f64>,
    /// Lattice values that fell on a flat segment and were resolved to its
    /// left end.
    pub flat_hits: Vec<f64>,
}

impl Configuration {
    pub fn new(mut points: Vec<f64>, window: (f64, f64)) -> Result<Self> {
        if !(window.0 <= window.1) {
            return Err(Error::InvalidParameter("window must satisfy a <= b".into()));
        }
        if let Some(p) = points.iter().find(|&&p| !(p >= window.0 && p <= window.1)) {
            return Err(Error::InvalidParameter(format!("point {p} lies outside the window")));
        }
        points.sort_by(f64::total_cmp);
        let near_edge = points
            .iter()
            .copied()
            .filter(|p| p - window.0 < EDGE_TOLERANCE || window.1 - p < EDGE_TOLERANCE)
            .collect();
        Ok(Configuration {
            points,
            window,
            near_edge,
            flat_hits: Vec::new(),
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points in `[a, b]`.
    pub fn count_in(&self, a: f64, b: f64) -> usize {
        let lo = self.points.partition_point(|&p| p < a);
        let hi = self.points.partition_point(|&p| p <= b);
        hi.saturating_sub(lo)
    }

    /// The sub-configuration on `[a, b]`.
    pub fn restrict(&self, a: f64, b: f64) -> Result<Configuration> {
        let lo = self.points.partition_point(|&p| p < a);
        let hi = self.points.partition_point(|&p| p <= b);
        Configuration::new(self.points[lo..hi.max(lo)].to_vec(), (a, b))
    }
}

/// `u⁻¹(ω + 2πZ)` on the domain of `u`. A jump across `m` lattice values
/// yields `m` coincident points.
pub fn theta_map(u: &MonotoneFnView, omega: f64) -> Configuration {
    let (lo, hi) = u.range();
    let slack = 1e-12 * (1.0 + lo.abs().max(hi.abs()));
    let k_min = ((lo - omega) / TAU - slack).ceil() as i64;
    let k_max = ((hi - omega) / TAU + slack).floor() as i64;
    let mut points = Vec::new();
    let mut flat_hits = Vec::new();
    for k in k_min..=k_max {
        let y = (omega + TAU * k as f64).clamp(lo, hi);
        if let Some(p) = u.inverse(y) {
            points.push(p.x);
            if p.on_flat {
                flat_hits.push(y);
            }
        }
    }
    let mut config = Configuration::new(points, u.domain()).expect("preimages lie in the domain");
    config.flat_hits = flat_hits;
    config
}

/// `S_f(X) = Σ_{x∈X} f(x)`.
pub fn additive_functional<C: Into<Complex64>>(x: &Configuration, f: impl Fn(f64) -> C) -> Complex64 {
    x.points.iter().map(|&p| f(p).into()).sum()
}

/// `S_f(X) − (1/2π)∫f`, centered for intensity `1/2π`.
pub fn regularized_additive<C: Into<Complex64>>(x: &Configuration, f: impl Fn(f64) -> C, f_integral: f64) -> Complex64 {
    additive_functional(x, f) - f_integral / TAU
}

/// `Ψ_{1+g}(X) = Π_{x∈X} (1 + g(x))`.
pub fn multiplicative_functional<C: Into<Complex64>>(x: &Configuration, g: impl Fn(f64) -> C) -> Complex64 {
    x.points.iter().map(|&p| 1.0 + g(p).into()).product()
}
