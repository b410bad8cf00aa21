//! The Prüfer phase: a continuous, nondecreasing argument of the relative
//! Blaschke product `B_k(e^{iθ})/B_k(1)` with `B_k(z) = zΦ_k(z)/Φ*_k(z)`.
//!
//! The Szegő recursion gives `B_{k+1}(z) = z (B_k − ᾱ_k)/(1 − α_k B_k)`, and on
//! the circle `arg((w − ᾱ)/(1 − αw)) = arg w − 2 Arg(1 − αw)` with the
//! principal branch continuous because `Re(1 − αw) > 0`. Iterating this
//! yields the continuous branch pointwise, so no phase unwrapping is needed.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::verblunsky::VerblunskySeq;
use crate::error::{Error, Result};

/// `ψ_{n−1}` for a fixed Verblunsky sequence.
#[derive(Clone, Debug)]
pub struct PruferPhase<'a> {
    seq: &'a VerblunskySeq,
    base: f64,
}

impl<'a> PruferPhase<'a> {
    pub fn new(seq: &'a VerblunskySeq) -> Self {
        PruferPhase {
            seq,
            base: continuous_arg(seq, 0.0),
        }
    }

    /// `ψ(θ)`, normalized so that `ψ(0) = 0`.
    pub fn eval(&self, theta: f64) -> f64 {
        continuous_arg(self.seq, theta) - self.base
    }

    /// `ψ′(θ) = (1 − k) + 2 Re(zΦ_k′(z)/Φ_k(z))` at `z = e^{iθ}`, `k = n−1`.
    pub fn derivative(&self, theta: f64) -> f64 {
        let z = Complex64::from_polar(1.0, theta);
        let v = self.seq.eval_pair(z);
        let k = self.seq.alphas.len() as f64;
        (1.0 - k) + 2.0 * (z * v.dphi / v.phi).re
    }

    /// The shift `ω ∈ [0, 2π)` for which the eigenangles are exactly the
    /// solutions of `ψ(θ) ∈ ω + 2πZ`.
    pub fn omega(&self) -> f64 {
        (-self.seq.mu - self.base).rem_euclid(TAU)
    }

    /// Values of `ψ` on a sorted grid.
    pub fn on_grid(&self, grid: &[f64]) -> Result<Vec<f64>> {
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter("grid must be strictly increasing".into()));
        }
        let mut out: Vec<f64> = grid.iter().map(|&t| self.eval(t)).collect();
        // Rounding can break monotonicity by a few ulps on very steep cells.
        for i in 1..out.len() {
            if out[i] < out[i - 1] {
                out[i] = out[i - 1];
            }
        }
        Ok(out)
    }
}

// Continuous argument of B_{n−1}(e^{iθ}), with B_0(z) = z.
fn continuous_arg(seq: &VerblunskySeq, theta: f64) -> f64 {
    let mut phase = theta;
    for &a in &seq.alphas {
        let w = Complex64::from_polar(1.0, phase);
        phase = theta + phase - 2.0 * (1.0 - a * w).arg();
    }
    phase
}

/// `ψ_{n−1}` on a sorted grid.
pub fn prufer_psi(seq: &VerblunskySeq, grid: &[f64]) -> Result<Vec<f64>> {
    PruferPhase::new(seq).on_grid(grid)
}
