//! Circular β-ensemble samples from Verblunsky coefficients.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::verblunsky::{characteristic_polynomial, sample_verblunsky, VerblunskySeq};
use crate::error::{Error, Result};
use crate::expansion::CircleFunction;
use crate::rng;
use crate::stats::ComplexMeanEstimate;

/// Roots whose modulus is further than this from 1 trigger a resample.
pub const MODULUS_HARD_LIMIT: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CbeSample {
    pub n: usize,
    pub beta: f64,
    /// Sorted, in `(−π, π]`.
    pub angles: Vec<f64>,
    pub max_modulus_deviation: f64,
    pub verblunsky: VerblunskySeq,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Roots of a monic polynomial (constant term first), each refined by a few
/// Newton steps. Degrees above 2 use Aberth–Ehrlich iteration started on the
/// unit circle and fall back to the Schur form of the companion matrix.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    roots_with(coeffs, true)
}

/// As [`polynomial_roots`], always using the companion matrix.
pub fn companion_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    roots_with(coeffs, false)
}

fn roots_with(coeffs: &[Complex64], aberth_first: bool) -> Result<Vec<Complex64>> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    if coeffs[n] != Complex64::new(1.0, 0.0) {
        return Err(Error::RootFinding("polynomial is not monic".into()));
    }
    let mut roots = match n {
        1 => vec![-coeffs[0]],
        2 => {
            let (b, c) = (coeffs[1], coeffs[0]);
            let disc = (b * b - 4.0 * c).sqrt();
            // Pick the larger-modulus root first to avoid cancellation.
            let q = if (b.conj() * disc).re >= 0.0 {
                -0.5 * (b + disc)
            } else {
                -0.5 * (b - disc)
            };
            if q.norm() == 0.0 {
                vec![Complex64::new(0.0, 0.0); 2]
            } else {
                vec![q, c / q]
            }
        }
        _ => match aberth_first.then(|| aberth(coeffs)).flatten() {
            Some(roots) => roots,
            None => {
                let mut companion = DMatrix::<Complex64>::zeros(n, n);
                for j in 0..n {
                    companion[(0, j)] = -coeffs[n - 1 - j];
                }
                for i in 1..n {
                    companion[(i, i - 1)] = Complex64::new(1.0, 0.0);
                }
                schur_eigenvalues(&companion)?
            }
        },
    };
    for z in &mut roots {
        let (mut p, _) = horner(coeffs, *z);
        for _ in 0..4 {
            let (_, dp) = horner(coeffs, *z);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *z - p / dp;
            let (pc, _) = horner(coeffs, cand);
            if pc.norm() >= p.norm() {
                break;
            }
            *z = cand;
            p = pc;
        }
    }
    Ok(roots)
}

const ABERTH_MAX_SWEEPS: usize = 100;

/// Simultaneous Aberth–Ehrlich iteration with in-place updates. `None` if it
/// does not settle or leaves a large residual.
fn aberth(coeffs: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let scale: f64 = coeffs.iter().map(|c| c.norm()).sum();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, (2.0 * PI * k as f64 + 0.4) / n as f64))
        .collect();
    let mut settled = false;
    for _ in 0..ABERTH_MAX_SWEEPS {
        let mut largest: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = horner(coeffs, z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (1.0 - ratio * repulsion);
            if !w.is_finite() {
                return None;
            }
            z[k] -= w;
            largest = largest.max(w.norm());
        }
        if largest <= 1e-14 {
            settled = true;
            break;
        }
    }
    let residual_ok = z.iter().all(|&r| horner(coeffs, r).0.norm() <= 1e-9 * scale);
    (settled && residual_ok).then_some(z)
}

// QR iteration can stall on (nearly) cyclic companion matrices; a complex
// diagonal shift breaks the symmetry on retry.
fn schur_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    for shift in [Complex64::new(0.0, 0.0), Complex64::new(0.37, 0.21)] {
        let shifted = m + DMatrix::from_diagonal_element(n, n, shift);
        if let Some(schur) = Schur::try_new(shifted, f64::EPSILON, 200 * n) {
            // Triangular for complex input; read the diagonal directly.
            let (_, t) = schur.unpack();
            return Ok((0..n).map(|i| t[(i, i)] - shift).collect());
        }
    }
    Err(Error::RootFinding(format!(
        "Schur iteration did not converge (n = {n})"
    )))
}

fn try_sample<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> Result<CbeSample> {
    let verblunsky = sample_verblunsky(n, beta, rng)?;
    let roots = polynomial_roots(&characteristic_polynomial(&verblunsky))?;
    let max_modulus_deviation = roots.iter().map(|z| (z.norm() - 1.0).abs()).fold(0.0, f64::max);
    if !(max_modulus_deviation <= MODULUS_HARD_LIMIT) {
        return Err(Error::RootFinding(format!(
            "root modulus deviates from 1 by {max_modulus_deviation:.3e}"
        )));
    }
    let mut angles: Vec<f64> = roots
        .iter()
        .map(|z| if z.arg() == -PI { PI } else { z.arg() })
        .collect();
    angles.sort_by(f64::total_cmp);
    Ok(CbeSample {
        n,
        beta,
        angles,
        max_modulus_deviation,
        verblunsky,
    })
}

/// One draw of the `n`-point circular β-ensemble. A root-finding failure is
/// retried once with fresh randomness before it becomes an error.
pub fn sample_cbe<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> Result<CbeSample> {
    try_sample(n, beta, rng).or_else(|_| try_sample(n, beta, rng))
}

/// Seeded batch sampler; draw `i` uses stream `i` of `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CbeSampler {
    pub n: usize,
    pub beta: f64,
    pub seed: u64,
}

impl CbeSampler {
    pub fn sample(&self, index: u64) -> Result<CbeSample> {
        sample_cbe(self.n, self.beta, &mut rng::stream(self.seed, index))
    }

    /// Applies `stat` to each of `count` samples in parallel; results are in
    /// index order.
    pub fn map<T, F>(&self, count: usize, stat: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(&CbeSample) -> T + Sync,
    {
        (0..count as u64)
            .into_par_iter()
            .map(|i| self.sample(i).map(|s| stat(&s)))
            .collect()
    }

    /// Monte-Carlo estimate of `E Π_j e^{f(θ_j)}`.
    pub fn multiplicative_mean(&self, f: &CircleFunction, count: usize) -> Result<ComplexMeanEstimate> {
        let values = self.map(count, |s| s.angles.iter().map(|&t| f.eval(t)).sum::<Complex64>().exp())?;
        Ok(ComplexMeanEstimate::from_samples(&values))
    }
}
