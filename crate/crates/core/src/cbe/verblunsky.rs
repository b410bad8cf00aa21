//! Random Verblunsky coefficients and the Szegő recursion.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Draws from the `θ_ν` law on the unit disc, density proportional to
/// `(1 − |z|²)^{(ν−3)/2}`.
pub fn sample_theta_nu<R: Rng + ?Sized>(nu: f64, rng: &mut R) -> Result<Complex64> {
    if !(nu > 1.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter(format!("theta_nu needs nu > 1, got {nu}")));
    }
    // |z|² ~ Beta(1, (ν−1)/2) by inverse CDF; 1 − U keeps U in (0, 1].
    let u_uniform: f64 = 1.0 - rng.random::<f64>();
    let r2 = 1.0 - u_uniform.powf(2.0 / (nu - 1.0));
    let phi = TAU * rng.random::<f64>();
    Ok(Complex64::from_polar(r2.sqrt(), phi))
}

/// `α_0, …, α_{n−2}` in the open disc and `α_{n−1} = e^{iμ}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerblunskySeq {
    pub alphas: Vec<Complex64>,
    pub mu: f64,
}

impl VerblunskySeq {
    pub fn new(alphas: Vec<Complex64>, mu: f64) -> Result<Self> {
        if let Some(a) = alphas.iter().find(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidParameter(format!(
                "Verblunsky coefficient {a} outside the open disc"
            )));
        }
        Ok(VerblunskySeq { alphas, mu })
    }

    /// Number of points, `n`.
    pub fn n_points(&self) -> usize {
        self.alphas.len() + 1
    }

    pub fn last(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.mu)
    }

    /// `(Φ_{n−1}(z), Φ*_{n−1}(z))` together with their `z`-derivatives, by
    /// running the recursion at the point `z`.
    pub fn eval_pair(&self, z: Complex64) -> SzegoValues {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let (mut phi, mut star, mut dphi, mut dstar) = (one, one, zero, zero);
        for &a in &self.alphas {
            let next = z * phi - a.conj() * star;
            let next_star = star - a * z * phi;
            let next_d = phi + z * dphi - a.conj() * dstar;
            let next_dstar = dstar - a * (phi + z * dphi);
            phi = next;
            star = next_star;
            dphi = next_d;
            dstar = next_dstar;
        }
        SzegoValues { phi, star, dphi, dstar }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SzegoValues {
    pub phi: Complex64,
    pub star: Complex64,
    pub dphi: Complex64,
    pub dstar: Complex64,
}

/// `α_k ~ θ_{β(k+1)+1}` for `k ≤ n−2`, `μ` uniform.
pub fn sample_verblunsky<R: Rng + ?Sized>(n: usize, beta: f64, rng: &mut R) -> Result<VerblunskySeq> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
    }
    let alphas = (0..n - 1)
        .map(|k| sample_theta_nu(beta * (k + 1) as f64 + 1.0, rng))
        .collect::<Result<Vec<_>>>()?;
    let mu = TAU * rng.random::<f64>();
    Ok(VerblunskySeq { alphas, mu })
}

/// Coefficients (constant term first) of `Φ_k` and `Φ*_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SzegoPair {
    pub phi: Vec<Complex64>,
    pub star: Vec<Complex64>,
}

impl SzegoPair {
    pub fn initial() -> Self {
        let one = vec![Complex64::new(1.0, 0.0)];
        SzegoPair {
            phi: one.clone(),
            star: one,
        }
    }

    /// `Φ_{k+1} = zΦ_k − ᾱΦ*_k`, `Φ*_{k+1} = Φ*_k − α zΦ_k`.
    pub fn step(&self, a: Complex64) -> Self {
        let k = self.phi.len();
        let mut phi = vec![Complex64::new(0.0, 0.0); k + 1];
        let mut star = vec![Complex64::new(0.0, 0.0); k + 1];
        for i in 0..k {
            phi[i + 1] += self.phi[i];
            phi[i] -= a.conj() * self.star[i];
            star[i] += self.star[i];
            star[i + 1] -= a * self.phi[i];
        }
        SzegoPair { phi, star }
    }
}

pub fn szego_pair(v: &VerblunskySeq) -> SzegoPair {
    v.alphas.iter().fold(SzegoPair::initial(), |p, &a| p.step(a))
}

/// `zΦ_{n−1}(z) − e^{−iμ}Φ*_{n−1}(z)`, constant term first.
pub fn characteristic_polynomial(v: &VerblunskySeq) -> Vec<Complex64> {
    let pair = szego_pair(v);
    let phase = Complex64::from_polar(1.0, -v.mu);
    let n = v.n_points();
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for i in 0..n {
        out[i + 1] += pair.phi[i];
        out[i] -= phase * pair.star[i];
    }
    out
}
