//! Trigonometric polynomials on the unit circle and the specializations they
//! induce.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symcore::{Alpha, PowerSumValues};

/// A function `f(θ) = Σ_j f̂_j e^{ijθ}` with finitely many nonzero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct CircleFunction {
    coeffs: BTreeMap<i64, Complex64>,
}

impl CircleFunction {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(coeffs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let mut out = Self::zero();
        for (j, c) in coeffs {
            *out.coeffs.entry(j).or_default() += c;
        }
        out.coeffs.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        out
    }

    /// Real-valued function from its nonnegative-frequency coefficients;
    /// `f̂_{−j}` is set to `conj(f̂_j)` and the constant term is made real.
    pub fn real(constant: f64, positive: impl IntoIterator<Item = (u32, Complex64)>) -> Self {
        let mut terms = vec![(0, Complex64::new(constant, 0.0))];
        for (j, c) in positive {
            if j == 0 {
                terms[0].1 += Complex64::new(c.re, 0.0);
                continue;
            }
            terms.push((j as i64, c));
            terms.push((-(j as i64), c.conj()));
        }
        Self::from_coeffs(terms)
    }

    /// `2c·cos(kθ)`, i.e. `f̂_{±k} = c`.
    pub fn cosine(k: u32, c: f64) -> Self {
        Self::real(0.0, [(k, Complex64::new(c, 0.0))])
    }

    pub fn coeff(&self, j: i64) -> Complex64 {
        self.coeffs.get(&j).copied().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&j, &c)| (j, c))
    }

    pub fn max_frequency(&self) -> u64 {
        self.coeffs.keys().map(|j| j.unsigned_abs()).max().unwrap_or(0)
    }

    /// Exact check of `f̂_{−j} = conj(f̂_j)` for all `j`.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|(&j, &c)| self.coeff(-j) == c.conj())
    }

    pub fn require_real(&self) -> Result<()> {
        if self.is_real() {
            Ok(())
        } else {
            Err(Error::NotReal(
                "Fourier coefficients are not conjugate-symmetric".into(),
            ))
        }
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&j, &c)| c * Complex64::from_polar(1.0, j as f64 * theta))
            .sum()
    }

    /// `Σ_{k∈Z} |k|^{2p} |f̂_k|²`, the square of the `H_p` seminorm.
    pub fn seminorm_sq(&self, p: f64) -> f64 {
        self.coeffs
            .iter()
            .filter(|(&k, _)| k != 0)
            .map(|(&k, c)| (k.unsigned_abs() as f64).powf(2.0 * p) * c.norm_sqr())
            .sum()
    }

    /// `Σ_{k≥1} k f̂_k f̂_{−k}`.
    pub fn cross_sum(&self) -> Complex64 {
        self.coeffs
            .iter()
            .filter(|(&k, _)| k > 0)
            .map(|(&k, &c)| k as f64 * c * self.coeff(-k))
            .sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|(&j, &c)| (j, c * s)))
    }
}

/// Which half of the spectrum feeds a specialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Values `p_j(ρ)` for `j ≥ 1`. Power sums past the stored range are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Specialization {
    values: Vec<Complex64>,
}

impl Specialization {
    pub fn new(values: Vec<Complex64>) -> Self {
        Specialization { values }
    }

    /// `p_j(ρ_±) = α j f̂_{±j}`.
    pub fn from_circle(f: &CircleFunction, alpha: &Alpha, side: Side) -> Self {
        let a = alpha.to_f64();
        let jmax = f.max_frequency() as usize;
        let values = (1..=jmax)
            .map(|j| {
                let k = match side {
                    Side::Plus => j as i64,
                    Side::Minus => -(j as i64),
                };
                a * j as f64 * f.coeff(k)
            })
            .collect();
        Specialization { values }
    }

    /// `p_1 = √q`, all higher power sums zero.
    pub fn plancherel(q: f64) -> Self {
        Specialization {
            values: vec![Complex64::new(q.sqrt(), 0.0)],
        }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn conj(&self) -> Self {
        Specialization {
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }
}

impl PowerSumValues for Specialization {
    fn power_sum(&self, j: usize) -> Result<Complex64> {
        if j == 0 {
            return Err(Error::MissingPowerSum(0));
        }
        Ok(self.values.get(j - 1).copied().unwrap_or_default())
    }
}

/// `log Z = (1/α) Σ_j p_j(ρ₁) p_j(ρ₂) / j`, the log of the full Cauchy sum
/// `Σ_λ J_λ(ρ₁)J_λ(ρ₂)/⟨J_λ,J_λ⟩`.
pub fn log_cauchy_sum(rho1: &Specialization, rho2: &Specialization, alpha: &Alpha) -> Complex64 {
    let a = alpha.to_f64();
    rho1.values
        .iter()
        .zip(&rho2.values)
        .enumerate()
        .map(|(i, (x, y))| x * y / (i + 1) as f64)
        .sum::<Complex64>()
        / a
}

/// `(1/α) Σ_j p_j(ρ₁)p_j(ρ₂)`, the mean of `|λ|` under the Jack measure.
pub fn cauchy_mean_size(rho1: &Specialization, rho2: &Specialization, alpha: &Alpha) -> Complex64 {
    rho1.values
        .iter()
        .zip(&rho2.values)
        .map(|(x, y)| x * y)
        .sum::<Complex64>()
        / alpha.to_f64()
}
