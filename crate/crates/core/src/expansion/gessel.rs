//! The Jack-polynomial series for `E Π e^{f(θ_j)}` under the circular
//! β-ensemble, its large-`n` limit, and the accompanying bounds.

use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use super::circle::{cauchy_mean_size, log_cauchy_sum, CircleFunction, Side, Specialization};
use crate::error::{Error, Result};
use crate::symcore::sympoly::ratio_to_f64;
use crate::symcore::{a_coefficient, Alpha, JackTable, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GesselValue {
    pub value: Complex64,
    /// Bound on the absolute contribution of the dropped `|λ| > D` terms.
    pub tail_estimate: f64,
}

/// The `n`-independent part of the series: `J_λ(ρ₊)J_λ(ρ₋)/⟨J_λ,J_λ⟩` for
/// every `|λ| ≤ D`, plus the truncation bound. Evaluate at several `n` with
/// [`GesselSeries::evaluate`].
#[derive(Clone, Debug)]
pub struct GesselSeries {
    alpha: Alpha,
    constant: Complex64,
    terms: Vec<(Partition, Complex64)>,
    tail_unscaled: f64,
}

impl GesselSeries {
    /// Uses all weights up to `degree`, or the full table when `None`.
    pub fn new(f: &CircleFunction, table: &JackTable, degree: Option<usize>) -> Result<Self> {
        let alpha = table.alpha().clone();
        if alpha.value() < &num_rational::BigRational::one() {
            return Err(Error::InvalidParameter(format!(
                "the expansion needs alpha >= 1 (beta <= 2), got alpha = {alpha}"
            )));
        }
        let d = degree.unwrap_or(table.max_degree());
        if d > table.max_degree() {
            return Err(Error::InvalidParameter(format!(
                "degree {d} exceeds the Jack table cap {}",
                table.max_degree()
            )));
        }
        let plus = Specialization::from_circle(f, &alpha, Side::Plus);
        let minus = Specialization::from_circle(f, &alpha, Side::Minus);
        let mut terms = Vec::new();
        let (mut partial_plus, mut partial_minus) = (0.0, 0.0);
        for (lambda, jack, norm) in table.iter().take_while(|(l, _, _)| l.weight() <= d) {
            let n = ratio_to_f64(norm);
            let jp = jack.specialize(&plus)?;
            let jm = jack.specialize(&minus)?;
            partial_plus += jp.norm_sqr() / n;
            partial_minus += jm.norm_sqr() / n;
            terms.push((lambda.clone(), jp * jm / n));
        }
        let tail_plus = cauchy_tail(&plus, &alpha, partial_plus, d, terms.len());
        let tail_minus = cauchy_tail(&minus, &alpha, partial_minus, d, terms.len());
        Ok(GesselSeries {
            alpha,
            constant: f.coeff(0),
            terms,
            tail_unscaled: (tail_plus * tail_minus).sqrt(),
        })
    }

    /// `e^{n f̂₀} Σ_{l(λ)≤n, |λ|≤D} J_λ(ρ₊)J_λ(ρ₋)/⟨J_λ,J_λ⟩ · A^α_λ(n)`.
    pub fn evaluate(&self, n: usize) -> Result<GesselValue> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (lambda, w) in &self.terms {
            if lambda.len() > n {
                continue;
            }
            sum += w * ratio_to_f64(&a_coefficient(lambda, &self.alpha, n)?);
        }
        let prefactor = (n as f64 * self.constant).exp();
        Ok(GesselValue {
            value: prefactor * sum,
            tail_estimate: prefactor.norm() * self.tail_unscaled,
        })
    }
}

// Mass of Σ_{|λ|>D} |J_λ(ρ)|²/⟨J_λ,J_λ⟩. The full sum has the closed form
// exp((1/α)Σ_j |p_j(ρ)|²/j), so the exact complement is available; the Markov
// bound through E|λ| caps it when rounding dominates.
fn cauchy_tail(rho: &Specialization, alpha: &Alpha, partial: f64, degree: usize, nterms: usize) -> f64 {
    let conj = rho.conj();
    let z = log_cauchy_sum(rho, &conj, alpha).re.exp();
    let mean = cauchy_mean_size(rho, &conj, alpha).re;
    let markov = z * mean / (degree + 1) as f64;
    let rounding = 4.0 * f64::EPSILON * z * nterms as f64;
    let complement = (z - partial).max(0.0) + rounding;
    complement.min(markov)
}

pub fn gessel_expectation(
    f: &CircleFunction,
    table: &JackTable,
    n: usize,
    degree: Option<usize>,
) -> Result<GesselValue> {
    GesselSeries::new(f, table, degree)?.evaluate(n)
}

/// `exp((2/β) Σ_{k≥1} k f̂_k f̂_{−k})`.
pub fn limit_laplace(f: &CircleFunction, beta: f64) -> Result<Complex64> {
    check_beta(beta)?;
    Ok((2.0 / beta * f.cross_sum()).exp())
}

/// `exp((2/β) Σ_{k≥1} k |f̂_k|²)` for real `f`.
pub fn subgauss_bound(f: &CircleFunction, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    f.require_real()?;
    Ok((f.seminorm_sq(0.5) / beta).exp())
}

/// Error bound for `2n` particles:
/// `(8/(β²n)) exp((1/β)‖f‖²_{1/2} − (2/β) Re Σ_{k≥1} k f̂_k f̂_{−k}) ‖f‖²_1`.
pub fn cbe_error_bound(f: &CircleFunction, beta: f64, n: usize) -> Result<f64> {
    check_beta(beta)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let h1 = f.seminorm_sq(1.0);
    if h1 == 0.0 {
        return Ok(0.0);
    }
    let exponent = f.seminorm_sq(0.5) / beta - 2.0 / beta * f.cross_sum().re;
    Ok(8.0 / (beta * beta * n as f64) * exponent.exp() * h1)
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta <= 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("beta must lie in (0, 2], got {beta}")))
    }
}
