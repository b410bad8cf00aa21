//! Jack measures on partitions and the β-Plancherel special case.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use super::circle::{cauchy_mean_size, log_cauchy_sum, CircleFunction, Side, Specialization};
use crate::error::{Error, Result};
use crate::symcore::sympoly::ratio_to_f64;
use crate::symcore::{hook_products, Alpha, JackTable, Partition};

/// `M(λ) = Z⁻¹ J_λ(ρ₁)J_λ(ρ₂)/⟨J_λ,J_λ⟩` tabulated for `|λ| ≤ D`.
///
/// `Z` is the closed-form Cauchy sum over all partitions, so the tabulated
/// values are the true probabilities and the missing mass is the tail.
#[derive(Clone, Debug)]
pub struct JackMeasure {
    alpha: Alpha,
    degree: usize,
    log_z: Complex64,
    mean_size: Complex64,
    pmf: Vec<(Partition, Complex64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MassSummary {
    /// `Σ_{|λ|≤D} M(λ)`.
    pub truncated_mass: Complex64,
    /// `1 − Re(truncated_mass)`, clamped at zero.
    pub tail: f64,
    /// Markov bound `E|λ|/(D+1)` on the tail.
    pub markov_bound: f64,
}

impl JackMeasure {
    pub fn new(table: &JackTable, rho1: &Specialization, rho2: &Specialization) -> Result<Self> {
        let alpha = table.alpha().clone();
        let log_z = log_cauchy_sum(rho1, rho2, &alpha);
        let inv_z = (-log_z).exp();
        let pmf = table
            .iter()
            .map(|(lambda, jack, norm)| {
                let w = jack.specialize(rho1)? * jack.specialize(rho2)? / ratio_to_f64(norm);
                Ok((lambda.clone(), w * inv_z))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(JackMeasure {
            degree: table.max_degree(),
            mean_size: cauchy_mean_size(rho1, rho2, &alpha),
            alpha,
            log_z,
            pmf,
        })
    }

    /// The measure `M_f` with `ρ₁ = ρ₊(f)`, `ρ₂ = ρ₋(f)`.
    pub fn from_circle(table: &JackTable, f: &CircleFunction) -> Result<Self> {
        let alpha = table.alpha();
        Self::new(
            table,
            &Specialization::from_circle(f, alpha, Side::Plus),
            &Specialization::from_circle(f, alpha, Side::Minus),
        )
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn normalization(&self) -> Complex64 {
        self.log_z.exp()
    }

    pub fn pmf(&self, lambda: &Partition) -> Result<Complex64> {
        if lambda.weight() > self.degree {
            return Err(Error::AboveDegreeCap {
                partition: lambda.to_string(),
                cap: self.degree,
            });
        }
        self.pmf
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, v)| *v)
            .ok_or_else(|| Error::InvalidPartition(lambda.parts().to_vec()))
    }

    pub fn table(&self) -> &[(Partition, Complex64)] {
        &self.pmf
    }

    /// `E|λ|` over the full (untruncated) measure.
    pub fn exact_mean_size(&self) -> Complex64 {
        self.mean_size
    }

    /// `Σ_{|λ|≤D} |λ| M(λ)`.
    pub fn truncated_mean_size(&self) -> Complex64 {
        self.pmf.iter().map(|(l, v)| v * l.weight() as f64).sum()
    }

    pub fn mass(&self) -> MassSummary {
        let truncated_mass: Complex64 = self.pmf.iter().map(|(_, v)| v).sum();
        MassSummary {
            truncated_mass,
            tail: (1.0 - truncated_mass.re).max(0.0),
            markov_bound: self.mean_size.norm() / (self.degree + 1) as f64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpectedSize {
    /// `Σ_{|λ|≤D} |λ| M_f(λ)`.
    pub value: f64,
    /// `(α/2)‖f‖²_{1,T}`.
    pub exact_target: f64,
}

pub fn expected_partition_size(f: &CircleFunction, table: &JackTable) -> Result<ExpectedSize> {
    f.require_real()?;
    let measure = JackMeasure::from_circle(table, f)?;
    Ok(ExpectedSize {
        value: measure.truncated_mean_size().re,
        exact_target: table.alpha().to_f64() / 2.0 * f.seminorm_sq(1.0),
    })
}

/// `|λ|! α^{|λ|} / (H(λ,α) H′(λ,α))`.
pub fn plancherel_pmf(lambda: &Partition, alpha: &Alpha) -> BigRational {
    let n = lambda.weight();
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let (h, hp) = hook_products(lambda, alpha.value());
    BigRational::from_integer(fact) * alpha.pow(n) / (h * hp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::enumerate_partitions;
    use num_traits::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn plancherel_examples() {
        for (n, d) in [(1, 2), (1, 1), (2, 1), (7, 3)] {
            let a = Alpha::from_ratio(n, d).unwrap();
            assert!(plancherel_pmf(&Partition::empty(), &a).is_one());
            assert!(plancherel_pmf(&p(&[1]), &a).is_one());
            for k in 0..=7 {
                let total: BigRational = enumerate_partitions(k).iter().map(|l| plancherel_pmf(l, &a)).sum();
                assert!(total.is_one(), "weight {k}, alpha {a}");
            }
        }
    }

    #[test]
    fn plancherel_specialization() {
        let q = 0.7;
        for alpha in [1, 2, 3] {
            let a = Alpha::integer(alpha).unwrap();
            let table = JackTable::new(a.clone(), 6).unwrap();
            let rho = Specialization::plancherel(q);
            let m = JackMeasure::new(&table, &rho, &rho).unwrap();
            let af = alpha as f64;
            assert!((m.normalization().re - (q / af).exp()).abs() < 1e-14);
            let one = m.pmf(&p(&[1])).unwrap();
            assert!((one.re - q / af * (-q / af).exp()).abs() < 1e-14);
            assert!((m.pmf(&Partition::empty()).unwrap().re - (-q / af).exp()).abs() < 1e-15);
            // Poissonized β-Plancherel: P(λ) = e^{−q/α} (q/α)^n/n! · PL_n(λ′).
            for (lambda, v) in m.table() {
                let n = lambda.weight() as i32;
                let fact: f64 = (1..=n).map(f64::from).product();
                let expected =
                    (-q / af).exp() * (q / af).powi(n) / fact * ratio_to_f64(&plancherel_pmf(&lambda.conjugate(), &a));
                assert!((v.re - expected).abs() < 1e-14 && v.im.abs() < 1e-15, "{lambda}");
            }
        }
    }

    #[test]
    fn real_function_gives_probabilities() {
        let f = CircleFunction::real(0.0, [(1, Complex64::new(0.2, 0.1)), (3, Complex64::new(-0.1, 0.05))]);
        let table = JackTable::new(Alpha::integer(2).unwrap(), 10).unwrap();
        let m = JackMeasure::from_circle(&table, &f).unwrap();
        for (_, v) in m.table() {
            assert!(v.re >= 0.0 && v.im.abs() < 1e-15);
        }
        let mass = m.mass();
        assert!(mass.truncated_mass.re <= 1.0 + 1e-14);
        assert!(mass.tail <= mass.markov_bound);
        assert!(m.pmf(&p(&[11])).is_err());
    }

    #[test]
    fn expected_size_examples() {
        let table = JackTable::new(Alpha::integer(1).unwrap(), 10).unwrap();
        let zero = expected_partition_size(&CircleFunction::zero(), &table).unwrap();
        assert_eq!((zero.value, zero.exact_target), (0.0, 0.0));
        let c = 0.3;
        let e = expected_partition_size(&CircleFunction::cosine(1, c), &table).unwrap();
        assert!((e.exact_target - c * c).abs() < 1e-15);
        let table2 = JackTable::new(Alpha::integer(2).unwrap(), 8).unwrap();
        let e2 = expected_partition_size(&CircleFunction::cosine(1, c), &table2).unwrap();
        assert!((e2.value - e2.exact_target).abs() < 1e-4);
    }
}
