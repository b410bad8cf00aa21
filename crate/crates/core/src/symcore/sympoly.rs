//! Symmetric functions with exact rational coefficients on the power-sum
//! basis `p_μ`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use super::partition::Partition;
use crate::error::{Error, Result};

/// The Jack parameter. Always a positive rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alpha(BigRational);

impl Alpha {
    pub fn new(value: BigRational) -> Result<Self> {
        if !value.is_positive() {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {value}")));
        }
        Ok(Alpha(value))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter("alpha denominator is zero".into()));
        }
        Self::new(BigRational::new(num.into(), den.into()))
    }

    pub fn integer(n: i64) -> Result<Self> {
        Self::from_ratio(n, 1)
    }

    /// Nearest rational with denominator at most `max_den`, for turning a
    /// user-supplied `β` into `α = 2/β`.
    pub fn from_f64(value: f64, max_den: i64) -> Result<Self> {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {value}")));
        }
        let (num, den) = best_rational(value, max_den);
        Self::from_ratio(num, den)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.0)
    }

    pub fn pow(&self, k: usize) -> BigRational {
        let mut out = BigRational::one();
        for _ in 0..k {
            out *= &self.0;
        }
        out
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// Stern-Brocot walk.
fn best_rational(x: f64, max_den: i64) -> (i64, i64) {
    let (mut lo_n, mut lo_d, mut hi_n, mut hi_d) = (0i64, 1i64, 1i64, 0i64);
    let mut best = (x.round() as i64, 1i64);
    let mut best_err = (x - best.0 as f64).abs();
    loop {
        let (mn, md) = (lo_n + hi_n, lo_d + hi_d);
        if md > max_den {
            break;
        }
        let m = mn as f64 / md as f64;
        let err = (x - m).abs();
        if err < best_err {
            best = (mn, md);
            best_err = err;
        }
        if err == 0.0 {
            break;
        }
        if m < x {
            lo_n = mn;
            lo_d = md;
        } else {
            hi_n = mn;
            hi_d = md;
        }
    }
    best
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Fall back on shifting both sides down to avoid overflow.
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// `⟨p_λ, p_λ⟩_α = z_λ α^{l(λ)}`.
pub fn power_sum_norm(lambda: &Partition, alpha: &Alpha) -> BigRational {
    BigRational::from_integer(lambda.z()) * alpha.pow(lambda.len())
}

/// A symmetric function as a finite sum `Σ c_μ p_μ` with rational `c_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    coeffs: BTreeMap<Partition, BigRational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::power_sum(Partition::empty())
    }

    /// The single basis element `p_μ`.
    pub fn power_sum(mu: Partition) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(mu, BigRational::one());
        SymPoly { coeffs }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, BigRational)>) -> Self {
        let mut out = SymPoly::zero();
        for (mu, c) in terms {
            out.add_term(mu, c);
        }
        out
    }

    pub fn add_term(&mut self, mu: Partition, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(mu).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            // Keep the map free of explicit zeros.
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coeff(&self, mu: &Partition) -> BigRational {
        self.coeffs.get(mu).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest weight carrying a nonzero coefficient; zero for the zero
    /// function.
    pub fn degree(&self) -> usize {
        self.coeffs.keys().map(Partition::weight).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero();
        }
        SymPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Evaluate under a specialization, i.e. replace each `p_j` by `ρ(p_j)`.
    pub fn specialize(&self, rho: &impl PowerSumValues) -> Result<Complex64> {
        let mut total = Complex64::zero();
        for (mu, c) in &self.coeffs {
            let mut term = Complex64::new(ratio_to_f64(c), 0.0);
            for &part in mu.parts() {
                term *= rho.power_sum(part as usize)?;
            }
            total += term;
        }
        Ok(total)
    }

    /// Serialize as a JSON object `{"2,1": ["num", "den"], ...}`; the empty
    /// partition is keyed by `""`.
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (mu, c) in &self.coeffs {
            let key = mu.parts().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
            map.insert(
                key,
                Value::Array(vec![
                    Value::String(c.numer().to_string()),
                    Value::String(c.denom().to_string()),
                ]),
            );
        }
        Value::Object(map)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Serialization(msg.to_string());
        let map = value.as_object().ok_or_else(|| bad("expected an object"))?;
        let mut out = SymPoly::zero();
        for (key, pair) in map {
            let parts = if key.is_empty() {
                Vec::new()
            } else {
                key.split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<u32>()
                            .map_err(|_| bad(&format!("bad partition key {key:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            let mu = Partition::new(parts)?;
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("expected [num, den]"))?;
            let parse = |v: &Value| -> Result<BigInt> {
                v.as_str()
                    .and_then(|s| s.parse::<BigInt>().ok())
                    .ok_or_else(|| bad("coefficient must be an integer string"))
            };
            let den = parse(&pair[1])?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            out.add_term(mu, BigRational::new(parse(&pair[0])?, den));
        }
        Ok(out)
    }
}

/// Anything that assigns a value to each power sum `p_j`, `j ≥ 1`.
pub trait PowerSumValues {
    fn power_sum(&self, j: usize) -> Result<Complex64>;
}

impl PowerSumValues for [Complex64] {
    fn power_sum(&self, j: usize) -> Result<Complex64> {
        j.checked_sub(1)
            .and_then(|i| self.get(i))
            .copied()
            .ok_or(Error::MissingPowerSum(j))
    }
}

impl PowerSumValues for Vec<Complex64> {
    fn power_sum(&self, j: usize) -> Result<Complex64> {
        self.as_slice().power_sum(j)
    }
}

/// Bilinear extension of `⟨p_λ, p_μ⟩_α = δ_{λμ} z_λ α^{l(λ)}`.
pub fn inner_product(a: &SymPoly, b: &SymPoly, alpha: &Alpha) -> BigRational {
    let (small, large) = if a.coeffs.len() <= b.coeffs.len() {
        (a, b)
    } else {
        (b, a)
    };
    let mut total = BigRational::zero();
    for (mu, c) in &small.coeffs {
        if let Some(d) = large.coeffs.get(mu) {
            total += c * d * power_sum_norm(mu, alpha);
        }
    }
    total
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (mu, c) in &rhs.coeffs {
            out.add_term(mu.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        self + &(-rhs)
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (mu, c) in &self.coeffs {
            for (nu, d) in &rhs.coeffs {
                out.add_term(mu.union(nu), c * d);
            }
        }
        out
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (mu, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})p{mu}")?;
        }
        Ok(())
    }
}
