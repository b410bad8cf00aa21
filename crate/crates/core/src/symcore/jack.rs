//! Jack polynomials by exact Gram–Schmidt over the Schur basis.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::partition::{dominance_linear_extension, Partition, TieBreak};
use super::schur::CharacterTable;
use super::sympoly::{Alpha, SymPoly};
use crate::error::{Error, Result};

/// Jack data for all partitions of one weight.
#[derive(Clone, Debug)]
pub struct JackBlock {
    degree: usize,
    /// Partitions in the Gram–Schmidt order (a linear extension of dominance).
    order: Vec<Partition>,
    index: HashMap<Partition, usize>,
    power: Vec<SymPoly>,
    /// Row `i` holds the Schur coordinates of `J_{order[i]}`, indexed like
    /// `order`.
    schur: Vec<Vec<BigRational>>,
    norms: Vec<BigRational>,
}

impl JackBlock {
    pub fn build(degree: usize, alpha: &Alpha, tie: TieBreak) -> Result<Self> {
        let order = dominance_linear_extension(degree, tie);
        let index: HashMap<Partition, usize> = order.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut chars = CharacterTable::new();
        let schur_basis: Vec<SymPoly> = order.iter().map(|l| chars.schur(l)).collect();
        let ip = |a: &SymPoly, b: &SymPoly| super::sympoly::inner_product(a, b, alpha);

        let m = order.len();
        let mut power: Vec<SymPoly> = Vec::with_capacity(m);
        let mut schur: Vec<Vec<BigRational>> = Vec::with_capacity(m);
        let mut norms: Vec<BigRational> = Vec::with_capacity(m);
        for (i, lambda) in order.iter().enumerate() {
            let mut j = schur_basis[i].clone();
            let mut coords = vec![BigRational::zero(); m];
            coords[i] = BigRational::one();
            for k in 0..i {
                let c = ip(&schur_basis[i], &power[k]) / &norms[k];
                if c.is_zero() {
                    continue;
                }
                j = &j - &power[k].scale(&c);
                for (dst, src) in coords.iter_mut().zip(&schur[k]) {
                    *dst -= &c * src;
                }
            }
            let norm = ip(&j, &j);
            if !norm.is_positive() {
                return Err(Error::VanishingPivot(lambda.to_string()));
            }
            power.push(j);
            schur.push(coords);
            norms.push(norm);
        }
        Ok(JackBlock {
            degree,
            order,
            index,
            power,
            schur,
            norms,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.order
    }

    fn position(&self, lambda: &Partition) -> Result<usize> {
        self.index
            .get(lambda)
            .copied()
            .ok_or_else(|| Error::WeightMismatch(lambda.to_string(), format!("degree {}", self.degree)))
    }

    pub fn jack(&self, lambda: &Partition) -> Result<&SymPoly> {
        Ok(&self.power[self.position(lambda)?])
    }

    pub fn norm(&self, lambda: &Partition) -> Result<&BigRational> {
        Ok(&self.norms[self.position(lambda)?])
    }

    /// Schur coordinates of `J_λ` as `(μ, c)` pairs with nonzero `c`.
    pub fn schur_expansion(&self, lambda: &Partition) -> Result<Vec<(Partition, BigRational)>> {
        let row = &self.schur[self.position(lambda)?];
        Ok(self
            .order
            .iter()
            .zip(row)
            .filter(|(_, c)| !c.is_zero())
            .map(|(mu, c)| (mu.clone(), c.clone()))
            .collect())
    }
}

/// Jack polynomials for one `α` and all weights up to a degree cap.
/// Immutable once built, so it can be shared across threads.
#[derive(Clone, Debug)]
pub struct JackTable {
    alpha: Alpha,
    blocks: Vec<JackBlock>,
}

impl JackTable {
    pub const DEFAULT_DEGREE: usize = 10;

    pub fn new(alpha: Alpha, max_degree: usize) -> Result<Self> {
        Self::with_tie_break(alpha, max_degree, TieBreak::default())
    }

    pub fn with_tie_break(alpha: Alpha, max_degree: usize, tie: TieBreak) -> Result<Self> {
        let blocks = (0..=max_degree)
            .into_par_iter()
            .map(|d| JackBlock::build(d, &alpha, tie))
            .collect::<Result<Vec<_>>>()?;
        Ok(JackTable { alpha, blocks })
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn max_degree(&self) -> usize {
        self.blocks.len() - 1
    }

    pub fn block(&self, degree: usize) -> Option<&JackBlock> {
        self.blocks.get(degree)
    }

    pub fn blocks(&self) -> &[JackBlock] {
        &self.blocks
    }

    fn block_for(&self, lambda: &Partition) -> Result<&JackBlock> {
        self.blocks.get(lambda.weight()).ok_or_else(|| Error::AboveDegreeCap {
            partition: lambda.to_string(),
            cap: self.max_degree(),
        })
    }

    pub fn jack(&self, lambda: &Partition) -> Result<&SymPoly> {
        self.block_for(lambda)?.jack(lambda)
    }

    pub fn norm(&self, lambda: &Partition) -> Result<&BigRational> {
        self.block_for(lambda)?.norm(lambda)
    }

    /// All `(λ, J_λ, ⟨J_λ, J_λ⟩)` with `|λ| ≤ max_degree`, by increasing weight.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &SymPoly, &BigRational)> {
        self.blocks
            .iter()
            .flat_map(|b| b.order.iter().zip(&b.power).zip(&b.norms).map(|((l, j), n)| (l, j, n)))
    }
}

pub fn jack_in_powersums(lambda: &Partition, alpha: &Alpha) -> Result<SymPoly> {
    Ok(JackBlock::build(lambda.weight(), alpha, TieBreak::default())?
        .jack(lambda)?
        .clone())
}

pub fn jack_norm(lambda: &Partition, alpha: &Alpha) -> Result<BigRational> {
    Ok(JackBlock::build(lambda.weight(), alpha, TieBreak::default())?
        .norm(lambda)?
        .clone())
}

/// `(H, H′)` with cell factors `arm + θ·leg + 1` and `arm + θ·leg + θ`.
pub fn hook_products(lambda: &Partition, theta: &BigRational) -> (BigRational, BigRational) {
    let mut h = BigRational::one();
    let mut h_prime = BigRational::one();
    for (arm, leg) in lambda.arms_and_legs() {
        let base = BigRational::from_integer(BigInt::from(arm)) + theta * BigInt::from(leg);
        h *= &base + BigRational::one();
        h_prime *= base + theta;
    }
    (h, h_prime)
}

/// `A^α_λ(n) = Π_{(i,j)∈λ} (1 − (α−1)/(n + jα − i))`.
pub fn a_coefficient(lambda: &Partition, alpha: &Alpha, n: usize) -> Result<BigRational> {
    if lambda.len() > n {
        return Err(Error::TooManyParts {
            partition: lambda.to_string(),
            length: lambda.len(),
            n,
        });
    }
    let a = alpha.value();
    let a_minus_one = a - BigRational::one();
    let mut out = BigRational::one();
    for (i, j) in lambda.cells() {
        let denom = BigRational::from_integer(BigInt::from(n as i64 - i as i64)) + a * BigInt::from(j);
        out *= BigRational::one() - &a_minus_one / denom;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::partition::{dominance, enumerate_partitions, Dominance};
    use crate::symcore::schur::schur_in_powersums;
    use crate::symcore::sympoly::inner_product;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn alphas() -> Vec<Alpha> {
        [(1, 2), (1, 1), (2, 1), (3, 1)]
            .iter()
            .map(|&(n, d)| Alpha::from_ratio(n, d).unwrap())
            .collect()
    }

    #[test]
    fn degree_two_at_alpha_two() {
        let a = Alpha::integer(2).unwrap();
        let block = JackBlock::build(2, &a, TieBreak::ReverseLex).unwrap();
        let expansion = block.schur_expansion(&p(&[2])).unwrap();
        assert_eq!(expansion, vec![(p(&[1, 1]), q(-1, 3)), (p(&[2]), q(1, 1))]);
        let j = block.jack(&p(&[2])).unwrap();
        assert_eq!(j, &SymPoly::from_terms([(p(&[1, 1]), q(1, 3)), (p(&[2]), q(2, 3))]));
        assert_eq!(block.norm(&p(&[2])).unwrap(), &q(8, 3));
    }

    #[test]
    fn first_jacks() {
        for a in alphas() {
            assert_eq!(jack_in_powersums(&p(&[1]), &a).unwrap(), SymPoly::power_sum(p(&[1])));
            assert_eq!(&jack_norm(&p(&[1]), &a).unwrap(), a.value());
            assert_eq!(jack_in_powersums(&Partition::empty(), &a).unwrap(), SymPoly::one());
        }
        assert_eq!(jack_norm(&p(&[2]), &Alpha::integer(1).unwrap()).unwrap(), q(1, 1));
    }

    #[test]
    fn alpha_one_gives_schur() {
        let table = JackTable::new(Alpha::integer(1).unwrap(), 7).unwrap();
        for (lambda, j, norm) in table.iter() {
            assert_eq!(j, &schur_in_powersums(lambda));
            assert!(norm.is_one());
        }
    }

    #[test]
    fn orthogonal_and_triangular() {
        for a in alphas() {
            let table = JackTable::new(a.clone(), 6).unwrap();
            for block in table.blocks() {
                let parts = block.partitions();
                for (i, lam) in parts.iter().enumerate() {
                    for mu in &parts[..i] {
                        let ip = inner_product(block.jack(lam).unwrap(), block.jack(mu).unwrap(), &a);
                        assert!(ip.is_zero(), "<J{lam}, J{mu}> at alpha {a}");
                    }
                    for (mu, c) in block.schur_expansion(lam).unwrap() {
                        if &mu == lam {
                            assert!(c.is_one());
                        } else {
                            assert_eq!(dominance(&mu, lam).unwrap(), Dominance::LessOrEqual);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn independent_of_linear_extension() {
        for a in alphas() {
            let rev = JackTable::with_tie_break(a.clone(), 7, TieBreak::ReverseLex).unwrap();
            let lex = JackTable::with_tie_break(a.clone(), 7, TieBreak::Lex).unwrap();
            for (lambda, j, n) in rev.iter() {
                assert_eq!(lex.jack(lambda).unwrap(), j);
                assert_eq!(lex.norm(lambda).unwrap(), n);
            }
        }
    }

    #[test]
    fn hook_examples() {
        let t = q(5, 7);
        assert_eq!(hook_products(&Partition::empty(), &t), (q(1, 1), q(1, 1)));
        assert_eq!(hook_products(&p(&[1]), &t), (q(1, 1), t.clone()));
        assert_eq!(hook_products(&p(&[2]), &t), (q(2, 1), (&t + q(1, 1)) * &t));
    }

    // J_λ(p1 = 1)² / ⟨J_λ,J_λ⟩ = 1/(H(λ′,α) H′(λ′,α)).
    #[test]
    fn plancherel_hook_identity() {
        for a in alphas() {
            let table = JackTable::new(a.clone(), 6).unwrap();
            for (lambda, j, norm) in table.iter() {
                let ones = Partition::new(vec![1; lambda.weight()]).unwrap();
                let c = j.coeff(&ones);
                let (h, hp) = hook_products(&lambda.conjugate(), a.value());
                assert_eq!(&c * &c / norm, (h * hp).recip(), "{lambda} at alpha {a}");
            }
        }
    }

    #[test]
    fn a_coefficient_examples() {
        let a = Alpha::from_ratio(5, 2).unwrap();
        assert!(a_coefficient(&Partition::empty(), &a, 3).unwrap().is_one());
        assert_eq!(a_coefficient(&p(&[1]), &a, 4).unwrap(), q(4, 1) / (q(4, 1) + q(3, 2)));
        assert!(a_coefficient(&p(&[3, 2, 1]), &Alpha::integer(1).unwrap(), 3)
            .unwrap()
            .is_one());
        assert!(matches!(
            a_coefficient(&p(&[1, 1, 1]), &a, 2),
            Err(Error::TooManyParts { .. })
        ));
    }

    #[test]
    fn a_coefficient_increases_in_n() {
        for a in [
            Alpha::integer(1).unwrap(),
            Alpha::integer(2).unwrap(),
            Alpha::from_ratio(7, 2).unwrap(),
        ] {
            for lambda in enumerate_partitions(5) {
                let mut prev = BigRational::zero();
                for n in lambda.len()..lambda.len() + 20 {
                    let v = a_coefficient(&lambda, &a, n).unwrap();
                    assert!(v > BigRational::zero() && v <= BigRational::one());
                    assert!(v >= prev);
                    prev = v;
                }
            }
        }
    }
}
