//! Schur functions in the power-sum basis via symmetric-group characters.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::partition::{enumerate_partitions, Partition};
use super::sympoly::SymPoly;

/// Memoized Murnaghan–Nakayama evaluator for irreducible characters
/// `χ^λ(μ)` of the symmetric group.
#[derive(Default)]
pub struct CharacterTable {
    memo: HashMap<(Vec<u32>, Vec<u32>), i64>,
}

impl CharacterTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^λ` evaluated on the class of cycle type `μ`. Zero when the weights
    /// differ.
    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> i64 {
        if lambda.weight() != mu.weight() {
            return 0;
        }
        self.chi(lambda.parts().to_vec(), mu.parts())
    }

    // Rim hooks are removed on the beta-set of λ: a hook of length r is a bead
    // at b moved to the empty position b - r, with sign given by the parity of
    // the beads jumped over.
    fn chi(&mut self, lambda: Vec<u32>, mu: &[u32]) -> i64 {
        let Some((&r, rest)) = mu.split_first() else {
            return i64::from(lambda.is_empty());
        };
        let key = (lambda, mu.to_vec());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let lambda = &key.0;
        let l = lambda.len();
        let beta: Vec<i64> = lambda
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
            .collect();
        let r = r as i64;
        let mut total = 0;
        for (idx, &b) in beta.iter().enumerate() {
            let target = b - r;
            if target < 0 || beta.contains(&target) {
                continue;
            }
            let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
            let sign = if jumped % 2 == 0 { 1 } else { -1 };
            let mut next = beta.clone();
            next[idx] = target;
            next.sort_unstable_by(|a, b| b.cmp(a));
            let n = next.len();
            let shape: Vec<u32> = next
                .iter()
                .enumerate()
                .map(|(i, &c)| (c - (n - 1 - i) as i64) as u32)
                .filter(|&p| p > 0)
                .collect();
            total += sign * self.chi(shape, rest);
        }
        self.memo.insert(key, total);
        total
    }

    /// `s_λ = Σ_μ χ^λ(μ)/z_μ · p_μ`.
    pub fn schur(&mut self, lambda: &Partition) -> SymPoly {
        let terms = enumerate_partitions(lambda.weight())
            .into_iter()
            .filter_map(|mu| {
                let chi = self.character(lambda, &mu);
                (chi != 0).then(|| {
                    let c = BigRational::new(BigInt::from(chi), mu.z());
                    (mu, c)
                })
            })
            .collect::<Vec<_>>();
        SymPoly::from_terms(terms)
    }
}

pub fn schur_in_powersums(lambda: &Partition) -> SymPoly {
    CharacterTable::new().schur(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::sympoly::{inner_product, Alpha};
    use num_traits::{One, Zero};

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn small_schur_functions() {
        assert_eq!(schur_in_powersums(&p(&[1])), SymPoly::power_sum(p(&[1])));
        assert_eq!(
            schur_in_powersums(&p(&[2])),
            SymPoly::from_terms([(p(&[1, 1]), q(1, 2)), (p(&[2]), q(1, 2))])
        );
        assert_eq!(
            schur_in_powersums(&p(&[1, 1])),
            SymPoly::from_terms([(p(&[1, 1]), q(1, 2)), (p(&[2]), q(-1, 2))])
        );
        assert_eq!(schur_in_powersums(&Partition::empty()), SymPoly::one());
    }

    #[test]
    fn s3_character_table() {
        let mut t = CharacterTable::new();
        // Rows (3), (2,1), (1,1,1); columns (1,1,1), (2,1), (3).
        let expected = [[1, 1, 1], [2, 0, -1], [1, -1, 1]];
        let shapes = [p(&[3]), p(&[2, 1]), p(&[1, 1, 1])];
        let classes = [p(&[1, 1, 1]), p(&[2, 1]), p(&[3])];
        for (row, lambda) in shapes.iter().enumerate() {
            for (col, mu) in classes.iter().enumerate() {
                assert_eq!(t.character(lambda, mu), expected[row][col], "{lambda} at {mu}");
            }
        }
    }

    // Independent oracle: the identity character value equals the number of
    // standard Young tableaux, counted here by the branching recursion.
    fn count_syt(shape: &[u32]) -> i64 {
        if shape.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            let removable = shape[i] > 0 && shape.get(i + 1).is_none_or(|&next| next < shape[i]);
            if removable {
                let mut s = shape.to_vec();
                s[i] -= 1;
                total += count_syt(&s);
            }
        }
        total
    }

    #[test]
    fn dimension_matches_tableaux_count() {
        let mut t = CharacterTable::new();
        for n in 1..=8 {
            let ones = Partition::new(vec![1; n]).unwrap();
            let mut sum_sq = 0i64;
            for lambda in enumerate_partitions(n) {
                let dim = t.character(&lambda, &ones);
                assert_eq!(dim, count_syt(lambda.parts()));
                sum_sq += dim * dim;
            }
            assert_eq!(sum_sq, (1..=n as i64).product::<i64>());
        }
    }

    #[test]
    fn schur_orthonormal_at_alpha_one() {
        let one = Alpha::integer(1).unwrap();
        let mut t = CharacterTable::new();
        for n in 0..=7 {
            let parts = enumerate_partitions(n);
            let s: Vec<SymPoly> = parts.iter().map(|l| t.schur(l)).collect();
            for i in 0..s.len() {
                for j in 0..s.len() {
                    let ip = inner_product(&s[i], &s[j], &one);
                    if i == j {
                        assert!(ip.is_one(), "{}", parts[i]);
                    } else {
                        assert!(ip.is_zero());
                    }
                }
            }
        }
    }
}
