//! Integer partitions and the dominance order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// dropped on construction, so `(2, 1, 0)` and `(2, 1)` are the same value.
///
/// The derived `Ord` is lexicographic on the parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Result<Self> {
        let mut parts = parts.into();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0) as usize;
        let parts = (1..=first as u32)
            .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition(parts)
    }

    /// Cells `(i, j)` with 1-based row `i` and column `j`, row by row.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// Arm and leg lengths of every cell, using the conjugate for legs.
    pub fn arms_and_legs(&self) -> Vec<(usize, usize)> {
        let conj = self.conjugate();
        self.cells()
            .map(|(i, j)| {
                let arm = self.part(i - 1) as usize - j;
                let leg = conj.part(j - 1) as usize - i;
                (arm, leg)
            })
            .collect()
    }

    /// Multiplicity `m_k` of each part size `k`, indexed by `k`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.part(0) as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    /// `z_λ = Π_k k^{m_k} m_k!`, the centralizer order of a permutation of
    /// cycle type λ.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (k, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for r in 1..=m {
                z *= BigInt::from(k) * BigInt::from(r);
            }
        }
        z
    }

    /// Sorted union of the parts of two partitions.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.0);
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n` in reverse-lexicographic order, starting from `(n)`.
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, max_part: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p as u32);
        fill(remaining - p, p, current, out);
        current.pop();
    }
}

/// All partitions of weight at most `max_weight`, grouped by weight.
pub fn partitions_up_to(max_weight: usize) -> Vec<Vec<Partition>> {
    (0..=max_weight).map(enumerate_partitions).collect()
}

/// Relation of `μ` to `ν` in the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    LessOrEqual,
    Greater,
    Incomparable,
}

pub fn dominance(mu: &Partition, nu: &Partition) -> Result<Dominance> {
    if mu.weight() != nu.weight() {
        return Err(Error::WeightMismatch(mu.to_string(), nu.to_string()));
    }
    let len = mu.len().max(nu.len());
    let (mut sm, mut sn) = (0u64, 0u64);
    let (mut below, mut above) = (false, false);
    for k in 0..len {
        sm += mu.part(k) as u64;
        sn += nu.part(k) as u64;
        match sm.cmp(&sn) {
            Ordering::Less => below = true,
            Ordering::Greater => above = true,
            Ordering::Equal => {}
        }
    }
    Ok(match (below, above) {
        (_, false) => Dominance::LessOrEqual,
        (false, true) => Dominance::Greater,
        (true, true) => Dominance::Incomparable,
    })
}

/// `true` when `μ < ν` strictly in dominance order.
pub fn strictly_dominated(mu: &Partition, nu: &Partition) -> bool {
    mu != nu && matches!(dominance(mu, nu), Ok(Dominance::LessOrEqual))
}

/// Rule for choosing among incomparable partitions when building a linear
/// extension of the dominance order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Prefer the lexicographically larger partition.
    #[default]
    ReverseLex,
    /// Prefer the lexicographically smaller partition.
    Lex,
}

/// Partitions of `n` listed so that every partition comes after all the
/// partitions it strictly dominates. Minimal elements are taken one at a
/// time, ties resolved by `tie`.
pub fn dominance_linear_extension(n: usize, tie: TieBreak) -> Vec<Partition> {
    let mut remaining = enumerate_partitions(n);
    let mut out = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let minimal: Vec<usize> = (0..remaining.len())
            .filter(|&i| {
                !remaining
                    .iter()
                    .enumerate()
                    .any(|(j, other)| j != i && strictly_dominated(other, &remaining[i]))
            })
            .collect();
        let pick = match tie {
            TieBreak::ReverseLex => minimal.iter().copied().max_by(|&a, &b| remaining[a].cmp(&remaining[b])),
            TieBreak::Lex => minimal.iter().copied().min_by(|&a, &b| remaining[a].cmp(&remaining[b])),
        }
        .expect("a finite poset has a minimal element");
        out.push(remaining.remove(pick));
    }
    out
}
