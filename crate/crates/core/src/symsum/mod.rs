//! Symmetric sums `p(A)` of monomials over injective tuples of a unit subgroup.
//!
//! For a subgroup `G` of order `n` and exponent `lambda`, and an exponent
//! sequence `A = (a_1, ..., a_k)`,
//!
//! ```text
//! p(A) = sum over pairwise distinct x_1..x_k in G of x_1^a_1 * ... * x_k^a_k
//! ```
//!
//! This module holds the exponent container and the small arithmetic pieces
//! (block sums, the falling-factorial reduction, block weights). The
//! submodules hold the brute-force oracle, the partition families, the
//! closed-form evaluator and the full evaluation pipeline.

pub mod closed_form;
pub mod evaluate;
pub mod oracle;
pub mod partitions;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith;
use crate::group::GroupError;
use crate::nicety::NicenessReport;

/// Bitmask algorithms (subset DP, partition recursion) index positions with
/// `u32` masks and allocate `2^k` tables.
pub const MAX_MASK_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymsumError {
    #[error("index {index} out of range for {len} exponents")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{k} exponents but the subgroup has only {n} elements")]
    TooManyExponents { k: usize, n: u64 },
    #[error("exponent {exponent} at position {} is divisible by the group exponent {lambda}", .position + 1)]
    DivisibleExponent {
        position: usize,
        exponent: BigInt,
        lambda: u64,
    },
    #[error("{k} exponents exceed the limit of {max} for subset enumeration")]
    TooLarge { k: usize, max: usize },
    #[error("exponent sum {sum} is not divisible by the group exponent {lambda}")]
    SumNotDivisible { sum: BigInt, lambda: u64 },
    #[error("group exponent must be positive")]
    ZeroLambda,
    #[error("subgroup is not nice for these exponents (minimax {value:?} < threshold {threshold})", value = .0.worst_value, threshold = .0.threshold)]
    NotNice(Box<NicenessReport>),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Position-indexed exponent sequence `(a_1, ..., a_k)`. Exponents may be
/// negative, repeated or arbitrarily large.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentMultiset {
    exponents: Vec<BigInt>,
}

impl ExponentMultiset {
    pub fn new(exponents: Vec<BigInt>) -> Self {
        Self { exponents }
    }

    pub fn from_i64s(exponents: &[i64]) -> Self {
        Self::new(exponents.iter().map(|&a| BigInt::from(a)).collect())
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.exponents.iter()
    }

    /// Each exponent reduced into `[0, modulus)`.
    pub fn residues(&self, modulus: u64) -> Vec<u64> {
        self.exponents
            .iter()
            .map(|a| arith::reduce_bigint(a, modulus))
            .collect()
    }

    /// `s(B)` for a set of 0-based positions; the empty set sums to 0.
    pub fn subset_sum(&self, indices: &[usize]) -> Result<BigInt, SymsumError> {
        let mut total = BigInt::zero();
        for &i in indices {
            let a = self.exponents.get(i).ok_or(SymsumError::IndexOutOfRange {
                index: i,
                len: self.len(),
            })?;
            total += a;
        }
        Ok(total)
    }

    pub fn total(&self) -> BigInt {
        self.exponents.iter().sum()
    }

    /// Copy without the exponent at `position`.
    pub fn without(&self, position: usize) -> Result<Self, SymsumError> {
        if position >= self.len() {
            return Err(SymsumError::IndexOutOfRange {
                index: position,
                len: self.len(),
            });
        }
        let mut exponents = self.exponents.clone();
        exponents.remove(position);
        Ok(Self { exponents })
    }

    /// Sub-sequence at the given 0-based positions, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self, SymsumError> {
        let exponents = indices
            .iter()
            .map(|&i| {
                self.exponents
                    .get(i)
                    .cloned()
                    .ok_or(SymsumError::IndexOutOfRange {
                        index: i,
                        len: self.len(),
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { exponents })
    }

    /// Sub-sequence picked by a bitmask over positions.
    pub fn select_mask(&self, mask: u64) -> Self {
        let exponents = self
            .exponents
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect();
        Self { exponents }
    }

    /// Strip the exponents divisible by `lambda` and return the remaining
    /// sequence together with the falling factorial
    /// `(n - |kept|)(n - |kept| - 1)...(n - k + 1)` that accounts for them.
    ///
    /// Positions with `lambda | a` contribute `x^a = 1` whatever `x` is, so
    /// they only count the ways to place distinct leftover elements.
    pub fn reduce(&self, lambda: u64, n: u64) -> Result<(Self, BigInt), SymsumError> {
        if lambda == 0 {
            return Err(SymsumError::ZeroLambda);
        }
        let k = self.len();
        if k as u64 > n {
            return Err(SymsumError::TooManyExponents { k, n });
        }
        let lam = BigInt::from(lambda);
        let kept: Vec<BigInt> = self
            .exponents
            .iter()
            .filter(|a| !a.is_multiple_of(&lam))
            .cloned()
            .collect();
        let low = n - k as u64 + 1;
        let high = n - kept.len() as u64;
        let prefactor = (low..=high).fold(BigInt::one(), |acc, t| acc * t);
        Ok((Self::new(kept), prefactor))
    }
}

impl FromIterator<BigInt> for ExponentMultiset {
    fn from_iter<I: IntoIterator<Item = BigInt>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid exponent list {0:?}: expected comma-separated integers")]
pub struct ExponentParseError(pub String);

impl FromStr for ExponentMultiset {
    type Err = ExponentParseError;

    /// Comma-separated integers; an empty string is the empty sequence.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().is_empty() {
            return Ok(Self::default());
        }
        s.split(',')
            .map(|t| t.trim().parse::<BigInt>())
            .collect::<Result<_, _>>()
            .map_err(|_| ExponentParseError(s.to_string()))
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(BigInt::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Block weight `chi(B) = n * (-1)^(|B|-1) * (|B|-1)!`, depending only on the
/// block size.
pub fn chi(block_size: usize, n: u64) -> BigInt {
    assert!(block_size >= 1, "blocks are non-empty");
    let magnitude = BigInt::from(n) * arith::factorial(block_size as u64 - 1);
    if block_size % 2 == 1 {
        magnitude
    } else {
        -magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_sums() {
        let a = ExponentMultiset::from_i64s(&[1, 5, 2, 4]);
        assert_eq!(a.subset_sum(&[0, 1]).unwrap(), BigInt::from(6));
        assert_eq!(a.subset_sum(&[]).unwrap(), BigInt::zero());
        let b = ExponentMultiset::from_i64s(&[1, 131]);
        assert_eq!(b.subset_sum(&[0, 1]).unwrap(), BigInt::from(132));
        assert_eq!(
            a.subset_sum(&[4]).unwrap_err(),
            SymsumError::IndexOutOfRange { index: 4, len: 4 }
        );
    }

    #[test]
    fn reduction() {
        let (kept, pre) = ExponentMultiset::from_i64s(&[6, 2, 4])
            .reduce(6, 6)
            .unwrap();
        assert_eq!(kept, ExponentMultiset::from_i64s(&[2, 4]));
        assert_eq!(pre, BigInt::from(4));

        let (kept, pre) = ExponentMultiset::from_i64s(&[2, 4]).reduce(6, 6).unwrap();
        assert_eq!(kept.len(), 2);
        assert_eq!(pre, BigInt::one());

        let (kept, pre) = ExponentMultiset::from_i64s(&[6, 6]).reduce(6, 6).unwrap();
        assert!(kept.is_empty());
        assert_eq!(pre, BigInt::from(30));

        let (kept, _) = ExponentMultiset::from_i64s(&[-12, 0, 7])
            .reduce(6, 6)
            .unwrap();
        assert_eq!(kept, ExponentMultiset::from_i64s(&[7]));

        assert_eq!(
            ExponentMultiset::from_i64s(&[1; 7])
                .reduce(6, 6)
                .unwrap_err(),
            SymsumError::TooManyExponents { k: 7, n: 6 }
        );
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(1, 6), BigInt::from(6));
        assert_eq!(chi(2, 6), BigInt::from(-6));
        assert_eq!(chi(4, 6), BigInt::from(-36));
        assert_eq!(chi(3, 264), BigInt::from(528));
    }

    #[test]
    fn parse_and_print() {
        let a: ExponentMultiset = "1, -5,2".parse().unwrap();
        assert_eq!(a, ExponentMultiset::from_i64s(&[1, -5, 2]));
        assert_eq!(a.to_string(), "1,-5,2");
        assert!("".parse::<ExponentMultiset>().unwrap().is_empty());
        assert!("1,x".parse::<ExponentMultiset>().is_err());
    }

    #[test]
    fn removal_and_selection() {
        let a = ExponentMultiset::from_i64s(&[1, 5, 2, 4]);
        assert_eq!(
            a.without(1).unwrap(),
            ExponentMultiset::from_i64s(&[1, 2, 4])
        );
        assert_eq!(
            a.select(&[3, 0]).unwrap(),
            ExponentMultiset::from_i64s(&[4, 1])
        );
        assert_eq!(a.select_mask(0b1010), ExponentMultiset::from_i64s(&[5, 4]));
        assert!(a.without(4).is_err());
    }
}
