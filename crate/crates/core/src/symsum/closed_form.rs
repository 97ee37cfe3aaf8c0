//! The partition formula
//!
//! ```text
//! p(A) = sum over valid partitions of prod over blocks of chi(block)
//! ```
//!
//! valid for a nice subgroup when no exponent is divisible by `lambda`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::partitions::{mask_sums, valid_partitions};
use super::{chi, ExponentMultiset, SymsumError, MAX_MASK_LEN};
use crate::group::UnitSubgroup;
use crate::nicety;
use crate::ring::RingElement;

/// The integer `sum prod chi` by dynamic programming over position subsets:
/// `f(S)` sums, over blocks `P` of `S` holding the lowest position of `S` with
/// `lambda | s(P)`, the term `chi(|P|) * f(S \ P)`; `f(∅) = 1`.
pub fn partition_sum_dp(a: &ExponentMultiset, lambda: u64, n: u64) -> Result<BigInt, SymsumError> {
    if lambda == 0 {
        return Err(SymsumError::ZeroLambda);
    }
    let k = a.len();
    if k > MAX_MASK_LEN {
        return Err(SymsumError::TooLarge {
            k,
            max: MAX_MASK_LEN,
        });
    }
    let sums = mask_sums(a, lambda);
    let weights: Vec<BigInt> = (0..=k)
        .map(|s| if s == 0 { BigInt::zero() } else { chi(s, n) })
        .collect();
    let mut f = vec![BigInt::zero(); 1 << k];
    f[0] = BigInt::one();
    for set in 1usize..(1 << k) {
        if sums[set] != 0 {
            continue;
        }
        let low = set & set.wrapping_neg();
        let rest = set ^ low;
        let mut acc = BigInt::zero();
        let mut sub = rest;
        loop {
            let block = sub | low;
            let remainder = set ^ block;
            if sums[block] == 0 && !f[remainder].is_zero() {
                acc += &weights[block.count_ones() as usize] * &f[remainder];
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        f[set] = acc;
    }
    Ok(f.pop().expect("table is non-empty"))
}

/// The same integer by listing the partition family explicitly.
pub fn partition_sum_enumerated(
    a: &ExponentMultiset,
    lambda: u64,
    n: u64,
) -> Result<BigInt, SymsumError> {
    Ok(valid_partitions(a, lambda)?.total_weight(n))
}

/// Whether to run the niceness check before applying the formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    Verify,
    /// Apply the formula even if the subgroup is not nice for `A`.
    Assume,
}

/// `p(A)` from the partition formula, mapped into the ring.
///
/// Requires `k <= |G|` and no exponent divisible by `lambda`. Unless
/// `Hypothesis::Assume` is passed the subgroup must also pass the niceness
/// check, otherwise `SymsumError::NotNice` is returned.
pub fn closed_form_p(
    group: &UnitSubgroup,
    a: &ExponentMultiset,
    hypothesis: Hypothesis,
) -> Result<RingElement, SymsumError> {
    let n = group.order();
    let lambda = group.exponent();
    if a.len() as u64 > n {
        return Err(SymsumError::TooManyExponents { k: a.len(), n });
    }
    if let Some(position) = a.residues(lambda).iter().position(|&r| r == 0) {
        return Err(SymsumError::DivisibleExponent {
            position,
            exponent: a.as_slice()[position].clone(),
            lambda,
        });
    }
    if hypothesis == Hypothesis::Verify {
        let report = nicety::is_a_nice(group, a);
        if !report.nice {
            return Err(SymsumError::NotNice(Box::new(report)));
        }
    }
    let total = partition_sum_dp(a, lambda, n)?;
    Ok(group.ring().from_bigint(&total))
}
