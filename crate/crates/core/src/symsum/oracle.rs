//! Exhaustive evaluation over injective tuples.
//!
//! These routines make no use of any structure beyond the group elements and
//! their powers, and serve as the reference the closed form is checked
//! against. With the `parallel` feature the outermost coordinate is split
//! across rayon workers; every partial sum is an exact residue, so the result
//! does not depend on scheduling.

use num_bigint::BigInt;
use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::{ExponentMultiset, SymsumError, MAX_MASK_LEN};
use crate::arith;
use crate::group::UnitSubgroup;
use crate::ring::RingElement;

/// How the outermost loop of the enumeration is scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Rayon over the first coordinate; falls back to sequential without the
    /// `parallel` feature.
    #[default]
    Parallel,
}

/// `p(A)`: the sum over all injective `k`-tuples from `G`. Zero when
/// `k > |G|`, one when `k = 0`.
pub fn brute_force_p(group: &UnitSubgroup, a: &ExponentMultiset) -> RingElement {
    brute_force_p_with(group, a, Execution::default())
}

/// `p#(A)`: as [`brute_force_p`] but no coordinate may be the identity.
pub fn brute_force_p_sharp(group: &UnitSubgroup, a: &ExponentMultiset) -> RingElement {
    brute_force_p_sharp_with(group, a, Execution::default())
}

pub fn brute_force_p_with(
    group: &UnitSubgroup,
    a: &ExponentMultiset,
    exec: Execution,
) -> RingElement {
    let columns: Vec<usize> = (0..group.order() as usize).collect();
    injective_sum(group, a, &columns, exec)
}

pub fn brute_force_p_sharp_with(
    group: &UnitSubgroup,
    a: &ExponentMultiset,
    exec: Execution,
) -> RingElement {
    let one = 1 % group.modulus();
    let columns: Vec<usize> = group
        .residues()
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != one)
        .map(|(i, _)| i)
        .collect();
    injective_sum(group, a, &columns, exec)
}

fn injective_sum(
    group: &UnitSubgroup,
    a: &ExponentMultiset,
    columns: &[usize],
    exec: Execution,
) -> RingElement {
    let ring = group.ring();
    let m = ring.modulus();
    let k = a.len();
    if k == 0 {
        return ring.element(1);
    }
    if k > columns.len() {
        return ring.element(0);
    }
    let lambda = group.exponent();
    // rows[i][c] = (element at columns[c])^(a_i)
    let rows: Vec<Vec<u64>> = a
        .residues(lambda)
        .into_iter()
        .map(|e| columns.iter().map(|&j| group.pow_residue(j, e)).collect())
        .collect();
    let total = if m <= u32::MAX as u64 {
        sum_rows(&rows, m, exec, move |x, y| x * y % m)
    } else {
        sum_rows(&rows, m, exec, move |x, y| arith::mul_mod(x, y, m))
    };
    ring.element(total)
}

fn sum_rows<F>(rows: &[Vec<u64>], m: u64, exec: Execution, mul: F) -> u64
where
    F: Fn(u64, u64) -> u64 + Sync,
{
    let width = rows[0].len();
    let branch = |first: usize| -> u64 {
        let mut used = vec![false; width];
        used[first] = true;
        let mut acc = 0u128;
        descend(rows, 1, rows[0][first], &mut used, &mut acc, &mul);
        (acc % m as u128) as u64
    };
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..width)
            .into_par_iter()
            .map(branch)
            .reduce(|| 0, |x, y| ((x as u128 + y as u128) % m as u128) as u64),
        _ => (0..width)
            .map(branch)
            .fold(0, |x, y| ((x as u128 + y as u128) % m as u128) as u64),
    }
}

fn descend<F>(
    rows: &[Vec<u64>],
    depth: usize,
    prod: u64,
    used: &mut [bool],
    acc: &mut u128,
    mul: &F,
) where
    F: Fn(u64, u64) -> u64,
{
    if depth == rows.len() {
        *acc += prod as u128;
        return;
    }
    let row = &rows[depth];
    if depth + 1 == rows.len() {
        for (j, &v) in row.iter().enumerate() {
            if !used[j] {
                *acc += mul(prod, v) as u128;
            }
        }
        return;
    }
    for j in 0..row.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        descend(rows, depth + 1, mul(prod, row[j]), used, acc, mul);
        used[j] = false;
    }
}

/// Both sides of an identity evaluated in the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: RingElement,
    pub rhs: RingElement,
}

impl IdentityCheck {
    fn new(lhs: RingElement, rhs: RingElement) -> Self {
        Self {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

/// Inclusion-exclusion between the truncated and full sums:
///
/// ```text
/// p#(A) = sum over B subset of A of (-1)^(k-|B|) (k-|B|)! p(B)
/// ```
///
/// with every term brute-forced. Subsets are taken over positions.
pub fn check_inclusion_exclusion(
    group: &UnitSubgroup,
    a: &ExponentMultiset,
) -> Result<IdentityCheck, SymsumError> {
    let k = a.len();
    if k > MAX_MASK_LEN {
        return Err(SymsumError::TooLarge {
            k,
            max: MAX_MASK_LEN,
        });
    }
    let ring = group.ring();
    let lhs = brute_force_p_sharp(group, a);
    let mut rhs = BigInt::zero();
    for mask in 0u64..(1 << k) {
        let b = a.select_mask(mask);
        let gap = (k - b.len()) as u64;
        let weight = arith::factorial(gap);
        let term = weight * BigInt::from(brute_force_p(group, &b).value());
        if gap.is_multiple_of(2) {
            rhs += term;
        } else {
            rhs -= term;
        }
    }
    Ok(IdentityCheck::new(lhs, ring.from_bigint(&rhs)))
}

/// `p(A) = n * p#(A without a)` for every removable position, which holds
/// whenever `lambda | s(A)`. One check per position.
pub fn check_n_p_sharp(
    group: &UnitSubgroup,
    a: &ExponentMultiset,
) -> Result<Vec<IdentityCheck>, SymsumError> {
    let lambda = group.exponent();
    let total = arith::reduce_bigint(&a.total(), lambda);
    if total != 0 {
        return Err(SymsumError::SumNotDivisible {
            sum: a.total(),
            lambda,
        });
    }
    let ring = group.ring();
    let n = ring.element(group.order());
    let lhs = brute_force_p(group, a);
    (0..a.len())
        .map(|i| {
            let sharp = brute_force_p_sharp(group, &a.without(i)?);
            let rhs = ring.element(arith::mul_mod(n.value(), sharp.value(), ring.modulus()));
            Ok(IdentityCheck::new(lhs, rhs))
        })
        .collect()
}
