//! The minimax niceness condition and the sufficient conditions for the
//! prime-power and semiprime families.
//!
//! For a subgroup `G` with exponent `lambda` and an exponent sequence `A`,
//! let `𝒜` be the non-empty position subsets `B` with `lambda ∤ s(B)`. `G` is
//! nice for `A` when
//!
//! ```text
//! min over B in 𝒜 of max over g in G of ord(g) / gcd(s(B), ord(g))  >=  |D| + 1
//! ```
//!
//! where `D` is the set of non-regular ring elements. An empty `𝒜` satisfies
//! the condition vacuously.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::arith;
use crate::group::UnitSubgroup;
use crate::ring::{FiniteCommutativeRing, RingElement};
use crate::symsum::{ExponentMultiset, MAX_MASK_LEN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NicetyError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} must exceed 11")]
    TooSmall(u64),
    #[error("primes must be distinct")]
    NotDistinct,
    #[error("{p} - 1 does not divide {q} + 1")]
    DivisibilityFails { p: u64, q: u64 },
    #[error("{0} must be positive")]
    ZeroParameter(&'static str),
    #[error("{0}^{1} does not fit in 64 bits")]
    Overflow(u64, u32),
    #[error("{k} exponents exceed the limit of {max} for subset enumeration")]
    TooLarge { k: usize, max: usize },
}

/// An element `h` of the subgroup with `h^t - 1` regular for the relevant
/// degree `t`, which forces the degree-`t` symmetric sums to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityWitness {
    pub element: RingElement,
    /// `h^t`.
    pub power: RingElement,
    /// Regularity of `h^t - 1`, re-checked through the ring.
    pub regular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicenessReport {
    pub nice: bool,
    /// `|D| + 1`.
    pub threshold: u64,
    /// 0-based positions of a subset attaining the minimum.
    pub worst_subset: Option<Vec<usize>>,
    /// The minimax value; `None` when `𝒜` is empty.
    pub worst_value: Option<u64>,
    /// Distinct residues `s(B) mod lambda` over `𝒜`.
    pub family_size: usize,
    pub vacuous: bool,
    /// Decided by the ring being a field, where the threshold is 2 and every
    /// non-vacuous maximum is at least the least prime factor of `lambda`.
    pub field_shortcut: bool,
    /// Present when the subgroup is nice and `lambda ∤ s(A)`.
    pub witness: Option<RegularityWitness>,
}

/// `lambda / gcd(s, lambda)`, which equals the maximum over `g` of
/// `ord(g) / gcd(s, ord(g))` because some element has order `lambda`.
pub fn max_ratio_fast(group: &UnitSubgroup, s: u64) -> u64 {
    let lambda = group.exponent();
    lambda / s.gcd(&lambda)
}

/// The same maximum by scanning every element order.
pub fn max_ratio_scan(group: &UnitSubgroup, s: u64) -> u64 {
    group
        .orders()
        .iter()
        .map(|&o| o / s.gcd(&o))
        .max()
        .unwrap_or(1)
}

/// Decide niceness of `group` for `a`.
pub fn is_a_nice(group: &UnitSubgroup, a: &ExponentMultiset) -> NicenessReport {
    let ring = group.ring();
    let lambda = group.exponent();
    let threshold = ring.non_regular_count() + 1;
    let residues = a.residues(lambda);

    // reachable subset sums mod lambda, each with one witnessing subset
    // stored as (previous residue, last position added)
    let mut reached: BTreeMap<u64, (Option<u64>, usize)> = BTreeMap::new();
    for (i, &r) in residues.iter().enumerate() {
        let snapshot: Vec<u64> = reached.keys().copied().collect();
        for prev in snapshot {
            let next = ((prev as u128 + r as u128) % lambda as u128) as u64;
            reached.entry(next).or_insert((Some(prev), i));
        }
        reached.entry(r).or_insert((None, i));
    }
    let subset_for = |mut residue: u64| {
        let mut positions = Vec::new();
        while let Some(&(prev, i)) = reached.get(&residue) {
            positions.push(i);
            match prev {
                Some(p) => residue = p,
                None => break,
            }
        }
        positions.sort_unstable();
        positions
    };

    let mut family_size = 0;
    let mut worst: Option<(u64, u64)> = None;
    for &r in reached.keys().filter(|&&r| r != 0) {
        family_size += 1;
        let value = max_ratio_fast(group, r);
        if worst.is_none_or(|(_, w)| value < w) {
            worst = Some((r, value));
        }
    }

    let field_shortcut = ring.is_field();
    let vacuous = worst.is_none();
    let nice = field_shortcut || worst.is_none_or(|(_, w)| w >= threshold);
    let total = arith::reduce_bigint(&a.total(), lambda);
    let witness = if nice && total != 0 {
        regularity_witness(group, total)
    } else {
        None
    };
    NicenessReport {
        nice,
        threshold,
        worst_subset: worst.map(|(r, _)| subset_for(r)),
        worst_value: worst.map(|(_, w)| w),
        family_size,
        vacuous,
        field_shortcut,
        witness,
    }
}

/// The minimax value straight from the definition: every non-empty subset,
/// every element order. `None` when no subset sum escapes `lambda`.
pub fn minimax_by_scan(group: &UnitSubgroup, a: &ExponentMultiset) -> Option<u64> {
    let k = a.len();
    assert!(
        k <= MAX_MASK_LEN,
        "subset scan limited to {MAX_MASK_LEN} exponents"
    );
    let lambda = BigInt::from(group.exponent());
    (1u64..1 << k)
        .filter_map(|mask| {
            let s: BigInt = a.select_mask(mask).total();
            if s.is_multiple_of(&lambda) {
                return None;
            }
            let s = arith::reduce_bigint(&s, group.exponent());
            Some(max_ratio_scan(group, s))
        })
        .min()
}

/// Find `h` in the subgroup with `h^t - 1` regular. Powers of an element of
/// maximal order are tried first, then the remaining elements.
pub fn regularity_witness(group: &UnitSubgroup, t: u64) -> Option<RegularityWitness> {
    let ring = group.ring();
    let g = group.max_order_element();
    let t_big = BigInt::from(t);
    let powers = (1..=group.exponent()).map(|j| {
        group
            .pow(g, &BigInt::from(j))
            .expect("powers of a member stay in the subgroup")
    });
    powers.chain(group.elements()).find_map(|h| {
        let power = group.pow(h, &t_big).ok()?;
        let shifted = ring.sub(power, ring.one()).ok()?;
        let regular = ring.is_regular(shifted).ok()?;
        regular.then_some(RegularityWitness {
            element: h,
            power,
            regular,
        })
    })
}

fn nonempty_proper_sums(a: &ExponentMultiset) -> Result<Vec<BigInt>, NicetyError> {
    let k = a.len();
    if k > MAX_MASK_LEN {
        return Err(NicetyError::TooLarge {
            k,
            max: MAX_MASK_LEN,
        });
    }
    let full = (1u64 << k) - 1;
    Ok((1..full).map(|mask| a.select_mask(mask).total()).collect())
}

/// The prime-power sufficient condition. With `phi = phi(p^m)`,
/// `g = gcd(q, phi)` and `lambda = phi / g`: `lambda | s(A)`, and every
/// non-empty proper subset has `gcd(s(B), p(p-1)) < (p-1)/g`.
pub fn example1_condition(
    p: u64,
    m: u32,
    q: u64,
    a: &ExponentMultiset,
) -> Result<bool, NicetyError> {
    if p == 2 || !arith::is_prime(p) {
        return Err(NicetyError::NotOddPrime(p));
    }
    if m == 0 {
        return Err(NicetyError::ZeroParameter("m"));
    }
    if q == 0 {
        return Err(NicetyError::ZeroParameter("q"));
    }
    let phi = p
        .checked_pow(m - 1)
        .and_then(|x| x.checked_mul(p - 1))
        .ok_or(NicetyError::Overflow(p, m))?;
    let g = q.gcd(&phi);
    let lambda = phi / g;
    if !a.total().is_multiple_of(&BigInt::from(lambda)) {
        return Ok(false);
    }
    let big = p as u128 * (p as u128 - 1);
    let ok = nonempty_proper_sums(a)?.iter().all(|s| {
        let r = arith::reduce_bigint(s, big as u64) as u128;
        // gcd(s, p(p-1)) < (p-1)/g, cross-multiplied
        r.gcd(&big) * (g as u128) < (p - 1) as u128
    });
    Ok(ok)
}

/// The semiprime sufficient condition for distinct primes `p, q > 11` with
/// `(p-1) | (q+1)`: every non-empty proper subset with
/// `gcd(s, p-1) * gcd(s, q-1) > pq / (3(p+q))` has `phi(pq)/2 | s`.
pub fn example2_condition(p: u64, q: u64, a: &ExponentMultiset) -> Result<bool, NicetyError> {
    for x in [p, q] {
        if !arith::is_prime(x) {
            return Err(NicetyError::NotPrime(x));
        }
        if x <= 11 {
            return Err(NicetyError::TooSmall(x));
        }
    }
    if p == q {
        return Err(NicetyError::NotDistinct);
    }
    if !(q + 1).is_multiple_of(p - 1) {
        return Err(NicetyError::DivisibilityFails { p, q });
    }
    let half_phi = BigInt::from((p - 1) * (q - 1) / 2);
    let (p128, q128) = (p as u128, q as u128);
    let ok = nonempty_proper_sums(a)?.iter().all(|s| {
        let gp = arith::reduce_bigint(s, p - 1).gcd(&(p - 1)) as u128;
        let gq = arith::reduce_bigint(s, q - 1).gcd(&(q - 1)) as u128;
        let large = gp * gq * 3 * (p128 + q128) > p128 * q128;
        !large || s.is_multiple_of(&half_phi)
    });
    Ok(ok)
}
