//! End-to-end evaluation of `p(A)`: strip exponents divisible by `lambda`,
//! check niceness, then use vanishing, the partition formula, or the oracle.

use std::fmt;

use num_bigint::BigInt;

use super::closed_form::partition_sum_dp;
use super::oracle::brute_force_p;
use super::{ExponentMultiset, SymsumError};
use crate::group::UnitSubgroup;
use crate::nicety::{self, NicenessReport};
use crate::ring::RingElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Vanishing,
    BruteForce,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Vanishing => "vanishing",
            Method::BruteForce => "brute_force",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EvalOptions {
    /// Apply the partition formula even when the niceness check fails.
    pub force_closed_form: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: RingElement,
    pub method: Method,
    pub nice: bool,
    /// Exponents left after removing those divisible by `lambda`.
    pub reduced: ExponentMultiset,
    /// Falling factorial accounting for the removed positions.
    pub prefactor: BigInt,
    /// `None` when nothing was left to check.
    pub report: Option<NicenessReport>,
}

pub fn evaluate(group: &UnitSubgroup, a: &ExponentMultiset) -> Result<Evaluation, SymsumError> {
    evaluate_with(group, a, EvalOptions::default())
}

pub fn evaluate_with(
    group: &UnitSubgroup,
    a: &ExponentMultiset,
    options: EvalOptions,
) -> Result<Evaluation, SymsumError> {
    let ring = group.ring();
    let n = group.order();
    let lambda = group.exponent();
    let (reduced, prefactor) = a.reduce(lambda, n)?;
    let scale = |v: RingElement| ring.from_bigint(&(&prefactor * BigInt::from(v.value())));

    if reduced.is_empty() {
        return Ok(Evaluation {
            value: ring.from_bigint(&prefactor),
            method: Method::ClosedForm,
            nice: true,
            reduced,
            prefactor,
            report: None,
        });
    }

    let report = nicety::is_a_nice(group, &reduced);
    let divisible = reduced
        .residues(lambda)
        .iter()
        .fold(0u128, |acc, &r| (acc + r as u128) % lambda as u128)
        == 0;

    let (value, method) = if report.nice || options.force_closed_form {
        if divisible {
            let total = partition_sum_dp(&reduced, lambda, n)?;
            (scale(ring.from_bigint(&total)), Method::ClosedForm)
        } else {
            (ring.element(0), Method::Vanishing)
        }
    } else {
        (scale(brute_force_p(group, &reduced)), Method::BruteForce)
    };

    Ok(Evaluation {
        value,
        method,
        nice: report.nice,
        reduced,
        prefactor,
        report: Some(report),
    })
}
