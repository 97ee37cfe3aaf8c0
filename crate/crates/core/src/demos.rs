//! Bundled worked congruences: residue-subgroup sums, Wilson's theorem, the
//! prime-power closed value and a semiprime instance.
//!
//! Every record is checked twice, once by brute force and once through
//! [`evaluate`](crate::symsum::evaluate::evaluate).

use crate::arith;
use crate::group::{GroupError, SubgroupSpec, UnitSubgroup};
use crate::ring::{FiniteCommutativeRing, ModRing, RingElement, RingError};
use crate::symsum::evaluate::{evaluate, Method};
use crate::symsum::oracle::brute_force_p;
use crate::symsum::{ExponentMultiset, SymsumError};

/// Whether the expected value counts ordered tuples or sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counting {
    Ordered,
    /// The ordered sum divided by `k!`.
    Unordered,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Demo {
    pub name: &'static str,
    pub modulus: u64,
    pub subgroup: SubgroupSpec,
    pub exponents: &'static [i64],
    pub counting: Counting,
    /// Expected residue in `[0, modulus)`.
    pub expected: u64,
    pub about: &'static str,
}

pub fn demos() -> Vec<Demo> {
    vec![
        Demo {
            name: "pierce-5-2",
            modulus: 5,
            subgroup: SubgroupSpec::NthResidues(2),
            exponents: &[2],
            counting: Counting::Unordered,
            expected: 2,
            about: "squares mod 5 form a group of order 2 = 2k with k = 1; sum of x^2 is 2",
        },
        Demo {
            name: "pierce-13-3",
            modulus: 13,
            subgroup: SubgroupSpec::NthResidues(3),
            exponents: &[2, 2],
            counting: Counting::Unordered,
            expected: 11,
            about: "cubes mod 13 form a group of order 4 = 2k with k = 2; unordered sum of x^2 y^2 is -2",
        },
        Demo {
            name: "wilson-7",
            modulus: 7,
            subgroup: SubgroupSpec::Units,
            exponents: &[1, 1, 1, 1, 1, 1],
            counting: Counting::Unordered,
            expected: 6,
            about: "product of all units mod 7 is -1",
        },
        Demo {
            name: "abstract-9",
            modulus: 9,
            subgroup: SubgroupSpec::Units,
            exponents: &[1, 5],
            counting: Counting::Ordered,
            expected: 3,
            about: "p^m = 9, q = 1: lambda (-1)^(k-1) (k-1)! = -6",
        },
        Demo {
            name: "abstract-27",
            modulus: 27,
            subgroup: SubgroupSpec::Units,
            exponents: &[1, 17],
            counting: Counting::Ordered,
            expected: 9,
            about: "p^m = 27, q = 1: lambda (-1)^(k-1) (k-1)! = -18",
        },
        Demo {
            name: "example2-299",
            modulus: 299,
            subgroup: SubgroupSpec::Units,
            exponents: &[1, 131],
            counting: Counting::Ordered,
            expected: 35,
            about: "units mod 13*23 with lambda = 132: chi of one 2-block is -264",
        },
    ]
}

pub fn find(name: &str) -> Option<Demo> {
    demos().into_iter().find(|d| d.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoOutcome {
    pub demo: Demo,
    pub brute_force: RingElement,
    pub evaluated: RingElement,
    pub method: Method,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DemoError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Symsum(#[from] SymsumError),
    #[error("{0}! is not invertible modulo {1}")]
    FactorialNotInvertible(usize, u64),
}

impl Demo {
    pub fn run(&self) -> Result<DemoOutcome, DemoError> {
        let ring = ModRing::new(self.modulus)?;
        let group = self.subgroup.build(ring)?;
        let a = ExponentMultiset::from_i64s(self.exponents);
        let brute = self.adjust(&group, brute_force_p(&group, &a))?;
        let evaluation = evaluate(&group, &a)?;
        let evaluated = self.adjust(&group, evaluation.value)?;
        let expected = ring.element(self.expected);
        Ok(DemoOutcome {
            demo: self.clone(),
            brute_force: brute,
            evaluated,
            method: evaluation.method,
            passed: brute == expected && evaluated == expected,
        })
    }

    fn adjust(&self, group: &UnitSubgroup, value: RingElement) -> Result<RingElement, DemoError> {
        match self.counting {
            Counting::Ordered => Ok(value),
            Counting::Unordered => divide_by_factorial(group.ring(), value, self.exponents.len()),
        }
    }
}

/// `value / k!` in the ring.
pub fn divide_by_factorial(
    ring: ModRing,
    value: RingElement,
    k: usize,
) -> Result<RingElement, DemoError> {
    let fact = ring.from_bigint(&arith::factorial(k as u64));
    let inv = ring
        .inverse(fact)?
        .ok_or(DemoError::FactorialNotInvertible(k, ring.modulus()))?;
    Ok(ring.mul(value, inv)?)
}
