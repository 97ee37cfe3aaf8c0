//! Finite commutative unital rings.
//!
//! [`FiniteCommutativeRing`] is the boundary the rest of the crate would need
//! from any other finite ring: enumeration, arithmetic, units and regularity.
//! [`ModRing`] (the residues `Z/mZ`) is the only implementation shipped.
//!
//! Residues are stored as `u64`, so moduli go up to `2^64 - 1`; products are
//! formed in `u128` and are exact.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::arith::{self, mul_mod};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    TrivialRing(u64),
    #[error("elements belong to different rings (moduli {left} and {right})")]
    ModulusMismatch { left: u64, right: u64 },
}

/// The operations every finite commutative unital ring must provide.
pub trait FiniteCommutativeRing {
    type Element: Copy + Eq + fmt::Debug;

    fn cardinality(&self) -> u64;
    fn elements(&self) -> Vec<Self::Element>;
    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;

    fn add(&self, a: Self::Element, b: Self::Element) -> Result<Self::Element, RingError>;
    fn mul(&self, a: Self::Element, b: Self::Element) -> Result<Self::Element, RingError>;
    fn neg(&self, a: Self::Element) -> Result<Self::Element, RingError>;

    /// Multiplicative inverse, or `None` for a non-unit.
    fn inverse(&self, a: Self::Element) -> Result<Option<Self::Element>, RingError>;

    /// Whether `a * x = 0` forces `x = 0`.
    fn is_regular(&self, a: Self::Element) -> Result<bool, RingError> {
        self.is_regular_exhaustive(a)
    }

    /// Regularity straight from the definition, scanning every element.
    fn is_regular_exhaustive(&self, a: Self::Element) -> Result<bool, RingError> {
        let zero = self.zero();
        for x in self.elements() {
            if x != zero && self.mul(a, x)? == zero {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The ring `Z/mZ` with `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModRing {
    modulus: u64,
}

/// A residue in `[0, m)` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    value: u64,
    modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Result<Self, RingError> {
        if modulus < 2 {
            return Err(RingError::TrivialRing(modulus));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The element with residue `value mod m`.
    pub fn element(&self, value: u64) -> RingElement {
        RingElement {
            value: value % self.modulus,
            modulus: self.modulus,
        }
    }

    /// The image of a signed integer.
    pub fn from_i64(&self, value: i64) -> RingElement {
        let m = self.modulus as i128;
        self.element((value as i128).rem_euclid(m) as u64)
    }

    /// The image of an arbitrary-precision integer.
    pub fn from_bigint(&self, value: &num_bigint::BigInt) -> RingElement {
        self.element(arith::reduce_bigint(value, self.modulus))
    }

    /// Number of units, i.e. Euler's totient of the modulus.
    pub fn unit_count(&self) -> u64 {
        arith::totient(self.modulus)
    }

    /// `|D|`, the number of non-regular elements (zero included).
    pub fn non_regular_count(&self) -> u64 {
        self.modulus - self.unit_count()
    }

    pub fn is_field(&self) -> bool {
        arith::is_prime(self.modulus)
    }

    pub fn pow(&self, a: RingElement, exp: u64) -> Result<RingElement, RingError> {
        self.check(a)?;
        Ok(self.element(arith::pow_mod(a.value, exp, self.modulus)))
    }

    pub fn sub(&self, a: RingElement, b: RingElement) -> Result<RingElement, RingError> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    fn check(&self, a: RingElement) -> Result<(), RingError> {
        if a.modulus != self.modulus {
            return Err(RingError::ModulusMismatch {
                left: self.modulus,
                right: a.modulus,
            });
        }
        Ok(())
    }
}

impl FiniteCommutativeRing for ModRing {
    type Element = RingElement;

    fn cardinality(&self) -> u64 {
        self.modulus
    }

    fn elements(&self) -> Vec<RingElement> {
        (0..self.modulus).map(|v| self.element(v)).collect()
    }

    fn zero(&self) -> RingElement {
        self.element(0)
    }

    fn one(&self) -> RingElement {
        self.element(1)
    }

    fn add(&self, a: RingElement, b: RingElement) -> Result<RingElement, RingError> {
        self.check(a)?;
        self.check(b)?;
        let s = (a.value as u128 + b.value as u128) % self.modulus as u128;
        Ok(self.element(s as u64))
    }

    fn mul(&self, a: RingElement, b: RingElement) -> Result<RingElement, RingError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.element(mul_mod(a.value, b.value, self.modulus)))
    }

    fn neg(&self, a: RingElement) -> Result<RingElement, RingError> {
        self.check(a)?;
        Ok(self.element((self.modulus - a.value) % self.modulus))
    }

    fn inverse(&self, a: RingElement) -> Result<Option<RingElement>, RingError> {
        self.check(a)?;
        let ext = (a.value as i128).extended_gcd(&(self.modulus as i128));
        if ext.gcd != 1 {
            return Ok(None);
        }
        Ok(Some(
            self.element(ext.x.rem_euclid(self.modulus as i128) as u64),
        ))
    }

    /// In a finite commutative ring the regular elements are exactly the
    /// units, so this is a gcd test.
    fn is_regular(&self, a: RingElement) -> Result<bool, RingError> {
        self.check(a)?;
        Ok(a.value.gcd(&self.modulus) == 1)
    }
}

impl RingElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ring(&self) -> ModRing {
        ModRing {
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
