//! Explicit finite subgroups of the unit group of `Z/mZ`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

use crate::arith::{self, mul_mod, pow_mod};
use crate::ring::{ModRing, RingElement, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not a unit modulo {1}")]
    NotAUnit(u64, u64),
    #[error("{0} is not an element of the subgroup")]
    NotInSubgroup(u64),
    #[error("residue power map needs n >= 1")]
    ZeroPower,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A finite subgroup of `(Z/mZ)^x`, stored as a sorted element list with the
/// order of every element.
#[derive(Debug, Clone)]
pub struct UnitSubgroup {
    ring: ModRing,
    elements: Vec<u64>,
    orders: Vec<u64>,
    position: HashMap<u64, usize>,
    exponent: u64,
}

impl UnitSubgroup {
    /// The whole unit group.
    pub fn full_unit_group(ring: ModRing) -> Self {
        let m = ring.modulus();
        let elements = (1..m).filter(|x| x.gcd(&m) == 1).collect();
        Self::from_sorted(ring, elements)
    }

    /// The image of `u -> u^n` on the unit group.
    pub fn nth_residue_subgroup(ring: ModRing, n: u64) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroPower);
        }
        let m = ring.modulus();
        let image: BTreeSet<u64> = (1..m)
            .filter(|x| x.gcd(&m) == 1)
            .map(|u| pow_mod(u, n, m))
            .collect();
        Ok(Self::from_sorted(ring, image.into_iter().collect()))
    }

    /// Smallest subgroup containing `gens`; `{1}` when `gens` is empty.
    pub fn generated_subgroup(ring: ModRing, gens: &[RingElement]) -> Result<Self, GroupError> {
        let m = ring.modulus();
        for g in gens {
            if g.modulus() != m {
                return Err(RingError::ModulusMismatch {
                    left: m,
                    right: g.modulus(),
                }
                .into());
            }
            if g.value().gcd(&m) != 1 {
                return Err(GroupError::NotAUnit(g.value(), m));
            }
        }
        // finite, so the submonoid generated from 1 is already a group
        let mut seen = BTreeSet::from([1 % m]);
        let mut worklist = vec![1 % m];
        while let Some(x) = worklist.pop() {
            for g in gens {
                let y = mul_mod(x, g.value(), m);
                if seen.insert(y) {
                    worklist.push(y);
                }
            }
        }
        Ok(Self::from_sorted(ring, seen.into_iter().collect()))
    }

    /// Build from a sorted, duplicate-free list of units already known to be
    /// closed under multiplication.
    fn from_sorted(ring: ModRing, elements: Vec<u64>) -> Self {
        let m = ring.modulus();
        let n = elements.len() as u64;
        let primes: Vec<u64> = arith::factorize(n).into_iter().map(|(p, _)| p).collect();
        let orders: Vec<u64> = elements
            .iter()
            .map(|&g| {
                // ord(g) divides |G|; strip prime factors while g^(t/p) = 1
                let mut t = n;
                for &p in &primes {
                    while t.is_multiple_of(p) && pow_mod(g, t / p, m) == 1 % m {
                        t /= p;
                    }
                }
                t
            })
            .collect();
        let exponent = orders.iter().fold(1u64, |acc, &o| acc.lcm(&o));
        let position = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        Self {
            ring,
            elements,
            orders,
            position,
            exponent,
        }
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    /// `n = |G|`.
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// `lambda`, the lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = RingElement> + '_ {
        self.elements.iter().map(|&x| self.ring.element(x))
    }

    /// Raw residues in increasing order.
    pub fn residues(&self) -> &[u64] {
        &self.elements
    }

    /// Orders aligned with [`residues`](Self::residues).
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn contains(&self, g: RingElement) -> bool {
        g.modulus() == self.modulus() && self.position.contains_key(&g.value())
    }

    pub fn element_order(&self, g: RingElement) -> Result<u64, GroupError> {
        if g.modulus() != self.modulus() {
            return Err(GroupError::NotInSubgroup(g.value()));
        }
        self.position
            .get(&g.value())
            .map(|&i| self.orders[i])
            .ok_or(GroupError::NotInSubgroup(g.value()))
    }

    /// An element whose order equals the exponent.
    pub fn max_order_element(&self) -> RingElement {
        let i = self
            .orders
            .iter()
            .position(|&o| o == self.exponent)
            .expect("a finite abelian group attains its exponent");
        self.ring.element(self.elements[i])
    }

    /// `g^e` for any integer `e`, negative exponents included.
    pub fn pow(&self, g: RingElement, e: &BigInt) -> Result<RingElement, GroupError> {
        let ord = self.element_order(g)?;
        let r = arith::reduce_bigint(e, ord);
        Ok(self.ring.element(pow_mod(g.value(), r, self.modulus())))
    }

    /// `x^e mod m` for the element at index `i`, with `e` given mod lambda.
    pub(crate) fn pow_residue(&self, i: usize, e_mod_lambda: u64) -> u64 {
        pow_mod(
            self.elements[i],
            e_mod_lambda % self.orders[i],
            self.modulus(),
        )
    }
}

impl PartialEq for UnitSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}

impl Eq for UnitSubgroup {}

/// Textual subgroup selector: `units`, `nth:<n>` or `gen:<g1,g2,...>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupSpec {
    Units,
    NthResidues(u64),
    Generated(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid subgroup spec {0:?}: expected units, nth:<n> or gen:<g1,g2,...>")]
pub struct SubgroupSpecError(pub String);

impl SubgroupSpec {
    pub fn build(&self, ring: ModRing) -> Result<UnitSubgroup, GroupError> {
        match self {
            SubgroupSpec::Units => Ok(UnitSubgroup::full_unit_group(ring)),
            SubgroupSpec::NthResidues(n) => UnitSubgroup::nth_residue_subgroup(ring, *n),
            SubgroupSpec::Generated(gens) => {
                let gens: Vec<_> = gens.iter().map(|&g| ring.element(g)).collect();
                UnitSubgroup::generated_subgroup(ring, &gens)
            }
        }
    }
}

impl FromStr for SubgroupSpec {
    type Err = SubgroupSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SubgroupSpecError(s.to_string());
        let t = s.trim();
        if t == "units" {
            return Ok(SubgroupSpec::Units);
        }
        if let Some(n) = t.strip_prefix("nth:") {
            let n: u64 = n.trim().parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            return Ok(SubgroupSpec::NthResidues(n));
        }
        if let Some(list) = t.strip_prefix("gen:") {
            if list.trim().is_empty() {
                return Ok(SubgroupSpec::Generated(Vec::new()));
            }
            let gens = list
                .split(',')
                .map(|g| g.trim().parse::<u64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            return Ok(SubgroupSpec::Generated(gens));
        }
        Err(bad())
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Units => write!(f, "units"),
            SubgroupSpec::NthResidues(n) => write!(f, "nth:{n}"),
            SubgroupSpec::Generated(gens) => {
                let list: Vec<String> = gens.iter().map(u64::to_string).collect();
                write!(f, "gen:{}", list.join(","))
            }
        }
    }
}
