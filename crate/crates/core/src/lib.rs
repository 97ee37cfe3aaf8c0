//! Symmetric sums of monomials over pairwise distinct elements of a finite
//! subgroup of units of `Z/mZ`.
//!
//! The sum
//!
//! ```text
//! p(A) = sum over pairwise distinct x_1..x_k in G of x_1^a_1 * ... * x_k^a_k
//! ```
//!
//! is evaluated exactly, either by enumerating injective tuples or, when the
//! subgroup passes a minimax niceness test, as a signed sum over set
//! partitions of the exponent positions whose block sums are divisible by the
//! group exponent.
//!
//! ```
//! use unitsum::{evaluate, ExponentMultiset, ModRing, UnitSubgroup};
//!
//! let group = UnitSubgroup::full_unit_group(ModRing::new(9).unwrap());
//! let out = evaluate(&group, &ExponentMultiset::from_i64s(&[1, 5])).unwrap();
//! assert_eq!(out.value.value(), 3);
//! ```

pub mod arith;
pub mod demos;
pub mod group;
pub mod nicety;
pub mod polyparse;
pub mod ring;
pub mod symsum;

pub use group::{GroupError, SubgroupSpec, UnitSubgroup};
pub use nicety::{is_a_nice, NicenessReport};
pub use ring::{FiniteCommutativeRing, ModRing, RingElement, RingError};
pub use symsum::closed_form::{closed_form_p, Hypothesis};
pub use symsum::evaluate::{evaluate, evaluate_with, EvalOptions, Evaluation, Method};
pub use symsum::oracle::{brute_force_p, brute_force_p_sharp, Execution};
pub use symsum::partitions::{valid_partitions, Partition, PartitionFamily};
pub use symsum::{chi, ExponentMultiset, SymsumError};
