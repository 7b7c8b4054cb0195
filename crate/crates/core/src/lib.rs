//! Decision procedures for finite transformation semigroups given by generators.
//!
//! Transformations act on the right (`q·(st) = (q·s)·t`) on points `0..n`.
//! Most properties are decided without enumerating the semigroup, by
//! reachability in the action of the generators on points and small point
//! tuples; [`oracle`] enumerates the semigroup and decides everything from
//! the definitions, and serves as ground truth.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod check;
pub mod error;
pub mod fo_checks;
pub mod graph;
pub mod identities_enum;
pub mod identity;
pub mod nl_checks;
pub mod oracle;
pub mod pspace_search;
pub mod reductions;
pub mod report;
#[cfg(feature = "serde")]
mod serde_impls;
pub mod transformation;
pub mod witness;

pub use check::{structural_check, Caps};
pub use error::{Error, Result};
pub use identity::QuasiIdentity;
pub use report::{Engine, Property, PropertyReport, Verdict, Witness, WitnessElement};
pub use transformation::{compose, image, kernel, GeneratorSet, Partition, Transformation, Word};
