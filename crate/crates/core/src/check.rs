//! One entry point per property, dispatching to the structural checkers.

use crate::error::{Error, Result};
use crate::fo_checks::{is_commutative, is_group, is_semilattice};
use crate::graph::DEFAULT_STATE_CAP;
use crate::identities_enum::{left_identities_report, right_identities_report};
use crate::identity::{idempotents_central, idempotents_commute, is_band, is_orthodox};
use crate::nl_checks::{
    has_left_zero, has_right_zero, has_zero, is_clifford, is_completely_regular, is_nilpotent, is_r_trivial,
};
use crate::oracle::DEFAULT_ELEMENT_CAP;
use crate::pspace_search::{is_inverse_semigroup, is_regular_semigroup};
use crate::report::{Property, PropertyReport};
use crate::transformation::GeneratorSet;

/// Budgets for the capped searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest tuple state space a reachability search may explore.
    pub states: u64,
    /// Largest semigroup the element searches may enumerate.
    pub elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { states: DEFAULT_STATE_CAP, elements: DEFAULT_ELEMENT_CAP }
    }
}

/// Decides `property` without the oracle. `Aperiodic` has no structural
/// procedure and yields a precondition error.
pub fn structural_check(gens: &GeneratorSet, property: Property, caps: Caps) -> Result<PropertyReport> {
    let cap = caps.states;
    match property {
        Property::Commutative => Ok(is_commutative(gens)),
        Property::Semilattice => Ok(is_semilattice(gens)),
        Property::Group => Ok(is_group(gens)),
        Property::LeftZero => has_left_zero(gens, cap),
        Property::RightZero => has_right_zero(gens, cap),
        Property::Zero => has_zero(gens, cap),
        Property::Nilpotent => is_nilpotent(gens, cap),
        Property::RTrivial => is_r_trivial(gens),
        Property::Band => is_band(gens, cap),
        Property::IdempotentsCommute => idempotents_commute(gens, cap),
        Property::IdempotentsCentral => idempotents_central(gens, cap),
        Property::Orthodox => is_orthodox(gens, cap),
        Property::CompletelyRegular => is_completely_regular(gens, cap),
        Property::Clifford => is_clifford(gens, cap),
        Property::Regular => is_regular_semigroup(gens, caps.elements),
        Property::Inverse => is_inverse_semigroup(gens, caps.elements, cap),
        Property::LeftIdentities => left_identities_report(gens),
        Property::RightIdentities => right_identities_report(gens),
        Property::Aperiodic => Err(Error::Precondition("aperiodic has no structural engine".into())),
    }
}
