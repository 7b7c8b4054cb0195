//! All left and right identities of `S` without enumerating `S`.
//!
//! A generator `a` yields a left identity exactly when it permutes the
//! kernel classes of `S`; the identity is then `a^m` for `m` the lcm of the
//! cycle lengths of that permutation. Dually for right identities and the
//! image `[n]S`. Every left (right) identity arises this way.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::report::{Property, PropertyReport, Witness, WitnessElement};
use crate::transformation::{image_action, lcm, quotient_action, GeneratorSet, Transformation};

fn candidates(gens: &GeneratorSet, action: &GeneratorSet) -> Result<Vec<WitnessElement>> {
    let all: Vec<u32> = (0..action.degree() as u32).collect();
    let mut out: Vec<WitnessElement> = Vec::new();
    for (i, induced) in action.generators().iter().enumerate() {
        if !induced.is_permutation() {
            continue;
        }
        let m = induced.cycle_lengths_on(&all).into_iter().fold(1, lcm);
        let element = gens.get(i).pow(m);
        if !element.is_idempotent() {
            return Err(Error::Internal(String::from("identity candidate is not idempotent")));
        }
        if out.iter().all(|w| w.element != element) {
            out.push(WitnessElement { word: vec![i; m as usize], element });
        }
    }
    out.sort_by(|a, b| a.element.cmp(&b.element));
    Ok(out)
}

/// Every `ℓ ∈ S` with `ℓs = s` for all `s ∈ S`, sorted by map.
pub fn left_identities(gens: &GeneratorSet) -> Result<Vec<WitnessElement>> {
    candidates(gens, &quotient_action(gens)?.action)
}

/// Every `r ∈ S` with `sr = s` for all `s ∈ S`, sorted by map.
pub fn right_identities(gens: &GeneratorSet) -> Result<Vec<WitnessElement>> {
    candidates(gens, &image_action(gens)?.action)
}

/// TRUE iff a left identity exists; the witness lists all of them.
pub fn left_identities_report(gens: &GeneratorSet) -> Result<PropertyReport> {
    let list = left_identities(gens)?;
    Ok(PropertyReport::structural(Property::LeftIdentities, !list.is_empty(), Some(Witness::Elements(list))))
}

/// TRUE iff a right identity exists; the witness lists all of them.
pub fn right_identities_report(gens: &GeneratorSet) -> Result<PropertyReport> {
    let list = right_identities(gens)?;
    Ok(PropertyReport::structural(Property::RightIdentities, !list.is_empty(), Some(Witness::Elements(list))))
}

/// The maps of a list of witness elements.
pub fn elements_of(list: &[WitnessElement]) -> Vec<Transformation> {
    list.iter().map(|w| w.element.clone()).collect()
}
