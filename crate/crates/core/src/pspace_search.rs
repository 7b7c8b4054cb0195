//! Searches for regularizers, weak inverses and inverses among the elements
//! of `S`, walking `S` breadth-first and stopping at the first hit.
//!
//! These problems are hard in general, so the walk is capped; running out of
//! budget yields [`SearchOutcome::Undecided`] rather than an error.

use alloc::format;
use alloc::string::String;

use crate::error::{Error, Result};
use crate::identity::idempotents_commute;
use crate::oracle::{enumerate, ElementWalk};
use crate::report::{Engine, Property, PropertyReport, Verdict, Witness, WitnessElement};
use crate::transformation::{GeneratorSet, Transformation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(WitnessElement),
    NotFound,
    /// `S` has more elements than the cap allowed.
    Undecided {
        cap: usize,
    },
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&WitnessElement> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

fn search(
    gens: &GeneratorSet,
    s: &Transformation,
    cap: usize,
    accept: impl Fn(&Transformation) -> bool,
) -> Result<SearchOutcome> {
    gens.check_degree(s)?;
    let mut walk = ElementWalk::new(gens, cap)?;
    loop {
        match walk.next_index() {
            Ok(Some(i)) => {
                if accept(walk.element(i)) {
                    return Ok(SearchOutcome::Found(WitnessElement {
                        word: walk.word(i),
                        element: walk.element(i).clone(),
                    }));
                }
            }
            Ok(None) => return Ok(SearchOutcome::NotFound),
            Err(Error::ElementCapExceeded { cap }) => return Ok(SearchOutcome::Undecided { cap }),
            Err(e) => return Err(e),
        }
    }
}

/// First `t ∈ S` in canonical order with `sts = s`. `s` need not lie in `S`.
pub fn find_regularizer(gens: &GeneratorSet, s: &Transformation, cap: usize) -> Result<SearchOutcome> {
    search(gens, s, cap, |t| s.then(t).then(s) == *s)
}

/// First `t ∈ S` in canonical order with `tst = t`.
pub fn find_weak_inverse(gens: &GeneratorSet, s: &Transformation, cap: usize) -> Result<SearchOutcome> {
    search(gens, s, cap, |t| t.then(s).then(t) == *t)
}

/// First `t ∈ S` in canonical order with `sts = s` and `tst = t`.
pub fn find_inverse(gens: &GeneratorSet, s: &Transformation, cap: usize) -> Result<SearchOutcome> {
    search(gens, s, cap, |t| s.then(t).then(s) == *s && t.then(s).then(t) == *t)
}

/// `s^(2ω−1)` with `ω` minimal, a weak inverse of `s` inside `⟨s⟩`.
///
/// The shorter `s^(ω−1)` fails when the index exceeds the minimal `ω`
/// (e.g. `[1,1,2]`, where `ω = 2` and `s·s·s ≠ s`).
pub fn canonical_weak_inverse(s: &Transformation) -> (Transformation, u64) {
    let exponent = 2 * s.idempotent_power_exponent() - 1;
    (s.pow(exponent), exponent)
}

fn undecided(property: Property, cap: usize) -> PropertyReport {
    PropertyReport::new(
        property,
        Verdict::Undecided,
        Some(Witness::Note(format!("semigroup has more than {cap} elements"))),
        Engine::Structural,
    )
}

/// Regular iff every element has a regularizer; FALSE names the first element without one.
pub fn is_regular_semigroup(gens: &GeneratorSet, cap: usize) -> Result<PropertyReport> {
    let table = match enumerate(gens, cap) {
        Ok(t) => t,
        Err(Error::ElementCapExceeded { cap }) => return Ok(undecided(Property::Regular, cap)),
        Err(e) => return Err(e),
    };
    for i in 0..table.len() {
        let s = table.element(i);
        let regular = table.elements().iter().any(|t| s.then(t).then(s) == *s);
        if !regular {
            return Ok(PropertyReport::structural(Property::Regular, false, Some(Witness::Element(table.witness(i)))));
        }
    }
    Ok(PropertyReport::structural(Property::Regular, true, None))
}

/// Inverse iff regular with commuting idempotents. A refutation of either
/// part wins over an undecided regularity check.
pub fn is_inverse_semigroup(gens: &GeneratorSet, cap: usize, state_cap: u64) -> Result<PropertyReport> {
    let commute = idempotents_commute(gens, state_cap)?;
    if commute.holds() == Some(false) {
        let mut report = commute.renamed(Property::Inverse);
        report.witness = report.witness.map(|w| Witness::because("idempotents do not commute", w));
        return Ok(report);
    }
    let regular = is_regular_semigroup(gens, cap)?;
    let mut report = regular.renamed(Property::Inverse);
    if report.holds() == Some(false) {
        report.witness = report.witness.map(|w| Witness::because("element without regularizer", w));
    }
    Ok(report)
}

/// Human-readable label for an outcome.
pub fn outcome_label(outcome: &SearchOutcome) -> String {
    match outcome {
        SearchOutcome::Found(w) => format!("{w}"),
        SearchOutcome::NotFound => String::from("NONE"),
        SearchOutcome::Undecided { .. } => String::from("UNDECIDED"),
    }
}
