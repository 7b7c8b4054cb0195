//! The work behind each subcommand, kept free of argument parsing and printing.

use std::time::Instant;

use transemi_core::identity::models;
use transemi_core::oracle::{definitional_check, enumerate};
use transemi_core::pspace_search::{find_inverse, find_regularizer, find_weak_inverse, SearchOutcome};
use transemi_core::reductions::{
    dfa_emptiness_to_nilpotent, dfa_emptiness_to_zero, dfa_intersection_to_regular, dfa_intersection_to_weak_inverse,
    digraph_to_semigroup, Dfa, InputDigraph,
};
use transemi_core::{
    structural_check, Caps, Engine, Error, GeneratorSet, Property, PropertyReport, QuasiIdentity, Transformation,
    Verdict, Witness,
};

pub mod exit {
    pub const TRUE: i32 = 0;
    pub const FALSE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const UNKNOWN_PROPERTY: i32 = 3;
    pub const UNDECIDED: i32 = 4;
    pub const DISAGREEMENT: i32 = 5;

    pub fn of(v: transemi_core::Verdict) -> i32 {
        match v {
            transemi_core::Verdict::True => TRUE,
            transemi_core::Verdict::False => FALSE,
            transemi_core::Verdict::Undecided => UNDECIDED,
        }
    }
}

fn undecided(property: &str, engine: Engine, note: String) -> PropertyReport {
    PropertyReport {
        property: property.to_string(),
        verdict: Verdict::Undecided,
        witness: Some(Witness::Note(note)),
        engine,
    }
}

/// Budget overruns become UNDECIDED; every other error propagates.
fn capped(property: &str, engine: Engine, r: Result<PropertyReport, Error>) -> Result<PropertyReport, Error> {
    match r {
        Err(e @ (Error::ElementCapExceeded { .. } | Error::StateBudgetExceeded { .. })) => {
            Ok(undecided(property, engine, e.to_string()))
        }
        other => other,
    }
}

/// Decides `property` from the definition over the enumerated semigroup.
pub fn oracle_check(g: &GeneratorSet, property: Property, caps: Caps) -> Result<PropertyReport, Error> {
    capped(property.name(), Engine::Oracle, enumerate(g, caps.elements).map(|t| definitional_check(&t, property)))
}

/// The structural verdict; `aperiodic` has only the oracle.
pub fn structural(g: &GeneratorSet, property: Property, caps: Caps) -> Result<PropertyReport, Error> {
    if !property.has_structural_engine() {
        return oracle_check(g, property, caps);
    }
    capped(property.name(), Engine::Structural, structural_check(g, property, caps))
}

/// Whether two reports on the same instance are consistent. UNDECIDED is
/// consistent with anything; identity lists must match as sets.
pub fn reports_agree(a: &PropertyReport, b: &PropertyReport) -> bool {
    if a.verdict == Verdict::Undecided || b.verdict == Verdict::Undecided {
        return true;
    }
    if a.verdict != b.verdict {
        return false;
    }
    let elements = |r: &PropertyReport| match &r.witness {
        Some(Witness::Elements(es)) => {
            let mut v: Vec<Transformation> = es.iter().map(|e| e.element.clone()).collect();
            v.sort();
            Some(v)
        }
        _ => None,
    };
    match a.property.parse::<Property>() {
        Ok(Property::LeftIdentities | Property::RightIdentities) => elements(a) == elements(b),
        _ => true,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineChoice {
    Structural,
    Oracle,
    Both,
}

#[derive(Debug, Clone)]
pub struct Timed {
    pub report: PropertyReport,
    pub elapsed_ms: f64,
}

fn timed(f: impl FnOnce() -> Result<PropertyReport, Error>) -> Result<Timed, Error> {
    let start = Instant::now();
    let report = f()?;
    Ok(Timed { report, elapsed_ms: start.elapsed().as_secs_f64() * 1000.0 })
}

#[derive(Debug, Clone)]
pub enum CheckOutcome {
    Single(Timed),
    Both { structural: Timed, oracle: Timed },
}

impl CheckOutcome {
    pub fn agree(&self) -> bool {
        match self {
            CheckOutcome::Single(_) => true,
            CheckOutcome::Both { structural, oracle } => reports_agree(&structural.report, &oracle.report),
        }
    }

    /// The verdict that decides the exit code.
    pub fn verdict(&self) -> Verdict {
        match self {
            CheckOutcome::Single(t) => t.report.verdict,
            CheckOutcome::Both { structural, oracle } => match structural.report.verdict {
                Verdict::Undecided => oracle.report.verdict,
                v => v,
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.agree() {
            exit::of(self.verdict())
        } else {
            exit::DISAGREEMENT
        }
    }
}

pub fn check(g: &GeneratorSet, property: Property, engine: EngineChoice, caps: Caps) -> Result<CheckOutcome, Error> {
    Ok(match engine {
        EngineChoice::Structural => CheckOutcome::Single(timed(|| structural(g, property, caps))?),
        EngineChoice::Oracle => CheckOutcome::Single(timed(|| oracle_check(g, property, caps))?),
        EngineChoice::Both => CheckOutcome::Both {
            structural: timed(|| structural(g, property, caps))?,
            oracle: timed(|| oracle_check(g, property, caps))?,
        },
    })
}

/// A quasi-identity in text form, or the name of a preset.
pub fn parse_quasi_identity(text: &str) -> Result<QuasiIdentity, Error> {
    match text.parse::<QuasiIdentity>() {
        Ok(q) => Ok(q),
        Err(e) => QuasiIdentity::preset(text).map_err(|_| e),
    }
}

pub fn identity(g: &GeneratorSet, q: &QuasiIdentity, caps: Caps) -> Result<Timed, Error> {
    let name = q.to_string();
    timed(|| capped(&name, Engine::Structural, models(g, q, caps.states)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementMode {
    Regularizer,
    WeakInverse,
    Inverse,
}

impl ElementMode {
    pub fn name(self) -> &'static str {
        match self {
            ElementMode::Regularizer => "regularizer",
            ElementMode::WeakInverse => "weak-inverse",
            ElementMode::Inverse => "inverse",
        }
    }

    pub fn exit_code(outcome: &SearchOutcome) -> i32 {
        match outcome {
            SearchOutcome::Found(_) => exit::TRUE,
            SearchOutcome::NotFound => exit::FALSE,
            SearchOutcome::Undecided { .. } => exit::UNDECIDED,
        }
    }
}

pub fn element(
    g: &GeneratorSet,
    mode: ElementMode,
    target: &Transformation,
    cap: usize,
) -> Result<SearchOutcome, Error> {
    match mode {
        ElementMode::Regularizer => find_regularizer(g, target, cap),
        ElementMode::WeakInverse => find_weak_inverse(g, target, cap),
        ElementMode::Inverse => find_inverse(g, target, cap),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    Zero,
    Nilpotent,
    RTrivial,
    Regular,
    WeakInverse,
}

pub enum ReductionInput {
    Dfa(Dfa),
    Dfas(Vec<Dfa>),
    Digraph(InputDigraph),
}

/// A constructed instance with the guarantee it is meant to exhibit.
pub struct Reduction {
    pub generators: GeneratorSet,
    /// Target element for the element searches, if any.
    pub target: Option<Transformation>,
    pub header: String,
}

pub fn reduce(kind: ReductionKind, input: &ReductionInput) -> Result<Reduction, Error> {
    let wrong = || Error::Precondition("input does not match the reduction kind".into());
    let (generators, target, header) = match (kind, input) {
        (ReductionKind::Zero, ReductionInput::Dfa(d)) => (
            dfa_emptiness_to_zero(d)?,
            None,
            "zero reduction: letters fixing a sink, b, c\nguarantee: with a final state, S has a zero iff the language is nonempty\n(with no final state, S has a zero iff every letter fixes q0; one-sided zeros may exist without a zero)".to_string(),
        ),
        (ReductionKind::Nilpotent, ReductionInput::Dfa(d)) => (
            dfa_emptiness_to_nilpotent(d)?,
            None,
            "nilpotent reduction: a_{i,j} per letter i and counter j, then b\nguarantee: S is nilpotent iff the language is empty\n(equivalently, S satisfies x2y = x2)".to_string(),
        ),
        (ReductionKind::RTrivial, ReductionInput::Digraph(h)) => (
            digraph_to_semigroup(h)?,
            None,
            "digraph reduction: one generator per edge, all other points to a sink\nguarantee: acyclic graph => S nilpotent; a cycle of length >= 2 => S not R-trivial\nand some idempotent is not central".to_string(),
        ),
        (ReductionKind::Regular, ReductionInput::Dfas(ds)) => {
            let (g, b) = dfa_intersection_to_regular(ds)?;
            let header = format!(
                "regular-element reduction: shared letters on the disjoint union plus b\nguarantee: generator {} (b) is regular iff every automaton accepts a common word",
                b + 1
            );
            let target = g.get(b).clone();
            (g, Some(target), header)
        }
        (ReductionKind::WeakInverse, ReductionInput::Dfas(ds)) => {
            let (g, b) = dfa_intersection_to_weak_inverse(ds)?;
            (g, Some(b), "weak-inverse reduction: shared letters on the disjoint union plus the reset c\nguarantee: the target b has a weak inverse in S iff every automaton accepts a common word".to_string())
        }
        _ => return Err(wrong()),
    };
    Ok(Reduction { generators, target, header })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(maps: &[&[u32]]) -> GeneratorSet {
        GeneratorSet::from_one_based(maps).unwrap()
    }

    #[test]
    fn check_examples() {
        let constants = gens(&[&[1, 1, 1], &[2, 2, 2]]);
        let sigma = gens(&[&[2, 3, 1]]);
        let caps = Caps::default();
        let out = check(&constants, Property::RightZero, EngineChoice::Both, caps).unwrap();
        assert_eq!(out.exit_code(), exit::TRUE);
        let out = check(&sigma, Property::Nilpotent, EngineChoice::Structural, caps).unwrap();
        assert_eq!(out.exit_code(), exit::FALSE);
        let CheckOutcome::Single(t) = out else { unreachable!() };
        assert!(t.report.witness.unwrap().to_string().starts_with("no zero element"));
    }

    #[test]
    fn caps_turn_into_undecided() {
        let g = gens(&[&[2, 3, 4, 5, 1], &[2, 1, 3, 4, 5]]);
        let caps = Caps { states: 1, elements: 10 };
        let out = check(&g, Property::Regular, EngineChoice::Both, caps).unwrap();
        assert_eq!(out.exit_code(), exit::UNDECIDED);
        let out = check(&g, Property::Band, EngineChoice::Structural, caps).unwrap();
        assert_eq!(out.exit_code(), exit::UNDECIDED);
    }

    #[test]
    fn identity_examples() {
        let constants = gens(&[&[1, 1, 1], &[2, 2, 2]]);
        let sigma = gens(&[&[2, 3, 1]]);
        let caps = Caps::default();
        let q = parse_quasi_identity("x1 x2 = x2 x1").unwrap();
        assert_eq!(identity(&constants, &q, caps).unwrap().report.verdict, Verdict::False);
        let q = parse_quasi_identity("x1 = x1").unwrap();
        assert_eq!(identity(&sigma, &q, caps).unwrap().report.verdict, Verdict::True);
        let q = parse_quasi_identity("x1 x1 x1 x2 = x2").unwrap();
        assert_eq!(identity(&sigma, &q, caps).unwrap().report.verdict, Verdict::True);
        assert_eq!(parse_quasi_identity("band").unwrap(), QuasiIdentity::preset("band").unwrap());
        assert!(parse_quasi_identity("x1 x2 =").is_err());
    }

    #[test]
    fn element_examples() {
        let sigma = gens(&[&[2, 3, 1]]);
        let out = element(&sigma, ElementMode::Inverse, sigma.get(0), 1000).unwrap();
        assert_eq!(out.found().unwrap().word, [0, 0]);
        let s = gens(&[&[1, 1, 2]]);
        assert_eq!(element(&s, ElementMode::Regularizer, s.get(0), 1000).unwrap(), SearchOutcome::NotFound);
    }

    #[test]
    fn reduce_examples() {
        let d = Dfa::new(2, 0, vec![1], vec![Transformation::from_one_based(&[2, 2]).unwrap()]).unwrap();
        let r = reduce(ReductionKind::Zero, &ReductionInput::Dfa(d.clone())).unwrap();
        assert_eq!((r.generators.len(), r.generators.degree()), (3, 3));
        let h = InputDigraph::new(2, vec![(0, 1)]).unwrap();
        let r = reduce(ReductionKind::RTrivial, &ReductionInput::Digraph(h)).unwrap();
        assert_eq!((r.generators.len(), r.generators.degree()), (1, 3));
        let bad = Dfa::new(2, 0, vec![0], vec![]).unwrap();
        let e = reduce(ReductionKind::Nilpotent, &ReductionInput::Dfa(bad)).err().unwrap();
        assert!(e.to_string().contains("initial state must not be final"));
        assert!(reduce(ReductionKind::Regular, &ReductionInput::Dfa(d)).is_err());
    }
}
