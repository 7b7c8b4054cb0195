//! Uniform verdict records and their witnesses.
//!
//! Points and generator indices inside witnesses are 0-based, like the rest
//! of the library; renderers add one.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::identity::QuasiIdentity;
use crate::transformation::{Transformation, Word};

/// Every semigroup property the library can decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Commutative,
    Semilattice,
    Group,
    LeftZero,
    RightZero,
    Zero,
    Nilpotent,
    RTrivial,
    Band,
    IdempotentsCommute,
    IdempotentsCentral,
    Orthodox,
    CompletelyRegular,
    Clifford,
    Regular,
    Inverse,
    LeftIdentities,
    RightIdentities,
    Aperiodic,
}

impl Property {
    pub const ALL: [Property; 19] = [
        Property::Commutative,
        Property::Semilattice,
        Property::Group,
        Property::LeftZero,
        Property::RightZero,
        Property::Zero,
        Property::Nilpotent,
        Property::RTrivial,
        Property::Band,
        Property::IdempotentsCommute,
        Property::IdempotentsCentral,
        Property::Orthodox,
        Property::CompletelyRegular,
        Property::Clifford,
        Property::Regular,
        Property::Inverse,
        Property::LeftIdentities,
        Property::RightIdentities,
        Property::Aperiodic,
    ];

    /// Command-line name, e.g. `r-trivial`.
    pub fn name(self) -> &'static str {
        match self {
            Property::Commutative => "commutative",
            Property::Semilattice => "semilattice",
            Property::Group => "group",
            Property::LeftZero => "left-zero",
            Property::RightZero => "right-zero",
            Property::Zero => "zero",
            Property::Nilpotent => "nilpotent",
            Property::RTrivial => "r-trivial",
            Property::Band => "band",
            Property::IdempotentsCommute => "idempotents-commute",
            Property::IdempotentsCentral => "idempotents-central",
            Property::Orthodox => "orthodox",
            Property::CompletelyRegular => "completely-regular",
            Property::Clifford => "clifford",
            Property::Regular => "regular",
            Property::Inverse => "inverse",
            Property::LeftIdentities => "left-identities",
            Property::RightIdentities => "right-identities",
            Property::Aperiodic => "aperiodic",
        }
    }

    /// Whether a structural (non-enumerating) decision procedure exists.
    pub fn has_structural_engine(self) -> bool {
        self != Property::Aperiodic
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    /// Accepts the command-line names and their snake_case spellings
    /// (`left_zero_exists` etc. are accepted for the zero properties).
    fn from_str(s: &str) -> Result<Self, Error> {
        let normalized: String = s.trim().chars().map(|c| if c == '_' { '-' } else { c }).collect();
        let normalized = normalized.strip_suffix("-exists").unwrap_or(&normalized);
        let alias = match normalized {
            "inverse-semigroup" => "inverse",
            "regular-semigroup" => "regular",
            other => other,
        };
        Property::ALL.iter().copied().find(|p| p.name() == alias).ok_or_else(|| Error::UnknownName(String::from(s)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum Verdict {
    True,
    False,
    /// A capped search ran out of budget.
    Undecided,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::True => "TRUE",
            Verdict::False => "FALSE",
            Verdict::Undecided => "UNDECIDED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Engine {
    Structural,
    Oracle,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Structural => "structural",
            Engine::Oracle => "oracle",
        }
    }
}

/// A semigroup element named by its canonical generator word.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WitnessElement {
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::word"))]
    pub word: Word,
    pub element: Transformation,
}

/// Which condition of the three-condition group test failed.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GroupViolation {
    /// `point` lies in the image of generator `first` but not of `second`.
    DifferentImages {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        first: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        second: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        point: u32,
    },
    /// Generator `generator` identifies the distinct image points `p` and `q`.
    NotPermutationOnImage {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        generator: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        p: u32,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        q: u32,
    },
    /// `p·a_first = q·a_first` but `p·a_second ≠ q·a_second`.
    DifferentKernels {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        first: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        second: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        p: u32,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        q: u32,
    },
}

/// A counterexample to a quasi-identity: boundary points and one word per variable.
///
/// Substituting `h(x_i) = s_i^ω` for idempotent-constrained variables and
/// `h(x_i) = s_i` otherwise, where `s_i` is the product of `words[i]`, sends
/// `lhs_points[0]` through `h(u)` to `lhs_points.last()` and through `h(v)` to
/// `rhs_points.last()`, and those differ.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IdentityCounterexample {
    pub identity: QuasiIdentity,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::points"))]
    pub lhs_points: Vec<u32>,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::points"))]
    pub rhs_points: Vec<u32>,
    #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::words"))]
    pub words: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Witness {
    /// `point·a_i·a_j ≠ point·a_j·a_i`.
    NonCommutingGenerators {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        i: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        j: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        point: u32,
    },
    /// `point·a·a ≠ point·a`.
    NonIdempotentGenerator {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::index"))]
        generator: usize,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        point: u32,
    },
    Group(GroupViolation),
    /// `p` and `q` share a component of `Γ` but no element identifies them.
    UncollapsiblePair {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        p: u32,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        q: u32,
    },
    /// No element sends `point` into `Fix(S)`.
    StuckPoint {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        point: u32,
    },
    /// A closed walk in the transformation graph and the generator word tracing it.
    Cycle {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::points"))]
        points: Vec<u32>,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::word"))]
        word: Word,
    },
    /// An element `s` (the word's product) with `p·s = u`, `q·s = v`, `u ≠ v`, `u·s = v·s`.
    ImageCollapse {
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        p: u32,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        q: u32,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        u: u32,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::point"))]
        v: u32,
        #[cfg_attr(feature = "serde", serde(with = "crate::serde_impls::word"))]
        word: Word,
    },
    Identity(IdentityCounterexample),
    /// An assignment of elements to the variables of a quasi-identity (oracle form).
    Assignment {
        identity: QuasiIdentity,
        values: Vec<WitnessElement>,
    },
    Element(WitnessElement),
    Pair(WitnessElement, WitnessElement),
    Elements(Vec<WitnessElement>),
    /// An upper bound on the nilpotency degree.
    DegreeBound(usize),
    /// The exact nilpotency degree.
    Degree(usize),
    /// A sub-witness together with the reason it refutes the property.
    Because {
        reason: String,
        inner: Box<Witness>,
    },
    Note(String),
}

impl Witness {
    pub fn because(reason: &str, inner: Witness) -> Witness {
        Witness::Because { reason: String::from(reason), inner: Box::new(inner) }
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (i, g) in word.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", g + 1)?;
    }
    f.write_str("]")
}

impl fmt::Display for WitnessElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = word ", self.element)?;
        write_word(f, &self.word)
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::NonCommutingGenerators { i, j, point } => {
                write!(f, "generators {} and {} do not commute at point {}", i + 1, j + 1, point + 1)
            }
            Witness::NonIdempotentGenerator { generator, point } => {
                write!(f, "generator {} is not idempotent at point {}", generator + 1, point + 1)
            }
            Witness::Group(GroupViolation::DifferentImages { first, second, point }) => write!(
                f,
                "point {} is in the image of generator {} but not of generator {}",
                point + 1,
                first + 1,
                second + 1
            ),
            Witness::Group(GroupViolation::NotPermutationOnImage { generator, p, q }) => {
                write!(f, "generator {} identifies image points {} and {}", generator + 1, p + 1, q + 1)
            }
            Witness::Group(GroupViolation::DifferentKernels { first, second, p, q }) => write!(
                f,
                "points {} and {} are identified by generator {} but not by generator {}",
                p + 1,
                q + 1,
                first + 1,
                second + 1
            ),
            Witness::UncollapsiblePair { p, q } => {
                write!(f, "points {} and {} are connected but no element identifies them", p + 1, q + 1)
            }
            Witness::StuckPoint { point } => {
                write!(f, "no element sends point {} to a common fixed point", point + 1)
            }
            Witness::Cycle { points, word } => {
                f.write_str("cycle ")?;
                for (i, p) in points.iter().enumerate() {
                    if i > 0 {
                        f.write_str("->")?;
                    }
                    write!(f, "{}", p + 1)?;
                }
                f.write_str(" via word ")?;
                write_word(f, word)
            }
            Witness::ImageCollapse { p, q, u, v, word } => {
                write!(f, "element word ",)?;
                write_word(f, word)?;
                write!(
                    f,
                    " maps {}->{} and {}->{} and identifies image points {} and {}",
                    p + 1,
                    u + 1,
                    q + 1,
                    v + 1,
                    u + 1,
                    v + 1
                )
            }
            Witness::Identity(cx) => {
                write!(f, "{} fails from point {}: ", cx.identity, cx.lhs_points[0] + 1)?;
                for (i, w) in cx.words.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "x{} := ", i + 1)?;
                    write_word(f, w)?;
                    if cx.identity.is_idempotent_var(i) {
                        f.write_str("^omega")?;
                    }
                }
                Ok(())
            }
            Witness::Assignment { identity, values } => {
                write!(f, "{identity} fails for ")?;
                for (i, v) in values.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "x{} := {}", i + 1, v)?;
                }
                Ok(())
            }
            Witness::Element(e) => write!(f, "{e}"),
            Witness::Pair(a, b) => write!(f, "{a}; {b}"),
            Witness::Elements(list) => {
                f.write_str("{")?;
                for (i, e) in list.iter().enumerate() {
                    if i > 0 {
                        f.write_str("; ")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")
            }
            Witness::DegreeBound(d) => write!(f, "nilpotency degree at most {d}"),
            Witness::Degree(d) => write!(f, "nilpotency degree {d}"),
            Witness::Because { reason, inner } => write!(f, "{reason}: {inner}"),
            Witness::Note(s) => f.write_str(s),
        }
    }
}

/// Verdict plus witness and the engine that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PropertyReport {
    /// Property name; a [`Property::name`] or a rendered quasi-identity.
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub engine: Engine,
}

impl PropertyReport {
    pub fn new(property: Property, verdict: Verdict, witness: Option<Witness>, engine: Engine) -> Self {
        PropertyReport { property: String::from(property.name()), verdict, witness, engine }
    }

    pub fn structural(property: Property, holds: bool, witness: Option<Witness>) -> Self {
        PropertyReport::new(property, Verdict::from_bool(holds), witness, Engine::Structural)
    }

    pub fn oracle(property: Property, holds: bool, witness: Option<Witness>) -> Self {
        PropertyReport::new(property, Verdict::from_bool(holds), witness, Engine::Oracle)
    }

    pub fn holds(&self) -> Option<bool> {
        match self.verdict {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Undecided => None,
        }
    }

    /// Renames the report, keeping verdict and witness.
    pub fn renamed(mut self, property: Property) -> Self {
        self.property = String::from(property.name());
        self
    }
}
