//! Machine-readable reports. All indices are 1-based; `detail` is the exact
//! witness and can be fed back to the library for replay.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use transemi_core::identity::counterexample_assignment;
use transemi_core::report::GroupViolation;
use transemi_core::{Engine, GeneratorSet, PropertyReport, Transformation, Verdict, Witness, WitnessElement};

use crate::formats::render_generators;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub property: String,
    pub verdict: Verdict,
    pub engine: Engine,
    pub witness: Option<JsonWitness>,
    pub elapsed_ms: f64,
    /// SHA-256 of the canonical rendering of the generators.
    pub instance_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonWitness {
    pub rendering: String,
    /// Generator words, each paired with `transformations`. For an identity
    /// counterexample the transformation is the value of the variable, which
    /// is the ω-power of the word's product when the variable is idempotent.
    pub words: Vec<Vec<usize>>,
    pub points: Vec<u32>,
    pub transformations: Vec<Vec<u32>>,
    pub detail: Witness,
}

/// Output of `check --engine both`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonComparison {
    pub property: String,
    pub structural: JsonReport,
    pub oracle: JsonReport,
    pub agree: bool,
}

/// Output of `element`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JsonElement {
    pub mode: String,
    pub target: Transformation,
    /// `FOUND`, `NONE` or `UNDECIDED`.
    pub outcome: String,
    pub witness: Option<WitnessElement>,
    pub elapsed_ms: f64,
    pub instance_sha256: String,
}

pub fn instance_digest(g: &GeneratorSet) -> String {
    hex::encode(Sha256::digest(render_generators(g).as_bytes()))
}

#[derive(Default)]
struct Flat {
    words: Vec<Vec<usize>>,
    points: Vec<u32>,
    transformations: Vec<Vec<u32>>,
}

impl Flat {
    fn word(&mut self, g: &GeneratorSet, word: &[usize]) {
        self.words.push(word.iter().map(|i| i + 1).collect());
        self.transformations.push(g.evaluate(word).to_one_based());
    }

    fn generator(&mut self, g: &GeneratorSet, i: usize) {
        self.word(g, &[i]);
    }

    fn element(&mut self, e: &WitnessElement) {
        self.words.push(e.word.iter().map(|i| i + 1).collect());
        self.transformations.push(e.element.to_one_based());
    }

    fn points(&mut self, ps: &[u32]) {
        self.points.extend(ps.iter().map(|p| p + 1));
    }

    fn collect(&mut self, g: &GeneratorSet, w: &Witness) {
        match w {
            Witness::NonCommutingGenerators { i, j, point } => {
                self.generator(g, *i);
                self.generator(g, *j);
                self.points(&[*point]);
            }
            Witness::NonIdempotentGenerator { generator, point } => {
                self.generator(g, *generator);
                self.points(&[*point]);
            }
            Witness::Group(GroupViolation::DifferentImages { first, second, point }) => {
                self.generator(g, *first);
                self.generator(g, *second);
                self.points(&[*point]);
            }
            Witness::Group(GroupViolation::NotPermutationOnImage { generator, p, q }) => {
                self.generator(g, *generator);
                self.points(&[*p, *q]);
            }
            Witness::Group(GroupViolation::DifferentKernels { first, second, p, q }) => {
                self.generator(g, *first);
                self.generator(g, *second);
                self.points(&[*p, *q]);
            }
            Witness::UncollapsiblePair { p, q } => self.points(&[*p, *q]),
            Witness::StuckPoint { point } => self.points(&[*point]),
            Witness::Cycle { points, word } => {
                self.word(g, word);
                self.points(points);
            }
            Witness::ImageCollapse { p, q, u, v, word } => {
                self.word(g, word);
                self.points(&[*p, *q, *u, *v]);
            }
            Witness::Identity(cx) => {
                self.words.extend(cx.words.iter().map(|w| w.iter().map(|i| i + 1).collect()));
                self.transformations.extend(counterexample_assignment(g, cx).iter().map(|t| t.to_one_based()));
                self.points(&cx.lhs_points);
                self.points(&cx.rhs_points);
            }
            Witness::Assignment { values, .. } | Witness::Elements(values) => {
                values.iter().for_each(|e| self.element(e))
            }
            Witness::Element(e) => self.element(e),
            Witness::Pair(a, b) => {
                self.element(a);
                self.element(b);
            }
            Witness::Because { inner, .. } => self.collect(g, inner),
            Witness::DegreeBound(_) | Witness::Degree(_) | Witness::Note(_) => {}
        }
    }
}

pub fn json_witness(g: &GeneratorSet, w: &Witness) -> JsonWitness {
    let mut flat = Flat::default();
    flat.collect(g, w);
    JsonWitness {
        rendering: w.to_string(),
        words: flat.words,
        points: flat.points,
        transformations: flat.transformations,
        detail: w.clone(),
    }
}

pub fn json_report(g: &GeneratorSet, r: &PropertyReport, elapsed_ms: f64) -> JsonReport {
    JsonReport {
        property: r.property.clone(),
        verdict: r.verdict,
        engine: r.engine,
        witness: r.witness.as_ref().map(|w| json_witness(g, w)),
        elapsed_ms,
        instance_sha256: instance_digest(g),
    }
}

impl JsonReport {
    /// The library report this was produced from.
    pub fn to_report(&self) -> PropertyReport {
        PropertyReport {
            property: self.property.clone(),
            verdict: self.verdict,
            witness: self.witness.as_ref().map(|w| w.detail.clone()),
            engine: self.engine,
        }
    }
}
