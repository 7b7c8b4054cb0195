//! Structural engines against the oracle on many instances.
//!
//! Instances are either every generator tuple of a given degree or seeded
//! random ones. Work is spread over threads but results are collected in
//! instance order, so the summary depends only on the configuration.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use transemi_core::nl_checks::nilpotency_degree_upper_bound;
use transemi_core::oracle::{definitional_check, enumerate, nilpotency_degree, ElementTable};
use transemi_core::pspace_search::canonical_weak_inverse;
use transemi_core::witness::verify_report;
use transemi_core::{structural_check, Caps, GeneratorSet, Property, Transformation, Verdict};

use crate::commands::reports_agree;

/// Largest semigroup on which `regular` and `inverse` are compared; their
/// structural procedure is quadratic in `|S|`.
pub const REGULAR_LIMIT: usize = 5000;

/// Most disagreements and failures listed individually in a summary.
const LISTED: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Mode {
    /// Every tuple of `1..=k` transformations of degree exactly `n`.
    Exhaustive,
    /// `samples` instances with degree in `1..=n` and `1..=k` generators.
    Random { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub n: usize,
    pub k: usize,
    #[serde(flatten)]
    pub mode: Mode,
    #[serde(skip)]
    pub caps: Caps,
}

/// Every tuple of `1..=k` transformations of degree `n`, shorter tuples first.
pub fn exhaustive_instances(n: usize, k: usize) -> Vec<GeneratorSet> {
    let all = all_transformations(n);
    let mut out = Vec::new();
    for len in 1..=k {
        let total = all.len().pow(len as u32);
        for code in 0..total {
            let mut c = code;
            let mut gens = vec![Transformation::identity(n); len];
            for slot in gens.iter_mut().rev() {
                *slot = all[c % all.len()].clone();
                c /= all.len();
            }
            out.push(GeneratorSet::new(gens).expect("equal degrees"));
        }
    }
    out
}

fn all_transformations(n: usize) -> Vec<Transformation> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let map = (0..n)
                .map(|_| {
                    let p = (code % n) as u32;
                    code /= n;
                    p
                })
                .collect::<Vec<_>>();
            Transformation::new(map).expect("points in range")
        })
        .collect()
}

/// Uniform maps, permutations and idempotents in equal parts, so that groups
/// and bands are not vanishingly rare.
fn random_transformation(rng: &mut ChaCha8Rng, n: usize) -> Transformation {
    let mut map: Vec<u32> = (0..n).map(|_| rng.random_range(0..n as u32)).collect();
    match rng.random_range(0..3) {
        0 => {}
        1 => {
            map = (0..n as u32).collect();
            map.shuffle(rng);
        }
        _ => {
            for r in map.clone() {
                map[r as usize] = r;
            }
        }
    }
    Transformation::new(map).expect("points in range")
}

/// Instance `index` of the seeded stream; independent of the other indices.
pub fn random_instance(n: usize, k: usize, seed: u64, index: u64) -> GeneratorSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let degree = rng.random_range(1..=n);
    let count = rng.random_range(1..=k);
    GeneratorSet::new((0..count).map(|_| random_transformation(&mut rng, degree)).collect()).expect("equal degrees")
}

pub fn instances(config: &Config) -> Vec<GeneratorSet> {
    match config.mode {
        Mode::Exhaustive => exhaustive_instances(config.n, config.k),
        Mode::Random { samples, seed } => {
            (0..samples as u64).map(|i| random_instance(config.n, config.k, seed, i)).collect()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub agree: usize,
    pub disagree: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub instance: String,
    pub property: String,
    pub structural: Verdict,
    pub oracle: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    #[serde(flatten)]
    pub config: Config,
    pub instances: usize,
    /// Instances whose semigroup exceeded the element cap.
    pub skipped_instances: usize,
    pub properties: BTreeMap<String, Tally>,
    pub disagreements: usize,
    pub witnesses_checked: usize,
    pub witness_failures: usize,
    pub elements_checked: usize,
    pub weak_inverse_failures: usize,
    pub nilpotent_instances: usize,
    pub degree_bound_failures: usize,
    pub first_disagreements: Vec<Disagreement>,
    pub first_failures: Vec<String>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
            && self.witness_failures == 0
            && self.weak_inverse_failures == 0
            && self.degree_bound_failures == 0
    }
}

/// Everything learned from one instance.
#[derive(Default)]
struct Outcome {
    skipped: bool,
    tallies: Vec<(Property, Option<bool>)>,
    disagreements: Vec<Disagreement>,
    witnesses_checked: usize,
    failures: Vec<String>,
    witness_failures: usize,
    elements_checked: usize,
    weak_inverse_failures: usize,
    nilpotent: bool,
    degree_bound_failures: usize,
}

fn check_instance(g: &GeneratorSet, caps: Caps) -> Outcome {
    let mut out = Outcome::default();
    let table = match enumerate(g, caps.elements) {
        Ok(t) => t,
        Err(_) => {
            out.skipped = true;
            return out;
        }
    };
    for property in Property::ALL.into_iter().filter(|p| p.has_structural_engine()) {
        if matches!(property, Property::Regular | Property::Inverse) && table.len() > REGULAR_LIMIT {
            out.tallies.push((property, None));
            continue;
        }
        let slow = definitional_check(&table, property);
        let fast = match structural_check(g, property, caps) {
            Ok(r) => r,
            Err(e) => {
                out.failures.push(format!("{g} {property}: {e}"));
                out.tallies.push((property, Some(false)));
                continue;
            }
        };
        let agree = fast.verdict != Verdict::Undecided && reports_agree(&fast, &slow);
        out.tallies.push((property, Some(agree)));
        if !agree {
            out.disagreements.push(Disagreement {
                instance: g.to_string(),
                property: property.name().to_string(),
                structural: fast.verdict,
                oracle: slow.verdict,
            });
        }
        for r in [&fast, &slow] {
            out.witnesses_checked += 1;
            if let Err(e) = verify_report(g, r, Some(&table)) {
                out.witness_failures += 1;
                out.failures.push(format!("{g} {property} ({}): {e}", r.engine.as_str()));
            }
        }
    }
    weak_inverses(&table, &mut out);
    nilpotency_degrees(g, &table, caps, &mut out);
    out
}

fn weak_inverses(table: &ElementTable, out: &mut Outcome) {
    for s in table.elements() {
        out.elements_checked += 1;
        let (t, e) = canonical_weak_inverse(s);
        if t.then(s).then(&t) != t || !table.contains(&t) {
            out.weak_inverse_failures += 1;
            out.failures.push(format!("{s}^{e} is not a weak inverse of {s} in S"));
        }
    }
}

fn nilpotency_degrees(g: &GeneratorSet, table: &ElementTable, caps: Caps, out: &mut Outcome) {
    let Some(exact) = nilpotency_degree(table) else { return };
    out.nilpotent = true;
    match nilpotency_degree_upper_bound(g, caps.states) {
        Ok(bound) if exact <= bound && bound <= g.degree() => {}
        Ok(bound) => {
            out.degree_bound_failures += 1;
            out.failures.push(format!("{g}: exact degree {exact}, bound {bound}, n = {}", g.degree()));
        }
        Err(e) => {
            out.degree_bound_failures += 1;
            out.failures.push(format!("{g}: degree bound failed: {e}"));
        }
    }
}

pub fn crosscheck(config: &Config) -> Summary {
    let gens = instances(config);
    let outcomes: Vec<Outcome> = gens.par_iter().map(|g| check_instance(g, config.caps)).collect();
    let mut summary = Summary {
        config: config.clone(),
        instances: gens.len(),
        skipped_instances: 0,
        properties: BTreeMap::new(),
        disagreements: 0,
        witnesses_checked: 0,
        witness_failures: 0,
        elements_checked: 0,
        weak_inverse_failures: 0,
        nilpotent_instances: 0,
        degree_bound_failures: 0,
        first_disagreements: Vec::new(),
        first_failures: Vec::new(),
    };
    for o in outcomes {
        if o.skipped {
            summary.skipped_instances += 1;
            continue;
        }
        for (p, result) in o.tallies {
            let t = summary.properties.entry(p.name().to_string()).or_default();
            match result {
                Some(true) => t.agree += 1,
                Some(false) => t.disagree += 1,
                None => t.skipped += 1,
            }
        }
        summary.disagreements += o.disagreements.len();
        summary.witnesses_checked += o.witnesses_checked;
        summary.witness_failures += o.witness_failures;
        summary.elements_checked += o.elements_checked;
        summary.weak_inverse_failures += o.weak_inverse_failures;
        summary.nilpotent_instances += usize::from(o.nilpotent);
        summary.degree_bound_failures += o.degree_bound_failures;
        let room = LISTED.saturating_sub(summary.first_disagreements.len());
        summary.first_disagreements.extend(o.disagreements.into_iter().take(room));
        let room = LISTED.saturating_sub(summary.first_failures.len());
        summary.first_failures.extend(o.failures.into_iter().take(room));
    }
    summary
}
