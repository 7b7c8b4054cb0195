#![allow(dead_code)]

use std::path::{Path, PathBuf};

use proptest::prelude::*;
use transemi_core::reductions::{Dfa, InputDigraph};
use transemi_core::{GeneratorSet, Transformation};

pub fn transformation(n: usize) -> impl Strategy<Value = Transformation> {
    prop::collection::vec(0..n as u32, n).prop_map(|m| Transformation::new(m).unwrap())
}

fn name() -> impl Strategy<Value = Option<String>> {
    prop::option::of("[a-z][a-z0-9_]{0,4}")
}

pub fn named_generator_set(max_n: usize, max_k: usize) -> impl Strategy<Value = GeneratorSet> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((transformation(n), name()), 1..=max_k).prop_map(|v| {
            let (gens, names) = v.into_iter().unzip();
            GeneratorSet::with_names(gens, names).unwrap()
        })
    })
}

pub fn named_dfa(max_states: usize, max_letters: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(move |n| {
        (
            0..n as u32,
            prop::collection::vec(0..n as u32, 0..=n),
            prop::collection::vec((transformation(n), name()), 0..=max_letters),
        )
            .prop_map(move |(q0, finals, letters)| {
                let (ls, names) = letters.into_iter().unzip();
                Dfa::with_names(n, q0, finals, ls, names).unwrap()
            })
    })
}

pub fn digraph(max_vertices: usize) -> impl Strategy<Value = InputDigraph> {
    (1..=max_vertices).prop_flat_map(|n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..=2 * n)
            .prop_map(move |edges| InputDigraph::new(n, edges).unwrap())
    })
}

pub fn gens(maps: &[&[u32]]) -> GeneratorSet {
    GeneratorSet::from_one_based(maps).unwrap()
}

/// Writes `text` to `name` inside `dir`.
pub fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI in-process.
pub fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("transemi").chain(args.iter().copied());
    let code = transemi_cli::cli::run(argv, &mut out, &mut err);
    Run { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

pub fn schema() -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Panics with the validation errors if `value` does not conform.
pub fn assert_conforms(validator: &jsonschema::Validator, value: &serde_json::Value) {
    let errors: Vec<String> = validator.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}\n{value:#}");
}
