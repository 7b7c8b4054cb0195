#![allow(dead_code)]

use proptest::prelude::*;
use transemi_core::{GeneratorSet, Transformation};

pub fn transformation(n: usize) -> impl Strategy<Value = Transformation> {
    prop::collection::vec(0..n as u32, n).prop_map(|m| Transformation::new(m).unwrap())
}

/// Generator sets with degree in `1..=max_n` and `1..=max_k` generators.
pub fn generator_set(max_n: usize, max_k: usize) -> impl Strategy<Value = GeneratorSet> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(transformation(n), 1..=max_k).prop_map(|g| GeneratorSet::new(g).unwrap())
    })
}

pub fn gens(maps: &[&[u32]]) -> GeneratorSet {
    GeneratorSet::from_one_based(maps).unwrap()
}

/// All transformations of degree `n`.
pub fn all_transformations(n: usize) -> Vec<Transformation> {
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let map = (0..n)
                .map(|_| {
                    let p = (code % n) as u32;
                    code /= n;
                    p
                })
                .collect();
            Transformation::new(map).unwrap()
        })
        .collect()
}

/// A random permutation, idempotent or arbitrary map of degree `n`.
pub fn structured_transformation(n: usize) -> impl Strategy<Value = Transformation> {
    let perm = Just((0..n as u32).collect::<Vec<_>>()).prop_shuffle();
    let idem = prop::collection::vec(0..n as u32, n).prop_map(|m| {
        // fix every point of the image; the rest already map into it
        let mut map = m.clone();
        for &r in &m {
            map[r as usize] = r;
        }
        map
    });
    prop_oneof![perm, idem, prop::collection::vec(0..n as u32, n),].prop_map(|m| Transformation::new(m).unwrap())
}

pub fn structured_generator_set(max_n: usize, max_k: usize) -> impl Strategy<Value = GeneratorSet> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(structured_transformation(n), 1..=max_k).prop_map(|g| GeneratorSet::new(g).unwrap())
    })
}
