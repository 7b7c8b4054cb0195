//! Instance constructors turning automata and graph problems into semigroup
//! questions. The biconditionals they guarantee make them good adversarial
//! test generators.
//!
//! Every construction adds one extra point, always the last one.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::error::{Error, Result};
use crate::transformation::{GeneratorSet, Transformation};

/// A deterministic automaton whose letters act as transformations of its states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    states: usize,
    initial: u32,
    finals: Vec<u32>,
    letters: Vec<Transformation>,
    names: Vec<Option<String>>,
}

impl Dfa {
    /// `finals` is sorted and deduplicated; letters may be empty.
    pub fn new(states: usize, initial: u32, finals: Vec<u32>, letters: Vec<Transformation>) -> Result<Self> {
        let names = vec![None; letters.len()];
        Dfa::with_names(states, initial, finals, letters, names)
    }

    pub fn with_names(
        states: usize,
        initial: u32,
        mut finals: Vec<u32>,
        letters: Vec<Transformation>,
        names: Vec<Option<String>>,
    ) -> Result<Self> {
        if states == 0 {
            return Err(Error::ZeroDegree);
        }
        for &q in finals.iter().chain(core::iter::once(&initial)) {
            if q as usize >= states {
                return Err(Error::PointOutOfRange { point: q, degree: states });
            }
        }
        if let Some(a) = letters.iter().find(|a| a.degree() != states) {
            return Err(Error::DegreeMismatch { expected: states, found: a.degree() });
        }
        if names.len() != letters.len() {
            return Err(Error::Precondition(String::from("one name slot per letter")));
        }
        finals.sort_unstable();
        finals.dedup();
        Ok(Dfa { states, initial, finals, letters, names })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    pub fn finals(&self) -> &[u32] {
        &self.finals
    }

    pub fn letters(&self) -> &[Transformation] {
        &self.letters
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    pub fn is_final(&self, q: u32) -> bool {
        self.finals.binary_search(&q).is_ok()
    }

    /// Whether some word (possibly empty) is accepted.
    pub fn accepts_some_word(&self) -> bool {
        intersection_nonempty(core::slice::from_ref(self)).unwrap_or(false)
    }
}

/// Whether some word (possibly empty) is accepted by every automaton, by
/// breadth-first search of the product automaton.
pub fn intersection_nonempty(ds: &[Dfa]) -> Result<bool> {
    check_shared_alphabet(ds)?;
    let start: Vec<u32> = ds.iter().map(Dfa::initial).collect();
    let accepting = |state: &[u32]| ds.iter().zip(state).all(|(d, &q)| d.is_final(q));
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        if accepting(&state) {
            return Ok(true);
        }
        for i in 0..ds[0].letters.len() {
            let next: Vec<u32> = ds.iter().zip(&state).map(|(d, &q)| d.letters[i].apply(q)).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

fn check_shared_alphabet(ds: &[Dfa]) -> Result<()> {
    let Some(first) = ds.first() else {
        return Err(Error::Precondition(String::from("at least one automaton is required")));
    };
    if ds.iter().any(|d| d.letters.len() != first.letters.len()) {
        return Err(Error::Precondition(String::from("automata must share one alphabet")));
    }
    Ok(())
}

/// A directed graph given as an edge list; edges are sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDigraph {
    vertices: usize,
    edges: Vec<(u32, u32)>,
}

impl InputDigraph {
    pub fn new(vertices: usize, mut edges: Vec<(u32, u32)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::ZeroDegree);
        }
        for &(u, v) in &edges {
            for x in [u, v] {
                if x as usize >= vertices {
                    return Err(Error::PointOutOfRange { point: x, degree: vertices });
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(InputDigraph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
}

fn extend_fixing(a: &Transformation, extra: usize) -> Transformation {
    let mut map = a.as_slice().to_vec();
    let n = map.len();
    map.extend((n..n + extra).map(|p| p as u32));
    Transformation::from_vec_unchecked(map)
}

fn named(letter_names: &[Option<String>], extra: &[&str]) -> Vec<Option<String>> {
    let mut names = letter_names.to_vec();
    names.extend(extra.iter().map(|s| Some(String::from(*s))));
    names
}

/// Letters fixing a new point `n`, plus `b` (everything in `[n]` to the
/// initial state) and `c` (final states to the new point). With at least one
/// final state the result has a zero iff the language is nonempty.
///
/// Two corners escape that claim. With no final state, `b` is a right zero,
/// and a zero iff every letter fixes the initial state. If every letter fixes
/// a non-final initial state, `b` is a left zero although the language is
/// empty.
pub fn dfa_emptiness_to_zero(d: &Dfa) -> Result<GeneratorSet> {
    let n = d.states;
    let sink = n as u32;
    let mut gens: Vec<Transformation> = d.letters.iter().map(|a| extend_fixing(a, 1)).collect();
    let mut b = vec![d.initial; n];
    b.push(sink);
    gens.push(Transformation::from_vec_unchecked(b));
    let c: Vec<u32> = (0..=sink).map(|q| if q == sink || d.is_final(q) { sink } else { q }).collect();
    gens.push(Transformation::from_vec_unchecked(c));
    GeneratorSet::with_names(gens, named(&d.names, &["b", "c"]))
}

/// Points are pairs `(q, j)` of a state and a step counter `j ∈ [n]`, plus a
/// sink. Generator `a_{i,j}` applies letter `i` to a non-final state whose
/// counter is `j < n` and advances the counter; everything else goes to the
/// sink. `b` restarts final states at `(q₀, 1)`. Nilpotent iff the language
/// is empty. Emits `k·n + 1` generators on `n² + 1` points.
pub fn dfa_emptiness_to_nilpotent(d: &Dfa) -> Result<GeneratorSet> {
    if d.is_final(d.initial) {
        return Err(Error::Precondition(String::from("initial state must not be final")));
    }
    let n = d.states;
    let sink = (n * n) as u32;
    let point = |q: u32, j: usize| q * n as u32 + j as u32;
    let mut gens = Vec::with_capacity(d.letters.len() * n + 1);
    let mut names = Vec::with_capacity(gens.capacity());
    for (i, a) in d.letters.iter().enumerate() {
        for j in 0..n {
            let mut map = vec![sink; n * n + 1];
            if j + 1 < n {
                for q in (0..n as u32).filter(|&q| !d.is_final(q)) {
                    map[point(q, j) as usize] = point(a.apply(q), j + 1);
                }
            }
            gens.push(Transformation::from_vec_unchecked(map));
            let letter = d.names[i].clone().unwrap_or_else(|| alloc::format!("a{}", i + 1));
            names.push(Some(alloc::format!("{letter}_{}", j + 1)));
        }
    }
    let mut b = vec![sink; n * n + 1];
    for &f in &d.finals {
        for j in 0..n {
            b[point(f, j) as usize] = point(d.initial, 0);
        }
    }
    gens.push(Transformation::from_vec_unchecked(b));
    names.push(Some(String::from("b")));
    GeneratorSet::with_names(gens, names)
}

/// One generator per edge `(v, w)`: `v ↦ w`, every other point to a new
/// sink. Acyclic graphs give nilpotent semigroups; cyclic ones give
/// semigroups that are not R-trivial and have a non-central idempotent.
pub fn digraph_to_semigroup(g: &InputDigraph) -> Result<GeneratorSet> {
    if g.edges.is_empty() {
        return Err(Error::Precondition(String::from("graph must have at least one edge")));
    }
    let sink = g.vertices as u32;
    let gens = g
        .edges
        .iter()
        .map(|&(v, w)| {
            let mut map = vec![sink; g.vertices + 1];
            map[v as usize] = w;
            Transformation::from_vec_unchecked(map)
        })
        .collect();
    GeneratorSet::new(gens)
}

/// State layout shared by the two intersection constructions: the disjoint
/// union of all state sets, then a sink.
struct Union<'d> {
    ds: &'d [Dfa],
    offsets: Vec<u32>,
    sink: u32,
}

impl<'d> Union<'d> {
    fn new(ds: &'d [Dfa]) -> Result<Self> {
        check_shared_alphabet(ds)?;
        if let Some(i) = ds.iter().position(|d| d.finals.len() != 1) {
            return Err(Error::Precondition(alloc::format!("automaton {} must have exactly one final state", i + 1)));
        }
        let mut offsets = Vec::with_capacity(ds.len());
        let mut total = 0u32;
        for d in ds {
            offsets.push(total);
            total += d.states as u32;
        }
        Ok(Union { ds, offsets, sink: total })
    }

    fn degree(&self) -> usize {
        self.sink as usize + 1
    }

    fn letters(&self) -> Vec<Transformation> {
        (0..self.ds[0].letters.len())
            .map(|i| {
                let mut map = Vec::with_capacity(self.degree());
                for (d, &off) in self.ds.iter().zip(&self.offsets) {
                    map.extend(d.letters[i].as_slice().iter().map(|&q| q + off));
                }
                map.push(self.sink);
                Transformation::from_vec_unchecked(map)
            })
            .collect()
    }

    /// Each final state to its automaton's initial state, everything else to the sink.
    fn b(&self) -> Transformation {
        let mut map = vec![self.sink; self.degree()];
        for (d, &off) in self.ds.iter().zip(&self.offsets) {
            map[(d.finals[0] + off) as usize] = d.initial + off;
        }
        Transformation::from_vec_unchecked(map)
    }

    /// Every state to its automaton's initial state; the sink stays.
    fn c(&self) -> Transformation {
        let mut map = Vec::with_capacity(self.degree());
        for (d, &off) in self.ds.iter().zip(&self.offsets) {
            map.extend(core::iter::repeat(d.initial + off).take(d.states));
        }
        map.push(self.sink);
        Transformation::from_vec_unchecked(map)
    }

    fn names(&self, extra: &str) -> Vec<Option<String>> {
        named(&self.ds[0].names, &[extra])
    }
}

/// The letters plus `b`; returns the generators and the index of `b`, which
/// is regular iff some word is accepted by every automaton.
pub fn dfa_intersection_to_regular(ds: &[Dfa]) -> Result<(GeneratorSet, usize)> {
    let u = Union::new(ds)?;
    let mut gens = u.letters();
    let index = gens.len();
    gens.push(u.b());
    Ok((GeneratorSet::with_names(gens, u.names("b"))?, index))
}

/// The letters plus the reset `c`, and the target `b`, which has a weak
/// inverse in their semigroup iff some word is accepted by every automaton.
pub fn dfa_intersection_to_weak_inverse(ds: &[Dfa]) -> Result<(GeneratorSet, Transformation)> {
    let u = Union::new(ds)?;
    let mut gens = u.letters();
    gens.push(u.c());
    Ok((GeneratorSet::with_names(gens, u.names("c"))?, u.b()))
}
