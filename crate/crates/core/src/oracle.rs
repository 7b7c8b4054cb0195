//! Brute-force ground truth: enumerate `S` and decide properties from their
//! definitions.
//!
//! Quantifiers of the form "for all `s ∈ S`" on the side that multiplies are
//! checked on generators only where that is equivalent by induction on word
//! length (e.g. `ℓs = ℓ` for all `s` iff `ℓa = ℓ` for every generator `a`).
//! Everything else is read off the full element list.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::identity::QuasiIdentity;
use crate::report::{Property, PropertyReport, Witness, WitnessElement};
use crate::transformation::{GeneratorSet, Transformation, Word};

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_CAP: usize = 200_000;

const ROOT: u32 = u32::MAX;

/// Lazy breadth-first walk of the right Cayley graph of `S`.
///
/// Elements come out in canonical order: by the length of their shortest
/// generator word, then by that word lexicographically.
pub struct ElementWalk<'a> {
    gens: &'a GeneratorSet,
    cap: usize,
    elements: Vec<Transformation>,
    parent: Vec<(u32, u32)>,
    index: HashMap<Transformation, u32>,
    right: Vec<Vec<u32>>,
    expanded: usize,
    yielded: usize,
}

impl<'a> ElementWalk<'a> {
    pub fn new(gens: &'a GeneratorSet, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Precondition(String::from("element cap must be at least 1")));
        }
        let mut walk = ElementWalk {
            gens,
            cap,
            elements: Vec::new(),
            parent: Vec::new(),
            index: HashMap::new(),
            right: Vec::new(),
            expanded: 0,
            yielded: 0,
        };
        for (i, g) in gens.generators().iter().enumerate() {
            walk.insert(g.clone(), ROOT, i as u32)?;
        }
        Ok(walk)
    }

    fn insert(&mut self, t: Transformation, parent: u32, generator: u32) -> Result<u32> {
        if let Some(&idx) = self.index.get(&t) {
            return Ok(idx);
        }
        if self.elements.len() >= self.cap {
            return Err(Error::ElementCapExceeded { cap: self.cap });
        }
        let idx = self.elements.len() as u32;
        self.index.insert(t.clone(), idx);
        self.elements.push(t);
        self.parent.push((parent, generator));
        Ok(idx)
    }

    fn expand_one(&mut self) -> Result<bool> {
        if self.expanded >= self.elements.len() {
            return Ok(false);
        }
        let e = self.expanded;
        let mut row = Vec::with_capacity(self.gens.len());
        for (j, g) in self.gens.generators().iter().enumerate() {
            let product = self.elements[e].then(g);
            row.push(self.insert(product, e as u32, j as u32)?);
        }
        self.right.push(row);
        self.expanded += 1;
        Ok(true)
    }

    /// Index of the next element in canonical order, or `None` once `S` is exhausted.
    pub fn next_index(&mut self) -> Result<Option<usize>> {
        while self.yielded >= self.elements.len() {
            if !self.expand_one()? {
                return Ok(None);
            }
        }
        self.yielded += 1;
        Ok(Some(self.yielded - 1))
    }

    pub fn element(&self, idx: usize) -> &Transformation {
        &self.elements[idx]
    }

    pub fn word(&self, idx: usize) -> Word {
        word_from_parents(&self.parent, idx)
    }

    /// Runs the walk to completion.
    pub fn finish(mut self) -> Result<ElementTable> {
        while self.expand_one()? {}
        Ok(ElementTable {
            gens: self.gens.clone(),
            elements: self.elements,
            parent: self.parent,
            index: self.index,
            right: self.right,
        })
    }
}

fn word_from_parents(parent: &[(u32, u32)], mut idx: usize) -> Word {
    let mut word = Vec::new();
    loop {
        let (p, g) = parent[idx];
        word.push(g as usize);
        if p == ROOT {
            break;
        }
        idx = p as usize;
    }
    word.reverse();
    word
}

/// All elements of `S` with canonical words and the right Cayley table.
#[derive(Debug, Clone)]
pub struct ElementTable {
    gens: GeneratorSet,
    elements: Vec<Transformation>,
    parent: Vec<(u32, u32)>,
    index: HashMap<Transformation, u32>,
    right: Vec<Vec<u32>>,
}

/// Enumerates `S` breadth-first by right multiplication.
pub fn enumerate(gens: &GeneratorSet, cap: usize) -> Result<ElementTable> {
    ElementWalk::new(gens, cap)?.finish()
}

impl ElementTable {
    pub fn gens(&self) -> &GeneratorSet {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Transformation {
        &self.elements[idx]
    }

    pub fn word(&self, idx: usize) -> Word {
        word_from_parents(&self.parent, idx)
    }

    pub fn witness(&self, idx: usize) -> WitnessElement {
        WitnessElement { word: self.word(idx), element: self.elements[idx].clone() }
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).map(|&i| i as usize)
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.index.contains_key(t)
    }

    /// Index of `element(idx) · a_generator`.
    pub fn right_mul(&self, idx: usize, generator: usize) -> usize {
        self.right[idx][generator] as usize
    }

    /// Index of `element(i) · element(j)`.
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.elements[i].then(&self.elements[j])).expect("S is closed under multiplication")
    }

    /// Index of generator `j` as an element.
    pub fn generator_index(&self, j: usize) -> usize {
        self.index_of(self.gens.get(j)).expect("generators are elements")
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.elements[i].is_idempotent()).collect()
    }
}

type Check = (bool, Option<Witness>);

fn left_zeros(t: &ElementTable) -> Vec<usize> {
    (0..t.len()).filter(|&l| (0..t.gens.len()).all(|j| t.right_mul(l, j) == l)).collect()
}

fn right_zeros(t: &ElementTable) -> Vec<usize> {
    (0..t.len()).filter(|&r| t.gens.generators().iter().all(|a| a.then(&t.elements[r]) == t.elements[r])).collect()
}

fn check_left_zero(t: &ElementTable) -> Check {
    match left_zeros(t).first() {
        Some(&l) => (true, Some(Witness::Element(t.witness(l)))),
        None => (false, None),
    }
}

fn check_right_zero(t: &ElementTable) -> Check {
    match right_zeros(t).first() {
        Some(&r) => (true, Some(Witness::Element(t.witness(r)))),
        None => (false, None),
    }
}

fn check_zero(t: &ElementTable) -> Check {
    let rights = right_zeros(t);
    match left_zeros(t).into_iter().find(|l| rights.contains(l)) {
        Some(z) => (true, Some(Witness::Element(t.witness(z)))),
        None => (false, None),
    }
}

/// `S^{d+1}`: everything reachable from `S^d` along at least one edge of the
/// right Cayley graph.
fn next_power(t: &ElementTable, current: &[bool]) -> Vec<bool> {
    let mut next = vec![false; t.len()];
    let mut stack = Vec::new();
    for x in (0..t.len()).filter(|&x| current[x]) {
        for j in 0..t.gens.len() {
            let y = t.right_mul(x, j);
            if !next[y] {
                next[y] = true;
                stack.push(y);
            }
        }
    }
    while let Some(x) = stack.pop() {
        for j in 0..t.gens.len() {
            let y = t.right_mul(x, j);
            if !next[y] {
                next[y] = true;
                stack.push(y);
            }
        }
    }
    next
}

/// Exact nilpotency degree, or `None` if the chain `S ⊇ S² ⊇ …` stabilises
/// above a single element.
pub fn nilpotency_degree(t: &ElementTable) -> Option<usize> {
    let mut current = vec![true; t.len()];
    let mut size = t.len();
    let mut degree = 1;
    while size > 1 {
        let next = next_power(t, &current);
        let next_size = next.iter().filter(|&&b| b).count();
        if next_size == size {
            return None;
        }
        current = next;
        size = next_size;
        degree += 1;
    }
    Some(degree)
}

fn check_nilpotent(t: &ElementTable) -> Check {
    if let Some(d) = nilpotency_degree(t) {
        return (true, Some(Witness::Degree(d)));
    }
    // recompute the stable power for the witness
    let mut current = vec![true; t.len()];
    loop {
        let next = next_power(t, &current);
        if next == current {
            break;
        }
        current = next;
    }
    let mut members = (0..t.len()).filter(|&i| current[i]);
    let a = members.next().expect("stable power is nonempty");
    let b = members.next().expect("stable power has two elements");
    (
        false,
        Some(Witness::because("powers of S stabilise above one element", Witness::Pair(t.witness(a), t.witness(b)))),
    )
}

fn check_commutative(t: &ElementTable) -> Check {
    for s in 0..t.len() {
        for (j, a) in t.gens.generators().iter().enumerate() {
            if t.elements[s].then(a) != a.then(&t.elements[s]) {
                return (false, Some(Witness::Pair(t.witness(s), t.witness(t.generator_index(j)))));
            }
        }
    }
    (true, None)
}

fn check_band(t: &ElementTable) -> Check {
    match (0..t.len()).find(|&i| !t.elements[i].is_idempotent()) {
        Some(i) => (false, Some(Witness::Element(t.witness(i)))),
        None => (true, None),
    }
}

fn check_semilattice(t: &ElementTable) -> Check {
    let band = check_band(t);
    if !band.0 {
        return band;
    }
    check_commutative(t)
}

fn check_group(t: &ElementTable) -> Check {
    let idem = t.idempotents();
    if idem.len() != 1 {
        return (
            false,
            Some(Witness::because("more than one idempotent", Witness::Pair(t.witness(idem[0]), t.witness(idem[1])))),
        );
    }
    let e = idem[0];
    let unit = &t.elements[e];
    for (j, a) in t.gens.generators().iter().enumerate() {
        if unit.then(a) != *a || a.then(unit) != *a {
            return (
                false,
                Some(Witness::because(
                    "the idempotent is not an identity",
                    Witness::Pair(t.witness(e), t.witness(t.generator_index(j))),
                )),
            );
        }
    }
    // every s has s^m = e for some m, so s^(m-1) (or e) inverts it
    for s in 0..t.len() {
        if t.elements[s].omega_power() != *unit {
            return (false, Some(Witness::because("element without inverse", Witness::Element(t.witness(s)))));
        }
    }
    (true, Some(Witness::Element(t.witness(e))))
}

fn check_orthodox(t: &ElementTable) -> Check {
    let idem = t.idempotents();
    for &e in &idem {
        for &f in &idem {
            if !t.elements[e].then(&t.elements[f]).is_idempotent() {
                return (false, Some(Witness::Pair(t.witness(e), t.witness(f))));
            }
        }
    }
    (true, None)
}

fn check_idempotents_commute(t: &ElementTable) -> Check {
    let idem = t.idempotents();
    for (x, &e) in idem.iter().enumerate() {
        for &f in &idem[x + 1..] {
            if t.elements[e].then(&t.elements[f]) != t.elements[f].then(&t.elements[e]) {
                return (false, Some(Witness::Pair(t.witness(e), t.witness(f))));
            }
        }
    }
    (true, None)
}

fn check_idempotents_central(t: &ElementTable) -> Check {
    for e in t.idempotents() {
        for (j, a) in t.gens.generators().iter().enumerate() {
            if t.elements[e].then(a) != a.then(&t.elements[e]) {
                return (false, Some(Witness::Pair(t.witness(e), t.witness(t.generator_index(j)))));
            }
        }
    }
    (true, None)
}

/// `s` lies in a subgroup iff `s^(ω+1) = s`.
fn in_subgroup(s: &Transformation) -> bool {
    s.omega_power().then(s) == *s
}

fn check_completely_regular(t: &ElementTable) -> Check {
    match (0..t.len()).find(|&i| !in_subgroup(&t.elements[i])) {
        Some(i) => (false, Some(Witness::Element(t.witness(i)))),
        None => (true, None),
    }
}

fn check_clifford(t: &ElementTable) -> Check {
    let cr = check_completely_regular(t);
    if !cr.0 {
        return cr;
    }
    check_idempotents_commute(t)
}

/// Distinct restrictions `t|_R` of the elements of `S` to a point list `R`.
struct Restrictions<'t> {
    table: &'t ElementTable,
    cache: HashMap<Vec<u32>, Vec<Vec<u32>>>,
}

impl<'t> Restrictions<'t> {
    fn new(table: &'t ElementTable) -> Self {
        Restrictions { table, cache: HashMap::new() }
    }

    fn of(&mut self, domain: &[u32]) -> &[Vec<u32>] {
        let table = self.table;
        self.cache.entry(domain.to_vec()).or_insert_with(|| {
            let mut seen = HashSet::new();
            let mut out = Vec::new();
            for t in table.elements() {
                let r: Vec<u32> = domain.iter().map(|&p| t.apply(p)).collect();
                if seen.insert(r.clone()) {
                    out.push(r);
                }
            }
            out
        })
    }
}

/// Is there `t ∈ S` with `sts = s`? Only `t` on `[n]s` matters: `sts = s`
/// iff `(y·t)·s = y` for every `y` in the image of `s`.
fn is_regular_element(s: &Transformation, restrictions: &mut Restrictions<'_>) -> bool {
    let image = s.image();
    restrictions.of(&image).iter().any(|r| r.iter().zip(&image).all(|(&ty, &y)| s.apply(ty) == y))
}

fn check_regular(t: &ElementTable) -> Check {
    let mut restrictions = Restrictions::new(t);
    for i in 0..t.len() {
        if !is_regular_element(&t.elements[i], &mut restrictions) {
            return (false, Some(Witness::Element(t.witness(i))));
        }
    }
    (true, None)
}

/// Indices of all `t` with `sts = s` and `tst = t`, stopping after `limit`.
pub fn inverses_of(table: &ElementTable, s: &Transformation, limit: usize) -> Vec<usize> {
    let mut found = Vec::new();
    for (i, t) in table.elements().iter().enumerate() {
        let st = s.then(t);
        if st.then(s) == *s && t.then(s).then(t) == *t {
            found.push(i);
            if found.len() >= limit {
                break;
            }
        }
    }
    found
}

fn check_inverse(t: &ElementTable) -> Check {
    for s in 0..t.len() {
        let inv = inverses_of(t, &t.elements[s], 2);
        match inv.len() {
            0 => return (false, Some(Witness::because("no inverse", Witness::Element(t.witness(s))))),
            1 => {}
            _ => {
                return (
                    false,
                    Some(Witness::because(
                        "two inverses",
                        Witness::Elements(vec![t.witness(s), t.witness(inv[0]), t.witness(inv[1])]),
                    )),
                )
            }
        }
    }
    (true, None)
}

/// Strongly connected components of the right Cayley graph (Tarjan, iterative).
/// `sS¹ = tS¹` exactly when `s` and `t` share a component.
fn cayley_sccs(t: &ElementTable) -> Vec<u32> {
    let n = t.len();
    let k = t.gens.len();
    const UNSEEN: u32 = u32::MAX;
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0u32;
    let mut comps = 0u32;
    for root in 0..n {
        if order[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut j)) = call.last_mut() {
            if *j < k {
                let w = t.right_mul(v, *j);
                *j += 1;
                if order[w] == UNSEEN {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == order[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = comps;
                        if w == v {
                            break;
                        }
                    }
                    comps += 1;
                }
            }
        }
    }
    comp
}

fn check_r_trivial(t: &ElementTable) -> Check {
    let comp = cayley_sccs(t);
    let mut first_in: HashMap<u32, usize> = HashMap::new();
    for (i, &c) in comp.iter().enumerate() {
        if let Some(&j) = first_in.get(&c) {
            return (false, Some(Witness::Pair(t.witness(j), t.witness(i))));
        }
        first_in.insert(c, i);
    }
    (true, None)
}

fn check_aperiodic(t: &ElementTable) -> Check {
    for i in 0..t.len() {
        let omega = t.elements[i].omega_power();
        if omega.then(&t.elements[i]) != omega {
            return (false, Some(Witness::Element(t.witness(i))));
        }
    }
    (true, None)
}

/// Every `ℓ ∈ S` with `ℓs = s` for all `s ∈ S`, sorted by map.
pub fn left_identities(t: &ElementTable) -> Vec<usize> {
    let gens: Vec<usize> = (0..t.gens.len()).map(|j| t.generator_index(j)).collect();
    let mut out: Vec<usize> =
        (0..t.len()).filter(|&l| (0..t.gens.len()).all(|j| t.right_mul(l, j) == gens[j])).collect();
    out.sort_by(|&a, &b| t.elements[a].cmp(&t.elements[b]));
    out
}

/// Every `r ∈ S` with `sr = s` for all `s ∈ S`, sorted by map.
pub fn right_identities(t: &ElementTable) -> Vec<usize> {
    let mut out: Vec<usize> =
        (0..t.len()).filter(|&r| t.gens.generators().iter().all(|a| a.then(&t.elements[r]) == *a)).collect();
    out.sort_by(|&a, &b| t.elements[a].cmp(&t.elements[b]));
    out
}

fn identity_list(t: &ElementTable, list: Vec<usize>) -> Check {
    let witnesses: Vec<WitnessElement> = list.iter().map(|&i| t.witness(i)).collect();
    (!witnesses.is_empty(), Some(Witness::Elements(witnesses)))
}

/// Decides `property` directly from its definition on the enumerated `S`.
pub fn definitional_check(table: &ElementTable, property: Property) -> PropertyReport {
    let (holds, witness) = match property {
        Property::LeftZero => check_left_zero(table),
        Property::RightZero => check_right_zero(table),
        Property::Zero => check_zero(table),
        Property::Nilpotent => check_nilpotent(table),
        Property::Commutative => check_commutative(table),
        Property::Band => check_band(table),
        Property::Semilattice => check_semilattice(table),
        Property::Group => check_group(table),
        Property::Orthodox => check_orthodox(table),
        Property::IdempotentsCommute => check_idempotents_commute(table),
        Property::IdempotentsCentral => check_idempotents_central(table),
        Property::CompletelyRegular => check_completely_regular(table),
        Property::Clifford => check_clifford(table),
        Property::Regular => check_regular(table),
        Property::Inverse => check_inverse(table),
        Property::RTrivial => check_r_trivial(table),
        Property::Aperiodic => check_aperiodic(table),
        Property::LeftIdentities => identity_list(table, left_identities(table)),
        Property::RightIdentities => identity_list(table, right_identities(table)),
    };
    PropertyReport::oracle(property, holds, witness)
}

/// [`definitional_check`] by property name.
pub fn definitional_check_named(table: &ElementTable, name: &str) -> Result<PropertyReport> {
    Ok(definitional_check(table, name.parse()?))
}

/// Evaluates a quasi-identity under every assignment of elements to its
/// variables (idempotents only for constrained variables).
pub fn models_brute_force(table: &ElementTable, qid: &QuasiIdentity) -> PropertyReport {
    let idem = table.idempotents();
    let all: Vec<usize> = (0..table.len()).collect();
    let m = qid.var_count();
    let occurs: Vec<bool> = (0..m).map(|i| qid.occurs(i)).collect();
    let domains: Vec<&[usize]> = (0..m)
        .map(|i| {
            let dom: &[usize] = if qid.is_idempotent_var(i) { &idem } else { &all };
            if occurs[i] {
                dom
            } else {
                &dom[..1]
            }
        })
        .collect();
    let mut choice = vec![0usize; m];
    let evaluate = |word: &[usize], choice: &[usize]| -> Transformation {
        let mut it = word.iter().map(|&x| &table.elements[domains[x][choice[x]]]);
        let first = it.next().expect("identity sides are nonempty").clone();
        it.fold(first, |acc, s| acc.then(s))
    };
    loop {
        if evaluate(qid.lhs(), &choice) != evaluate(qid.rhs(), &choice) {
            let values = (0..m).map(|i| table.witness(domains[i][choice[i]])).collect();
            return PropertyReport {
                property: alloc::format!("{qid}"),
                verdict: crate::report::Verdict::False,
                witness: Some(Witness::Assignment { identity: qid.clone(), values }),
                engine: crate::report::Engine::Oracle,
            };
        }
        // odometer over the variables, last variable fastest
        let mut pos = m;
        loop {
            if pos == 0 {
                return PropertyReport {
                    property: alloc::format!("{qid}"),
                    verdict: crate::report::Verdict::True,
                    witness: None,
                    engine: crate::report::Engine::Oracle,
                };
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < domains[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn table(maps: &[&[u32]]) -> ElementTable {
        enumerate(&GeneratorSet::from_one_based(maps).unwrap(), 1000).unwrap()
    }

    fn t(images: &[u32]) -> Transformation {
        Transformation::from_one_based(images).unwrap()
    }

    fn verdict(maps: &[&[u32]], p: Property) -> bool {
        definitional_check(&table(maps), p).holds().unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let s = table(&[&[2, 3, 1]]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(&Transformation::identity(3)));
        assert_eq!(s.word(s.index_of(&t(&[3, 1, 2])).unwrap()), vec![0, 0]);

        let s = table(&[&[1, 1, 2]]);
        assert_eq!(s.elements(), &[t(&[1, 1, 2]), t(&[1, 1, 1])]);

        assert_eq!(table(&[&[1, 1, 1], &[2, 2, 2]]).len(), 2);
    }

    #[test]
    fn enumerate_respects_cap() {
        let gens = GeneratorSet::from_one_based(&[&[2, 3, 4, 1], &[2, 1, 3, 4]]).unwrap();
        assert_eq!(enumerate(&gens, 23).unwrap_err(), Error::ElementCapExceeded { cap: 23 });
        assert_eq!(enumerate(&gens, 24).unwrap().len(), 24);
    }

    #[test]
    fn table_invariants() {
        let s = table(&[&[2, 3, 1, 1], &[1, 1, 3, 4]]);
        for i in 0..s.len() {
            assert_eq!(s.gens().evaluate(&s.word(i)), *s.element(i));
            for j in 0..s.gens().len() {
                assert_eq!(*s.element(s.right_mul(i, j)), s.element(i).then(s.gens().get(j)));
            }
        }
        let distinct: HashSet<_> = s.elements().iter().collect();
        assert_eq!(distinct.len(), s.len());
    }

    #[test]
    fn definitional_examples() {
        assert!(verdict(&[&[2, 3, 1]], Property::Group));
        assert!(verdict(&[&[1, 1, 1], &[2, 2, 2]], Property::RightZero));
        assert!(!verdict(&[&[1, 1, 1], &[2, 2, 2]], Property::LeftZero));
        assert!(verdict(&[&[1, 1, 2]], Property::Nilpotent));
        assert!(!verdict(&[&[2, 3, 1]], Property::Aperiodic));
    }

    #[test]
    fn nilpotency_degrees() {
        assert_eq!(nilpotency_degree(&table(&[&[1, 1, 2]])), Some(2));
        assert_eq!(nilpotency_degree(&table(&[&[1, 1, 1]])), Some(1));
        assert_eq!(nilpotency_degree(&table(&[&[1, 1, 2, 3]])), Some(3));
        assert_eq!(nilpotency_degree(&table(&[&[2, 3, 1]])), None);
    }

    #[test]
    fn zero_is_unique_and_left_right_zeros_coincide() {
        let s = table(&[&[1, 1, 2], &[1, 1, 1]]);
        assert_eq!(left_zeros(&s), right_zeros(&s));
        assert_eq!(left_zeros(&s).len(), 1);
    }

    #[test]
    fn unknown_property_name_is_an_error() {
        let s = table(&[&[2, 3, 1]]);
        assert!(matches!(definitional_check_named(&s, "frobnicate"), Err(Error::UnknownName(_))));
        assert_eq!(definitional_check_named(&s, "group").unwrap().verdict, Verdict::True);
    }

    /// `⟨s⟩` is a group, checked by the axioms on the set of powers.
    fn powers_form_group(s: &Transformation) -> bool {
        let mut powers = vec![s.clone()];
        loop {
            let next = powers.last().unwrap().then(s);
            if powers.contains(&next) {
                break;
            }
            powers.push(next);
        }
        let ids: Vec<&Transformation> =
            powers.iter().filter(|e| powers.iter().all(|x| e.then(x) == *x && x.then(e) == *x)).collect();
        let Some(e) = ids.first() else { return false };
        powers.iter().all(|x| powers.iter().any(|y| x.then(y) == **e))
    }

    #[test]
    fn subgroup_membership_matches_explicit_search() {
        for code in 0..27u32 {
            let s = Transformation::new(vec![code % 3, (code / 3) % 3, code / 9]).unwrap();
            assert_eq!(in_subgroup(&s), powers_form_group(&s), "{s}");
        }
    }

    #[test]
    fn identity_lists() {
        let s = table(&[&[1, 1, 1], &[2, 2, 2]]);
        assert_eq!(left_identities(&s).len(), 2);
        assert!(right_identities(&s).is_empty());
        let s = table(&[&[2, 3, 1]]);
        assert_eq!(right_identities(&s), vec![s.index_of(&Transformation::identity(3)).unwrap()]);
    }

    #[test]
    fn r_trivial_via_cayley_sccs() {
        assert!(verdict(&[&[1, 1, 2]], Property::RTrivial));
        assert!(!verdict(&[&[2, 3, 1]], Property::RTrivial));
        assert!(verdict(&[&[1, 1, 3]], Property::RTrivial));
    }
}
