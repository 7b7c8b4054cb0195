//! Checkers that reduce a property to reachability in the transformation
//! graph or in the action of `S` on small point tuples.
//!
//! Every "there is an element `s`" becomes a search for a nonempty word, so
//! all tuple searches here use `min_length = 1`.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fo_checks::is_commutative;
use crate::graph::{
    has_cycle, multi_tuple_reachability, transformation_graph, tuple_reachability, undirected_components, Digraph,
};
use crate::identity::idempotents_commute;
use crate::report::{Property, PropertyReport, Witness};
use crate::transformation::{GeneratorSet, Word};

fn uncollapsible_pair(gens: &GeneratorSet, cap: u64) -> Result<Option<Witness>> {
    let components = undirected_components(&transformation_graph(gens, None)?);
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for class in components.classes() {
        for (i, &p) in class.iter().enumerate() {
            for &q in &class[i + 1..] {
                pairs.push((p.min(q), p.max(q)));
            }
        }
    }
    pairs.sort_unstable();
    for (p, q) in pairs {
        if tuple_reachability(gens, &[p, q], |t| t[0] == t[1], 1, cap)?.is_none() {
            return Ok(Some(Witness::UncollapsiblePair { p, q }));
        }
    }
    Ok(None)
}

fn stuck_point(gens: &GeneratorSet, cap: u64) -> Result<Option<Witness>> {
    let mut fixed = alloc::vec![false; gens.degree()];
    for p in gens.fixed_points() {
        fixed[p as usize] = true;
    }
    for point in 0..gens.degree() as u32 {
        if tuple_reachability(gens, &[point], |t| fixed[t[0] as usize], 1, cap)?.is_none() {
            return Ok(Some(Witness::StuckPoint { point }));
        }
    }
    Ok(None)
}

/// A right zero exists iff any two points in one component of `Γ` can be
/// sent to a common point.
pub fn has_right_zero(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    let witness = uncollapsible_pair(gens, cap)?;
    Ok(PropertyReport::structural(Property::RightZero, witness.is_none(), witness))
}

/// A left zero exists iff every point can be sent into `Fix(S)`.
pub fn has_left_zero(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    let witness = stuck_point(gens, cap)?;
    Ok(PropertyReport::structural(Property::LeftZero, witness.is_none(), witness))
}

fn missing_zero(gens: &GeneratorSet, cap: u64) -> Result<Option<Witness>> {
    if let Some(w) = stuck_point(gens, cap)? {
        return Ok(Some(Witness::because("no left zero", w)));
    }
    Ok(uncollapsible_pair(gens, cap)?.map(|w| Witness::because("no right zero", w)))
}

pub fn has_zero(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    let witness = missing_zero(gens, cap)?;
    Ok(PropertyReport::structural(Property::Zero, witness.is_none(), witness))
}

/// `Γ` restricted to the points outside `Fix(S)`.
fn outside_fixed_graph(gens: &GeneratorSet) -> Result<Digraph> {
    let fixed = gens.fixed_points();
    let rest: Vec<u32> = (0..gens.degree() as u32).filter(|p| !fixed.contains(p)).collect();
    transformation_graph(gens, Some(&rest))
}

/// Least generator moving `p` to `q`, for each step of a closed walk.
fn trace_walk(gens: &GeneratorSet, points: &[u32]) -> Word {
    points
        .windows(2)
        .map(|w| {
            gens.generators()
                .iter()
                .position(|a| a.apply(w[0]) == w[1])
                .expect("walk follows edges of the transformation graph")
        })
        .collect()
}

fn cycle_witness(gens: &GeneratorSet, g: &Digraph, cycle: &[u32]) -> Witness {
    let points: Vec<u32> = cycle.iter().map(|&v| g.label(v)).collect();
    let word = trace_walk(gens, &points);
    Witness::Cycle { points, word }
}

/// Nilpotent iff there is a zero and `Γ` outside `Fix(S)` is acyclic
/// (self-loops included). TRUE carries the degree bound.
pub fn is_nilpotent(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    if let Some(w) = missing_zero(gens, cap)? {
        return Ok(PropertyReport::structural(
            Property::Nilpotent,
            false,
            Some(Witness::because("no zero element", w)),
        ));
    }
    let g = outside_fixed_graph(gens)?;
    if let Some(cycle) = has_cycle(&g, false) {
        let w = cycle_witness(gens, &g, &cycle);
        return Ok(PropertyReport::structural(
            Property::Nilpotent,
            false,
            Some(Witness::because("cycle outside the fixed points", w)),
        ));
    }
    let bound = longest_path(&g) + 1;
    Ok(PropertyReport::structural(Property::Nilpotent, true, Some(Witness::DegreeBound(bound))))
}

/// Number of edges on a longest path of an acyclic graph.
fn longest_path(g: &Digraph) -> usize {
    // memoised depth-first search; graph is acyclic
    const UNKNOWN: usize = usize::MAX;
    let mut depth = alloc::vec![UNKNOWN; g.len()];
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for root in 0..g.len() as u32 {
        if depth[root as usize] != UNKNOWN {
            continue;
        }
        stack.push((root, 0));
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let succ = g.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos];
                *pos += 1;
                if depth[w as usize] == UNKNOWN {
                    stack.push((w, 0));
                }
            } else {
                depth[v as usize] = succ.iter().map(|&w| depth[w as usize] + 1).max().unwrap_or(0);
                stack.pop();
            }
        }
    }
    depth.into_iter().max().unwrap_or(0)
}

/// One more than the longest path in `Γ` outside `Fix(S)`: every word that
/// long sends all points into `Fix(S)` and therefore equals the zero.
pub fn nilpotency_degree_upper_bound(gens: &GeneratorSet, cap: u64) -> Result<usize> {
    match is_nilpotent(gens, cap)?.witness {
        Some(Witness::DegreeBound(d)) => Ok(d),
        _ => Err(Error::Precondition(String::from("semigroup is not nilpotent"))),
    }
}

/// R-trivial iff every cycle of `Γ` is a self-loop.
pub fn is_r_trivial(gens: &GeneratorSet) -> Result<PropertyReport> {
    let g = transformation_graph(gens, None)?;
    let witness = has_cycle(&g, true).map(|cycle| cycle_witness(gens, &g, &cycle));
    Ok(PropertyReport::structural(Property::RTrivial, witness.is_none(), witness))
}

/// Some element identifies two distinct points of its own image: `p·s = u`,
/// `q·s = v`, `u ≠ v`, `u·s = v·s`.
fn image_collapse(gens: &GeneratorSet, cap: u64) -> Result<Option<Witness>> {
    let n = gens.degree() as u32;
    for u in 0..n {
        for v in (0..n).filter(|&v| v != u) {
            let mut sources = Vec::with_capacity((n * n) as usize);
            for p in 0..n {
                for q in 0..n {
                    sources.push(alloc::vec![p, q, u, v]);
                }
            }
            let found = multi_tuple_reachability(gens, &sources, |t| t[0] == u && t[1] == v && t[2] == t[3], 1, cap)?;
            if let Some((source, word)) = found {
                return Ok(Some(Witness::ImageCollapse { p: source[0], q: source[1], u, v, word }));
            }
        }
    }
    Ok(None)
}

/// Completely regular iff every element permutes its own image.
pub fn is_completely_regular(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    let witness = image_collapse(gens, cap)?;
    Ok(PropertyReport::structural(Property::CompletelyRegular, witness.is_none(), witness))
}

/// For commutative `S`, regular coincides with completely regular.
pub fn is_regular_commutative(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    if !is_commutative(gens).holds().unwrap_or(false) {
        return Err(Error::Precondition(String::from("semigroup is not commutative")));
    }
    Ok(is_completely_regular(gens, cap)?.renamed(Property::Regular))
}

/// Completely regular with commuting idempotents.
pub fn is_clifford(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    let cr = is_completely_regular(gens, cap)?;
    if cr.holds() == Some(false) {
        return Ok(cr.renamed(Property::Clifford));
    }
    Ok(idempotents_commute(gens, cap)?.renamed(Property::Clifford))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DEFAULT_STATE_CAP as CAP;

    fn gens(maps: &[&[u32]]) -> GeneratorSet {
        GeneratorSet::from_one_based(maps).unwrap()
    }

    fn holds(r: Result<PropertyReport>) -> bool {
        r.unwrap().holds().unwrap()
    }

    const CONSTANTS: &[&[u32]] = &[&[1, 1, 1], &[2, 2, 2]];
    const CYCLE: &[&[u32]] = &[&[2, 3, 1]];
    const NIL: &[&[u32]] = &[&[1, 1, 2]];

    #[test]
    fn zero_examples() {
        assert!(holds(has_right_zero(&gens(CONSTANTS), CAP)));
        let r = has_right_zero(&gens(CYCLE), CAP).unwrap();
        assert_eq!(r.witness, Some(Witness::UncollapsiblePair { p: 0, q: 1 }));
        assert!(holds(has_right_zero(&gens(NIL), CAP)));

        assert!(holds(has_left_zero(&gens(NIL), CAP)));
        assert!(!holds(has_left_zero(&gens(CONSTANTS), CAP)));
        assert!(holds(has_left_zero(&gens(&[&[1, 2, 3]]), CAP)));

        assert!(holds(has_zero(&gens(NIL), CAP)));
        assert!(!holds(has_zero(&gens(CONSTANTS), CAP)));
        assert!(!holds(has_zero(&gens(CYCLE), CAP)));
    }

    #[test]
    fn nilpotent_examples() {
        assert!(holds(is_nilpotent(&gens(NIL), CAP)));
        let r = is_nilpotent(&gens(CYCLE), CAP).unwrap();
        assert!(matches!(&r.witness, Some(Witness::Because { reason, .. }) if reason == "no zero element"));
        // S = {e} is trivially nilpotent: e is its own zero
        assert!(holds(is_nilpotent(&gens(&[&[1, 1, 3]]), CAP)));
        assert!(!holds(is_nilpotent(&gens(&[&[1, 1, 3], &[1, 1, 2]]), CAP)));
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(nilpotency_degree_upper_bound(&gens(NIL), CAP).unwrap(), 2);
        assert_eq!(nilpotency_degree_upper_bound(&gens(&[&[1, 1, 1]]), CAP).unwrap(), 1);
        assert_eq!(nilpotency_degree_upper_bound(&gens(&[&[1, 1, 2, 3]]), CAP).unwrap(), 3);
        assert!(matches!(nilpotency_degree_upper_bound(&gens(CYCLE), CAP), Err(Error::Precondition(_))));
    }

    #[test]
    fn r_trivial_examples() {
        assert!(holds(is_r_trivial(&gens(NIL))));
        let r = is_r_trivial(&gens(CYCLE)).unwrap();
        assert_eq!(r.witness, Some(Witness::Cycle { points: alloc::vec![0, 1, 2, 0], word: alloc::vec![0, 0, 0] }));
        assert!(holds(is_r_trivial(&gens(&[&[1, 1, 3]]))));
    }

    #[test]
    fn completely_regular_examples() {
        assert!(holds(is_completely_regular(&gens(CYCLE), CAP)));
        let r = is_completely_regular(&gens(NIL), CAP).unwrap();
        assert_eq!(r.witness, Some(Witness::ImageCollapse { p: 0, q: 2, u: 0, v: 1, word: alloc::vec![0] }));
        assert!(holds(is_completely_regular(&gens(CONSTANTS), CAP)));
    }

    #[test]
    fn regular_commutative_examples() {
        assert!(holds(is_regular_commutative(&gens(CYCLE), CAP)));
        assert!(!holds(is_regular_commutative(&gens(NIL), CAP)));
        assert!(matches!(is_regular_commutative(&gens(CONSTANTS), CAP), Err(Error::Precondition(_))));
    }

    #[test]
    fn clifford_examples() {
        assert!(holds(is_clifford(&gens(CYCLE), CAP)));
        assert!(!holds(is_clifford(&gens(CONSTANTS), CAP)));
        assert!(!holds(is_clifford(&gens(NIL), CAP)));
    }
}
