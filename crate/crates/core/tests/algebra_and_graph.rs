mod common;

use common::{all_transformations, generator_set, gens, transformation};
use proptest::prelude::*;
use transemi_core::graph::{
    has_cycle, multi_tuple_reachability, transformation_graph, tuple_reachability, Digraph, DEFAULT_STATE_CAP,
};
use transemi_core::transformation::{image_action, quotient_action};
use transemi_core::{kernel, GeneratorSet, Transformation};

fn triple() -> impl Strategy<Value = (Transformation, Transformation, Transformation)> {
    (1..=6usize).prop_flat_map(|n| (transformation(n), transformation(n), transformation(n)))
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
    }

    #[test]
    fn rank_of_product_is_bounded((a, b, _) in triple()) {
        prop_assert!(a.then(&b).rank() <= a.rank().min(b.rank()));
    }

    #[test]
    fn kernel_of_pair_is_intersection((a, b, _) in triple()) {
        let both = kernel(&[a.clone(), b.clone()]).unwrap();
        let ka = kernel(&[a]).unwrap();
        let kb = kernel(&[b]).unwrap();
        let n = ka.degree() as u32;
        for p in 0..n {
            for q in 0..n {
                prop_assert_eq!(both.same_class(p, q), ka.same_class(p, q) && kb.same_class(p, q));
            }
        }
    }

    #[test]
    fn idempotent_power_exponent_is_minimal((a, _, _) in triple()) {
        let m = a.idempotent_power_exponent();
        prop_assert!(a.pow(m).is_idempotent());
        for smaller in 1..m {
            prop_assert!(!a.pow(smaller).is_idempotent());
        }
    }

    #[test]
    fn induced_actions_are_homomorphic(g in generator_set(6, 3), word in prop::collection::vec(0usize..3, 1..6)) {
        let word: Vec<usize> = word.into_iter().map(|i| i % g.len()).collect();
        let q = quotient_action(&g).unwrap();
        let s = g.evaluate(&word);
        let s_bar = q.action.evaluate(&word);
        for p in 0..g.degree() as u32 {
            prop_assert_eq!(q.partition.class_of(s.apply(p)), s_bar.apply(q.partition.class_of(p)));
        }
        let im = image_action(&g).unwrap();
        let s_tilde = im.action.evaluate(&word);
        for (i, &p) in im.points.iter().enumerate() {
            prop_assert_eq!(im.points[s_tilde.apply(i as u32) as usize], s.apply(p));
        }
    }

    #[test]
    fn strict_cycle_is_tolerant_cycle_or_self_loop(edges in prop::collection::vec((0u32..5, 0u32..5), 0..10)) {
        let g = Digraph::from_edges(5, edges).unwrap();
        let strict = has_cycle(&g, false).is_some();
        let tolerant = has_cycle(&g, true).is_some();
        prop_assert_eq!(strict, tolerant || g.has_self_loop());
        if let Some(walk) = has_cycle(&g, true) {
            prop_assert!(walk.windows(2).all(|w| g.successors(w[0]).contains(&w[1])));
            prop_assert!(walk.windows(2).any(|w| w[0] != w[1]));
            prop_assert_eq!(walk.first(), walk.last());
        }
    }

    #[test]
    fn tuple_witness_words_replay(g in generator_set(4, 3), a in 0u32..4, b in 0u32..4, min in 0usize..2) {
        let n = g.degree() as u32;
        let start = [a % n, b % n];
        if let Some(w) = tuple_reachability(&g, &start, |t| t[0] == t[1], min, DEFAULT_STATE_CAP).unwrap() {
            prop_assert!(w.len() >= min);
            prop_assert_eq!(g.apply_word(start[0], &w), g.apply_word(start[1], &w));
        }
    }

    #[test]
    fn tuple_witness_is_shortest_then_least(g in generator_set(4, 3), a in 0u32..4, b in 0u32..4) {
        let n = g.degree() as u32;
        let start = [a % n, b % n];
        let target = |t: &[u32]| t[0] == t[1];
        let found = tuple_reachability(&g, &start, target, 1, DEFAULT_STATE_CAP).unwrap();
        // independent search: all words by length, lexicographically
        let brute = brute_force_word(&g, |w| !w.is_empty() && g.apply_word(start[0], w) == g.apply_word(start[1], w), 8);
        match (found, brute) {
            (Some(w), Some(b)) => prop_assert_eq!(w, b),
            (None, Some(b)) => prop_assert!(false, "missed word {:?}", b),
            (Some(w), None) => prop_assert!(w.len() > 8),
            (None, None) => {}
        }
    }

    #[test]
    fn multi_source_picks_least_source(g in generator_set(4, 2)) {
        let n = g.degree() as u32;
        let sources: Vec<Vec<u32>> = (0..n).flat_map(|p| (0..n).map(move |q| vec![p, q])).filter(|s| s[0] != s[1]).collect();
        let found = multi_tuple_reachability(&g, &sources, |t| t[0] == t[1], 1, DEFAULT_STATE_CAP).unwrap();
        let mut best: Option<(usize, Vec<u32>, Vec<usize>)> = None;
        for s in &sources {
            if let Some(o) = tuple_reachability(&g, s, |t| t[0] == t[1], 1, DEFAULT_STATE_CAP).unwrap() {
                let cand = (o.len(), s.clone(), o);
                if best.as_ref().map_or(true, |b| (cand.0, &cand.1) < (b.0, &b.1)) {
                    best = Some(cand);
                }
            }
        }
        prop_assert_eq!(found, best.map(|(_, s, w)| (s, w)));
    }
}

/// First word in shortlex order, up to `max_len`, satisfying `accept`.
fn brute_force_word(g: &GeneratorSet, accept: impl Fn(&[usize]) -> bool, max_len: usize) -> Option<Vec<usize>> {
    let k = g.len();
    for len in 0..=max_len {
        let total = k.pow(len as u32);
        for code in 0..total {
            let mut w = vec![0; len];
            let mut c = code;
            for slot in w.iter_mut().rev() {
                *slot = c % k;
                c /= k;
            }
            if accept(&w) {
                return Some(w);
            }
        }
    }
    None
}

#[test]
fn restricted_graph_drops_outside_edges() {
    let g = transformation_graph(&gens(&[&[1, 1, 2]]), Some(&[1, 2])).unwrap();
    let edges: Vec<(u32, u32)> = g.edges().map(|(u, v)| (g.label(u), g.label(v))).collect();
    assert_eq!(edges, vec![(2, 1)]);
}

#[test]
fn exponent_and_powers_agree_on_all_of_t4() {
    for s in all_transformations(4) {
        let m = s.idempotent_power_exponent();
        let mut power = s.clone();
        let mut first = 1;
        while !power.is_idempotent() {
            power = power.then(&s);
            first += 1;
        }
        assert_eq!(m, first, "{s}");
    }
}
