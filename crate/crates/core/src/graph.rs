//! Graph substrate for the structural checkers.
//!
//! The nondeterministic "guess a generator" walks of the logspace algorithms
//! become breadth-first searches over the componentwise action of `S` on
//! `d`-tuples of points. The search visits generators in ascending order, so
//! the first word found for any state is the shortest, and among the
//! shortest the lexicographically least.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::transformation::{GeneratorSet, Partition, Word};

/// Default budget on the tuple state space `n^d`.
pub const DEFAULT_STATE_CAP: u64 = 100_000_000;

/// A directed graph on vertices `0..len`, each labelled with the point it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    labels: Vec<u32>,
    succ: Vec<Vec<u32>>,
}

impl Digraph {
    /// Builds a graph from an edge list over `0..vertices`; duplicate edges
    /// are merged and successor lists sorted.
    pub fn from_edges(vertices: usize, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut succ = vec![Vec::new(); vertices];
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= vertices {
                    return Err(Error::PointOutOfRange { point: x, degree: vertices });
                }
            }
            succ[u as usize].push(v);
        }
        for list in &mut succ {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Digraph { labels: (0..vertices as u32).collect(), succ })
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn label(&self, vertex: u32) -> u32 {
        self.labels[vertex as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn successors(&self, vertex: u32) -> &[u32] {
        &self.succ[vertex as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.succ.iter().enumerate().flat_map(|(u, list)| list.iter().map(move |&v| (u as u32, v)))
    }

    pub fn has_self_loop(&self) -> bool {
        self.edges().any(|(u, v)| u == v)
    }
}

/// `Γ(A, Q)`: an edge `p → q` whenever some generator maps `p` to `q`.
///
/// With `restrict`, the vertices are exactly the listed points (in ascending
/// order) and edges leaving the restriction are dropped.
pub fn transformation_graph(gens: &GeneratorSet, restrict: Option<&[u32]>) -> Result<Digraph> {
    let n = gens.degree();
    let mut labels: Vec<u32> = match restrict {
        Some(points) => {
            for &p in points {
                gens.check_point(p)?;
            }
            points.to_vec()
        }
        None => (0..n as u32).collect(),
    };
    labels.sort_unstable();
    labels.dedup();
    let mut vertex_of = vec![u32::MAX; n];
    for (i, &p) in labels.iter().enumerate() {
        vertex_of[p as usize] = i as u32;
    }
    let mut succ = vec![Vec::new(); labels.len()];
    for (i, &p) in labels.iter().enumerate() {
        for g in gens.generators() {
            let w = vertex_of[g.apply(p) as usize];
            if w != u32::MAX {
                succ[i].push(w);
            }
        }
        succ[i].sort_unstable();
        succ[i].dedup();
    }
    Ok(Digraph { labels, succ })
}

/// Connected components with edges read as undirected, as a partition of
/// vertex indices.
pub fn undirected_components(g: &Digraph) -> Partition {
    let mut parent: Vec<u32> = (0..g.len() as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi as usize] = lo;
        }
    }
    let roots: Vec<u32> = (0..g.len() as u32).map(|v| find(&mut parent, v)).collect();
    Partition::from_keys(roots)
}

/// Finds a directed cycle, returned as a closed vertex walk `v_0 … v_m = v_0`.
///
/// In strict mode self-loops are cycles; with `ignore_self_loops` only
/// cycles of length ≥ 2 count.
pub fn has_cycle(g: &Digraph, ignore_self_loops: bool) -> Option<Vec<u32>> {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; g.len()];
    let mut path: Vec<u32> = Vec::new();
    // (vertex, next successor position)
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for root in 0..g.len() as u32 {
        if color[root as usize] != WHITE {
            continue;
        }
        color[root as usize] = GRAY;
        stack.push((root, 0));
        path.push(root);
        while let Some(&mut (u, ref mut pos)) = stack.last_mut() {
            let succ = g.successors(u);
            if *pos < succ.len() {
                let v = succ[*pos];
                *pos += 1;
                if v == u && ignore_self_loops {
                    continue;
                }
                match color[v as usize] {
                    WHITE => {
                        color[v as usize] = GRAY;
                        stack.push((v, 0));
                        path.push(v);
                    }
                    GRAY => {
                        let start = path.iter().position(|&x| x == v).expect("gray vertex on path");
                        let mut cycle = path[start..].to_vec();
                        cycle.push(v);
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[u as usize] = BLACK;
                stack.pop();
                path.pop();
            }
        }
    }
    None
}

/// Mixed-radix encoding of `d`-tuples over `[n]`.
#[derive(Debug, Clone, Copy)]
struct TupleCodec {
    n: u64,
    d: usize,
}

impl TupleCodec {
    fn new(n: usize, d: usize, cap: u64) -> Result<Self> {
        let states = (n as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if states > cap as u128 {
            return Err(Error::StateBudgetExceeded { states, cap });
        }
        Ok(TupleCodec { n: n as u64, d })
    }

    fn encode(&self, tuple: &[u32]) -> u64 {
        tuple.iter().fold(0u64, |acc, &p| acc * self.n + u64::from(p))
    }

    fn decode_into(&self, mut code: u64, out: &mut [u32]) {
        for slot in out.iter_mut().rev() {
            *slot = (code % self.n) as u32;
            code /= self.n;
        }
    }
}

const ROOT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy)]
struct Node {
    code: u64,
    parent: u32,
    generator: u32,
}

/// Breadth-first exploration of tuple states from a sorted list of roots.
struct TupleBfs<'a> {
    gens: &'a GeneratorSet,
    codec: TupleCodec,
    nodes: Vec<Node>,
    /// state code → node index, for states reached by a word of length ≥ `min_length`
    seen: HashMap<u64, u32>,
    queue: VecDeque<u32>,
    buf: Vec<u32>,
}

impl<'a> TupleBfs<'a> {
    fn new(gens: &'a GeneratorSet, d: usize, cap: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("tuples need at least one coordinate".into()));
        }
        Ok(TupleBfs {
            gens,
            codec: TupleCodec::new(gens.degree(), d, cap)?,
            nodes: Vec::new(),
            seen: HashMap::new(),
            queue: VecDeque::new(),
            buf: vec![0; d],
        })
    }

    fn push_root(&mut self, tuple: &[u32], min_length: usize) -> Result<u32> {
        if tuple.len() != self.codec.d {
            return Err(Error::Precondition("tuple arity mismatch".into()));
        }
        for &p in tuple {
            self.gens.check_point(p)?;
        }
        let code = self.codec.encode(tuple);
        if min_length == 0 {
            if let Some(&idx) = self.seen.get(&code) {
                return Ok(idx);
            }
        }
        let idx = self.nodes.len() as u32;
        self.nodes.push(Node { code, parent: ROOT, generator: 0 });
        if min_length == 0 {
            self.seen.insert(code, idx);
        }
        self.queue.push_back(idx);
        Ok(idx)
    }

    /// Expands one queued node, invoking `on_new` on each newly reached node;
    /// stops early and returns its index when `on_new` returns true.
    fn step(&mut self, mut on_new: impl FnMut(&[u32]) -> bool) -> Option<Option<u32>> {
        let idx = self.queue.pop_front()?;
        let code = self.nodes[idx as usize].code;
        let d = self.codec.d;
        let mut current = vec![0u32; d];
        self.codec.decode_into(code, &mut current);
        for (gi, g) in self.gens.generators().iter().enumerate() {
            for (slot, &p) in self.buf.iter_mut().zip(&current) {
                *slot = g.apply(p);
            }
            let next = self.codec.encode(&self.buf);
            if self.seen.contains_key(&next) {
                continue;
            }
            let nidx = self.nodes.len() as u32;
            self.nodes.push(Node { code: next, parent: idx, generator: gi as u32 });
            self.seen.insert(next, nidx);
            self.queue.push_back(nidx);
            if on_new(&self.buf) {
                return Some(Some(nidx));
            }
        }
        Some(None)
    }

    fn word_to(&self, mut idx: u32) -> (u32, Word) {
        let mut word = Vec::new();
        while self.nodes[idx as usize].parent != ROOT {
            word.push(self.nodes[idx as usize].generator as usize);
            idx = self.nodes[idx as usize].parent;
        }
        word.reverse();
        (idx, word)
    }

    fn tuple_of(&self, idx: u32) -> Vec<u32> {
        let mut out = vec![0; self.codec.d];
        self.codec.decode_into(self.nodes[idx as usize].code, &mut out);
        out
    }
}

/// Shortest-then-lexicographically-least word `w` with `start·w` satisfying
/// `is_target`, using words of length at least `min_length` (0 or 1).
pub fn tuple_reachability(
    gens: &GeneratorSet,
    start: &[u32],
    is_target: impl Fn(&[u32]) -> bool,
    min_length: usize,
    cap: u64,
) -> Result<Option<Word>> {
    Ok(multi_tuple_reachability(gens, &[start.to_vec()], is_target, min_length, cap)?.map(|(_, word)| word))
}

/// Multi-source variant: among all sources, a shortest witness word, ties
/// broken by the least source and then the least word. Returns the source
/// together with its word.
pub fn multi_tuple_reachability(
    gens: &GeneratorSet,
    sources: &[Vec<u32>],
    is_target: impl Fn(&[u32]) -> bool,
    min_length: usize,
    cap: u64,
) -> Result<Option<(Vec<u32>, Word)>> {
    if min_length > 1 {
        return Err(Error::Precondition("min_length must be 0 or 1".into()));
    }
    let mut sorted: Vec<&Vec<u32>> = sources.iter().collect();
    sorted.sort();
    sorted.dedup();
    let Some(first) = sorted.first() else {
        return Ok(None);
    };
    if min_length == 0 {
        if let Some(src) = sorted.iter().find(|s| is_target(s)) {
            return Ok(Some(((*src).clone(), Vec::new())));
        }
    }
    let mut bfs = TupleBfs::new(gens, first.len(), cap)?;
    for src in &sorted {
        bfs.push_root(src, min_length)?;
    }
    while let Some(found) = bfs.step(&is_target) {
        if let Some(idx) = found {
            let (root, word) = bfs.word_to(idx);
            return Ok(Some((bfs.tuple_of(root), word)));
        }
    }
    Ok(None)
}

/// The full orbit `start·S` (or `start·S¹` with `min_length` 0), with a
/// canonical word for every reached tuple.
pub struct TupleOrbit {
    codec: TupleCodec,
    nodes: Vec<Node>,
    seen: HashMap<u64, u32>,
}

impl TupleOrbit {
    pub fn len(&self) -> usize {
        self.seen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seen.is_empty()
    }

    pub fn contains(&self, tuple: &[u32]) -> bool {
        tuple.len() == self.codec.d && self.seen.contains_key(&self.codec.encode(tuple))
    }

    /// Canonical word from the start tuple to `tuple`, if reachable.
    pub fn word_to(&self, tuple: &[u32]) -> Option<Word> {
        if tuple.len() != self.codec.d {
            return None;
        }
        let mut idx = *self.seen.get(&self.codec.encode(tuple))?;
        let mut word = Vec::new();
        while self.nodes[idx as usize].parent != ROOT {
            word.push(self.nodes[idx as usize].generator as usize);
            idx = self.nodes[idx as usize].parent;
        }
        word.reverse();
        Some(word)
    }

    /// Every reached tuple, in breadth-first order.
    pub fn tuples(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let mut ordered: Vec<u32> = self.seen.values().copied().collect();
        ordered.sort_unstable();
        ordered.into_iter().map(move |idx| {
            let mut out = vec![0; self.codec.d];
            self.codec.decode_into(self.nodes[idx as usize].code, &mut out);
            out
        })
    }
}

pub fn tuple_orbit(gens: &GeneratorSet, start: &[u32], min_length: usize, cap: u64) -> Result<TupleOrbit> {
    if min_length > 1 {
        return Err(Error::Precondition("min_length must be 0 or 1".into()));
    }
    let mut bfs = TupleBfs::new(gens, start.len(), cap)?;
    bfs.push_root(start, min_length)?;
    while bfs.step(|_| false).is_some() {}
    Ok(TupleOrbit { codec: bfs.codec, nodes: bfs.nodes, seen: bfs.seen })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(maps: &[&[u32]]) -> GeneratorSet {
        GeneratorSet::from_one_based(maps).unwrap()
    }

    fn labelled_edges(g: &Digraph) -> Vec<(u32, u32)> {
        g.edges().map(|(u, v)| (g.label(u) + 1, g.label(v) + 1)).collect()
    }

    #[test]
    fn transformation_graph_examples() {
        let g = transformation_graph(&gens(&[&[2, 3, 1]]), None).unwrap();
        assert_eq!(labelled_edges(&g), vec![(1, 2), (2, 3), (3, 1)]);
        let g = transformation_graph(&gens(&[&[1, 1, 2]]), None).unwrap();
        assert_eq!(labelled_edges(&g), vec![(1, 1), (2, 1), (3, 2)]);
        let g = transformation_graph(&gens(&[&[1, 1, 2]]), Some(&[1, 2])).unwrap();
        assert_eq!(labelled_edges(&g), vec![(3, 2)]);
        assert!(transformation_graph(&gens(&[&[1, 1, 2]]), Some(&[5])).is_err());
    }

    #[test]
    fn undirected_component_examples() {
        let g = Digraph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(undirected_components(&g).classes(), &[vec![0, 1], vec![2]]);
        let g = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(undirected_components(&g).classes(), &[vec![0, 1, 2]]);
        let g = Digraph::from_edges(2, []).unwrap();
        assert_eq!(undirected_components(&g).classes(), &[vec![0], vec![1]]);
    }

    #[test]
    fn cycle_examples() {
        let g = Digraph::from_edges(1, [(0, 0)]).unwrap();
        assert_eq!(has_cycle(&g, true), None);
        assert_eq!(has_cycle(&g, false), Some(vec![0, 0]));
        let g = Digraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(has_cycle(&g, true), Some(vec![0, 1, 0]));
        let dag = Digraph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(has_cycle(&dag, false), None);
    }

    #[test]
    fn tuple_reachability_examples() {
        let cap = DEFAULT_STATE_CAP;
        let w = tuple_reachability(&gens(&[&[2, 3, 1]]), &[0], |t| t == [2], 1, cap).unwrap();
        assert_eq!(w, Some(vec![0, 0]));

        let diag = |t: &[u32]| t[0] == t[1];
        let w = tuple_reachability(&gens(&[&[1, 1, 2]]), &[1, 2], diag, 1, cap).unwrap();
        assert_eq!(w, Some(vec![0, 0]));

        let w = tuple_reachability(&gens(&[&[2, 3, 1]]), &[0, 1], diag, 1, cap).unwrap();
        assert_eq!(w, None);
    }

    #[test]
    fn min_length_distinguishes_empty_word() {
        let g = gens(&[&[2, 3, 1]]);
        assert_eq!(tuple_reachability(&g, &[0], |t| t == [0], 0, 100).unwrap(), Some(vec![]));
        assert_eq!(tuple_reachability(&g, &[0], |t| t == [0], 1, 100).unwrap(), Some(vec![0, 0, 0]));
    }

    #[test]
    fn multi_source_examples() {
        let g = gens(&[&[1, 1, 2]]);
        let diag = |t: &[u32]| t[0] == t[1];
        let r = multi_tuple_reachability(&g, &[vec![1, 2]], diag, 1, 100).unwrap();
        assert_eq!(r, Some((vec![1, 2], vec![0, 0])));

        let srcs = [vec![0, 0], vec![2, 2]];
        let r = multi_tuple_reachability(&g, &srcs, diag, 0, 100).unwrap();
        assert_eq!(r, Some((vec![0, 0], vec![])));

        assert_eq!(multi_tuple_reachability(&g, &[], diag, 1, 100).unwrap(), None);
    }

    #[test]
    fn multi_source_prefers_least_source_among_shortest() {
        // both (1,3) and (2,3) collapse in one step under [1,1,2]
        let g = gens(&[&[1, 1, 2]]);
        let target = |t: &[u32]| t == [0, 1];
        let r = multi_tuple_reachability(&g, &[vec![1, 2], vec![0, 2]], target, 1, 100).unwrap();
        assert_eq!(r, Some((vec![0, 2], vec![0])));
    }

    #[test]
    fn state_budget_is_enforced() {
        let g = gens(&[&[2, 3, 1]]);
        let err = tuple_reachability(&g, &[0, 0, 0], |_| false, 1, 26).unwrap_err();
        assert_eq!(err, Error::StateBudgetExceeded { states: 27, cap: 26 });
    }

    #[test]
    fn orbit_words_replay() {
        let g = gens(&[&[2, 1, 3], &[1, 1, 2]]);
        let orbit = tuple_orbit(&g, &[0, 1, 2], 1, 1000).unwrap();
        for tuple in orbit.tuples() {
            let w = orbit.word_to(&tuple).unwrap();
            assert!(!w.is_empty());
            let s = g.evaluate(&w);
            assert_eq!(vec![s.apply(0), s.apply(1), s.apply(2)], tuple);
        }
    }
}
