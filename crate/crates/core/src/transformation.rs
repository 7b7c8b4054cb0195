//! Transformations of `[n]`, generator sets, and the actions they induce.
//!
//! Points are stored 0-based; every public constructor that takes text-style
//! input says so in its name (`from_one_based`). Composition is a right
//! action: `q·(st) = (q·s)·t`, so [`Transformation::then`] applies `self`
//! first.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A word over generator indices (0-based). The empty word acts as the identity.
pub type Word = Vec<usize>;

/// A total map `[n] → [n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    map: Vec<u32>,
}

impl Transformation {
    /// Builds a transformation from 0-based images.
    pub fn new(map: Vec<u32>) -> Result<Self> {
        if map.is_empty() {
            return Err(Error::ZeroDegree);
        }
        let degree = map.len();
        if let Some(&point) = map.iter().find(|&&p| p as usize >= degree) {
            return Err(Error::PointOutOfRange { point, degree });
        }
        Ok(Transformation { map })
    }

    /// Builds a transformation from 1-based images, as written in the text formats.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        let degree = images.len();
        let map = images
            .iter()
            .map(|&p| {
                if p == 0 || p as usize > degree {
                    Err(Error::PointOutOfRange { point: p.wrapping_sub(1), degree })
                } else {
                    Ok(p - 1)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Transformation::new(map)
    }

    pub(crate) fn from_vec_unchecked(map: Vec<u32>) -> Self {
        debug_assert!(map.iter().all(|&p| (p as usize) < map.len()));
        Transformation { map }
    }

    pub fn identity(degree: usize) -> Self {
        Transformation { map: (0..degree as u32).collect() }
    }

    pub fn constant(degree: usize, point: u32) -> Self {
        assert!((point as usize) < degree, "constant point out of range");
        Transformation { map: vec![point; degree] }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// The image `q·self` of a 0-based point.
    #[inline]
    pub fn apply(&self, point: u32) -> u32 {
        self.map[point as usize]
    }

    #[inline]
    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    /// 1-based images, for rendering.
    pub fn to_one_based(&self) -> Vec<u32> {
        self.map.iter().map(|&p| p + 1).collect()
    }

    /// `self` followed by `other`. Panics on degree mismatch; see [`compose`]
    /// for the fallible form.
    pub fn then(&self, other: &Transformation) -> Transformation {
        assert_eq!(self.degree(), other.degree(), "composing transformations of different degree");
        Transformation { map: self.map.iter().map(|&p| other.map[p as usize]).collect() }
    }

    pub fn pow(&self, exponent: u64) -> Transformation {
        assert!(exponent >= 1, "transformation powers start at 1");
        let mut result: Option<Transformation> = None;
        let mut base = self.clone();
        let mut e = exponent;
        loop {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.then(&base),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.then(&base);
        }
        result.expect("exponent is positive")
    }

    /// Sorted, duplicate-free image `[n]·self`.
    pub fn image(&self) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        for &p in &self.map {
            seen[p as usize] = true;
        }
        (0..self.degree() as u32).filter(|&p| seen[p as usize]).collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().all(|&p| self.map[p as usize] == p)
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    /// True iff `self` maps `points` bijectively onto itself.
    pub fn permutes(&self, points: &[u32]) -> bool {
        let mut hit = vec![false; self.degree()];
        let mut member = vec![false; self.degree()];
        for &p in points {
            member[p as usize] = true;
        }
        for &p in points {
            let q = self.map[p as usize] as usize;
            if !member[q] || hit[q] {
                return false;
            }
            hit[q] = true;
        }
        true
    }

    /// Index and period of the monogenic semigroup `⟨self⟩`: the least
    /// `i ≥ 1`, `p ≥ 1` with `self^(i+p) = self^i`.
    ///
    /// Read off the functional graph: the period is the lcm of its cycle
    /// lengths and the index the longest tail into a cycle (at least 1).
    pub fn index_and_period(&self) -> (u64, u64) {
        let n = self.degree();
        // 0 = unvisited, 1 = on current walk, 2 = done
        let mut state = vec![0u8; n];
        let mut on_cycle = vec![false; n];
        let mut period: u64 = 1;
        let mut walk = Vec::new();
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            walk.clear();
            let mut p = start;
            while state[p] == 0 {
                state[p] = 1;
                walk.push(p);
                p = self.map[p] as usize;
            }
            if state[p] == 1 {
                let pos = walk.iter().position(|&x| x == p).expect("point on current walk");
                let len = (walk.len() - pos) as u64;
                for &c in &walk[pos..] {
                    on_cycle[c] = true;
                }
                period = lcm(period, len);
            }
            for &w in &walk {
                state[w] = 2;
            }
        }
        let mut tail = vec![u64::MAX; n];
        let mut max_tail = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            let mut p = start;
            while !on_cycle[p] && tail[p] == u64::MAX {
                stack.push(p);
                p = self.map[p] as usize;
            }
            let mut d = if on_cycle[p] { 0 } else { tail[p] };
            while let Some(q) = stack.pop() {
                d += 1;
                tail[q] = d;
            }
            if on_cycle[start] {
                tail[start] = 0;
            }
            max_tail = max_tail.max(tail[start]);
        }
        (max_tail.max(1), period)
    }

    /// Least `m ≥ 1` such that `self^m` is idempotent.
    pub fn idempotent_power_exponent(&self) -> u64 {
        let (index, period) = self.index_and_period();
        index.div_ceil(period) * period
    }

    /// The unique idempotent power `self^ω`.
    pub fn omega_power(&self) -> Transformation {
        self.pow(self.idempotent_power_exponent())
    }

    /// Cycle lengths of a permutation of `points` (which `self` must permute),
    /// in order of each cycle's least point.
    pub fn cycle_lengths_on(&self, points: &[u32]) -> Vec<u64> {
        debug_assert!(self.permutes(points));
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for &p in points {
            if seen[p as usize] {
                continue;
            }
            let mut len = 0;
            let mut q = p;
            while !seen[q as usize] {
                seen[q as usize] = true;
                len += 1;
                q = self.map[q as usize];
            }
            lengths.push(len);
        }
        lengths
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str("]")
    }
}

/// `{[..], [..]}`, one-based.
impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.generators().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    (a / gcd(a, b)).checked_mul(b).expect("exponent overflows u64")
}

/// Fallible composition: `q·result = (q·s)·t`.
pub fn compose(s: &Transformation, t: &Transformation) -> Result<Transformation> {
    if s.degree() != t.degree() {
        return Err(Error::DegreeMismatch { expected: s.degree(), found: t.degree() });
    }
    Ok(s.then(t))
}

/// Sorted image of `s`.
pub fn image(s: &Transformation) -> Vec<u32> {
    s.image()
}

/// A partition of `[n]` with canonical class ids (numbered by first point).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
}

impl Partition {
    /// Builds the partition whose blocks are the points with equal `key`.
    /// Class ids are assigned in order of each block's least point.
    pub fn from_keys<K: Ord>(keys: impl IntoIterator<Item = K>) -> Self {
        let mut ids: BTreeMap<K, u32> = BTreeMap::new();
        let mut class_of = Vec::new();
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for (point, key) in keys.into_iter().enumerate() {
            let next = classes.len() as u32;
            let id = *ids.entry(key).or_insert(next);
            if id == next {
                classes.push(Vec::new());
            }
            classes[id as usize].push(point as u32);
            class_of.push(id);
        }
        Partition { class_of, classes }
    }

    pub fn degree(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, point: u32) -> u32 {
        self.class_of[point as usize]
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn same_class(&self, p: u32, q: u32) -> bool {
        self.class_of(p) == self.class_of(q)
    }
}

/// `ker(A)`: `p ~ q` iff `p·a = q·a` for every listed `a`.
pub fn kernel(gens: &[Transformation]) -> Result<Partition> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    let n = first.degree();
    if let Some(bad) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch { expected: n, found: bad.degree() });
    }
    Ok(Partition::from_keys((0..n as u32).map(|q| gens.iter().map(|g| g.apply(q)).collect::<Vec<_>>())))
}

/// A nonempty, ordered, equal-degree list of transformations: the presentation
/// of `S = ⟨a_1, …, a_k⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    degree: usize,
    generators: Vec<Transformation>,
    names: Vec<Option<String>>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<Transformation>) -> Result<Self> {
        let names = vec![None; generators.len()];
        GeneratorSet::with_names(generators, names)
    }

    pub fn with_names(generators: Vec<Transformation>, names: Vec<Option<String>>) -> Result<Self> {
        let degree = generators.first().ok_or(Error::NoGenerators)?.degree();
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch { expected: degree, found: bad.degree() });
        }
        if names.len() != generators.len() {
            return Err(Error::Precondition(String::from("one name slot per generator")));
        }
        Ok(GeneratorSet { degree, generators, names })
    }

    /// Convenience for tests and fixtures: 1-based image lists.
    pub fn from_one_based(maps: &[&[u32]]) -> Result<Self> {
        GeneratorSet::new(maps.iter().map(|m| Transformation::from_one_based(m)).collect::<Result<Vec<_>>>()?)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generators(&self) -> &[Transformation] {
        &self.generators
    }

    pub fn get(&self, index: usize) -> &Transformation {
        &self.generators[index]
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names[index].as_deref()
    }

    pub fn names(&self) -> &[Option<String>] {
        &self.names
    }

    /// The product of the word's generators; the empty word gives the identity.
    pub fn evaluate(&self, word: &[usize]) -> Transformation {
        let mut map: Vec<u32> = (0..self.degree as u32).collect();
        for &g in word {
            let gen = &self.generators[g];
            for p in map.iter_mut() {
                *p = gen.apply(*p);
            }
        }
        Transformation::from_vec_unchecked(map)
    }

    pub fn apply_word(&self, point: u32, word: &[usize]) -> u32 {
        word.iter().fold(point, |p, &g| self.generators[g].apply(p))
    }

    pub fn check_point(&self, point: u32) -> Result<()> {
        if (point as usize) < self.degree {
            Ok(())
        } else {
            Err(Error::PointOutOfRange { point, degree: self.degree })
        }
    }

    pub fn check_degree(&self, t: &Transformation) -> Result<()> {
        if t.degree() == self.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch { expected: self.degree, found: t.degree() })
        }
    }

    /// `ker(S)`, which equals the kernel of the generator list.
    pub fn kernel(&self) -> Partition {
        kernel(&self.generators).expect("generator set is nonempty")
    }

    /// `[n]S`: union of the generator images, sorted.
    pub fn image(&self) -> Vec<u32> {
        let mut hit = vec![false; self.degree];
        for g in &self.generators {
            for &p in g.as_slice() {
                hit[p as usize] = true;
            }
        }
        (0..self.degree as u32).filter(|&p| hit[p as usize]).collect()
    }

    /// `Fix(S, [n])`, sorted.
    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree as u32).filter(|&q| self.generators.iter().all(|g| g.apply(q) == q)).collect()
    }
}

/// The action `s ↦ s̄` of `S` on the classes of `ker(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientAction {
    pub partition: Partition,
    /// One transformation per generator, of degree `partition.class_count()`.
    pub action: GeneratorSet,
}

pub fn quotient_action(gens: &GeneratorSet) -> Result<QuotientAction> {
    let partition = gens.kernel();
    let mut induced = Vec::with_capacity(gens.len());
    for g in gens.generators() {
        let map: Vec<u32> = partition.classes().iter().map(|class| partition.class_of(g.apply(class[0]))).collect();
        for q in 0..gens.degree() as u32 {
            if partition.class_of(g.apply(q)) != map[partition.class_of(q) as usize] {
                return Err(Error::Internal(alloc::format!("quotient action not well defined at point {}", q + 1)));
            }
        }
        induced.push(Transformation::from_vec_unchecked(map));
    }
    Ok(QuotientAction { partition, action: GeneratorSet::with_names(induced, gens.names().to_vec())? })
}

/// The action `s ↦ s̃` of `S` on `[n]S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageAction {
    /// `[n]S`, sorted; position `i` of the action is point `points[i]`.
    pub points: Vec<u32>,
    pub action: GeneratorSet,
}

pub fn image_action(gens: &GeneratorSet) -> Result<ImageAction> {
    let points = gens.image();
    let mut position = vec![u32::MAX; gens.degree()];
    for (i, &p) in points.iter().enumerate() {
        position[p as usize] = i as u32;
    }
    let mut restricted = Vec::with_capacity(gens.len());
    for g in gens.generators() {
        let map = points
            .iter()
            .map(|&p| {
                let pos = position[g.apply(p) as usize];
                if pos == u32::MAX {
                    Err(Error::Internal(String::from("image of S is not closed under S")))
                } else {
                    Ok(pos)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        restricted.push(Transformation::from_vec_unchecked(map));
    }
    Ok(ImageAction { points, action: GeneratorSet::with_names(restricted, gens.names().to_vec())? })
}

pub fn fixed_points(gens: &GeneratorSet) -> Vec<u32> {
    gens.fixed_points()
}
