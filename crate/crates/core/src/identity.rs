//! Quasi-identities `x_i = x_i² (i ∈ E) ⇒ u = v` and the engine deciding
//! whether `S` satisfies one.
//!
//! A counterexample is a point `p₁` together with boundary points
//! `p₁ … p_{ℓ+1}` (the path of `p₁` through `h(u)` letter by letter) and
//! `q₁ = p₁, q₂ … q_{r+1}` (through `h(v)`) with `p_{ℓ+1} ≠ q_{r+1}`. Each
//! variable then only has to realise the finitely many point moves it is
//! responsible for, which is a question about the orbit of a point tuple.
//! Boundary points are enumerated by backtracking, pruning as soon as some
//! variable's moves cannot be realised by any element.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::graph::{tuple_orbit, TupleOrbit};
use crate::report::{Engine, IdentityCounterexample, Property, PropertyReport, Verdict, Witness};
use crate::transformation::{GeneratorSet, Transformation, Word};

/// Largest variable index the text syntax can name (`x9`).
pub const MAX_VARIABLES: usize = 9;

/// `x_i = x_i²` for `i ∈ E` implies `u = v`. Variables are 0-based here and
/// 1-based (`x1`, `x2`, …) in text.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiIdentity {
    idempotent: Vec<bool>,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
}

impl QuasiIdentity {
    pub fn new(var_count: usize, idempotent_vars: &[usize], lhs: Vec<usize>, rhs: Vec<usize>) -> Result<Self> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::Precondition(String::from("both sides of an identity must be nonempty")));
        }
        if let Some(&x) = lhs.iter().chain(&rhs).chain(idempotent_vars).find(|&&x| x >= var_count) {
            return Err(Error::Precondition(format!("variable x{} exceeds variable count {var_count}", x + 1)));
        }
        let mut idempotent = vec![false; var_count];
        for &x in idempotent_vars {
            idempotent[x] = true;
        }
        Ok(QuasiIdentity { idempotent, lhs, rhs })
    }

    pub fn var_count(&self) -> usize {
        self.idempotent.len()
    }

    pub fn lhs(&self) -> &[usize] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[usize] {
        &self.rhs
    }

    pub fn is_idempotent_var(&self, var: usize) -> bool {
        self.idempotent.get(var).copied().unwrap_or(false)
    }

    pub fn idempotent_vars(&self) -> Vec<usize> {
        (0..self.var_count()).filter(|&i| self.idempotent[i]).collect()
    }

    /// Whether the variable appears in `u` or `v`.
    pub fn occurs(&self, var: usize) -> bool {
        self.lhs.contains(&var) || self.rhs.contains(&var)
    }

    /// Same equation with more variables constrained to idempotents.
    pub fn with_idempotent(&self, vars: &[usize]) -> Result<Self> {
        let mut all = self.idempotent_vars();
        all.extend_from_slice(vars);
        QuasiIdentity::new(self.var_count(), &all, self.lhs.clone(), self.rhs.clone())
    }

    /// A named identity from [`PRESETS`].
    pub fn preset(name: &str) -> Result<Self> {
        let key: String = name.trim().chars().map(|c| if c == '-' { '_' } else { c }).collect();
        let q = |m, e: &[usize], u: &[usize], v: &[usize]| QuasiIdentity::new(m, e, u.to_vec(), v.to_vec());
        match key.as_str() {
            "band" => q(1, &[], &[0, 0], &[0]),
            "idempotents_central" | "central_idempotents" => q(2, &[0], &[0, 1], &[1, 0]),
            "commuting_idempotents" | "idempotents_commute" => q(2, &[0, 1], &[0, 1], &[1, 0]),
            "orthodox" => q(2, &[0, 1], &[0, 1, 0, 1], &[0, 1]),
            "x2y_eq_x2" => q(2, &[], &[0, 0, 1], &[0, 0]),
            "group_left" => q(2, &[0], &[0, 1], &[1]),
            "group_right" => q(2, &[0], &[1, 0], &[1]),
            _ => Err(Error::UnknownName(String::from(name))),
        }
    }
}

/// Names accepted by [`QuasiIdentity::preset`].
pub const PRESETS: [&str; 7] =
    ["band", "idempotents_central", "commuting_idempotents", "orthodox", "x2y_eq_x2", "group_left", "group_right"];

fn write_side(f: &mut fmt::Formatter<'_>, side: &[usize]) -> fmt::Result {
    for (i, x) in side.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "x{}", x + 1)?;
    }
    Ok(())
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idem = self.idempotent_vars();
        if !idem.is_empty() {
            f.write_str("idem(")?;
            for (i, x) in idem.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "x{}", x + 1)?;
            }
            f.write_str(") => ")?;
        }
        write_side(f, &self.lhs)?;
        f.write_str(" = ")?;
        write_side(f, &self.rhs)
    }
}

struct Parser<'s> {
    text: &'s [u8],
    pos: usize,
}

impl<'s> Parser<'s> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { position: self.pos, message: String::from(message) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn var(&mut self) -> Result<usize> {
        self.skip_ws();
        if self.peek() != Some(b'x') {
            return Err(self.error("expected a variable x1..x9"));
        }
        self.pos += 1;
        match self.peek() {
            Some(d @ b'1'..=b'9') => {
                self.pos += 1;
                if matches!(self.peek(), Some(b'0'..=b'9')) {
                    return Err(self.error("variables are x1..x9"));
                }
                Ok(usize::from(d - b'1'))
            }
            _ => Err(self.error("expected a digit 1..9 after x")),
        }
    }

    fn side(&mut self) -> Result<Vec<usize>> {
        let mut word = vec![self.var()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'x') => word.push(self.var()?),
                _ => return Ok(word),
            }
        }
    }
}

impl FromStr for QuasiIdentity {
    type Err = Error;

    /// Parses `[idem(x1,x3) =>] x1 x2 = x2 x1`.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { text: s.as_bytes(), pos: 0 };
        let mut idem = Vec::new();
        if p.eat("idem") {
            if !p.eat("(") {
                return Err(p.error("expected `(` after idem"));
            }
            idem.push(p.var()?);
            while p.eat(",") {
                idem.push(p.var()?);
            }
            if !p.eat(")") {
                return Err(p.error("expected `)`"));
            }
            if !p.eat("=>") {
                return Err(p.error("expected `=>` after idem(...)"));
            }
        }
        let lhs = p.side()?;
        if !p.eat("=") {
            return Err(p.error("expected `=`"));
        }
        let rhs = p.side()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected character"));
        }
        let m = lhs.iter().chain(&rhs).chain(&idem).max().map_or(0, |&x| x + 1);
        QuasiIdentity::new(m, &idem, lhs, rhs)
    }
}

/// One required move `point(from) ↦ point(to)` of a variable, by boundary slot.
#[derive(Debug, Clone, Copy)]
struct Move {
    from: usize,
    to: usize,
}

struct Search<'g> {
    gens: &'g GeneratorSet,
    qid: &'g QuasiIdentity,
    cap: u64,
    /// moves per variable, including the `to ↦ to` moves of idempotent variables
    moves: Vec<Vec<Move>>,
    /// variables to re-check once slot `k` is filled
    check_at: Vec<Vec<usize>>,
    orbits: HashMap<Vec<u32>, TupleOrbit>,
    slots: Vec<u32>,
    lhs_end: usize,
    rhs_end: usize,
}

impl<'g> Search<'g> {
    fn new(gens: &'g GeneratorSet, qid: &'g QuasiIdentity, cap: u64) -> Self {
        let l = qid.lhs.len();
        let r = qid.rhs.len();
        // slots: p_1..p_{l+1} are 0..=l, q_2..q_{r+1} are l+1..=l+r; q_1 is slot 0
        let rhs_slot = |j: usize| if j == 0 { 0 } else { l + j };
        let mut moves = vec![Vec::new(); qid.var_count()];
        for (j, &x) in qid.lhs.iter().enumerate() {
            moves[x].push(Move { from: j, to: j + 1 });
        }
        for (j, &x) in qid.rhs.iter().enumerate() {
            moves[x].push(Move { from: rhs_slot(j), to: rhs_slot(j + 1) });
        }
        for x in qid.idempotent_vars() {
            let fixed: Vec<Move> = moves[x].iter().map(|m| Move { from: m.to, to: m.to }).collect();
            moves[x].extend(fixed);
        }
        let slot_count = l + r + 1;
        let mut check_at = vec![Vec::new(); slot_count];
        for (x, ms) in moves.iter().enumerate() {
            for m in ms {
                let k = m.from.max(m.to);
                if !check_at[k].contains(&x) {
                    check_at[k].push(x);
                }
            }
        }
        Search {
            gens,
            qid,
            cap,
            moves,
            check_at,
            orbits: HashMap::new(),
            slots: vec![0; slot_count],
            lhs_end: l,
            rhs_end: l + r,
        }
    }

    /// The partial map a variable must realise given slots `0..=filled`, as
    /// sorted (domain, values), or `None` if it is not even a function.
    fn partial_map(&self, var: usize, filled: usize) -> Option<(Vec<u32>, Vec<u32>)> {
        let mut pairs: Vec<(u32, u32)> = self.moves[var]
            .iter()
            .filter(|m| m.from.max(m.to) <= filled)
            .map(|m| (self.slots[m.from], self.slots[m.to]))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        Some(pairs.into_iter().unzip())
    }

    fn orbit(&mut self, domain: Vec<u32>) -> Result<&TupleOrbit> {
        if !self.orbits.contains_key(&domain) {
            let orbit = tuple_orbit(self.gens, &domain, 1, self.cap)?;
            self.orbits.insert(domain.clone(), orbit);
        }
        Ok(&self.orbits[&domain])
    }

    fn realisable(&mut self, var: usize, filled: usize) -> Result<bool> {
        match self.partial_map(var, filled) {
            None => Ok(false),
            Some((domain, values)) => Ok(self.orbit(domain)?.contains(&values)),
        }
    }

    fn search(&mut self, slot: usize) -> Result<bool> {
        let n = self.gens.degree() as u32;
        for value in 0..n {
            self.slots[slot] = value;
            if slot == self.rhs_end && self.slots[self.lhs_end] == value {
                continue;
            }
            let mut ok = true;
            for i in 0..self.check_at[slot].len() {
                let var = self.check_at[slot][i];
                if !self.realisable(var, slot)? {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            if slot == self.rhs_end || self.search(slot + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn counterexample(&mut self) -> Result<IdentityCounterexample> {
        let last = self.rhs_end;
        let mut words = Vec::with_capacity(self.qid.var_count());
        for var in 0..self.qid.var_count() {
            let word: Word = match self.partial_map(var, last) {
                Some((domain, values)) if !domain.is_empty() => self
                    .orbit(domain)?
                    .word_to(&values)
                    .ok_or_else(|| Error::Internal(String::from("realisable move lost its word")))?,
                Some(_) => vec![0],
                None => return Err(Error::Internal(String::from("inconsistent accepted boundary"))),
            };
            words.push(word);
        }
        let lhs_points = self.slots[..=self.lhs_end].to_vec();
        let mut rhs_points = vec![self.slots[0]];
        rhs_points.extend_from_slice(&self.slots[self.lhs_end + 1..]);
        Ok(IdentityCounterexample { identity: self.qid.clone(), lhs_points, rhs_points, words })
    }
}

/// Decides whether `S` satisfies `qid`; FALSE comes with the least
/// counterexample in boundary-point order. `cap` bounds each tuple orbit.
pub fn models(gens: &GeneratorSet, qid: &QuasiIdentity, cap: u64) -> Result<PropertyReport> {
    let mut engine = Search::new(gens, qid, cap);
    let witness = if engine.search(0)? { Some(engine.counterexample()?) } else { None };
    if let Some(cx) = &witness {
        if !counterexample_holds(gens, cx) {
            return Err(Error::Internal(format!("identity witness for {qid} does not replay")));
        }
    }
    Ok(PropertyReport {
        property: format!("{qid}"),
        verdict: Verdict::from_bool(witness.is_none()),
        witness: witness.map(Witness::Identity),
        engine: Engine::Structural,
    })
}

/// The element substituted for each variable by a counterexample.
pub fn counterexample_assignment(gens: &GeneratorSet, cx: &IdentityCounterexample) -> Vec<Transformation> {
    cx.words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let s = gens.evaluate(w);
            if cx.identity.is_idempotent_var(i) {
                s.omega_power()
            } else {
                s
            }
        })
        .collect()
}

/// Whether the counterexample really refutes its identity on `S`.
pub fn counterexample_holds(gens: &GeneratorSet, cx: &IdentityCounterexample) -> bool {
    let qid = &cx.identity;
    if cx.words.len() != qid.var_count() || cx.words.iter().any(|w| w.is_empty() || w.iter().any(|&g| g >= gens.len()))
    {
        return false;
    }
    if cx.lhs_points.len() != qid.lhs.len() + 1 || cx.rhs_points.len() != qid.rhs.len() + 1 {
        return false;
    }
    if cx.lhs_points.iter().chain(&cx.rhs_points).any(|&p| p as usize >= gens.degree()) {
        return false;
    }
    let h = counterexample_assignment(gens, cx);
    let trace =
        |points: &[u32], side: &[usize]| side.iter().enumerate().all(|(j, &x)| h[x].apply(points[j]) == points[j + 1]);
    cx.lhs_points[0] == cx.rhs_points[0]
        && trace(&cx.lhs_points, &qid.lhs)
        && trace(&cx.rhs_points, &qid.rhs)
        && cx.lhs_points.last() != cx.rhs_points.last()
}

fn preset_report(gens: &GeneratorSet, preset: &str, property: Property, cap: u64) -> Result<PropertyReport> {
    let mut report = models(gens, &QuasiIdentity::preset(preset)?, cap)?;
    report.property = String::from(property.name());
    Ok(report)
}

pub fn is_band(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    preset_report(gens, "band", Property::Band, cap)
}

pub fn idempotents_commute(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    preset_report(gens, "commuting_idempotents", Property::IdempotentsCommute, cap)
}

pub fn idempotents_central(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    preset_report(gens, "idempotents_central", Property::IdempotentsCentral, cap)
}

pub fn is_orthodox(gens: &GeneratorSet, cap: u64) -> Result<PropertyReport> {
    preset_report(gens, "orthodox", Property::Orthodox, cap)
}
