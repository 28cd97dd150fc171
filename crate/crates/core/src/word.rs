//! Elements of the universal group of a GBS graph.
//!
//! A [`Word`] is a writing `z^a0 e1 z^a1 e2 ... el z^al` where each `z^ai`
//! is a power of the generator of the vertex group it sits in. Words do not
//! hold a reference to their graph; every operation is a method on
//! [`GbsGraph`] taking the words it acts on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::graph::{EdgeId, GbsGraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("unsound word: {0}")]
    UnsoundWord(String),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("cannot parse word: {0}")]
    Parse(String),
}

/// Alternating vertex/edge syllables. `exps.len() == edges.len() + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    start: VertexId,
    exps: Vec<BigInt>,
    edges: Vec<EdgeId>,
}

impl Word {
    /// The trivial element at `v`.
    pub fn identity(v: VertexId) -> Self {
        Self::power(v, 0)
    }

    pub fn power(v: VertexId, k: impl Into<BigInt>) -> Self {
        Word {
            start: v,
            exps: vec![k.into()],
            edges: vec![],
        }
    }

    /// Builds a word without checking soundness; see [`GbsGraph::check_sound`].
    ///
    /// # Panics
    /// If `exps.len() != edges.len() + 1`.
    pub fn from_parts(start: VertexId, exps: Vec<BigInt>, edges: Vec<EdgeId>) -> Self {
        assert_eq!(exps.len(), edges.len() + 1, "syllables must alternate");
        Word { start, exps, edges }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn exps(&self) -> &[BigInt] {
        &self.exps
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of edge letters.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// True for a length-0 word with exponent 0.
    pub fn is_trivial(&self) -> bool {
        self.edges.is_empty() && self.exps[0].is_zero()
    }
}

/// Whether an element fixes a point of the Bass-Serre tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Elliptic,
    Hyperbolic,
}

/// Normal-form flags of a word. `canonical` implies `reduced`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NormalFormStatus {
    pub reduced: bool,
    pub canonical: bool,
}

/// `(q, r)` with `a = q * d + r` and `0 <= r < |d|`.
fn euclid(a: &BigInt, d: &BigInt) -> (BigInt, BigInt) {
    let r = a.mod_floor(&d.abs());
    let q = (a - &r) / d;
    (q, r)
}

impl GbsGraph {
    /// Verifies that `w` follows a path and returns its endpoints.
    pub fn check_sound(&self, w: &Word) -> Result<(VertexId, VertexId), WordError> {
        if w.exps.len() != w.edges.len() + 1 {
            return Err(WordError::UnsoundWord("syllables do not alternate".into()));
        }
        let s = self.serre();
        if w.start.0 as usize >= s.vertex_count() {
            return Err(WordError::UnsoundWord("unknown base vertex".into()));
        }
        let mut at = w.start;
        for (i, &e) in w.edges.iter().enumerate() {
            if e.index() >= s.edge_count() {
                return Err(WordError::UnsoundWord(format!("unknown edge at position {}", i + 1)));
            }
            if s.initial(e) != at {
                return Err(WordError::UnsoundWord(format!(
                    "edge {} starts at {}, but the word is at {}",
                    s.edge_name(e),
                    s.vertex_name(s.initial(e)),
                    s.vertex_name(at)
                )));
            }
            at = s.terminal(e);
        }
        Ok((w.start, at))
    }

    pub fn terminal_of(&self, w: &Word) -> VertexId {
        w.edges.last().map_or(w.start, |&e| self.terminal(e))
    }

    fn sound_closed(&self, w: &Word) -> Result<VertexId, WordError> {
        let (a, b) = self.check_sound(w)?;
        if a != b {
            return Err(WordError::EndpointMismatch(format!(
                "word is not closed: {} -> {}",
                self.vertex_name(a),
                self.vertex_name(b)
            )));
        }
        Ok(a)
    }

    /// Applies reductions `e z^{k label(e)} e' -> z^{k label(e')}` until none
    /// is left. Single left-to-right pass with a stack.
    pub fn britton_reduce(&self, w: &Word) -> Result<Word, WordError> {
        self.check_sound(w)?;
        Ok(self.reduce_unchecked(w))
    }

    pub(crate) fn reduce_unchecked(&self, w: &Word) -> Word {
        let mut edges: Vec<EdgeId> = Vec::with_capacity(w.edges.len());
        let mut exps: Vec<BigInt> = Vec::with_capacity(w.exps.len());
        exps.push(w.exps[0].clone());
        for (&e, x) in w.edges.iter().zip(&w.exps[1..]) {
            let collapsible = match edges.last() {
                Some(&last) if last == e.reverse() => {
                    exps.last().unwrap().is_multiple_of(self.label(last))
                }
                _ => false,
            };
            if collapsible {
                let last = edges.pop().unwrap();
                let middle = exps.pop().unwrap();
                let pushed = middle / self.label(last) * self.label(last.reverse());
                *exps.last_mut().unwrap() += pushed + x;
            } else {
                edges.push(e);
                exps.push(x.clone());
            }
        }
        Word {
            start: w.start,
            exps,
            edges,
        }
    }

    fn is_reduced_unchecked(&self, w: &Word) -> bool {
        w.edges.windows(2).enumerate().all(|(i, pair)| {
            !(pair[1] == pair[0].reverse() && w.exps[i + 1].is_multiple_of(self.label(pair[0])))
        })
    }

    /// Britton-reduced word whose syllables after each edge `ei` lie in
    /// `[0, |label(ei)|)`; quotients are carried leftwards across `ei` and
    /// absorbed by the leading syllable. Two sound words with the same
    /// endpoints are equal iff their canonical forms are identical.
    pub fn canonical_form(&self, w: &Word) -> Result<Word, WordError> {
        self.check_sound(w)?;
        Ok(self.canonical_unchecked(w))
    }

    pub(crate) fn canonical_unchecked(&self, w: &Word) -> Word {
        let mut out = self.reduce_unchecked(w);
        for i in (1..out.exps.len()).rev() {
            let e = out.edges[i - 1];
            let label = self.label(e);
            let (q, r) = euclid(&out.exps[i], label);
            if !q.is_zero() {
                out.exps[i] = r;
                out.exps[i - 1] += q * self.label(e.reverse());
            }
        }
        // Shifting by multiples of the edge label never creates or destroys a
        // reducible position.
        debug_assert!(self.is_reduced_unchecked(&out));
        out
    }

    pub fn normal_form_status(&self, w: &Word) -> Result<NormalFormStatus, WordError> {
        self.check_sound(w)?;
        let reduced = self.is_reduced_unchecked(w);
        let canonical = reduced && self.canonical_unchecked(w) == *w;
        Ok(NormalFormStatus { reduced, canonical })
    }

    /// Concatenation without normalization. Endpoints must match.
    pub fn concat(&self, w1: &Word, w2: &Word) -> Result<Word, WordError> {
        let (_, t1) = self.check_sound(w1)?;
        let (s2, _) = self.check_sound(w2)?;
        if t1 != s2 {
            return Err(WordError::EndpointMismatch(format!(
                "left word ends at {}, right word starts at {}",
                self.vertex_name(t1),
                self.vertex_name(s2)
            )));
        }
        Ok(concat_unchecked(w1, w2))
    }

    pub fn multiply(&self, w1: &Word, w2: &Word) -> Result<Word, WordError> {
        let w = self.concat(w1, w2)?;
        Ok(self.canonical_unchecked(&w))
    }

    /// Product of several words, canonicalized once at the end.
    pub fn product<'a>(&self, words: impl IntoIterator<Item = &'a Word>) -> Result<Word, WordError> {
        let mut it = words.into_iter();
        let mut acc = it
            .next()
            .ok_or_else(|| WordError::UnsoundWord("empty product".into()))?
            .clone();
        self.check_sound(&acc)?;
        for w in it {
            acc = self.concat(&acc, w)?;
        }
        Ok(self.canonical_unchecked(&acc))
    }

    /// Raw reversal: edges reversed, exponents negated; not normalized.
    pub(crate) fn invert_unchecked(&self, w: &Word) -> Word {
        Word {
            start: self.terminal_of(w),
            exps: w.exps.iter().rev().map(|x| -x).collect(),
            edges: w.edges.iter().rev().map(|e| e.reverse()).collect(),
        }
    }

    pub fn invert(&self, w: &Word) -> Result<Word, WordError> {
        self.check_sound(w)?;
        Ok(self.canonical_unchecked(&self.invert_unchecked(w)))
    }

    pub fn pow(&self, w: &Word, n: i64) -> Result<Word, WordError> {
        self.sound_closed(w)?;
        let base = if n < 0 {
            self.invert_unchecked(w)
        } else {
            w.clone()
        };
        let mut acc = Word::identity(w.start);
        for _ in 0..n.unsigned_abs() {
            acc = concat_unchecked(&acc, &base);
        }
        Ok(self.canonical_unchecked(&acc))
    }

    /// Decides the word problem.
    pub fn equals(&self, w1: &Word, w2: &Word) -> Result<bool, WordError> {
        let e1 = self.check_sound(w1)?;
        let e2 = self.check_sound(w2)?;
        if e1 != e2 {
            return Err(WordError::EndpointMismatch(
                "words have different endpoints".into(),
            ));
        }
        Ok(self.canonical_unchecked(w1) == self.canonical_unchecked(w2))
    }

    pub fn commutes(&self, w1: &Word, w2: &Word) -> Result<bool, WordError> {
        let v1 = self.sound_closed(w1)?;
        let v2 = self.sound_closed(w2)?;
        if v1 != v2 {
            return Err(WordError::EndpointMismatch(
                "words are closed at different vertices".into(),
            ));
        }
        let ab = self.canonical_unchecked(&concat_unchecked(w1, w2));
        let ba = self.canonical_unchecked(&concat_unchecked(w2, w1));
        Ok(ab == ba)
    }

    /// Returns `(core, conjugator)` with `w = conjugator * core * conjugator^-1`,
    /// where `core` is Britton-reduced, starts with a trivial syllable when it
    /// has edges, and admits no reduction across its end-to-start junction.
    pub fn cyclic_reduce(&self, w: &Word) -> Result<(Word, Word), WordError> {
        self.sound_closed(w)?;
        let mut core = self.reduce_unchecked(w);
        let mut conj = Word::identity(w.start);
        while !core.edges.is_empty() {
            let lead = std::mem::take(&mut core.exps[0]);
            if !lead.is_zero() {
                *core.exps.last_mut().unwrap() += &lead;
                *conj.exps.last_mut().unwrap() += &lead;
            }
            let first = core.edges[0];
            let last = *core.edges.last().unwrap();
            let tail = core.exps.last().unwrap();
            if core.edges.len() >= 2 && last == first.reverse() && tail.is_multiple_of(self.label(last)) {
                // core = e1 (g1 e2 ... g_{l-1}) e1' z^h  ==  e1 x e1'
                let pushed = tail / self.label(last) * self.label(first);
                let mut exps = core.exps[1..core.exps.len() - 1].to_vec();
                *exps.last_mut().unwrap() += pushed;
                let inner = Word {
                    start: self.terminal(first),
                    exps,
                    edges: core.edges[1..core.edges.len() - 1].to_vec(),
                };
                conj = concat_unchecked(&conj, &self.edge_word(first));
                core = self.reduce_unchecked(&inner);
            } else {
                break;
            }
        }
        let conj = self.canonical_unchecked(&conj);
        Ok((core, conj))
    }

    pub fn classify_element(&self, w: &Word) -> Result<ElementKind, WordError> {
        let (core, _) = self.cyclic_reduce(w)?;
        Ok(if core.is_empty() {
            ElementKind::Elliptic
        } else {
            ElementKind::Hyperbolic
        })
    }

    /// The single-letter word `e`.
    pub fn edge_word(&self, e: EdgeId) -> Word {
        Word {
            start: self.initial(e),
            exps: vec![BigInt::zero(), BigInt::zero()],
            edges: vec![e],
        }
    }

    /// Word reading a path with trivial vertex syllables.
    pub fn path_word(&self, start: VertexId, path: &[EdgeId]) -> Word {
        Word {
            start,
            exps: vec![BigInt::zero(); path.len() + 1],
            edges: path.to_vec(),
        }
    }

    /// Parses the word grammar: `r^k`, `r`, `e`, `e'`, whitespace separated.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let mut start: Option<VertexId> = None;
        let mut at: Option<VertexId> = None;
        let mut exps: Vec<BigInt> = Vec::new();
        let mut edges: Vec<EdgeId> = Vec::new();
        for tok in text.split_whitespace() {
            if let Some((name, k)) = tok.split_once('^') {
                let v = self
                    .vertex(name)
                    .ok_or_else(|| WordError::Parse(format!("unknown vertex `{name}` in `{tok}`")))?;
                let k: BigInt = k
                    .parse()
                    .map_err(|_| WordError::Parse(format!("bad exponent in `{tok}`")))?;
                self.push_power(&mut start, &mut at, &mut exps, v, k)?;
            } else if let Some(v) = self.vertex(tok) {
                self.push_power(&mut start, &mut at, &mut exps, v, BigInt::one())?;
            } else if let Some(e) = self.edge(tok) {
                match at {
                    None => {
                        start = Some(self.initial(e));
                        exps.push(BigInt::zero());
                    }
                    Some(v) if v != self.initial(e) => {
                        return Err(WordError::UnsoundWord(format!(
                            "edge {tok} starts at {}, but the word is at {}",
                            self.vertex_name(self.initial(e)),
                            self.vertex_name(v)
                        )));
                    }
                    Some(_) => {}
                }
                edges.push(e);
                exps.push(BigInt::zero());
                at = Some(self.terminal(e));
            } else {
                return Err(WordError::Parse(format!("unknown symbol `{tok}`")));
            }
        }
        match start {
            Some(start) => Ok(Word { start, exps, edges }),
            None => Err(WordError::Parse("empty word".into())),
        }
    }

    fn push_power(
        &self,
        start: &mut Option<VertexId>,
        at: &mut Option<VertexId>,
        exps: &mut Vec<BigInt>,
        v: VertexId,
        k: BigInt,
    ) -> Result<(), WordError> {
        match *at {
            None => {
                *start = Some(v);
                *at = Some(v);
                exps.push(k);
            }
            Some(cur) if cur == v => *exps.last_mut().unwrap() += k,
            Some(cur) => {
                return Err(WordError::UnsoundWord(format!(
                    "syllable {} placed at vertex {}",
                    self.vertex_name(v),
                    self.vertex_name(cur)
                )))
            }
        }
        Ok(())
    }

    /// Renders `w` in the word grammar.
    pub fn display<'a>(&'a self, w: &'a Word) -> WordDisplay<'a> {
        WordDisplay { graph: self, word: w }
    }
}

fn concat_unchecked(w1: &Word, w2: &Word) -> Word {
    let mut exps = w1.exps.clone();
    *exps.last_mut().unwrap() += &w2.exps[0];
    exps.extend_from_slice(&w2.exps[1..]);
    let mut edges = w1.edges.clone();
    edges.extend_from_slice(&w2.edges);
    Word {
        start: w1.start,
        exps,
        edges,
    }
}

pub struct WordDisplay<'a> {
    graph: &'a GbsGraph,
    word: &'a Word,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.graph;
        let w = self.word;
        if w.is_trivial() {
            return write!(f, "{}^0", g.vertex_name(w.start));
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !std::mem::replace(&mut first, false) {
                f.write_str(" ")?;
            }
            Ok(())
        };
        let mut at = w.start;
        for i in 0..w.exps.len() {
            let x = &w.exps[i];
            if !x.is_zero() {
                sep(f)?;
                if x.is_one() {
                    write!(f, "{}", g.vertex_name(at))?;
                } else {
                    write!(f, "{}^{}", g.vertex_name(at), x)?;
                }
            }
            if let Some(&e) = w.edges.get(i) {
                sep(f)?;
                write!(f, "{}", g.edge_name(e))?;
                at = g.terminal(e);
            }
        }
        Ok(())
    }
}
