//! Relative endomorphisms of a GBS graph and centralizer twists.
//!
//! A relative endomorphism fixes every vertex generator and sends each edge
//! letter `e` to a word from `initial(e)` to `terminal(e)` that satisfies the
//! edge relation `z_u^label(e') X = X z_v^label(e)`. A centralizer twist is
//! the one given by `e -> c_initial(e) e c_terminal(e)^-1` for an assignment
//! of one element `c_v` of `C(z_v)` to each vertex.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

use crate::development::{component_ball, is_in_centralizer, BallLimits};
use crate::graph::{EdgeId, GbsGraph, VertexId};
use crate::word::{Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistError {
    #[error("endomorphisms are defined over different graphs")]
    GraphMismatch,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("image of edge {edge} must run from {from} to {to}")]
    ImageEndpoints { edge: String, from: String, to: String },
    #[error("image of edge {0} does not satisfy the edge relation")]
    NotRelationPreserving(String),
    #[error("element assigned to {0} does not centralize its generator")]
    NotInCentralizer(String),
    #[error("sample {0} is not in the centralizer")]
    SampleNotInCentralizer(usize),
    #[error("expected one image per edge: got {got}, graph has {expected}")]
    ImageCount { got: usize, expected: usize },
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
}

#[derive(Clone, Debug)]
pub struct RelativeEndomorphism {
    graph: Arc<GbsGraph>,
    /// Canonical image of every oriented edge, indexed by `EdgeId::index`.
    images: Vec<Word>,
}

impl PartialEq for RelativeEndomorphism {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.images == other.images
    }
}

impl Eq for RelativeEndomorphism {}

fn same_graph(a: &Arc<GbsGraph>, b: &Arc<GbsGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RelativeEndomorphism {
    /// Builds the endomorphism from the images of the declared (forward)
    /// edges, in declaration order. Images of reversed edges are inverses.
    pub fn new(graph: Arc<GbsGraph>, forward_images: Vec<Word>) -> Result<Self, TwistError> {
        let g = &*graph;
        let expected = g.serre().edge_count() / 2;
        if forward_images.len() != expected {
            return Err(TwistError::ImageCount {
                got: forward_images.len(),
                expected,
            });
        }
        let mut images = vec![Word::identity(VertexId(0)); g.serre().edge_count()];
        for (e, w) in g.serre().forward_edges().zip(forward_images) {
            let (a, b) = g.check_sound(&w)?;
            if a != g.initial(e) || b != g.terminal(e) {
                return Err(TwistError::ImageEndpoints {
                    edge: g.edge_name(e),
                    from: g.vertex_name(g.initial(e)).to_string(),
                    to: g.vertex_name(g.terminal(e)).to_string(),
                });
            }
            let lhs = g.concat(&Word::power(a, g.label(e.reverse()).clone()), &w)?;
            let rhs = g.concat(&w, &Word::power(b, g.label(e).clone()))?;
            if !g.equals(&lhs, &rhs)? {
                return Err(TwistError::NotRelationPreserving(g.edge_name(e)));
            }
            images[e.reverse().index()] = g.invert(&w)?;
            images[e.index()] = g.canonical_form(&w)?;
        }
        Ok(RelativeEndomorphism { graph, images })
    }

    /// Parses `(edge name, image word)` pairs; unlisted edges map to themselves.
    pub fn from_strings(graph: Arc<GbsGraph>, images: &[(&str, &str)]) -> Result<Self, TwistError> {
        let g = &*graph;
        let mut forward: Vec<Word> = g.serre().forward_edges().map(|e| g.edge_word(e)).collect();
        for (name, text) in images {
            let e = g
                .serre()
                .find_edge(name)
                .filter(|e| e.is_forward())
                .ok_or_else(|| TwistError::UnknownEdge(name.to_string()))?;
            forward[e.geometric()] = g.parse_word(text)?;
        }
        Self::new(graph, forward)
    }

    pub fn identity(graph: Arc<GbsGraph>) -> Self {
        let images = graph.serre().edges().map(|e| graph.edge_word(e)).collect();
        RelativeEndomorphism { graph, images }
    }

    pub fn graph(&self) -> &GbsGraph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<GbsGraph> {
        &self.graph
    }

    pub fn image(&self, e: EdgeId) -> &Word {
        &self.images[e.index()]
    }

    pub fn is_identity(&self) -> bool {
        self.graph
            .serre()
            .edges()
            .all(|e| self.images[e.index()] == self.graph.edge_word(e))
    }

    /// Replaces each edge letter by its image, keeps vertex syllables, and
    /// returns the canonical form.
    pub fn apply(&self, w: &Word) -> Result<Word, TwistError> {
        let g = &*self.graph;
        g.check_sound(w)?;
        let mut acc = Word::power(w.start(), w.exps()[0].clone());
        for (e, k) in w.edges().iter().zip(&w.exps()[1..]) {
            acc = g.concat(&acc, &self.images[e.index()])?;
            acc = g.concat(&acc, &Word::power(g.terminal(*e), k.clone()))?;
        }
        Ok(g.canonical_form(&acc)?)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &RelativeEndomorphism) -> Result<RelativeEndomorphism, TwistError> {
        if !same_graph(&self.graph, &other.graph) {
            return Err(TwistError::GraphMismatch);
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RelativeEndomorphism {
            graph: self.graph.clone(),
            images,
        })
    }

    /// True iff `self` fixes every sample, each of which must commute with
    /// `z_v^n`.
    pub fn fixes_centralizer_check(
        &self,
        v: VertexId,
        n: impl Into<BigInt>,
        samples: &[Word],
    ) -> Result<bool, TwistError> {
        let n = n.into();
        let g = &*self.graph;
        for (i, w) in samples.iter().enumerate() {
            if !is_in_centralizer(g, w, v, n.clone())? {
                return Err(TwistError::SampleNotInCentralizer(i));
            }
        }
        for w in samples {
            if !g.equals(&self.apply(w)?, w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Per-vertex elements `c_v`, each closed at `v` and commuting with `z_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerAssignment(pub Vec<Word>);

impl CentralizerAssignment {
    pub fn trivial(g: &GbsGraph) -> Self {
        CentralizerAssignment(g.serre().vertices().map(Word::identity).collect())
    }

    /// Parses `(vertex name, word)` pairs; unlisted vertices get the identity.
    pub fn from_strings(g: &GbsGraph, pairs: &[(&str, &str)]) -> Result<Self, TwistError> {
        let mut out = Self::trivial(g);
        for (name, text) in pairs {
            let v = g
                .vertex(name)
                .ok_or_else(|| TwistError::UnknownVertex(name.to_string()))?;
            out.0[v.0 as usize] = g.parse_word(text)?;
        }
        Ok(out)
    }

    pub fn validate(&self, g: &GbsGraph) -> Result<(), TwistError> {
        for (v, c) in g.serre().vertices().zip(&self.0) {
            let ok = is_in_centralizer(g, c, v, 1).map_err(|e| match e {
                WordError::EndpointMismatch(_) => {
                    TwistError::NotInCentralizer(g.vertex_name(v).to_string())
                }
                other => TwistError::Word(other),
            })?;
            if !ok {
                return Err(TwistError::NotInCentralizer(g.vertex_name(v).to_string()));
            }
        }
        Ok(())
    }

    pub fn inverse(&self, g: &GbsGraph) -> Result<Self, TwistError> {
        Ok(CentralizerAssignment(
            self.0.iter().map(|c| g.invert(c)).collect::<Result<_, _>>()?,
        ))
    }

    /// Pointwise product `self_v * other_v`.
    pub fn product(&self, g: &GbsGraph, other: &Self) -> Result<Self, TwistError> {
        Ok(CentralizerAssignment(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| g.multiply(a, b))
                .collect::<Result<_, _>>()?,
        ))
    }
}

fn twist_unchecked(graph: &Arc<GbsGraph>, c: &CentralizerAssignment) -> Result<RelativeEndomorphism, TwistError> {
    let g = &**graph;
    let images = g
        .serre()
        .edges()
        .map(|e| {
            let ci = &c.0[g.initial(e).0 as usize];
            let ct = g.invert(&c.0[g.terminal(e).0 as usize])?;
            Ok(g.product([ci, &g.edge_word(e), &ct])?)
        })
        .collect::<Result<Vec<_>, TwistError>>()?;
    Ok(RelativeEndomorphism {
        graph: graph.clone(),
        images,
    })
}

/// The twist `e -> c_initial(e) e c_terminal(e)^-1` and the twist by the
/// pointwise inverse, which is its exact two-sided inverse.
pub fn twist_from_centralizers(
    graph: &Arc<GbsGraph>,
    c: &CentralizerAssignment,
) -> Result<(RelativeEndomorphism, RelativeEndomorphism), TwistError> {
    let g = &**graph;
    if c.0.len() != g.serre().vertex_count() {
        return Err(TwistError::ImageCount {
            got: c.0.len(),
            expected: g.serre().vertex_count(),
        });
    }
    c.validate(g)?;
    let theta = twist_unchecked(graph, c)?;
    let theta_inv = twist_unchecked(graph, &c.inverse(g)?)?;
    Ok((theta, theta_inv))
}

/// Checks `t2(e) = a_initial(e) t1(e) a_terminal(e)^-1` for every edge.
pub fn check_equivalence_witness(
    t1: &RelativeEndomorphism,
    t2: &RelativeEndomorphism,
    a: &CentralizerAssignment,
) -> Result<bool, TwistError> {
    if !same_graph(&t1.graph, &t2.graph) {
        return Err(TwistError::GraphMismatch);
    }
    let g = t1.graph();
    a.validate(g)?;
    for e in g.serre().forward_edges() {
        let ai = &a.0[g.initial(e).0 as usize];
        let at = g.invert(&a.0[g.terminal(e).0 as usize])?;
        let rhs = g.product([ai, t1.image(e), &at])?;
        if &rhs != t2.image(e) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(CentralizerAssignment),
    /// Inconclusive: no witness among the enumerated candidates.
    NotFoundWithinBound,
}

/// Products of at most `max_factors` of the generators of the explored
/// development ball of `(v, n)` and their inverses, deduplicated by canonical
/// form, in order of increasing factor count. Every element lies in
/// `C(z_v^n)`. Stops after `max_count` elements.
pub fn centralizer_elements(
    g: &GbsGraph,
    v: VertexId,
    n: impl Into<BigInt>,
    limits: &BallLimits,
    max_factors: usize,
    max_count: usize,
) -> Vec<Word> {
    let ball = component_ball(g, v, n, limits);
    let mut gens = Vec::new();
    for w in ball.generator_words(g) {
        let inv = g.invert(&w).expect("generator words are sound");
        gens.push(w);
        gens.push(inv);
    }
    let identity = Word::identity(v);
    let mut seen: HashSet<Word> = HashSet::from([identity.clone()]);
    let mut out = vec![identity];
    let mut layer = out.clone();
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for w in &layer {
            for x in &gens {
                if out.len() >= max_count {
                    return out;
                }
                let p = g.multiply(w, x).expect("closed at v");
                if seen.insert(p.clone()) {
                    out.push(p.clone());
                    next.push(p);
                }
            }
        }
        layer = next;
    }
    out
}

const WITNESS_BALL_VERTICES: usize = 16;
const WITNESS_MAX_CANDIDATES: usize = 2048;

/// Semidecides whether `t` is equivalent to the identity: searches for
/// `a_v` among short products of centralizer generators (see
/// [`centralizer_elements`]) with `t(e) = a_initial(e) e a_terminal(e)^-1`.
pub fn search_identity_witness(t: &RelativeEndomorphism, bound: usize) -> WitnessSearch {
    let g = t.graph();
    let limits = BallLimits::new(WITNESS_BALL_VERTICES, 1_000_000_000u64);
    let candidates: Vec<Vec<Word>> = g
        .serre()
        .vertices()
        .map(|v| centralizer_elements(g, v, 1, &limits, bound, WITNESS_MAX_CANDIDATES))
        .collect();
    let mut chosen: Vec<Word> = Vec::new();
    if backtrack(t, &candidates, &mut chosen) {
        WitnessSearch::Found(CentralizerAssignment(chosen))
    } else {
        WitnessSearch::NotFoundWithinBound
    }
}

fn backtrack(t: &RelativeEndomorphism, candidates: &[Vec<Word>], chosen: &mut Vec<Word>) -> bool {
    let g = t.graph();
    let i = chosen.len();
    if i == candidates.len() {
        return true;
    }
    let v = VertexId(i as u32);
    for a in &candidates[i] {
        chosen.push(a.clone());
        let consistent = g.serre().forward_edges().all(|e| {
            let (x, y) = (g.initial(e), g.terminal(e));
            if x.0 as usize > i || y.0 as usize > i || (x != v && y != v) {
                return true;
            }
            let at = g.invert(&chosen[y.0 as usize]).expect("sound");
            let rhs = g
                .product([&chosen[x.0 as usize], &g.edge_word(e), &at])
                .expect("sound");
            &rhs == t.image(e)
        });
        if consistent && backtrack(t, candidates, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
