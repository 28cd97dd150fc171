//! The development of a GBS graph and centralizers of elliptic elements.
//!
//! The development has vertices `(v, n)` and edges `(e, n)` for `n != 0`,
//! with `(e, n)` running from `(initial(e), n * label(e'))` to
//! `(terminal(e), n * label(e))`. The centralizer of `z_v^n` is the
//! fundamental group of the component of `(v, n)`. Components may be
//! infinite, so exploration is bounded by [`BallLimits`] and truncation is
//! always reported.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, GbsGraph, VertexId};
use crate::presentation::{pi1_presentation_with_tree, Presentation};
use crate::word::{Word, WordError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DevVertex {
    pub vertex: VertexId,
    pub index: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DevEdge {
    pub edge: EdgeId,
    pub index: BigInt,
}

impl DevEdge {
    pub fn reverse(&self) -> DevEdge {
        DevEdge {
            edge: self.edge.reverse(),
            index: self.index.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallLimits {
    pub max_vertices: usize,
    #[serde(with = "crate::spec::bigint_json")]
    pub max_abs_index: BigInt,
}

impl Default for BallLimits {
    fn default() -> Self {
        BallLimits {
            max_vertices: 256,
            max_abs_index: BigInt::from(1_000_000_000u64),
        }
    }
}

impl BallLimits {
    pub fn new(max_vertices: usize, max_abs_index: impl Into<BigInt>) -> Self {
        let max_abs_index = max_abs_index.into();
        assert!(max_vertices > 0 && max_abs_index.is_positive(), "limits must be positive");
        BallLimits {
            max_vertices,
            max_abs_index,
        }
    }
}

impl GbsGraph {
    pub fn dev_initial(&self, e: &DevEdge) -> DevVertex {
        DevVertex {
            vertex: self.initial(e.edge),
            index: &e.index * self.label(e.edge.reverse()),
        }
    }

    pub fn dev_terminal(&self, e: &DevEdge) -> DevVertex {
        DevVertex {
            vertex: self.terminal(e.edge),
            index: &e.index * self.label(e.edge),
        }
    }

    pub fn dev_vertex_name(&self, p: &DevVertex) -> String {
        format!("({},{})", self.vertex_name(p.vertex), p.index)
    }

    pub fn dev_edge_name(&self, e: &DevEdge) -> String {
        format!("({},{})", self.edge_name(e.edge), e.index)
    }
}

/// Development edges ending at `p`: one `(e, index / label(e))` for every
/// base edge `e` into `p.vertex` whose label divides `p.index`.
pub fn dev_incident(g: &GbsGraph, p: &DevVertex) -> Vec<DevEdge> {
    assert!(!p.index.is_zero(), "development indices are nonzero");
    g.serre()
        .in_edges(p.vertex)
        .filter_map(|e| {
            let (q, r) = p.index.div_rem(g.label(e));
            r.is_zero().then_some(DevEdge { edge: e, index: q })
        })
        .collect()
}

/// Finite explored part of a development component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentBall {
    pub base: DevVertex,
    /// Vertices in discovery order; `vertices[0] == base`.
    pub vertices: Vec<DevVertex>,
    /// One entry per geometric development edge, oriented along the base
    /// graph's declared orientation.
    pub edges: Vec<DevEdge>,
    /// BFS tree: for each vertex after the base, the index of its parent and
    /// the development edge from the parent to it.
    pub parents: Vec<Option<(usize, DevEdge)>>,
    /// True iff exploration closed with an empty frontier.
    pub complete: bool,
}

fn sort_key<'a>(g: &'a GbsGraph, p: &'a DevVertex) -> (BigInt, &'a str, bool) {
    (p.index.abs(), g.vertex_name(p.vertex), p.index.is_negative())
}

/// Breadth-first closure of `(v, n)`. Each BFS layer is visited in
/// `(|index|, vertex name, sign)` order so balls are reproducible.
pub fn component_ball(g: &GbsGraph, v: VertexId, n: impl Into<BigInt>, limits: &BallLimits) -> ComponentBall {
    let base = DevVertex {
        vertex: v,
        index: n.into(),
    };
    assert!(!base.index.is_zero(), "development indices are nonzero");
    let mut seen: HashMap<DevVertex, usize> = HashMap::new();
    let mut vertices = vec![base.clone()];
    let mut parents = vec![None];
    seen.insert(base.clone(), 0);
    let mut truncated = base.index.abs() > limits.max_abs_index;
    let mut layer = vec![0usize];
    while !layer.is_empty() && !truncated {
        let mut next: Vec<(DevVertex, usize, DevEdge)> = Vec::new();
        for &i in &layer {
            for inc in dev_incident(g, &vertices[i]) {
                let out = inc.reverse();
                let q = g.dev_terminal(&out);
                if seen.contains_key(&q) || next.iter().any(|(p, _, _)| *p == q) {
                    continue;
                }
                next.push((q, i, out));
            }
        }
        next.sort_by(|a, b| sort_key(g, &a.0).cmp(&sort_key(g, &b.0)));
        layer = Vec::new();
        for (q, parent, via) in next {
            if q.index.abs() > limits.max_abs_index || vertices.len() >= limits.max_vertices {
                truncated = true;
                continue;
            }
            seen.insert(q.clone(), vertices.len());
            layer.push(vertices.len());
            vertices.push(q);
            parents.push(Some((parent, via)));
        }
    }

    let mut edges: Vec<DevEdge> = Vec::new();
    for p in &vertices {
        for inc in dev_incident(g, p) {
            if !seen.contains_key(&g.dev_initial(&inc)) {
                continue;
            }
            let canon = if inc.edge.is_forward() { inc } else { inc.reverse() };
            if !edges.contains(&canon) {
                edges.push(canon);
            }
        }
    }
    ComponentBall {
        base,
        vertices,
        edges,
        parents,
        complete: !truncated,
    }
}

impl ComponentBall {
    pub fn contains(&self, p: &DevVertex) -> bool {
        self.position(p).is_some()
    }

    pub fn position(&self, p: &DevVertex) -> Option<usize> {
        self.vertices.iter().position(|q| q == p)
    }

    /// Tree path from the base to vertex `i`.
    pub fn tree_path(&self, mut i: usize) -> Vec<DevEdge> {
        let mut path = Vec::new();
        while let Some((parent, via)) = &self.parents[i] {
            path.push(via.clone());
            i = *parent;
        }
        path.reverse();
        path
    }

    pub fn path_to(&self, p: &DevVertex) -> Option<Vec<DevEdge>> {
        self.position(p).map(|i| self.tree_path(i))
    }

    /// True iff no development edge at a ball vertex leaves the ball.
    pub fn is_closed(&self, g: &GbsGraph) -> bool {
        self.vertices
            .iter()
            .all(|p| dev_incident(g, p).iter().all(|e| self.contains(&g.dev_initial(e))))
    }

    /// The ball as a finite GBS graph with vertices `(v,n)` and edges `(e,n)`.
    pub fn to_gbs_graph(&self, g: &GbsGraph) -> GbsGraph {
        let mut out = GbsGraph::new();
        for p in &self.vertices {
            out.add_vertex(&g.dev_vertex_name(p)).expect("distinct dev vertices");
        }
        for e in &self.edges {
            let from = out.vertex(&g.dev_vertex_name(&g.dev_initial(e))).unwrap();
            let to = out.vertex(&g.dev_vertex_name(&g.dev_terminal(e))).unwrap();
            out.add_edge(
                &g.dev_edge_name(e),
                from,
                to,
                g.label(e.edge.reverse()).clone(),
                g.label(e.edge).clone(),
            )
            .expect("distinct dev edges");
        }
        out
    }

    /// Base-group word of the tree path from the base to vertex `i`.
    fn tree_word(&self, g: &GbsGraph, i: usize) -> Word {
        let path: Vec<EdgeId> = self.tree_path(i).into_iter().map(|e| e.edge).collect();
        g.path_word(self.base.vertex, &path)
    }

    /// Images in the base group of the generators of the ball's fundamental
    /// group: `P z P^-1` for each vertex, `P_x e P_y^-1` for each edge
    /// outside the BFS tree. Returned in the order of
    /// [`CentralizerReport::presentation`]'s generators.
    pub fn generator_words(&self, g: &GbsGraph) -> Vec<Word> {
        let mut out = Vec::new();
        let tree = self.tree_edge_set();
        for (i, p) in self.vertices.iter().enumerate() {
            let path = self.tree_word(g, i);
            let inv = g.invert(&path).expect("tree paths are sound");
            let mid = Word::power(p.vertex, 1);
            out.push(g.product([&path, &mid, &inv]).expect("sound"));
        }
        for e in &self.edges {
            if tree.contains(e) {
                continue;
            }
            let x = self.position(&g.dev_initial(e)).unwrap();
            let y = self.position(&g.dev_terminal(e)).unwrap();
            let px = self.tree_word(g, x);
            let py = g.invert(&self.tree_word(g, y)).unwrap();
            out.push(g.product([&px, &g.edge_word(e.edge), &py]).expect("sound"));
        }
        out
    }

    /// Tree edges in the canonical orientation used by [`Self::edges`].
    fn tree_edge_set(&self) -> Vec<DevEdge> {
        self.parents
            .iter()
            .flatten()
            .map(|(_, e)| if e.edge.is_forward() { e.clone() } else { e.reverse() })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallStatus {
    Complete,
    Truncated,
}

#[derive(Clone, Debug)]
pub struct CentralizerReport {
    pub ball: ComponentBall,
    /// Present iff the ball is complete.
    pub presentation: Option<Presentation>,
    pub status: BallStatus,
}

/// Centralizer of `z_v^n`: a finite presentation when the development
/// component of `(v, n)` closes within `limits`, otherwise the truncated ball.
pub fn centralizer_of_power(
    g: &GbsGraph,
    v: VertexId,
    n: impl Into<BigInt>,
    limits: &BallLimits,
) -> CentralizerReport {
    let ball = component_ball(g, v, n, limits);
    if ball.complete {
        let local = ball.to_gbs_graph(g);
        let names: Vec<String> = ball
            .tree_edge_set()
            .iter()
            .map(|e| g.dev_edge_name(e))
            .collect();
        let tree: Vec<EdgeId> = names.iter().map(|n| local.edge(n).unwrap()).collect();
        let presentation = pi1_presentation_with_tree(&local, &tree);
        CentralizerReport {
            ball,
            presentation: Some(presentation),
            status: BallStatus::Complete,
        }
    } else {
        CentralizerReport {
            ball,
            presentation: None,
            status: BallStatus::Truncated,
        }
    }
}

/// Tests whether `w`, closed at `v`, commutes with `z_v^n` by lifting its
/// reduced form to the development: the running index `n q1 ... qi` must be
/// divisible by `label(e'_{i+1})` at every step and return to `n`.
pub fn is_in_centralizer(g: &GbsGraph, w: &Word, v: VertexId, n: impl Into<BigInt>) -> Result<bool, WordError> {
    let n = n.into();
    let (a, b) = g.check_sound(w)?;
    if a != v || b != v {
        return Err(WordError::EndpointMismatch(format!(
            "word is not closed at {}",
            g.vertex_name(v)
        )));
    }
    let reduced = g.reduce_unchecked(w);
    let mut index = n.clone();
    for &e in reduced.edges() {
        let (q, r) = index.div_rem(g.label(e.reverse()));
        if !r.is_zero() {
            return Ok(false);
        }
        index = q * g.label(e);
    }
    Ok(index == n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjugacy {
    /// A development path from `(v, n)` to `(u, m)`; read as a word `P`, it
    /// satisfies `z_v^n = P z_u^m P^-1`.
    Yes(Vec<DevEdge>),
    No,
    Unknown,
}

/// Semidecides whether `z_v^n` and `z_u^m` are conjugate.
pub fn elliptic_conjugate(
    g: &GbsGraph,
    v: VertexId,
    n: impl Into<BigInt>,
    u: VertexId,
    m: impl Into<BigInt>,
    limits: &BallLimits,
) -> Conjugacy {
    let from = DevVertex { vertex: v, index: n.into() };
    let to = DevVertex { vertex: u, index: m.into() };
    let left = component_ball(g, from.vertex, from.index.clone(), limits);
    if let Some(path) = left.path_to(&to) {
        return Conjugacy::Yes(path);
    }
    if left.complete {
        return Conjugacy::No;
    }
    let right = component_ball(g, to.vertex, to.index.clone(), limits);
    if let Some(path) = right.path_to(&from) {
        return Conjugacy::Yes(path.iter().rev().map(DevEdge::reverse).collect());
    }
    if right.complete {
        Conjugacy::No
    } else {
        Conjugacy::Unknown
    }
}

/// Word of a development path in the base group.
pub fn dev_path_word(g: &GbsGraph, start: VertexId, path: &[DevEdge]) -> Word {
    let edges: Vec<EdgeId> = path.iter().map(|e| e.edge).collect();
    g.path_word(start, &edges)
}

impl fmt::Display for Conjugacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conjugacy::Yes(p) => write!(f, "yes ({} development edges)", p.len()),
            Conjugacy::No => f.write_str("no"),
            Conjugacy::Unknown => f.write_str("unknown"),
        }
    }
}
