//! Serre graphs and GBS graphs.
//!
//! A [`SerreGraph`] stores each geometric edge once and derives both
//! orientations from it: oriented edge `2i` is the declared direction of
//! geometric edge `i` and `2i + 1` is its reverse. The reverse involution is
//! therefore `e ^ 1`, which has no fixed points by construction.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// An oriented edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl EdgeId {
    #[inline]
    pub fn reverse(self) -> EdgeId {
        EdgeId(self.0 ^ 1)
    }

    /// True for the orientation declared in the input.
    #[inline]
    pub fn is_forward(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub fn geometric(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("edge name `{0}` may not end with `'`")]
    ReservedEdgeName(String),
    #[error("name `{0}` is used both as a vertex and as an edge")]
    NameClash(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("label on `{0}` is zero")]
    ZeroLabel(String),
}

/// A finite graph in the sense of Serre: vertices, oriented edges, a
/// fixed-point-free reverse involution and an initial-vertex map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SerreGraph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    initial: Vec<VertexId>,
    vertex_lookup: HashMap<String, VertexId>,
    edge_lookup: HashMap<String, usize>,
}

impl SerreGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        if self.vertex_lookup.contains_key(name) {
            return Err(GraphError::DuplicateVertex(name.to_string()));
        }
        if self.edge_lookup.contains_key(name) {
            return Err(GraphError::NameClash(name.to_string()));
        }
        let id = VertexId(self.vertex_names.len() as u32);
        self.vertex_names.push(name.to_string());
        self.vertex_lookup.insert(name.to_string(), id);
        Ok(id)
    }

    /// Adds a geometric edge and returns its declared orientation.
    pub fn add_edge(
        &mut self,
        name: &str,
        from: VertexId,
        to: VertexId,
    ) -> Result<EdgeId, GraphError> {
        if name.ends_with('\'') {
            return Err(GraphError::ReservedEdgeName(name.to_string()));
        }
        if self.edge_lookup.contains_key(name) {
            return Err(GraphError::DuplicateEdge(name.to_string()));
        }
        if self.vertex_lookup.contains_key(name) {
            return Err(GraphError::NameClash(name.to_string()));
        }
        let geometric = self.edge_names.len();
        self.edge_names.push(name.to_string());
        self.edge_lookup.insert(name.to_string(), geometric);
        self.initial.push(from);
        self.initial.push(to);
        Ok(EdgeId(2 * geometric as u32))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    /// Number of oriented edges (twice the number of geometric edges).
    pub fn edge_count(&self) -> usize {
        self.initial.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_names.len() as u32).map(VertexId)
    }

    /// All oriented edges.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.initial.len() as u32).map(EdgeId)
    }

    /// One orientation per geometric edge, the declared one.
    pub fn forward_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edge_names.len() as u32).map(|i| EdgeId(2 * i))
    }

    pub fn initial(&self, e: EdgeId) -> VertexId {
        self.initial[e.index()]
    }

    pub fn terminal(&self, e: EdgeId) -> VertexId {
        self.initial[e.reverse().index()]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0 as usize]
    }

    /// Name of the geometric edge underlying `e`.
    pub fn geometric_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.geometric()]
    }

    /// `e` for declared orientations, `e'` for reverses.
    pub fn edge_name(&self, e: EdgeId) -> String {
        let base = self.geometric_name(e);
        if e.is_forward() {
            base.to_string()
        } else {
            format!("{base}'")
        }
    }

    pub fn find_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_lookup.get(name).copied()
    }

    /// Resolves `e` or `e'` to an oriented edge.
    pub fn find_edge(&self, token: &str) -> Option<EdgeId> {
        let (base, reversed) = match token.strip_suffix('\'') {
            Some(base) => (base, true),
            None => (token, false),
        };
        self.edge_lookup
            .get(base)
            .map(|&g| EdgeId(2 * g as u32 + reversed as u32))
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        self.initial(e) == self.terminal(e)
    }

    /// Oriented edges leaving `v`.
    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().filter(move |&e| self.initial(e) == v)
    }

    /// Oriented edges arriving at `v`.
    pub fn in_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().filter(move |&e| self.terminal(e) == v)
    }

    /// Connected components as sorted vertex lists, ordered by their first vertex.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in self.forward_edges() {
            let a = find(&mut parent, self.initial(e).0 as usize);
            let b = find(&mut parent, self.terminal(e).0 as usize);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<VertexId>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            let i = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[i].push(VertexId(v as u32));
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// A GBS graph: a Serre graph with a nonzero integer on every oriented edge.
///
/// `label(e)` is the exponent at `terminal(e)`: the relation carried by an
/// edge `e: u -> v` is `u^label(e') e = e v^label(e)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbsGraph {
    graph: SerreGraph,
    labels: Vec<BigInt>,
}

impl GbsGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        self.graph.add_vertex(name)
    }

    /// Adds an edge `from -> to`. `from_label` sits at `from` (the label of
    /// the reverse edge) and `to_label` at `to`.
    pub fn add_edge(
        &mut self,
        name: &str,
        from: VertexId,
        to: VertexId,
        from_label: impl Into<BigInt>,
        to_label: impl Into<BigInt>,
    ) -> Result<EdgeId, GraphError> {
        let from_label = from_label.into();
        let to_label = to_label.into();
        if to_label.is_zero() {
            return Err(GraphError::ZeroLabel(name.to_string()));
        }
        if from_label.is_zero() {
            return Err(GraphError::ZeroLabel(format!("{name}'")));
        }
        let e = self.graph.add_edge(name, from, to)?;
        self.labels.push(to_label);
        self.labels.push(from_label);
        Ok(e)
    }

    /// Convenience builder over vertex names; used heavily in tests and fixtures.
    pub fn edge_by_name(
        &mut self,
        name: &str,
        from: &str,
        to: &str,
        from_label: i64,
        to_label: i64,
    ) -> Result<EdgeId, GraphError> {
        let f = self
            .graph
            .find_vertex(from)
            .ok_or_else(|| GraphError::UnknownVertex(from.to_string()))?;
        let t = self
            .graph
            .find_vertex(to)
            .ok_or_else(|| GraphError::UnknownVertex(to.to_string()))?;
        self.add_edge(name, f, t, from_label, to_label)
    }

    pub fn serre(&self) -> &SerreGraph {
        &self.graph
    }

    pub fn label(&self, e: EdgeId) -> &BigInt {
        &self.labels[e.index()]
    }

    pub fn initial(&self, e: EdgeId) -> VertexId {
        self.graph.initial(e)
    }

    pub fn terminal(&self, e: EdgeId) -> VertexId {
        self.graph.terminal(e)
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.graph.find_vertex(name)
    }

    pub fn edge(&self, token: &str) -> Option<EdgeId> {
        self.graph.find_edge(token)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        self.graph.vertex_name(v)
    }

    pub fn edge_name(&self, e: EdgeId) -> String {
        self.graph.edge_name(e)
    }

    /// Induced sub-GBS graph on `vertices`, keeping edges with both ends
    /// inside. Vertices and edges are re-added sorted by name so the result
    /// does not depend on input order.
    pub fn subgraph(&self, vertices: &[VertexId]) -> GbsGraph {
        let mut names: Vec<&str> = vertices.iter().map(|&v| self.vertex_name(v)).collect();
        names.sort_unstable();
        let mut out = GbsGraph::new();
        for n in &names {
            out.add_vertex(n).expect("names unique in parent");
        }
        let inside: std::collections::HashSet<VertexId> = vertices.iter().copied().collect();
        let mut edges: Vec<EdgeId> = self
            .graph
            .forward_edges()
            .filter(|&e| inside.contains(&self.initial(e)) && inside.contains(&self.terminal(e)))
            .collect();
        edges.sort_by(|a, b| self.graph.geometric_name(*a).cmp(self.graph.geometric_name(*b)));
        for e in edges {
            let from = out.vertex(self.vertex_name(self.initial(e))).unwrap();
            let to = out.vertex(self.vertex_name(self.terminal(e))).unwrap();
            out.add_edge(
                self.graph.geometric_name(e),
                from,
                to,
                self.label(e.reverse()).clone(),
                self.label(e).clone(),
            )
            .expect("valid in parent");
        }
        out
    }
}

impl fmt::Display for GbsGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.graph.vertices().map(|v| self.vertex_name(v)).collect();
        write!(f, "vertices {{{}}}", names.join(", "))?;
        for e in self.graph.forward_edges() {
            write!(
                f,
                "; {}: {} -> {} ({}, {})",
                self.graph.geometric_name(e),
                self.vertex_name(self.initial(e)),
                self.vertex_name(self.terminal(e)),
                self.label(e.reverse()),
                self.label(e)
            )?;
        }
        Ok(())
    }
}
