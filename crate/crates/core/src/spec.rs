//! Root-decorated graph-of-groups specifications and the `gogspec-v1` format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeId, GbsGraph, SerreGraph};

pub const SPEC_FORMAT: &str = "gogspec-v1";

/// Serde adapter writing big integers as bare JSON numbers.
pub(crate) mod bigint_json {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let num = serde_json::Number::from_str(&n.to_string()).map_err(serde::ser::Error::custom)?;
        num.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let num = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&num.to_string())
            .map_err(|_| D::Error::custom(format!("expected an integer, found {num}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Cyclic,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDecl {
    pub id: String,
    pub kind: VertexKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots: Option<Vec<String>>,
}

/// One document edge record; it defines both `e` and its reverse `e'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDecl {
    pub id: String,
    pub from: String,
    pub to: String,
    pub from_root: String,
    #[serde(with = "bigint_json")]
    pub from_exp: BigInt,
    pub to_root: String,
    #[serde(with = "bigint_json")]
    pub to_exp: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub id: String,
    pub vertex: String,
}

/// A finite graph of groups with infinite cyclic edge groups. Vertex groups
/// are opaque: all that is known about them is their declared roots and
/// which power of which root each edge group is glued onto.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphOfGroupsSpec {
    pub format: String,
    pub vertices: Vec<VertexDecl>,
    pub edges: Vec<EdgeDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    BadFormat(String),
    DuplicateVertex(String),
    /// Two records claim the same edge id, or an id collides with the `e'`
    /// reverse notation; either way the reverse involution is ill-defined.
    BadInvolution(String),
    UnknownVertex { edge: String, vertex: String },
    UnknownRoot { edge: String, root: String },
    /// The attaching root exists but belongs to another vertex.
    NonRootAttachment(String),
    ZeroLabel(String),
    CyclicRootCount(String),
    EmptyRoots(String),
    DuplicateRoot(String),
    NameClash(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadFormat(s) => write!(f, "unsupported format `{s}`"),
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex `{v}`"),
            Violation::BadInvolution(e) => write!(f, "bad reverse data for edge `{e}`"),
            Violation::UnknownVertex { edge, vertex } => {
                write!(f, "edge `{edge}` references unknown vertex `{vertex}`")
            }
            Violation::UnknownRoot { edge, root } => {
                write!(f, "edge `{edge}` references unknown root `{root}`")
            }
            Violation::NonRootAttachment(e) => {
                write!(f, "edge `{e}` attaches to a root of the wrong vertex")
            }
            Violation::ZeroLabel(e) => write!(f, "edge `{e}` has exponent 0"),
            Violation::CyclicRootCount(v) => {
                write!(f, "cyclic vertex `{v}` must have exactly one root, named after it")
            }
            Violation::EmptyRoots(v) => write!(f, "general vertex `{v}` declares no roots"),
            Violation::DuplicateRoot(r) => write!(f, "root `{r}` declared more than once"),
            Violation::NameClash(n) => write!(f, "`{n}` names both a root and an edge"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("zero exponent on edge `{0}`")]
    ZeroLabel(String),
    #[error("unknown symbol: {0}")]
    UnknownSymbol(String),
    #[error("bad reverse data: {0}")]
    BadInvolution(String),
    #[error("invalid specification: {0}")]
    Invalid(Violation),
}

impl From<Violation> for SpecError {
    fn from(v: Violation) -> Self {
        match v {
            Violation::ZeroLabel(e) => SpecError::ZeroLabel(e),
            Violation::BadInvolution(e) => SpecError::BadInvolution(e),
            v @ (Violation::UnknownVertex { .. }
            | Violation::UnknownRoot { .. }
            | Violation::NonRootAttachment(_)) => SpecError::UnknownSymbol(v.to_string()),
            Violation::BadFormat(s) => SpecError::Syntax(format!("unsupported format `{s}`")),
            other => SpecError::Invalid(other),
        }
    }
}

/// Parses a `gogspec-v1` document without checking its invariants; see
/// [`validate`].
pub fn parse_spec_unvalidated(text: &str) -> Result<GraphOfGroupsSpec, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Syntax(e.to_string()))
}

/// Parses and validates a `gogspec-v1` document.
pub fn parse_spec(text: &str) -> Result<GraphOfGroupsSpec, SpecError> {
    let spec = parse_spec_unvalidated(text)?;
    let report = validate(&spec);
    match report.violations.into_iter().next() {
        Some(v) => Err(v.into()),
        None => Ok(spec),
    }
}

pub fn serialize_spec(spec: &GraphOfGroupsSpec) -> String {
    serde_json::to_string_pretty(spec).expect("spec serializes")
}

/// Lists every violated invariant; an empty report means the graph of groups is valid.
pub fn validate(spec: &GraphOfGroupsSpec) -> ValidationReport {
    let mut out = Vec::new();
    if spec.format != SPEC_FORMAT {
        out.push(Violation::BadFormat(spec.format.clone()));
    }

    let mut vertex_roots: BTreeMap<&str, Vec<String>> = BTreeMap::new();
    let mut root_owner: BTreeMap<String, &str> = BTreeMap::new();
    for v in &spec.vertices {
        if vertex_roots.contains_key(v.id.as_str()) {
            out.push(Violation::DuplicateVertex(v.id.clone()));
            continue;
        }
        let roots = match (v.kind, &v.roots) {
            (VertexKind::Cyclic, None) => vec![v.id.clone()],
            (VertexKind::Cyclic, Some(rs)) => {
                if rs.len() != 1 || rs[0] != v.id {
                    out.push(Violation::CyclicRootCount(v.id.clone()));
                }
                vec![v.id.clone()]
            }
            (VertexKind::General, None) => {
                out.push(Violation::EmptyRoots(v.id.clone()));
                vec![]
            }
            (VertexKind::General, Some(rs)) => {
                if rs.is_empty() {
                    out.push(Violation::EmptyRoots(v.id.clone()));
                }
                rs.clone()
            }
        };
        for r in &roots {
            if root_owner.insert(r.clone(), v.id.as_str()).is_some() {
                out.push(Violation::DuplicateRoot(r.clone()));
            }
        }
        vertex_roots.insert(v.id.as_str(), roots);
    }

    let mut edge_ids: BTreeSet<&str> = BTreeSet::new();
    for e in &spec.edges {
        if e.id.ends_with('\'') || !edge_ids.insert(e.id.as_str()) {
            out.push(Violation::BadInvolution(e.id.clone()));
        }
        if root_owner.contains_key(&e.id) {
            out.push(Violation::NameClash(e.id.clone()));
        }
        // (oriented edge name, vertex, root, exponent) for the terminal end
        // of `e` and of `e'`.
        let ends = [
            (e.id.clone(), &e.to, &e.to_root, &e.to_exp),
            (format!("{}'", e.id), &e.from, &e.from_root, &e.from_exp),
        ];
        for (name, vertex, root, exp) in ends {
            if !vertex_roots.contains_key(vertex.as_str()) {
                out.push(Violation::UnknownVertex {
                    edge: name.clone(),
                    vertex: vertex.clone(),
                });
            } else {
                match root_owner.get(root) {
                    None => out.push(Violation::UnknownRoot {
                        edge: name.clone(),
                        root: root.clone(),
                    }),
                    Some(owner) if *owner != vertex.as_str() => {
                        out.push(Violation::NonRootAttachment(name.clone()))
                    }
                    Some(_) => {}
                }
            }
            if exp.is_zero() {
                out.push(Violation::ZeroLabel(name));
            }
        }
    }
    ValidationReport { violations: out }
}

impl GraphOfGroupsSpec {
    pub fn vertex_kind(&self, vertex: &str) -> Option<VertexKind> {
        self.vertices.iter().find(|v| v.id == vertex).map(|v| v.kind)
    }

    /// Declared roots of one vertex; a cyclic vertex has the implicit root
    /// named after itself.
    pub fn roots_of(&self, vertex: &VertexDecl) -> Vec<Root> {
        let ids = match (vertex.kind, &vertex.roots) {
            (VertexKind::Cyclic, _) => vec![vertex.id.clone()],
            (VertexKind::General, Some(rs)) => rs.clone(),
            (VertexKind::General, None) => vec![],
        };
        ids.into_iter()
            .map(|id| Root {
                id,
                vertex: vertex.id.clone(),
            })
            .collect()
    }

    /// All roots in declaration order.
    pub fn roots(&self) -> Vec<Root> {
        self.vertices.iter().flat_map(|v| self.roots_of(v)).collect()
    }

    pub fn is_cyclic_root(&self, root: &Root) -> bool {
        self.vertex_kind(&root.vertex) == Some(VertexKind::Cyclic)
    }

    /// The underlying Serre graph. Assumes a valid spec.
    pub fn graph(&self) -> SerreGraph {
        let mut g = SerreGraph::new();
        for v in &self.vertices {
            g.add_vertex(&v.id).expect("validated spec");
        }
        for e in &self.edges {
            let from = g.find_vertex(&e.from).expect("validated spec");
            let to = g.find_vertex(&e.to).expect("validated spec");
            g.add_edge(&e.id, from, to).expect("validated spec");
        }
        g
    }

    /// Root at the terminal vertex of an oriented edge of [`Self::graph`].
    pub fn attach_root(&self, e: EdgeId) -> &str {
        let d = &self.edges[e.geometric()];
        if e.is_forward() {
            &d.to_root
        } else {
            &d.from_root
        }
    }

    pub fn attach_exp(&self, e: EdgeId) -> &BigInt {
        let d = &self.edges[e.geometric()];
        if e.is_forward() {
            &d.to_exp
        } else {
            &d.from_exp
        }
    }

    /// Builds a spec from a GBS graph: one cyclic vertex per vertex.
    pub fn from_gbs(g: &GbsGraph) -> Self {
        let s = g.serre();
        GraphOfGroupsSpec {
            format: SPEC_FORMAT.to_string(),
            vertices: s
                .vertices()
                .map(|v| VertexDecl {
                    id: g.vertex_name(v).to_string(),
                    kind: VertexKind::Cyclic,
                    roots: None,
                })
                .collect(),
            edges: s
                .forward_edges()
                .map(|e| {
                    let from = g.vertex_name(g.initial(e)).to_string();
                    let to = g.vertex_name(g.terminal(e)).to_string();
                    EdgeDecl {
                        id: s.geometric_name(e).to_string(),
                        from_root: from.clone(),
                        to_root: to.clone(),
                        from,
                        to,
                        from_exp: g.label(e.reverse()).clone(),
                        to_exp: g.label(e).clone(),
                    }
                })
                .collect(),
        }
    }
}
