//! Small named graphs used by tests, benches and documentation.

use crate::graph::GbsGraph;
use crate::spec::{parse_spec, GraphOfGroupsSpec};

/// Baumslag-Solitar graph: one vertex `a`, one loop `t` with `a^m t = t a^n`.
pub fn baumslag_solitar(m: i64, n: i64) -> GbsGraph {
    let mut g = GbsGraph::new();
    g.add_vertex("a").unwrap();
    g.edge_by_name("t", "a", "a", m, n).unwrap();
    g
}

/// `BS(2,4) = <a, t | a^2 t = t a^4>`.
pub fn bs24() -> GbsGraph {
    baumslag_solitar(2, 4)
}

/// Two vertices `v, u`; `e1: v -> u` with labels (4, 12), `e2: v -> u` with
/// (3, 3), and the loop `e3` at `u` with (1, 24).
pub fn figure_graph() -> GbsGraph {
    let mut g = GbsGraph::new();
    g.add_vertex("v").unwrap();
    g.add_vertex("u").unwrap();
    g.edge_by_name("e1", "v", "u", 4, 12).unwrap();
    g.edge_by_name("e2", "v", "u", 3, 3).unwrap();
    g.edge_by_name("e3", "u", "u", 1, 24).unwrap();
    g
}

/// A single loop with the given labels.
pub fn loop_graph(from: i64, to: i64) -> GbsGraph {
    baumslag_solitar(from, to)
}

/// One edge `x: a -> b` with the given labels.
pub fn segment(from: i64, to: i64) -> GbsGraph {
    let mut g = GbsGraph::new();
    g.add_vertex("a").unwrap();
    g.add_vertex("b").unwrap();
    g.edge_by_name("x", "a", "b", from, to).unwrap();
    g
}

/// Three general vertices with roots `{r1, r2}`, `{r5}`, `{r3, r4}`: an
/// edge `r2 - r3`, a double edge `r1 - r5`, an edge `r3 - r4` and a loop at
/// `r4`.
pub const REDUCTION_SPEC: &str = r#"{
  "format": "gogspec-v1",
  "vertices": [
    {"id": "p", "kind": "general", "roots": ["r1", "r2"]},
    {"id": "q", "kind": "general", "roots": ["r5"]},
    {"id": "w", "kind": "general", "roots": ["r3", "r4"]}
  ],
  "edges": [
    {"id": "f1", "from": "p", "to": "w", "from_root": "r2", "from_exp": 2, "to_root": "r3", "to_exp": 3},
    {"id": "f2", "from": "p", "to": "q", "from_root": "r1", "from_exp": 1, "to_root": "r5", "to_exp": 2},
    {"id": "f3", "from": "p", "to": "q", "from_root": "r1", "from_exp": 3, "to_root": "r5", "to_exp": 1},
    {"id": "f4", "from": "w", "to": "w", "from_root": "r3", "from_exp": 2, "to_root": "r4", "to_exp": 5},
    {"id": "f5", "from": "w", "to": "w", "from_root": "r4", "from_exp": 2, "to_root": "r4", "to_exp": 3}
  ]
}"#;

pub fn reduction_spec() -> GraphOfGroupsSpec {
    parse_spec(REDUCTION_SPEC).expect("fixture parses")
}
