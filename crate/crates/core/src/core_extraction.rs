//! GBS core of a root-decorated graph of groups and the classification of
//! its components.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, GbsGraph, VertexId};
use crate::spec::GraphOfGroupsSpec;

/// One connected component of the core, with vertices and edges sorted by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreComponent {
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub graph: GbsGraph,
}

#[derive(Clone, Debug)]
pub struct CoreDecomposition {
    /// Vertices are the declared roots; each spec edge is re-attached at the
    /// roots it is glued to, with the gluing exponents as labels.
    pub core: GbsGraph,
    /// Ordered by smallest vertex name.
    pub components: Vec<CoreComponent>,
}

impl CoreDecomposition {
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, root: &str) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.vertices.iter().any(|v| v == root))
    }
}

/// Builds the GBS core. Assumes `spec` is valid.
pub fn extract_core(spec: &GraphOfGroupsSpec) -> CoreDecomposition {
    let mut core = GbsGraph::new();
    for r in spec.roots() {
        core.add_vertex(&r.id).expect("root ids are unique in a valid spec");
    }
    for e in &spec.edges {
        let from = core.vertex(&e.from_root).expect("validated");
        let to = core.vertex(&e.to_root).expect("validated");
        core.add_edge(&e.id, from, to, e.from_exp.clone(), e.to_exp.clone())
            .expect("validated");
    }
    let components = split_components(&core);
    CoreDecomposition { core, components }
}

pub fn split_components(g: &GbsGraph) -> Vec<CoreComponent> {
    let mut comps: Vec<CoreComponent> = g
        .serre()
        .components()
        .into_iter()
        .map(|vs| {
            let graph = g.subgraph(&vs);
            let vertices: Vec<String> = graph
                .serre()
                .vertices()
                .map(|v| graph.vertex_name(v).to_string())
                .collect();
            let edges: Vec<String> = graph
                .serre()
                .forward_edges()
                .map(|e| graph.serre().geometric_name(e).to_string())
                .collect();
            CoreComponent {
                vertices,
                edges,
                graph,
            }
        })
        .collect();
    comps.sort_by(|a, b| a.vertices[0].cmp(&b.vertices[0]));
    comps
}

/// Record of one collapse: `eliminated = kept^power`, read off `edge`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseStep {
    /// The oriented edge collapsed, from `kept` to `eliminated`, as named in
    /// the graph before the step.
    pub edge: String,
    pub kept: String,
    pub eliminated: String,
    pub power: BigInt,
}

struct EdgeRec {
    name: String,
    from: usize,
    to: usize,
    from_label: BigInt,
    to_label: BigInt,
}

/// Performs the lexicographically first collapse, if any: a non-loop edge
/// with label ±1 at one end. That end's vertex `y` is eliminated through
/// `y = x^(label at x * label at y)` and every other edge end at `y` is moved
/// to `x` with its label multiplied by the same factor. Loops are never
/// collapsed.
pub fn collapse_once(g: &GbsGraph) -> Option<(GbsGraph, CollapseStep)> {
    let s = g.serre();
    let mut best: Option<(String, EdgeId)> = None;
    for e in s.edges() {
        if s.is_loop(e) || !g.label(e).abs().is_one() {
            continue;
        }
        let name = g.edge_name(e);
        let key = (s.geometric_name(e).to_string(), !e.is_forward());
        let better = match &best {
            None => true,
            Some((_, b)) => key < (s.geometric_name(*b).to_string(), !b.is_forward()),
        };
        if better {
            best = Some((name, e));
        }
    }
    let (name, e) = best?;
    let x = g.initial(e);
    let y = g.terminal(e);
    let factor = g.label(e.reverse()) * g.label(e);

    let mut names: Vec<String> = s.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    let mut recs: Vec<EdgeRec> = s
        .forward_edges()
        .filter(|f| f.geometric() != e.geometric())
        .map(|f| EdgeRec {
            name: s.geometric_name(f).to_string(),
            from: g.initial(f).0 as usize,
            to: g.terminal(f).0 as usize,
            from_label: g.label(f.reverse()).clone(),
            to_label: g.label(f).clone(),
        })
        .collect();
    let (xi, yi) = (x.0 as usize, y.0 as usize);
    for r in &mut recs {
        if r.from == yi {
            r.from = xi;
            r.from_label *= &factor;
        }
        if r.to == yi {
            r.to = xi;
            r.to_label *= &factor;
        }
    }
    let step = CollapseStep {
        edge: name,
        kept: names[xi].clone(),
        eliminated: names[yi].clone(),
        power: factor,
    };
    names.remove(yi);
    let remap = |i: usize| if i > yi { i - 1 } else { i };
    let mut out = GbsGraph::new();
    for n in &names {
        out.add_vertex(n).unwrap();
    }
    for r in recs {
        out.add_edge(
            &r.name,
            VertexId(remap(r.from) as u32),
            VertexId(remap(r.to) as u32),
            r.from_label,
            r.to_label,
        )
        .unwrap();
    }
    Some((out, step))
}

/// Collapses until no ±1-labelled non-loop edge remains; returns the steps.
pub fn collapse_reduce_traced(g: &GbsGraph) -> (GbsGraph, Vec<CollapseStep>) {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    while let Some((next, step)) = collapse_once(&cur) {
        cur = next;
        steps.push(step);
    }
    (cur, steps)
}

pub fn collapse_reduce(g: &GbsGraph) -> GbsGraph {
    collapse_reduce_traced(g).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ComponentClass {
    Z,
    Z2,
    KleinBottle,
    GeneralGBS,
}

impl fmt::Display for ComponentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentClass::Z => "Z",
            ComponentClass::Z2 => "Z2",
            ComponentClass::KleinBottle => "KleinBottle",
            ComponentClass::GeneralGBS => "GeneralGBS",
        })
    }
}

/// Classifies a connected GBS graph by the shape of its collapse-reduced form.
pub fn classify_component(g: &GbsGraph) -> ComponentClass {
    let r = collapse_reduce(g);
    let s = r.serre();
    match (s.vertex_count(), s.edge_count() / 2) {
        (1, 0) => ComponentClass::Z,
        (1, 1) => {
            let e = EdgeId(0);
            let product = g_product(&r, e);
            if product.is_one() {
                ComponentClass::Z2
            } else if (-product).is_one() {
                ComponentClass::KleinBottle
            } else {
                ComponentClass::GeneralGBS
            }
        }
        (2, 1) => {
            let e = EdgeId(0);
            let two = BigInt::from(2);
            if r.label(e).abs() == two && r.label(e.reverse()).abs() == two {
                ComponentClass::KleinBottle
            } else {
                ComponentClass::GeneralGBS
            }
        }
        _ => ComponentClass::GeneralGBS,
    }
}

fn g_product(g: &GbsGraph, e: EdgeId) -> BigInt {
    g.label(e) * g.label(e.reverse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bs24, loop_graph, reduction_spec, segment};
    use crate::spec::parse_spec;

    fn shape(g: &GbsGraph) -> (usize, usize) {
        (g.serre().vertex_count(), g.serre().edge_count() / 2)
    }

    #[test]
    fn reduction_figure_components() {
        let spec = reduction_spec();
        let d = extract_core(&spec);
        assert_eq!(d.k(), 2);
        assert_eq!(d.components[0].vertices, vec!["r1", "r5"]);
        assert_eq!(d.components[0].edges, vec!["f2", "f3"]);
        assert_eq!(d.components[1].vertices, vec!["r2", "r3", "r4"]);
        assert_eq!(d.components[1].edges, vec!["f1", "f4", "f5"]);
    }

    #[test]
    fn pure_gbs_is_its_own_core() {
        let g = bs24();
        let d = extract_core(&GraphOfGroupsSpec::from_gbs(&g));
        assert_eq!(d.k(), 1);
        assert_eq!(d.core, g);
    }

    #[test]
    fn edgeless_general_vertices() {
        let spec = parse_spec(
            r#"{"format":"gogspec-v1","vertices":[
                {"id":"v","kind":"general","roots":["r"]},
                {"id":"w","kind":"general","roots":["s"]}],"edges":[]}"#,
        )
        .unwrap();
        let d = extract_core(&spec);
        assert_eq!(d.k(), 2);
        assert!(d.components.iter().all(|c| c.edges.is_empty()));
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(shape(&collapse_reduce(&segment(1, 5))), (1, 0));
        assert_eq!(collapse_reduce(&bs24()), bs24());

        let mut path = GbsGraph::new();
        for v in ["a", "b", "c"] {
            path.add_vertex(v).unwrap();
        }
        path.edge_by_name("x", "a", "b", 1, 2).unwrap();
        path.edge_by_name("y", "b", "c", 1, 3).unwrap();
        let (r, steps) = collapse_reduce_traced(&path);
        assert_eq!(shape(&r), (1, 0));
        assert_eq!(steps.len(), 2);
    }

    #[test]
    fn collapse_rewrites_labels() {
        // a -x(2,1)-> b, loop l at b with (3, 5): b = a^2, so the loop becomes (6, 10) at a.
        let mut g = GbsGraph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        g.edge_by_name("x", "a", "b", 2, 1).unwrap();
        g.edge_by_name("l", "b", "b", 3, 5).unwrap();
        let (r, steps) = collapse_reduce_traced(&g);
        assert_eq!(steps[0].eliminated, "b");
        assert_eq!(steps[0].power, BigInt::from(2));
        assert_eq!(r.to_string(), "vertices {a}; l: a -> a (6, 10)");
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_component(&loop_graph(1, 1)), ComponentClass::Z2);
        assert_eq!(classify_component(&loop_graph(1, -1)), ComponentClass::KleinBottle);
        assert_eq!(classify_component(&segment(2, 2)), ComponentClass::KleinBottle);
        assert_eq!(classify_component(&bs24()), ComponentClass::GeneralGBS);
        assert_eq!(classify_component(&segment(1, 7)), ComponentClass::Z);
        assert_eq!(classify_component(&segment(2, 3)), ComponentClass::GeneralGBS);
    }
}
