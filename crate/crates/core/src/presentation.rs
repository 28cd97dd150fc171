//! Finite presentations of fundamental groups of finite GBS graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, GbsGraph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub generator: String,
    #[serde(with = "crate::spec::bigint_json")]
    pub exp: BigInt,
}

/// `lhs = rhs`, each side a product of generator powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    /// Edges set trivial by the spanning tree.
    pub tree_edges: Vec<String>,
}

fn term(generator: &str, exp: impl Into<BigInt>) -> Term {
    Term {
        generator: generator.to_string(),
        exp: exp.into(),
    }
}

/// Spanning forest chosen by BFS from the lexicographically smallest vertex,
/// scanning edges at each vertex by name. Returns declared orientations.
pub fn spanning_tree(g: &GbsGraph) -> Vec<EdgeId> {
    let s = g.serre();
    let mut order: Vec<VertexId> = s.vertices().collect();
    order.sort_by(|a, b| g.vertex_name(*a).cmp(g.vertex_name(*b)));
    let mut visited = vec![false; s.vertex_count()];
    let mut tree = Vec::new();
    for root in order {
        if visited[root.0 as usize] {
            continue;
        }
        visited[root.0 as usize] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let mut out: Vec<EdgeId> = s.out_edges(x).collect();
            out.sort_by(|a, b| {
                (s.geometric_name(*a), !a.is_forward()).cmp(&(s.geometric_name(*b), !b.is_forward()))
            });
            for e in out {
                let y = s.terminal(e);
                if !visited[y.0 as usize] {
                    visited[y.0 as usize] = true;
                    tree.push(if e.is_forward() { e } else { e.reverse() });
                    queue.push_back(y);
                }
            }
        }
    }
    tree
}

/// Presentation with generators `V` plus the edges off a deterministic
/// spanning tree, and one relation `u^label(e') e = e v^label(e)` per
/// geometric edge (tree edges deleted).
pub fn pi1_presentation(g: &GbsGraph) -> Presentation {
    pi1_presentation_with_tree(g, &spanning_tree(g))
}

pub fn pi1_presentation_with_tree(g: &GbsGraph, tree: &[EdgeId]) -> Presentation {
    let s = g.serre();
    let tree: BTreeSet<usize> = tree.iter().map(|e| e.geometric()).collect();
    let mut generators: Vec<String> = s.vertices().map(|v| g.vertex_name(v).to_string()).collect();
    let mut relations = Vec::new();
    let mut tree_edges = Vec::new();
    for e in s.forward_edges() {
        let name = s.geometric_name(e);
        let u = g.vertex_name(g.initial(e));
        let v = g.vertex_name(g.terminal(e));
        let from = term(u, g.label(e.reverse()).clone());
        let to = term(v, g.label(e).clone());
        if tree.contains(&e.geometric()) {
            tree_edges.push(name.to_string());
            relations.push(Relation {
                lhs: vec![from],
                rhs: vec![to],
            });
        } else {
            generators.push(name.to_string());
            relations.push(Relation {
                lhs: vec![from, term(name, 1)],
                rhs: vec![term(name, 1), to],
            });
        }
    }
    Presentation {
        generators,
        relations,
        tree_edges,
    }
}

fn write_side(f: &mut fmt::Formatter<'_>, side: &[Term]) -> fmt::Result {
    let mut first = true;
    for t in side.iter().filter(|t| !t.exp.is_zero()) {
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        if t.exp.is_one() {
            write!(f, "{}", t.generator)?;
        } else {
            write!(f, "{}^{}", t.generator, t.exp)?;
        }
    }
    if first {
        f.write_str("1")?;
    }
    Ok(())
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, &self.lhs)?;
        f.write_str(" = ")?;
        write_side(f, &self.rhs)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{} |", self.generators.join(", "))?;
        for (i, r) in self.relations.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{r}")?;
        }
        f.write_str(">")
    }
}
