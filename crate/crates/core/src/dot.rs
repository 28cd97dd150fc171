//! Graphviz export. Graphs are written undirected; each geometric edge
//! appears once in its declared orientation with the label at its initial
//! vertex as `taillabel` and the label at its terminal vertex as `headlabel`.

use std::fmt::Write;

use crate::development::ComponentBall;
use crate::graph::GbsGraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn export_dot(g: &GbsGraph, name: &str) -> String {
    let s = g.serre();
    let mut out = String::new();
    writeln!(out, "graph {} {{", quote(name)).unwrap();
    for v in s.vertices() {
        writeln!(out, "  {};", quote(g.vertex_name(v))).unwrap();
    }
    for e in s.forward_edges() {
        writeln!(
            out,
            "  {} -- {} [label={}, taillabel={}, headlabel={}];",
            quote(g.vertex_name(g.initial(e))),
            quote(g.vertex_name(g.terminal(e))),
            quote(s.geometric_name(e)),
            quote(&g.label(e.reverse()).to_string()),
            quote(&g.label(e).to_string()),
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

/// A development ball, drawn with vertices `(v,n)` and edges `(e,n)`.
pub fn export_ball_dot(g: &GbsGraph, ball: &ComponentBall, name: &str) -> String {
    export_dot(&ball.to_gbs_graph(g), name)
}
