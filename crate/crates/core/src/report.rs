//! End-to-end analysis of a root-decorated graph of groups: the GBS core,
//! its component classes, per-root kernel cases and centralizer summaries,
//! and the shape of the resulting exact sequence of relative outer
//! automorphism groups.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::core_extraction::{classify_component, extract_core, ComponentClass};
use crate::development::{centralizer_of_power, BallLimits, BallStatus};
use crate::par;
use crate::presentation::{pi1_presentation, Presentation};
use crate::spec::{validate, GraphOfGroupsSpec, SpecError};

pub const REPORT_FORMAT: &str = "report-v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReportFormat {
    Text,
    Machine,
}

/// Which kernel case a non-cyclic root falls in, by the class of its core
/// component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelCase {
    /// Component is `Z`; `c_ρ` is confined to `Z`.
    Case1,
    /// Component is `Z^2` or the Klein bottle group; `c_ρ` is confined to
    /// `Z` or `Z^2`.
    Case2,
    /// General component; `c_ρ` is confined to `Z`.
    Case3,
}

impl KernelCase {
    pub fn of(class: ComponentClass) -> KernelCase {
        match class {
            ComponentClass::Z => KernelCase::Case1,
            ComponentClass::Z2 | ComponentClass::KleinBottle => KernelCase::Case2,
            ComponentClass::GeneralGBS => KernelCase::Case3,
        }
    }

    pub fn constraint(self) -> &'static str {
        match self {
            KernelCase::Case1 | KernelCase::Case3 => "Z",
            KernelCase::Case2 => "Z or Z^2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentReport {
    pub id: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<String>,
    pub class: ComponentClass,
    /// Present for general components.
    pub presentation: Option<Presentation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallSummary {
    pub status: BallStatus,
    pub vertices: usize,
    pub edges: usize,
    pub presentation: Option<Presentation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootReport {
    pub root: String,
    pub vertex: String,
    pub component: usize,
    pub case: KernelCase,
    pub constraint: String,
    /// Development ball of `(ρ, 1)` in the root's core component.
    pub centralizer: BallSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub format: String,
    pub cyclic_roots: Vec<String>,
    pub non_cyclic_roots: Vec<String>,
    pub components: Vec<ComponentReport>,
    pub k: usize,
    pub s: usize,
    pub t: usize,
    pub ignored: usize,
    pub per_root: Vec<RootReport>,
    pub kernel_rank: String,
    pub limits: BallLimits,
}

impl AnalysisReport {
    /// `1 -> Z -> prod C(ρ) -> Out^R(G) -> prod Out^R(G_i) x (D_inf)^t -> 1`.
    pub fn exact_sequence(&self) -> String {
        let domain = if self.non_cyclic_roots.is_empty() {
            "1".to_string()
        } else {
            self.non_cyclic_roots
                .iter()
                .map(|r| format!("C({r})"))
                .collect::<Vec<_>>()
                .join(" x ")
        };
        let mut factors: Vec<String> = self
            .components
            .iter()
            .filter(|c| c.class == ComponentClass::GeneralGBS)
            .map(|c| format!("Out^R(G{})", c.id))
            .collect();
        if self.t > 0 {
            factors.push(format!("(D_inf)^{}", self.t));
        }
        let codomain = if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join(" x ")
        };
        format!("1 -> Z -> {domain} -> Out^R(G) -> {codomain} -> 1")
    }
}

/// Runs the full pipeline. The result depends only on the graph of groups up to the
/// order of its edge and vertex lists, and on `limits`.
pub fn analyze(spec: &GraphOfGroupsSpec, limits: &BallLimits) -> Result<AnalysisReport, SpecError> {
    if let Some(v) = validate(spec).violations.into_iter().next() {
        return Err(v.into());
    }
    let decomposition = extract_core(spec);
    let components: Vec<ComponentReport> = par::map(&decomposition.components, |c| {
        let class = classify_component(&c.graph);
        ComponentReport {
            id: 0,
            vertices: c.vertices.clone(),
            edges: c.edges.clone(),
            class,
            presentation: (class == ComponentClass::GeneralGBS).then(|| pi1_presentation(&c.graph)),
        }
    })
    .into_iter()
    .enumerate()
    .map(|(id, c)| ComponentReport { id, ..c })
    .collect();

    let mut cyclic_roots = Vec::new();
    let mut non_cyclic = Vec::new();
    for r in spec.roots() {
        if spec.is_cyclic_root(&r) {
            cyclic_roots.push(r.id);
        } else {
            non_cyclic.push(r);
        }
    }
    cyclic_roots.sort();
    non_cyclic.sort_by(|a, b| a.id.cmp(&b.id));

    let per_root = par::map(&non_cyclic, |r| {
        let id = decomposition.component_of(&r.id).expect("every root is a core vertex");
        let graph = &decomposition.components[id].graph;
        let case = KernelCase::of(components[id].class);
        let report = centralizer_of_power(graph, graph.vertex(&r.id).unwrap(), 1, limits);
        RootReport {
            root: r.id.clone(),
            vertex: r.vertex.clone(),
            component: id,
            case,
            constraint: case.constraint().to_string(),
            centralizer: BallSummary {
                status: report.status,
                vertices: report.ball.vertices.len(),
                edges: report.ball.edges.len(),
                presentation: report.presentation,
            },
        }
    });

    let count = |pred: fn(ComponentClass) -> bool| components.iter().filter(|c| pred(c.class)).count();
    Ok(AnalysisReport {
        format: REPORT_FORMAT.to_string(),
        cyclic_roots,
        non_cyclic_roots: non_cyclic.into_iter().map(|r| r.id).collect(),
        k: components.len(),
        s: count(|c| c == ComponentClass::GeneralGBS),
        t: count(|c| matches!(c, ComponentClass::Z2 | ComponentClass::KleinBottle)),
        ignored: count(|c| c == ComponentClass::Z),
        components,
        per_root,
        kernel_rank: "not computed".to_string(),
        limits: limits.clone(),
    })
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

pub fn render_report(r: &AnalysisReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Machine => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => render_text(r),
    }
}

fn render_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    writeln!(out, "{}", r.format).unwrap();
    writeln!(out, "cyclic roots: {}", braces(&r.cyclic_roots)).unwrap();
    writeln!(out, "non-cyclic roots: {}", braces(&r.non_cyclic_roots)).unwrap();
    writeln!(out, "components: {}", r.k).unwrap();
    writeln!(out, "k = {}", r.k).unwrap();
    writeln!(out, "s = {}", r.s).unwrap();
    writeln!(out, "t = {}", r.t).unwrap();
    writeln!(out, "ignored = {}", r.ignored).unwrap();
    for c in &r.components {
        write!(
            out,
            "component {}: vertices {}; edges {}; class {}",
            c.id,
            braces(&c.vertices),
            braces(&c.edges),
            c.class
        )
        .unwrap();
        if let Some(p) = &c.presentation {
            write!(out, "; presentation {p}").unwrap();
        }
        out.push('\n');
    }
    for p in &r.per_root {
        let ball = &p.centralizer;
        write!(
            out,
            "root {} (vertex {}): component {}, {:?}, c_{} confined to {}; centralizer ball {:?} with {} vertices and {} edges",
            p.root, p.vertex, p.component, p.case, p.root, p.constraint, ball.status, ball.vertices, ball.edges
        )
        .unwrap();
        if let Some(pres) = &ball.presentation {
            write!(out, ", presentation {pres}").unwrap();
        }
        out.push('\n');
    }
    writeln!(out, "exact sequence: {}", r.exact_sequence()).unwrap();
    writeln!(out, "rank(Z): {}", r.kernel_rank).unwrap();
    writeln!(
        out,
        "limits: max-vertices {}, max-index {}",
        r.limits.max_vertices, r.limits.max_abs_index
    )
    .unwrap();
    out
}

pub fn parse_machine_report(text: &str) -> Result<AnalysisReport, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{bs24, reduction_spec};
    use crate::spec::parse_spec;

    fn run(text: &str) -> AnalysisReport {
        analyze(&parse_spec(text).unwrap(), &BallLimits::default()).unwrap()
    }

    #[test]
    fn bs24_report() {
        let r = analyze(&GraphOfGroupsSpec::from_gbs(&bs24()), &BallLimits::default()).unwrap();
        assert_eq!(r.cyclic_roots, vec!["a"]);
        assert!(r.non_cyclic_roots.is_empty());
        assert_eq!((r.k, r.s, r.t, r.ignored), (1, 1, 0, 0));
        assert_eq!(r.components[0].class, ComponentClass::GeneralGBS);
        let text = render_report(&r, ReportFormat::Text);
        for line in ["components: 1", "s = 1", "t = 0", "rank(Z): not computed"] {
            assert!(text.lines().any(|l| l == line), "missing {line}");
        }
    }

    #[test]
    fn segment_component_is_case1() {
        let r = run(r#"{"format":"gogspec-v1","vertices":[
            {"id":"w","kind":"general","roots":["r"]},{"id":"v","kind":"cyclic"}],
            "edges":[{"id":"x","from":"v","to":"w","from_root":"v","from_exp":1,"to_root":"r","to_exp":2}]}"#);
        assert_eq!((r.s, r.t, r.ignored), (0, 0, 1));
        assert_eq!(r.per_root.len(), 1);
        assert_eq!(r.per_root[0].case, KernelCase::Case1);
        assert_eq!(r.per_root[0].constraint, "Z");
    }

    #[test]
    fn loop_component_is_case2() {
        let r = run(r#"{"format":"gogspec-v1","vertices":[{"id":"w","kind":"general","roots":["r"]}],
            "edges":[{"id":"l","from":"w","to":"w","from_root":"r","from_exp":1,"to_root":"r","to_exp":1}]}"#);
        assert_eq!((r.s, r.t, r.ignored), (0, 1, 0));
        assert_eq!(r.per_root[0].case, KernelCase::Case2);
        assert_eq!(r.per_root[0].constraint, "Z or Z^2");
        assert!(r.exact_sequence().contains("(D_inf)^1"));
    }

    #[test]
    fn edgeless_spec() {
        let r = run(r#"{"format":"gogspec-v1","vertices":[
            {"id":"w","kind":"general","roots":["r1","r2","r3"]},{"id":"v","kind":"cyclic"}],"edges":[]}"#);
        let text = render_report(&r, ReportFormat::Text);
        assert!(text.lines().any(|l| l == "k = 4"));
        assert!(r.components.iter().all(|c| c.class == ComponentClass::Z));
    }

    #[test]
    fn machine_round_trip() {
        let r = analyze(&reduction_spec(), &BallLimits::new(32, 1_000_000)).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(r.s + r.t + r.ignored, r.k);
        let text = render_report(&r, ReportFormat::Machine);
        assert_eq!(parse_machine_report(&text).unwrap(), r);
    }
}
