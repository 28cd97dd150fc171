use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use gbs_core::core_extraction::{classify_component, extract_core};
use gbs_core::development::{
    centralizer_of_power, dev_path_word, elliptic_conjugate, BallLimits, BallStatus, Conjugacy,
};
use gbs_core::dot::export_dot;
use gbs_core::graph::{GbsGraph, VertexId};
use gbs_core::report::{analyze, render_report, ReportFormat};
use gbs_core::spec::{parse_spec, parse_spec_unvalidated, validate, GraphOfGroupsSpec};
use gbs_core::twists::{centralizer_elements, twist_from_centralizers, CentralizerAssignment};
use gbs_core::word::ElementKind;
use num_bigint::BigInt;
use thiserror::Error;

/// Samples per root for `twist --check-fixes-centralizers`.
const FIX_SAMPLES: usize = 12;

#[derive(Parser)]
#[command(name = "gbs", version, about = "Graphs of groups with cyclic edge groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Limits {
    /// Maximum number of development vertices explored.
    #[arg(long, default_value_t = 256)]
    max_vertices: usize,
    /// Maximum absolute development index explored.
    #[arg(long, default_value = "1000000000")]
    max_index: BigInt,
}

impl Limits {
    fn ball(&self) -> Result<BallLimits, CliError> {
        if self.max_vertices == 0 || self.max_index <= BigInt::from(0) {
            return Err(CliError::Invalid("limits must be positive".into()));
        }
        Ok(BallLimits::new(self.max_vertices, self.max_index.clone()))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph-of-groups document and list every violated invariant.
    Validate { file: PathBuf },
    /// Print the GBS core and its connected components.
    Core { file: PathBuf },
    /// Classify each core component as Z, Z2, KleinBottle or GeneralGBS.
    Classify { file: PathBuf },
    /// Britton-reduce a word and print its canonical form.
    Reduce {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Decide whether two words represent the same element.
    Equal {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Centralizer of a power of a vertex generator.
    Centralizer {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, allow_hyphen_values = true)]
        power: BigInt,
        #[command(flatten)]
        limits: Limits,
    },
    /// Decide conjugacy of elliptic powers, given as `v,n,u,m`.
    Conjugate {
        file: PathBuf,
        #[arg(long, required = true, allow_hyphen_values = true)]
        pairs: Vec<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Build the centralizer twist given by `root=word` assignments.
    Twist {
        file: PathBuf,
        #[arg(long = "twist", value_name = "ROOT=WORD")]
        twists: Vec<String>,
        /// Also test the twist on sampled elements of each root's centralizer.
        #[arg(long)]
        check_fixes_centralizers: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Full analysis report.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the GBS core as Graphviz DOT to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GraphOfGroupsSpec, CliError> {
    parse_spec(&read(path)?).map_err(invalid)
}

/// Words are written over the GBS core, whose vertices are the roots.
fn load_core(path: &Path) -> Result<GbsGraph, CliError> {
    Ok(extract_core(&load(path)?).core)
}

fn vertex(g: &GbsGraph, name: &str) -> Result<VertexId, CliError> {
    g.vertex(name)
        .ok_or_else(|| CliError::Invalid(format!("unknown root `{name}`")))
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut out = String::new();
    match cli.command {
        Command::Validate { file } => {
            let spec = parse_spec_unvalidated(&read(&file)?).map_err(invalid)?;
            let report = validate(&spec);
            if !report.is_valid() {
                let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
                return Err(CliError::Invalid(lines.join("\n")));
            }
            out.push_str("valid\n");
        }
        Command::Core { file } => {
            let d = extract_core(&load(&file)?);
            out.push_str(&format!("k = {}\n", d.k()));
            for (i, c) in d.components.iter().enumerate() {
                out.push_str(&format!("component {i}: {}\n", c.graph));
            }
        }
        Command::Classify { file } => {
            let d = extract_core(&load(&file)?);
            for (i, c) in d.components.iter().enumerate() {
                out.push_str(&format!(
                    "component {i} {{{}}}: {}\n",
                    c.vertices.join(", "),
                    classify_component(&c.graph)
                ));
            }
        }
        Command::Reduce { file, word } => {
            let g = load_core(&file)?;
            let w = g.parse_word(&word).map_err(invalid)?;
            let reduced = g.britton_reduce(&w).map_err(invalid)?;
            let canonical = g.canonical_form(&w).map_err(invalid)?;
            out.push_str(&format!("reduced: {}\n", g.display(&reduced)));
            out.push_str(&format!("canonical: {}\n", g.display(&canonical)));
            let kind = match g.classify_element(&w) {
                Ok(ElementKind::Elliptic) => "elliptic",
                Ok(ElementKind::Hyperbolic) => "hyperbolic",
                Err(_) => "not a closed word",
            };
            out.push_str(&format!("kind: {kind}\n"));
        }
        Command::Equal { file, left, right } => {
            let g = load_core(&file)?;
            let l = g.parse_word(&left).map_err(invalid)?;
            let r = g.parse_word(&right).map_err(invalid)?;
            out.push_str(&format!("{}\n", g.equals(&l, &r).map_err(invalid)?));
        }
        Command::Centralizer {
            file,
            vertex: name,
            power,
            limits,
        } => {
            let g = load_core(&file)?;
            let v = vertex(&g, &name)?;
            if power == BigInt::from(0) {
                return Err(CliError::Invalid("power must be nonzero".into()));
            }
            let report = centralizer_of_power(&g, v, power.clone(), &limits.ball()?);
            let status = match report.status {
                BallStatus::Complete => "complete",
                BallStatus::Truncated => "truncated",
            };
            out.push_str(&format!("centralizer of {name}^{power}: {status}\n"));
            out.push_str(&format!(
                "ball: {} vertices, {} edges\n",
                report.ball.vertices.len(),
                report.ball.edges.len()
            ));
            if let Some(p) = &report.presentation {
                out.push_str(&format!("presentation: {p}\n"));
            }
            for w in report.ball.generator_words(&g) {
                out.push_str(&format!("generator: {}\n", g.display(&w)));
            }
        }
        Command::Conjugate { file, pairs, limits } => {
            let g = load_core(&file)?;
            let limits = limits.ball()?;
            for pair in pairs {
                let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
                let [v, n, u, m] = parts[..] else {
                    return Err(CliError::Invalid(format!("expected v,n,u,m, got `{pair}`")));
                };
                let (vi, ui) = (vertex(&g, v)?, vertex(&g, u)?);
                let parse = |s: &str| {
                    s.parse::<BigInt>()
                        .ok()
                        .filter(|k| *k != BigInt::from(0))
                        .ok_or_else(|| CliError::Invalid(format!("bad nonzero power `{s}`")))
                };
                let (n, m) = (parse(n)?, parse(m)?);
                let answer = match elliptic_conjugate(&g, vi, n.clone(), ui, m.clone(), &limits) {
                    Conjugacy::Yes(path) => {
                        format!("yes, conjugator {}", g.display(&dev_path_word(&g, vi, &path)))
                    }
                    Conjugacy::No => "no".to_string(),
                    Conjugacy::Unknown => "unknown (exploration limits reached)".to_string(),
                };
                out.push_str(&format!("{v}^{n} ~ {u}^{m}: {answer}\n"));
            }
        }
        Command::Twist {
            file,
            twists,
            check_fixes_centralizers,
            limits,
        } => {
            let g = Arc::new(load_core(&file)?);
            let mut pairs = Vec::new();
            for t in &twists {
                let (root, word) = t
                    .split_once('=')
                    .ok_or_else(|| CliError::Invalid(format!("expected root=word, got `{t}`")))?;
                pairs.push((root.trim(), word.trim()));
            }
            let c = CentralizerAssignment::from_strings(&g, &pairs).map_err(invalid)?;
            let (theta, theta_inv) = twist_from_centralizers(&g, &c).map_err(invalid)?;
            for (label, t) in [("theta", &theta), ("theta^-1", &theta_inv)] {
                out.push_str(&format!("{label}:\n"));
                for e in g.serre().forward_edges() {
                    out.push_str(&format!("  {} -> {}\n", g.edge_name(e), g.display(t.image(e))));
                }
            }
            if check_fixes_centralizers {
                let limits = limits.ball()?;
                for v in g.serre().vertices() {
                    let samples = centralizer_elements(&g, v, 1, &limits, 6, FIX_SAMPLES);
                    let fixed = theta.fixes_centralizer_check(v, 1, &samples).map_err(invalid)?;
                    out.push_str(&format!(
                        "fixes C({}) on {} samples: {fixed}\n",
                        g.vertex_name(v),
                        samples.len()
                    ));
                }
            }
        }
        Command::Analyze {
            file,
            format,
            dot,
            limits,
        } => {
            let spec = load(&file)?;
            let report = analyze(&spec, &limits.ball()?).map_err(invalid)?;
            let format = match format {
                Format::Text => ReportFormat::Text,
                Format::Machine => ReportFormat::Machine,
            };
            out.push_str(&render_report(&report, format));
            if let Some(path) = dot {
                let core = extract_core(&spec).core;
                fs::write(&path, export_dot(&core, "core"))
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
