//! Symbolic computation with graphs of groups whose edge groups are
//! infinite cyclic.
//!
//! * [`graph`] and [`spec`]: Serre graphs, GBS graphs and root-decorated
//!   graph-of-groups specifications (`gogspec-v1`).
//! * [`word`]: the word problem via Britton reduction and canonical forms.
//! * [`development`]: centralizers of elliptic elements through the
//!   development of a GBS graph.
//! * [`core_extraction`]: the GBS core and its ℤ / ℤ² / Klein bottle /
//!   general classification.
//! * [`twists`]: relative endomorphisms and centralizer twists.
//! * [`report`]: the end-to-end analysis.

pub mod core_extraction;
pub mod development;
pub mod dot;
pub mod fixtures;
pub mod graph;
pub mod par;
pub mod presentation;
pub mod report;
pub mod spec;
pub mod sweep;
pub mod twists;
pub mod word;

pub use core_extraction::{
    classify_component, collapse_reduce, extract_core, ComponentClass, CoreDecomposition,
};
pub use development::{
    centralizer_of_power, component_ball, dev_incident, elliptic_conjugate, is_in_centralizer,
    BallLimits, BallStatus, CentralizerReport, ComponentBall, Conjugacy, DevEdge, DevVertex,
};
pub use graph::{EdgeId, GbsGraph, GraphError, SerreGraph, VertexId};
pub use presentation::{pi1_presentation, Presentation};
pub use report::{analyze, parse_machine_report, render_report, AnalysisReport, KernelCase, ReportFormat};
pub use spec::{parse_spec, validate, GraphOfGroupsSpec, SpecError, ValidationReport};
pub use twists::{
    check_equivalence_witness, search_identity_witness, twist_from_centralizers, CentralizerAssignment,
    RelativeEndomorphism, TwistError, WitnessSearch,
};
pub use word::{ElementKind, Word, WordError};
