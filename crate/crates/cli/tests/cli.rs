use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gbs_core::report::parse_machine_report;
use tempfile::TempDir;

const FIGURE: &str = r#"{"format":"gogspec-v1",
  "vertices":[{"id":"v","kind":"cyclic"},{"id":"u","kind":"cyclic"}],
  "edges":[
    {"id":"e1","from":"v","to":"u","from_root":"v","from_exp":4,"to_root":"u","to_exp":12},
    {"id":"e2","from":"v","to":"u","from_root":"v","from_exp":3,"to_root":"u","to_exp":3},
    {"id":"e3","from":"u","to":"u","from_root":"u","from_exp":1,"to_root":"u","to_exp":24}]}"#;

const BS24: &str = r#"{"format":"gogspec-v1","vertices":[{"id":"a","kind":"cyclic"}],
  "edges":[{"id":"t","from":"a","to":"a","from_root":"a","from_exp":2,"to_root":"a","to_exp":4}]}"#;

/// Two general vertices joined by one edge, so the core is the segment
/// `r - s` with labels 2 and 2.
const KLEIN: &str = r#"{"format":"gogspec-v1","vertices":[
    {"id":"p","kind":"general","roots":["r"]},
    {"id":"q","kind":"general","roots":["s"]}],
  "edges":[{"id":"f","from":"p","to":"q","from_root":"r","from_exp":2,"to_root":"s","to_exp":2}]}"#;

const BROKEN: &str = r#"{"format":"gogspec-v1","vertices":[{"id":"v","kind":"cyclic"}],
  "edges":[{"id":"e","from":"v","to":"w","from_root":"v","from_exp":0,"to_root":"x","to_exp":2}]}"#;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        Workspace { dir: TempDir::new().unwrap() }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }
}

fn gbs(file: &Path, args: &[&str]) -> Output {
    let mut all: Vec<&str> = Vec::new();
    let (sub, rest) = args.split_first().unwrap();
    all.push(sub);
    all.push(file.to_str().unwrap());
    all.extend_from_slice(rest);
    Command::new(env!("CARGO_BIN_EXE_gbs")).args(&all).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_accepts_good_and_lists_every_violation() {
    let ws = Workspace::new();
    let ok = gbs(&ws.file("f.json", FIGURE), &["validate"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "valid\n");

    let bad = gbs(&ws.file("b.json", BROKEN), &["validate"]);
    assert_eq!(bad.status.code(), Some(1));
    let err = stderr(&bad);
    assert!(err.contains("unknown vertex `w`"), "{err}");
    assert!(err.contains("exponent 0"), "{err}");
}

#[test]
fn missing_file_is_an_io_error() {
    let ws = Workspace::new();
    let o = gbs(&ws.dir.path().join("absent.json"), &["core"]);
    assert_eq!(o.status.code(), Some(2));
    let o = gbs(&ws.file("x.json", "{not json"), &["core"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn core_and_classify() {
    let ws = Workspace::new();
    let o = gbs(&ws.file("k.json", KLEIN), &["core"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("k = 1\n"), "{}", stdout(&o));

    let o = gbs(&ws.file("k.json", KLEIN), &["classify"]);
    assert_eq!(stdout(&o), "component 0 {r, s}: KleinBottle\n");
    let o = gbs(&ws.file("b.json", BS24), &["classify"]);
    assert_eq!(stdout(&o), "component 0 {a}: GeneralGBS\n");
}

#[test]
fn reduce_and_equal() {
    let ws = Workspace::new();
    let f = ws.file("f.json", FIGURE);
    // v^8 = (v^4)^2 crosses e1 as (u^12)^2.
    let o = gbs(&f, &["reduce", "--word", "e1' v^8 e1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("canonical: u^24\n"), "{}", stdout(&o));
    assert!(stdout(&o).contains("kind: elliptic\n"));

    let o = gbs(&f, &["reduce", "--word", "e1' v^7 e1"]);
    assert!(stdout(&o).contains("reduced: e1' v^7 e1\n"), "{}", stdout(&o));

    let o = gbs(&f, &["equal", "--left", "e1' v^8 e1", "--right", "u^24"]);
    assert_eq!(stdout(&o), "true\n");
    let o = gbs(&f, &["equal", "--left", "e3 u e3'", "--right", "u"]);
    assert_eq!(stdout(&o), "false\n");

    let o = gbs(&f, &["reduce", "--word", "e1 e1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gbs(&f, &["reduce", "--word", "q^2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn centralizer_reports_status() {
    let ws = Workspace::new();
    let b = ws.file("b.json", BS24);
    // a^1 has no neighbour in the development: the label 2 does not divide 1.
    let o = gbs(&b, &["centralizer", "--vertex", "a", "--power", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("centralizer of a^1: complete\n"), "{out}");
    assert!(out.contains("ball: 1 vertices, 0 edges\n"));

    let f = ws.file("f.json", FIGURE);
    let o = gbs(&f, &["centralizer", "--vertex", "u", "--power", "1", "--max-vertices", "10"]);
    let out = stdout(&o);
    assert!(out.starts_with("centralizer of u^1: truncated\n"), "{out}");
    assert!(out.contains("generator: e3 u e3'\n"), "{out}");

    let o = gbs(&f, &["centralizer", "--vertex", "u", "--power", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gbs(&f, &["centralizer", "--vertex", "nope", "--power", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn conjugate_pairs() {
    let ws = Workspace::new();
    let f = ws.file("f.json", FIGURE);
    let o = gbs(&f, &["conjugate", "--pairs", "v,4,u,12", "--pairs", "v,1,u,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "v^4 ~ u^12: yes, conjugator e1\nv^1 ~ u^1: no\n");
    let o = gbs(&f, &["conjugate", "--pairs", "v,4,u"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn twist_prints_both_directions() {
    let ws = Workspace::new();
    let f = ws.file("f.json", FIGURE);
    let o = gbs(&f, &["twist", "--twist", "u=e3 u e3'"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("theta:\n"));
    assert!(out.contains("theta^-1:\n"));
    assert!(out.contains("  e1 -> e1 e3 u e3'\n"), "{out}");

    let o = gbs(&f, &["twist", "--twist", "u=e3 u e3'", "--check-fixes-centralizers", "--max-vertices", "16"]);
    assert!(stdout(&o).contains("fixes C(v) on 12 samples: true\n"), "{}", stdout(&o));

    // `e3` is not in C(u).
    let o = gbs(&f, &["twist", "--twist", "u=e3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = gbs(&f, &["twist", "--twist", "u"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn analyze_formats_and_dot() {
    let ws = Workspace::new();
    let f = ws.file("f.json", FIGURE);
    let o = gbs(&f, &["analyze"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for line in ["components: 1", "k = 1", "s = 1", "t = 0", "ignored = 0", "rank(Z): not computed"] {
        assert!(out.lines().any(|l| l == line), "missing `{line}` in {out}");
    }

    let o = gbs(&f, &["analyze", "--format", "machine"]);
    let report = parse_machine_report(&stdout(&o)).unwrap();
    assert_eq!((report.k, report.s, report.t), (1, 1, 0));

    let dot = ws.dir.path().join("core.dot");
    let o = gbs(&f, &["analyze", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph \"core\" {"));
    assert!(text.contains("\"u\" -- \"u\" [label=\"e3\", taillabel=\"1\", headlabel=\"24\"];"));

    let o = gbs(&f, &["analyze", "--dot", "/nonexistent-dir/core.dot"]);
    assert_eq!(o.status.code(), Some(2));
}
