use std::io::Write;
use std::process::{Command, Output, Stdio};

use graphcx::checks::{fixture_gamma_k, fixture_pa_hoch};
use graphcx::conv::{broom, skeleton_alpha, ConvElement};
use graphcx::dfgc::{gamma_edge, gamma_loop, symmetrize, tetrahedron};
use graphcx::{DirGraph, GraphSum};
use tempfile::NamedTempFile;

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_graphcx"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("GRAPHCOMPLEX_MAX_CELLS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn loop_differential_is_empty() {
    let o = run(&["dfgc-d"], &gamma_loop().to_string());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn tetrahedron_is_not_exact() {
    let o = run(&["dfgc-exact"], &tetrahedron().to_string());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("NOT EXACT"));
    let o = run(&["dfgc-cocycle"], &tetrahedron().to_string());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cocycle_verdicts() {
    // the edge squares to zero, so it is closed
    assert_eq!(run(&["dfgc-cocycle"], &gamma_edge().to_string()).status.code(), Some(0));
    let path = symmetrize(&GraphSum::from_graph(&DirGraph::black(3, &[(1, 2), (2, 3)])).unwrap());
    let o = run(&["dfgc-cocycle"], &path.to_string());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NOT A COCYCLE"));
    // a single orientation is not an element of the complex
    let o = run(&["dfgc-cocycle"], "1 * graph n=2 k=0 out=c edges=[b1>b2]\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn canonical_output_parses_back() {
    let input = "2/4 * graph n=2 k=0 out=c edges=[b2>b1, b1>b2]\n-1 * graph n=2 k=0 out=c edges=[b1>b2]\n";
    let once = stdout(&run(&["canon"], input));
    assert_eq!(
        once,
        "-1/1 * graph n=2 k=0 out=c edges=[b1>b2]\n-1/2 * graph n=2 k=0 out=c edges=[b1>b2, b2>b1]\n"
    );
    assert_eq!(stdout(&run(&["canon"], &once)), once);
}

#[test]
fn json_mirrors_text() {
    let o = run(&["canon", "--format", "json"], "3 * graph n=1 k=1 out=o edges=[b1>w1]\n");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"][0]["coeff"], "3/1");
    assert_eq!(v["terms"][0]["graph"]["edges"][0], "b1>w1");
    assert_eq!(v["terms"][0]["graph"]["out"], "o");
}

#[test]
fn exit_codes() {
    // parse error
    assert_eq!(run(&["canon"], "graph n=1 k=0 out=c edges=[b1>b2]\n").status.code(), Some(2));
    assert_eq!(run(&["canon"], "banana\n").status.code(), Some(2));
    assert_eq!(run(&["no-such-verb"], "").status.code(), Some(2));
    // resource guards
    assert_eq!(run(&["canon"], "1 * graph n=5 k=0 out=c edges=[]\n").status.code(), Some(3));
    assert_eq!(run(&["canon", "--max-black", "5"], "1 * graph n=5 k=0 out=c edges=[]\n").status.code(), Some(0));
    assert_eq!(run(&["dfgc-hdim", "--n", "4", "--e", "9"], "").status.code(), Some(3));
    let capped = run_env(&["dfgc-hdim", "--n", "3", "--e", "3"], "", &[("GRAPHCOMPLEX_MAX_CELLS", "1")]);
    assert_eq!(capped.status.code(), Some(3));
    // loops rejected in the loopless subcomplex
    assert_eq!(run(&["dfgc-d", "--loopless"], &gamma_loop().to_string()).status.code(), Some(2));
}

#[test]
fn small_cohomology_and_matrix_export() {
    let o = run(&["dfgc-hdim", "--n", "2", "--e", "1"], "");
    assert_eq!(stdout(&o), "0\n");
    let o = run(&["dfgc-hdim", "--n", "2", "--e", "1", "--matrix", "--format", "json"], "");
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"], 1);
    assert_eq!(v["cols"], 2);
    for e in v["entries"].as_array().unwrap() {
        assert!(e[2].as_str().unwrap().contains('/'));
    }
}

#[test]
fn bracket_with_files() {
    let a = file(&gamma_edge().to_string());
    let o = run(&["dfgc-bracket", path(&a), path(&a)], "");
    assert_eq!(o.status.code(), Some(0));
    // the edge solves the MC equation, so [edge, edge] vanishes
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn insertion_verb() {
    let outer = file("1 * graph n=2 k=0 out=c edges=[b1>b2]\n");
    let inner = file("1 * graph n=1 k=0 out=c edges=[]\n");
    let o = run(&["insert", path(&outer), path(&inner), "--slot", "2"], "");
    assert_eq!(stdout(&o), "1/1 * graph n=2 k=0 out=c edges=[b1>b2]\n");
    assert_eq!(run(&["insert", path(&outer), path(&inner), "--slot", "3"], "").status.code(), Some(2));
}

#[test]
fn boundary_and_homotopy_checks() {
    let alpha = skeleton_alpha((3, 2)).to_string();
    assert_eq!(run(&["check-boundary"], &alpha).status.code(), Some(0));
    let zero = ConvElement::zero(1, (3, 2)).to_string();
    let o = run(&["check-boundary"], &zero);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("BOUNDARY VIOLATED"));
    let xi = ConvElement::zero(0, (3, 2)).to_string();
    assert_eq!(run(&["check-homotopy"], &xi).status.code(), Some(0));
    let bad = file(&alpha);
    assert_eq!(run(&["check-homotopy", path(&bad)], "").status.code(), Some(1));
}

#[test]
fn gauge_by_zero_is_identity() {
    let alpha = skeleton_alpha((3, 2)).to_string();
    let (a, x) = (file(&alpha), file(&ConvElement::zero(0, (3, 2)).to_string()));
    let o = run(&["gauge", path(&x), path(&a)], "");
    assert_eq!(stdout(&o), alpha);
    let o = run(&["mc-flow", path(&a), "--xi", path(&x)], "");
    assert_eq!(stdout(&o), alpha);
    let other = file(&ConvElement::zero(0, (2, 2)).to_string());
    assert_eq!(run(&["gauge", path(&other), path(&a)], "").status.code(), Some(2));
}

#[test]
fn hochschild_fixture() {
    let (g, want) = fixture_pa_hoch();
    let o = run(&["hoch-d"], &g.to_string());
    assert_eq!(stdout(&o), want.to_string());
}

#[test]
fn hedgehog_verbs() {
    let g = fixture_gamma_k(2);
    let o = run(&["hg-dstar"], &g.to_string());
    assert_eq!(stdout(&o), broom(3).to_string());
    assert_eq!(run(&["hg-hodge"], &g.to_string()).status.code(), Some(0));
    // not white-valency one
    let not_hg = "1 * graph n=1 k=1 out=o edges=[b1>w1]\n1 * graph n=1 k=1 out=o edges=[]\n";
    assert_eq!(run(&["hg-d"], not_hg).status.code(), Some(1));
}

#[test]
fn action_on_polynomials() {
    let input = "1 * graph n=2 k=0 out=c edges=[b1>b2]\npoly d=1 : 1*x1*t1\npoly d=1 : 1*x1^2\n";
    let o = run(&["act"], input);
    assert_eq!(stdout(&o), "poly d=1 : 2/1*x1^2\n");
    let o = run(&["act"], "1 * graph n=2 k=0 out=c edges=[b1>b2]\npoly d=1 : 1*x1\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_reproducible() {
    let t = tetrahedron().to_string();
    let a = run(&["dfgc-d"], &t);
    let b = run(&["dfgc-d"], &t);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["mc-residual", "--format", "json"], &skeleton_alpha((3, 2)).to_string());
    let b = run(&["mc-residual", "--format", "json"], &skeleton_alpha((3, 2)).to_string());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"], "");
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]")).count(), 13);
}
