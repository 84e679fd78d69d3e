use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_intersectra"));
    cmd.env_remove("INTERSECTRA_BUDGET");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn family_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

fn ints(v: &Value) -> Vec<u64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

const FANO: &str = "n=7 r=3\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 5 6\n";

#[test]
fn analyze_fano_plane() {
    let f = family_file(FANO);
    let doc = json_of(&run(&["--json", "analyze", path(&f)]));
    assert_eq!(doc["command"], "analyze");
    let out = &doc["outputs"];
    assert_eq!(out["size"], 7);
    assert_eq!(out["is_intersecting"], true);
    assert_eq!(out["counts"]["1"], 7);
    assert_eq!(ints(&out["support"]), [1, 2, 3, 4, 5, 6, 7]);
}

#[test]
fn analyze_triangle_with_k_list() {
    let f = family_file("n=5 r=2\n1 2\n1 3\n2 3\n");
    let doc = json_of(&run(&["--json", "analyze", path(&f), "-k", "1,2"]));
    assert_eq!(doc["outputs"]["counts"]["1"], 3);
    assert_eq!(doc["outputs"]["counts"]["2"], 3);
    assert_eq!(ints(&doc["inputs"]["k"]), [1, 2]);
}

#[test]
fn analyze_disjoint_pair() {
    let f = family_file("1 2\n3 4\n");
    let doc = json_of(&run(&["--json", "analyze", path(&f)]));
    assert_eq!(doc["outputs"]["is_intersecting"], false);
    assert_eq!(doc["outputs"]["empty_intersection"], true);
}

#[test]
fn analyze_rejects_bad_file() {
    let f = family_file("n=3\n1 2\n2 1\n");
    let out = run(&["analyze", path(&f)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(
        run(&["analyze", "/nonexistent/family.txt"]).status.code(),
        Some(2)
    );
}

#[test]
fn check_star_is_maximal() {
    let f = family_file("n=5 r=2\n1 2\n1 3\n1 4\n1 5\n");
    let doc = json_of(&run(&["--json", "check", path(&f)]));
    let out = &doc["outputs"];
    assert_eq!(out["is_maximal"], true);
    assert_eq!(out["violations"], Value::Array(vec![]));
    assert_eq!(ints(&out["support"]), [1]);
}

#[test]
fn check_pair_of_triples_reports_violation_and_extension() {
    let f = family_file("n=8 r=3\n1 2 3\n1 2 4\n");
    let doc = json_of(&run(&["--json", "check", path(&f), "--n", "8", "--r", "3"]));
    let out = &doc["outputs"];
    assert_eq!(out["is_intersecting"], true);
    assert_eq!(out["is_maximal"], false);
    assert!(!out["violations"].as_array().unwrap().is_empty());
    assert!(!out["maximalize_added"].as_array().unwrap().is_empty());
}

#[test]
fn check_maximalized_section4_family() {
    let f = family_file(&String::from_utf8(run(&["construct", "section4"]).stdout).unwrap());
    let before = json_of(&run(&["--json", "check", path(&f)]));
    assert_eq!(before["outputs"]["is_maximal"], false);
    assert_eq!(
        ints(&before["outputs"]["maximalized_support"]),
        (1..=8).collect::<Vec<_>>()
    );

    let mut text = String::from_utf8(run(&["construct", "section4"]).stdout).unwrap();
    for s in before["outputs"]["maximalize_added"].as_array().unwrap() {
        let line: Vec<String> = ints(s).iter().map(u64::to_string).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    let full = family_file(&text);
    let after = json_of(&run(&["--json", "check", path(&full)]));
    assert_eq!(after["outputs"]["is_maximal"], true);
    assert_eq!(after["outputs"]["violations"], Value::Array(vec![]));
    assert_eq!(
        ints(&after["outputs"]["support"]),
        (1..=8).collect::<Vec<_>>()
    );
}

#[test]
fn check_non_intersecting() {
    let f = family_file("n=4 r=2\n1 2\n3 4\n");
    let doc = json_of(&run(&["--json", "check", path(&f)]));
    assert_eq!(doc["outputs"]["is_intersecting"], false);
}

#[test]
fn construct_text_parses_back() {
    let out = run(&["construct", "star", "--n", "5", "--r", "2"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "n=5 r=2\n1 2\n1 3\n1 4\n1 5\n"
    );

    let tuza = run(&["construct", "tuza", "--r", "3"]);
    let f = family_file(&String::from_utf8(tuza.stdout).unwrap());
    let doc = json_of(&run(&["--json", "analyze", path(&f), "-k", "1"]));
    assert_eq!(doc["outputs"]["counts"]["1"], 6);
    assert_eq!(doc["outputs"]["is_intersecting"], true);
}

#[test]
fn construct_json_schema() {
    let doc = json_of(&run(&["--json", "construct", "alpha-witness", "--r", "3"]));
    assert_eq!(doc["n"], 7);
    assert_eq!(doc["r"], 3);
    assert!(!doc["family"].as_array().unwrap().is_empty());
    assert!(doc["provenance"].is_string());
}

#[test]
fn construct_construction1_realizes_hitting_sets() {
    let out = run(&[
        "construct",
        "construction1",
        "--n",
        "8",
        "--r",
        "3",
        "--k",
        "2",
    ]);
    let f = family_file(&String::from_utf8(out.stdout).unwrap());
    let doc = json_of(&run(&["--json", "analyze", path(&f), "-k", "2"]));
    assert_eq!(doc["outputs"]["counts"]["2"], 18);
}

#[test]
fn construct_rejects_bad_parameters() {
    assert_eq!(
        run(&["construct", "tuza", "--r", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["construct", "section4", "--n", "9"]).status.code(),
        Some(2)
    );
}

#[test]
fn search_json_schema() {
    let doc = json_of(&run(&[
        "--json", "search", "beta", "--n", "6", "--r", "3", "--k", "2",
    ]));
    for key in [
        "params",
        "value",
        "optimal",
        "witness",
        "nodes",
        "elapsed_ms",
    ] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["params"]["n"], 6);
    assert_eq!(doc["optimal"], true);
    assert!(doc.get("classes").is_none());
}

#[test]
fn search_text_and_all_optima() {
    let out = run(&["--quiet", "search", "alpha", "--r", "2", "--n", "5"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "beta(5,2,1) = 3\n");

    let doc = json_of(&run(&[
        "--json",
        "search",
        "beta",
        "--n",
        "4",
        "--r",
        "2",
        "--k",
        "1",
        "--all-optima",
    ]));
    assert_eq!(doc["value"], 3);
    assert_eq!(doc["classes"].as_array().unwrap().len(), 1);
}

#[test]
fn search_symmetry_and_workers_agree() {
    let base = [
        "--json", "search", "beta", "--n", "7", "--r", "3", "--k", "2",
    ];
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let one = strip(json_of(&run(&base)));
    let mut args = base.to_vec();
    args.extend(["--workers", "3"]);
    assert_eq!(strip(json_of(&run(&args))), one);
    let mut args = base.to_vec();
    args.extend(["--symmetry", "off"]);
    let off = json_of(&run(&args));
    assert_eq!(off["value"], one["value"]);
    assert_eq!(off["witness"], one["witness"]);
}

#[test]
fn budget_from_environment() {
    let args = [
        "--json", "search", "beta", "--n", "7", "--r", "3", "--k", "2",
    ];
    let out = bin()
        .args(args)
        .env("INTERSECTRA_BUDGET", "5")
        .output()
        .unwrap();
    let doc = json_of(&out);
    assert_eq!(doc["optimal"], false);
    assert!(doc["nodes"].as_u64().unwrap() <= 5);

    let mut flagged = args.to_vec();
    flagged.extend(["--budget", "0"]);
    let out = bin()
        .args(&flagged)
        .env("INTERSECTRA_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(json_of(&out)["optimal"], true);
}

#[test]
fn verify_exit_codes() {
    let out = run(&["--json", "verify", "tuza"]);
    let doc = json_of(&out);
    assert_eq!(doc["pass"], true);
    assert!(doc["paper_anchor"].is_string());

    let out = run(&["verify", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let f = family_file(FANO);
    let a = run(&["--json", "analyze", path(&f)]).stdout;
    let b = run(&["--json", "analyze", path(&f)]).stdout;
    assert_eq!(a, b);
    let a = run(&["--json", "verify", "ekr"]).stdout;
    let b = run(&["--json", "verify", "ekr"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn construction1_with_base_file() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("triangle.txt");
    std::fs::write(&base, "n=3 r=2\n1 2\n1 3\n2 3\n").unwrap();
    let base = base.to_str().unwrap();
    let out = run(&[
        "construct",
        "construction1",
        "--n",
        "8",
        "--r",
        "3",
        "--k",
        "2",
        "--base",
        base,
    ]);
    let built = dir.path().join("built.txt");
    std::fs::write(&built, &out.stdout).unwrap();
    let doc = json_of(&run(&[
        "--json",
        "analyze",
        built.to_str().unwrap(),
        "-k",
        "2",
    ]));
    assert_eq!(doc["outputs"]["counts"]["2"], 18);
    let missing = run(&[
        "construct",
        "construction1",
        "--n",
        "8",
        "--r",
        "3",
        "--k",
        "2",
        "--base",
    ]);
    assert_eq!(missing.status.code(), Some(2));
}
