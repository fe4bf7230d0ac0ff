use std::path::{Path, PathBuf};
use std::process::Command;

use nlie_cli::{run, EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn nlie(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("nlie").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nlie-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn find_codim1_on_n5() {
    let (code, out, _) = nlie(&["find-codim1", &fixture("n5.json"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["case"]["branch"], "DerivedProper");
    assert_eq!(v["verified"], true);
    let basis: Vec<Vec<String>> = serde_json::from_value(v["basis"].clone()).unwrap();
    let expected: Vec<Vec<String>> = (0..4)
        .map(|i| (0..5).map(|j| if i == j { "1" } else { "0" }.to_string()).collect())
        .collect();
    assert_eq!(basis, expected);
}

#[test]
fn json_reports_are_deterministic() {
    for args in [
        vec!["find-codim1", "pair_char2.json", "--json"],
        vec!["analyze", "pair_char2.json", "--json"],
        vec!["validate", "a4_gf2.json", "--json"],
        vec!["oracle", "n5.json", "--json"],
    ] {
        let path = fixture(args[1]);
        let mut full = args.clone();
        full[1] = &path;
        let (c1, o1, _) = nlie(&full);
        let (c2, o2, _) = nlie(&full);
        assert_eq!(c1, EXIT_OK, "{args:?}");
        assert_eq!((c1, &o1), (c2, &o2));
        serde_json::from_str::<Value>(&o1).unwrap();
    }
}

#[test]
fn validate_reports_a_witness() {
    let (code, out, _) = nlie(&["validate", &fixture("perturbed_a4.json")]);
    assert_eq!(code, EXIT_INVALID);
    assert!(out.starts_with("invalid"));
    assert!(out.contains("x = (") && out.contains("y = ("));
    let (code, out, _) = nlie(&["validate", &fixture("a4_gf2.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("valid"));
}

#[test]
fn oracle_counts_hyperplanes() {
    let (code, out, _) = nlie(&["oracle", &fixture("abelian5.json"), "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["count"], 31);
    assert_eq!(v["hyperplanes"], 31);
    let (code, out, _) = nlie(&["oracle", &fixture("n5.json"), "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["count"], 15);
}

#[test]
fn usage_errors() {
    // a4 is 4-dimensional with arity 3, so the codim-1 search does not apply
    let (code, _, err) = nlie(&["find-codim1", &fixture("a4_gf2.json")]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("(n+2)-dimensional"));
    let (code, _, _) = nlie(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = nlie(&["validate", "/nonexistent/file.json"]);
    assert_eq!(code, EXIT_USAGE);
    let dir = scratch_dir("bad");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"arity\": 3,").unwrap();
    let (code, _, err) = nlie(&["validate", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("line"), "{err}");
    let (code, _, _) = nlie(&["generate", "--arity", "3", "--dim", "5", "--field", "6", "--strategy", "sparse", "--seed", "0"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _, _) = nlie(&["generate", "--arity", "3", "--dim", "5", "--field", "2", "--strategy", "bogus", "--seed", "0"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let args = ["generate", "--arity", "3", "--dim", "5", "--field", "3", "--strategy", "sparse:0.3", "--seed", "11"];
    let (code, first, _) = nlie(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(nlie(&args).1, first);
    let dir = scratch_dir("gen");
    let path = dir.join("a.json");
    std::fs::write(&path, &first).unwrap();
    let (code, out, _) = nlie(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let (code, _, _) = nlie(&["find-codim1", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn generate_count_and_out_dir() {
    let base = ["generate", "--arity", "3", "--dim", "5", "--field", "2^2", "--strategy", "sparse", "--seed", "4"];
    let mut args = base.to_vec();
    args.extend(["--count", "3"]);
    let (code, out, _) = nlie(&args);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    // instance i uses seed + i, so the first line matches a single run at that seed
    let (_, single, _) = nlie(&base);
    let a: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(a, serde_json::from_str::<Value>(&single).unwrap());

    let dir = scratch_dir("out");
    args.extend(["--out", dir.to_str().unwrap()]);
    let (code, _, _) = nlie(&args);
    assert_eq!(code, EXIT_OK);
    for seed in 4..7 {
        let file = dir.join(format!("n3-d5-s{seed}.json"));
        assert!(Path::new(&file).exists(), "{}", file.display());
    }
}

#[test]
fn generate_budget_exhaustion() {
    let (code, _, _) = nlie(&[
        "generate", "--arity", "3", "--dim", "5", "--field", "2", "--strategy", "perfect-filter:3", "--seed", "0",
    ]);
    assert_eq!(code, EXIT_BUDGET);
}

#[test]
fn binary_honours_max_ext_env() {
    let bin = env!("CARGO_BIN_EXE_nlie");
    let run_with = |ext: &str| {
        Command::new(bin)
            .args(["find-codim1", &fixture("pair_char2.json"), "--json"])
            .env("NLIE_MAX_EXT", ext)
            .output()
            .unwrap()
    };
    let ok = run_with("4");
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["case"]["branch"], "PairChar2");
    let bad = run_with("not-a-number");
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
