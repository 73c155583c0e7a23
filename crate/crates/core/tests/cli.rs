use std::io::Write;
use std::process::{Command, Stdio};

use afi::cli::{
    run, CensusResult, ClassifyResult, ConstructResult, EquivResult, FeasibleResult, OutputEnvelope,
};
use afi::{fixtures, read_records, CountBounds, MatrixFile, VerifyReport};
use serde::de::DeserializeOwned;

fn afi(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("afi").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn envelope<T: DeserializeOwned>(args: &[&str], command: &str) -> OutputEnvelope<T> {
    let (code, out, err) = afi(args);
    assert_eq!(code, 0, "{err}");
    let env: OutputEnvelope<T> = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(env.command, command);
    assert_eq!(env.version, env!("CARGO_PKG_VERSION"));
    env
}

fn write_fixture(dir: &tempfile::TempDir, name: &str, m: afi::SignMatrix) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, MatrixFile::new(2, m).to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    let p = path.to_str().unwrap();
    let (code, out, _) = afi(&["construct", "--n", "10", "--k", "2", "--r", "4", "--out", p]);
    assert_eq!(code, 0);
    assert!(out.contains("wrote"));

    let (code, out, _) = afi(&["verify", p]);
    assert_eq!(code, 0);
    assert!(out.contains("is_idempotent: true"));
    assert!(out.contains("inferred_triple: (10,2,4)"));

    let env: OutputEnvelope<VerifyReport> = envelope(&["verify", p, "--json"], "verify");
    assert_eq!(env.result.rank, 4);
    assert_eq!(env.inputs["file"], p);
}

#[test]
fn construct_text_matches_json() {
    let (code, text, _) = afi(&[
        "construct",
        "--n",
        "8",
        "--k",
        "2",
        "--r",
        "2",
        "--method",
        "rank2",
        "--t",
        "1",
        "--l",
        "1",
    ]);
    assert_eq!(code, 0);
    let env: OutputEnvelope<ConstructResult> = envelope(
        &[
            "construct",
            "--n",
            "8",
            "--k",
            "2",
            "--r",
            "2",
            "--method",
            "rank2",
            "--t",
            "1",
            "--l",
            "1",
            "--json",
        ],
        "construct",
    );
    let parsed: MatrixFile = text.parse().unwrap();
    assert_eq!(parsed.matrix, env.result.matrix);
    assert_eq!(parsed.k, 2);
}

#[test]
fn negative_l_is_accepted() {
    let (code, _, err) = afi(&[
        "construct",
        "--n",
        "8",
        "--k",
        "2",
        "--r",
        "2",
        "--method",
        "rank2",
        "--l",
        "-1",
    ]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn feasible_and_bounds_json() {
    let env: OutputEnvelope<FeasibleResult> =
        envelope(&["feasible", "--n-max", "8", "--json"], "feasible");
    assert_eq!(env.result.triples, afi::feasible_triples(8));
    let env: OutputEnvelope<CountBounds> =
        envelope(&["bounds", "--n", "8", "--k", "2", "--json"], "bounds");
    assert_eq!((env.result.lower, env.result.upper), (3, 4));
}

#[test]
fn classify_and_equiv_on_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = write_fixture(&dir, "b1.txt", fixtures::b1());
    let b2 = write_fixture(&dir, "b2.txt", fixtures::b2());
    let b2t = write_fixture(&dir, "b2t.txt", fixtures::b2().transpose());

    let env: OutputEnvelope<ClassifyResult> = envelope(&["classify", &b2, "--json"], "classify");
    assert_eq!(env.result.row_types.multiplicity, vec![6, 2]);
    assert_eq!(env.result.col_types.multiplicity, vec![4, 4]);
    let sf = env.result.standard_form.unwrap();
    assert!(sf.x == 2 || sf.x == 6);
    assert!(env.result.canonical_hash.is_some());

    let env: OutputEnvelope<EquivResult> = envelope(&["equiv", &b1, &b2, "--json"], "equiv");
    assert!(!env.result.equivalent);
    let env: OutputEnvelope<EquivResult> = envelope(&["equiv", &b2, &b2t, "--json"], "equiv");
    assert!(env.result.equivalent);
    let env: OutputEnvelope<EquivResult> =
        envelope(&["equiv", &b2, &b2t, "--no-transpose", "--json"], "equiv");
    assert!(!env.result.equivalent);
}

#[test]
fn census_writes_records() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let p = path.to_str().unwrap();
    let env: OutputEnvelope<CensusResult> = envelope(
        &[
            "census",
            "--n",
            "8",
            "--k",
            "2",
            "--rank2-only",
            "--jobs",
            "2",
            "--out",
            p,
            "--json",
        ],
        "census",
    );
    assert_eq!(env.result.summary.len(), 1);
    assert_eq!(env.result.summary[0].classes, 3);
    let recs = read_records(std::io::BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
    assert_eq!(recs, afi::census_rank2(8, 2).unwrap());
}

#[test]
fn exit_codes() {
    // Infeasible parameters are domain errors.
    let (code, _, err) = afi(&["construct", "--n", "7", "--k", "1", "--r", "3"]);
    assert_eq!(code, 1);
    assert!(err.contains("odd-n-rank-above-1"), "{err}");
    // Usage errors.
    assert_eq!(afi(&["construct", "--n", "x", "--k", "1", "--r", "1"]).0, 2);
    assert_eq!(afi(&["bounds", "--n", "0", "--k", "1"]).0, 2);
    assert_eq!(afi(&["nonsense"]).0, 2);
    assert_eq!(afi(&[]).0, 2);
    // Help is not an error.
    assert_eq!(afi(&["--help"]).0, 0);
    // Census beyond its cap.
    assert_eq!(afi(&["census", "--n", "8", "--k", "2"]).0, 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "2 2\n+ -\n+ +\n").unwrap();
    let (code, out, _) = afi(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("is_idempotent: false"));
    let garbage = dir.path().join("garbage.txt");
    std::fs::write(&garbage, "2 2\n+ x\n+ +\n").unwrap();
    assert_eq!(afi(&["verify", garbage.to_str().unwrap()]).0, 1);
    assert_eq!(afi(&["verify", "/nonexistent/file"]).0, 1);
}

#[test]
fn binary_pipes_construct_into_verify() {
    let bin = env!("CARGO_BIN_EXE_afi");
    let built = Command::new(bin)
        .args(["construct", "--n", "12", "--k", "4", "--r", "3"])
        .output()
        .unwrap();
    assert!(built.status.success());

    let mut child = Command::new(bin)
        .args(["verify", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(&built.stdout)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let env: OutputEnvelope<VerifyReport> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env.result.rank, 3);
    assert!(env.result.is_idempotent);

    let usage = Command::new(bin).arg("frobnicate").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
