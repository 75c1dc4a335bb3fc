use facering::cli::{run, ComplexFile, EXIT_INCONCLUSIVE, EXIT_INPUT, EXIT_OK};
use facering::corpus;
use serde_json::Value;
use std::path::{Path, PathBuf};

fn corpus_file(name: &str) -> String {
    format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("facering-cli-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("facering").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn corpus_files_match_builders() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let all = corpus::all();
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), all.len());
    for (name, k) in all {
        let (file, loaded) = ComplexFile::load(&dir.join(format!("{name}.json"))).unwrap();
        assert_eq!(file.name.as_deref(), Some(name.as_str()));
        assert_eq!(loaded, k, "{name}");
    }
}

#[test]
fn definite_verdict_exits_zero() {
    let (code, out, _) = call(&["certify", &corpus_file("octahedron")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("ANISOTROPIC"), "{out}");
}

#[test]
fn inconclusive_exits_three() {
    let (code, out, _) = call(&["certify", "--char", "3", &corpus_file("polygon_6")]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.contains("INCONCLUSIVE"), "{out}");
}

#[test]
fn input_errors_exit_two() {
    let dir = scratch("bad");
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"vertices": 3, "facets": [[1, 2], [2, 5], [0, 3]]}"#).unwrap();
    let (code, out, err) = call(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("facets[1][1] = 5") && err.contains("facets[2][0] = 0"), "{err}");

    let (code, _, _) = call(&["analyze", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, err) = call(&["certify", "--char", "4", &corpus_file("polygon_4")]);
    assert_eq!(code, EXIT_INPUT, "{err}");
    let (code, _, _) = call(&["certify", &corpus_file("mobius_strip")]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = call(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn json_is_byte_identical_across_runs() {
    for cmd in ["analyze", "certify", "sed", "lefschetz", "pipeline"] {
        let args = ["--json", cmd, &corpus_file("octahedron"), &corpus_file("polygon_5")];
        let (c1, a, _) = call(&args);
        let (c2, b, _) = call(&args);
        assert_eq!(c1, c2);
        assert_eq!(a, b, "{cmd}");
        serde_json::from_str::<Value>(&a).unwrap();
    }
    let one = call(&["--json", "--jobs", "1", "certify", &corpus_file("octahedron"), &corpus_file("polygon_5")]).1;
    let many = call(&["--json", "--jobs", "4", "certify", &corpus_file("octahedron"), &corpus_file("polygon_5")]).1;
    assert_eq!(one, many);
}

#[test]
fn certificate_round_trip_from_disk() {
    let dir = scratch("cert");
    for (name, ch) in [("octahedron", "0"), ("octahedron", "2"), ("polygon_5", "0"), ("simplex_boundary_4", "2")] {
        let path = dir.join(format!("{name}-{ch}.json"));
        let (code, _, err) = call(&["--json", "--char", ch, "--output", path.to_str().unwrap(), "certify", &corpus_file(name)]);
        assert_eq!(code, EXIT_OK, "{name} {ch}: {err}");
        let cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for key in ["complex_hash", "backend", "verdict", "evidence", "soundness", "seed", "timings"] {
            assert!(cert.get(key).is_some(), "{name}: missing {key}");
        }
        let (code, out, err) = call(&["certify", "--verify", path.to_str().unwrap(), &corpus_file(name)]);
        assert_eq!(code, EXIT_OK, "{name} {ch}: {err}");
        assert!(out.contains("certificate valid"), "{out}");
    }
    // The same certificate does not verify against a different complex.
    let path = dir.join("octahedron-0.json");
    let (code, _, _) = call(&["certify", "--verify", path.to_str().unwrap(), &corpus_file("polygon_5")]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn psi_on_a_facet() {
    let (code, out, err) = call(&["psi", &corpus_file("polygon_4"), "1 2"]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert!(!out.trim().is_empty());
    let (code, _, _) = call(&["psi", &corpus_file("polygon_4"), "1 9"]);
    assert_eq!(code, EXIT_INPUT);
}
