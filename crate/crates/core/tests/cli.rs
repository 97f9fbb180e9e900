use superalg::catalog;
use superalg::cli::{self, parse_algebra_file, CliError, DynAlgebra};
use superalg::math::{Rational, RationalFunction, Universe};

fn run(args: &[&str]) -> cli::RunOutcome {
    cli::run(std::iter::once("superalg").chain(args.iter().copied()))
}

fn code(args: &[&str]) -> i32 {
    run(args).exit_code
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["catalog"], 0),
        (&["catalog", "--algebra", "b-44"], 0),
        (&["check", "--algebra", "matrix-rs", "--n", "2", "--identity", "associative"], 1),
        (&["check", "--algebra", "matrix-rs", "--n", "3", "--identity", "right-symmetric"], 0),
        (&["check", "--algebra", "b-nn", "--identity", "right-alternative-super"], 0),
        (&["check", "--algebra", "b-22", "--identity", "abelian-type"], 0),
        (&["check", "--algebra", "b-44", "--identity", "commutative"], 1),
        (&["check", "--algebra", "matrix-rs", "--identity", "right-alternative-super"], 2),
        (&["random-check", "--algebra", "b-22", "--identity", "right-alternative-super"], 0),
        (&["random-check", "--algebra", "rs-v2m2", "--identity", "associative", "--trials", "20"], 1),
        (&["random-check", "--algebra", "b-nn", "--identity", "abelian-type", "--prime", "3"], 2),
        (
            &["random-check", "--algebra", "b-nn", "--identity", "abelian-type", "--prime", "3", "--allow-small-prime"],
            0,
        ),
        (&["random-check", "--algebra", "b-nn", "--identity", "associative", "--prime", "10"], 2),
        (&["center", "--algebra", "rs-v2m2"], 0),
        (&["even-center", "--algebra", "b-22"], 0),
        (&["even-center", "--algebra", "matrix-rs"], 2),
        (&["unit", "--algebra", "b-44", "--w", "1,0,0,0"], 0),
        (&["simple", "--algebra", "b-44", "--w", "1,0,0,0", "--graded"], 0),
        (&["simple", "--algebra", "matrix-rs", "--graded"], 2),
        (&["simple", "--algebra", "b-44", "--w", "1,0,0,-1"], 2),
        (&["verify-lemma", "1"], 0),
        (&["verify-lemma", "2", "--case", "1"], 0),
        (&["verify-lemma", "4"], 1),
        (&["verify-lemma", "4", "--n", "3"], 2),
        (&["verify-lemma", "1", "--case", "1"], 2),
        (&["verify-lemma", "6"], 2),
        (&["verify-lemma", "3", "--n", "1"], 2),
        (&["check", "--algebra", "matrix-rs", "--n", "1", "--identity", "associative"], 2),
        (&["check", "--algebra", "b-22", "--n", "3", "--identity", "associative"], 2),
        (&["check", "--algebra", "b-44", "--w", "1,2", "--identity", "associative"], 2),
        (&["check", "--algebra", "b-22", "--nu", "1/", "--identity", "associative"], 2),
        (&["check", "--identity", "associative"], 2),
        (&["check", "--algebra", "nope", "--identity", "associative"], 2),
        (&["center", "--algebra", "b-nn", "--bogus"], 2),
        (&["frobnicate"], 2),
        (&[], 2),
        (&["--help"], 0),
        (&["--version"], 0),
    ];
    for (args, expected) in cases {
        assert_eq!(code(args), *expected, "superalg {}", args.join(" "));
    }
}

#[test]
fn usage_errors_print_usage_text() {
    let out = run(&["center", "--algebra", "b-nn", "--bogus"]);
    assert!(out.report.is_none());
    assert!(out.stderr.contains("Usage"), "{}", out.stderr);
}

#[test]
fn failing_check_reports_witness() {
    let out = run(&["check", "--algebra", "matrix-rs", "--n", "2", "--identity", "associative", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["exit_code"], 1);
    let w = &v["results"][0]["witness"];
    assert_eq!(w["labels"].as_array().unwrap().len(), 3);
    assert_ne!(w["defect"], "0");
}

#[test]
fn negative_parameters_are_accepted() {
    let out = run(&["unit", "--algebra", "b-22", "--nu", "-3", "--json"]);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["results"][0]["unit"], "e1 + e2");
    assert_eq!(v["results"][0]["algebra"], "b-22");
}

#[test]
fn json_report_is_deterministic() {
    for args in [
        &["verify-lemma", "1", "--json"][..],
        &["random-check", "--algebra", "b-44", "--identity", "right-alternative-super", "--seed", "7", "--json"],
        &["simple", "--algebra", "matrix-rs", "--n", "3", "--seed", "5", "--json"],
    ] {
        let a = run(args).stdout;
        let b = run(args).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn json_keys_are_sorted() {
    let out = run(&["unit", "--algebra", "b-nn", "--json"]);
    let keys: Vec<&str> = out
        .stdout
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(keys.contains(&"version"));
}

#[test]
fn text_output_has_one_line_per_check() {
    let out = run(&["check", "--algebra", "b-nn", "--identity", "abelian-type"]);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].starts_with("PASS identity abelian-type on b-nn(n=2)"));
    assert_eq!(lines[1], "status: pass (exit 0)");
}

#[test]
fn lemma1_report_lists_three_families() {
    let out = run(&["verify-lemma", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let mut exps: Vec<u64> = v["results"][0]["report"]["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["role"] == "published")
        .map(|r| r["z_exponent"].as_u64().unwrap())
        .collect();
    exps.dedup();
    assert_eq!(exps, vec![4, 6, 7]);
}

#[test]
fn lemma2_runs_both_cases_by_default() {
    let out = run(&["verify-lemma", "2", "--json", "--shadow-trials", "5"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let cases: Vec<u64> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["case"].as_u64().unwrap())
        .collect();
    assert_eq!(cases, vec![1, 2]);
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["center", "--algebra", "b-nn", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.exit_code, 0);
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(v["results"][0]["dim"], 1);
}

fn export(args: &[&str], dir: &std::path::Path) -> std::path::PathBuf {
    let path = dir.join("alg.json");
    let mut full = vec!["catalog"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--export", path.to_str().unwrap()]);
    let out = run(&full);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    path
}

#[test]
fn catalog_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--algebra", "matrix-rs", "--n", "3"],
        &["--algebra", "rs-v2m2"],
        &["--algebra", "rs-v2m2", "--gamma", "g1,0,0,g4", "--convention", "columns"],
        &["--algebra", "b-nn", "--n", "4"],
        &["--algebra", "b-22"],
        &["--algebra", "b-22", "--nu", "-2/3"],
        &["--algebra", "b-44"],
        &["--algebra", "b-44", "--w", "1,0,0,0"],
    ];
    for args in cases {
        let path = export(args, dir.path());
        let bytes = std::fs::read(&path).unwrap();
        let alg = parse_algebra_file(&bytes).unwrap();
        assert_eq!(cli::algebra_file_json(&alg).as_bytes(), &bytes[..], "{args:?}");
        let mut again = args.to_vec();
        again.push("--json");
        let mut catalog = vec!["catalog"];
        catalog.extend(again);
        let direct: serde_json::Value = serde_json::from_str(&run(&catalog).stdout).unwrap();
        let file: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(direct["results"][0]["file"], file);
    }
}

#[test]
fn file_spec_equals_catalog_spec() {
    let dir = tempfile::tempdir().unwrap();
    let path = export(&["--algebra", "b-nn", "--n", "2"], dir.path());
    match parse_algebra_file(&std::fs::read(path).unwrap()).unwrap() {
        DynAlgebra::Rational(a) => assert_eq!(*a, catalog::b_nn::<Rational>(2, &()).unwrap()),
        other => panic!("wrong ring: {}", other.name()),
    }
    let path = export(&["--algebra", "b-44"], dir.path());
    let u = Universe::new(["w11", "w12", "w21", "w22"]).unwrap();
    let w = catalog::WMatrix {
        entries: ["w11", "w12", "w21", "w22"].map(|v| RationalFunction::var(&u, v).unwrap()),
    };
    match parse_algebra_file(&std::fs::read(path).unwrap()).unwrap() {
        DynAlgebra::Symbolic(a) => assert_eq!(*a, catalog::b_44(&w, &u).unwrap()),
        other => panic!("wrong ring: {}", other.name()),
    }
}

#[test]
fn checks_run_on_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = export(&["--algebra", "b-22"], dir.path());
    let p = path.to_str().unwrap();
    assert_eq!(code(&["check", "--file", p, "--identity", "right-alternative-super"]), 0);
    assert_eq!(code(&["simple", "--file", p, "--graded"]), 0);
    assert_eq!(code(&["check", "--file", p, "--n", "3", "--identity", "associative"]), 2);
}

fn load(json: &str) -> Result<DynAlgebra, CliError> {
    parse_algebra_file(json.as_bytes())
}

#[test]
fn malformed_file_reports_location() {
    let err = load("{\n  \"name\": \"x\",\n  \"dim\": ,\n}").unwrap_err();
    match err {
        CliError::Parse { line, column, .. } => {
            assert_eq!(line, 3);
            assert!(column > 0);
        }
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn grading_violation_names_indices() {
    let json = r#"{"name": "bad", "ring": {"kind": "rationals"}, "dim": 2, "parity": [0, 1],
        "labels": ["a", "b"], "products": [{"i": 0, "j": 0, "terms": [{"k": 1, "coeff": 1}]}]}"#;
    let err = load(json).unwrap_err();
    assert!(matches!(err, CliError::Validation(_)));
    assert!(err.to_string().contains("e0*e0") && err.to_string().contains("e1"), "{err}");
}

#[test]
fn empty_products_give_zero_algebra() {
    let json = r#"{"name": "z", "ring": {"kind": "rationals"}, "dim": 1, "parity": [0],
        "labels": ["a"], "products": []}"#;
    match load(json).unwrap() {
        DynAlgebra::Rational(a) => assert!(a.is_zero_algebra()),
        other => panic!("wrong ring: {}", other.name()),
    }
}

#[test]
fn file_validation_errors() {
    let bad = [
        // dim disagrees with labels
        r#"{"name": "x", "ring": {"kind": "rationals"}, "dim": 2, "parity": [0], "labels": ["a"], "products": []}"#,
        // index out of range
        r#"{"name": "x", "ring": {"kind": "rationals"}, "dim": 1, "parity": [0], "labels": ["a"],
            "products": [{"i": 0, "j": 3, "terms": [{"k": 0, "coeff": "1"}]}]}"#,
        // coefficient mentions an undeclared variable
        r#"{"name": "x", "ring": {"kind": "polynomial", "variables": ["t"]}, "dim": 1, "parity": [0], "labels": ["a"],
            "products": [{"i": 0, "j": 0, "terms": [{"k": 0, "coeff": "s"}]}]}"#,
        // division in a polynomial ring
        r#"{"name": "x", "ring": {"kind": "polynomial", "variables": ["t"]}, "dim": 1, "parity": [0], "labels": ["a"],
            "products": [{"i": 0, "j": 0, "terms": [{"k": 0, "coeff": "1/t"}]}]}"#,
        // composite modulus
        r#"{"name": "x", "ring": {"kind": "prime-field", "p": 9}, "dim": 1, "parity": [0], "labels": ["a"], "products": []}"#,
        // parity value
        r#"{"name": "x", "ring": {"kind": "rationals"}, "dim": 1, "parity": [2], "labels": ["a"], "products": []}"#,
        // duplicate label
        r#"{"name": "x", "ring": {"kind": "rationals"}, "dim": 2, "parity": [0, 0], "labels": ["a", "a"], "products": []}"#,
    ];
    for json in bad {
        assert!(load(json).is_err(), "{json}");
    }
}

#[test]
fn polynomial_and_modular_files() {
    let poly = r#"{"name": "p", "ring": {"kind": "polynomial", "variables": ["t"]}, "dim": 1, "parity": [0],
        "labels": ["a"], "products": [{"i": 0, "j": 0, "terms": [{"k": 0, "coeff": "t^2 - 1/2"}]}]}"#;
    let alg = load(poly).unwrap();
    assert!(matches!(alg, DynAlgebra::Polynomial(_)));
    assert_eq!(load(&cli::algebra_file_json(&alg)).unwrap().name(), "p");
    let modular = r#"{"name": "m", "ring": {"kind": "prime-field", "p": 7}, "dim": 1, "parity": [0],
        "labels": ["a"], "products": [{"i": 0, "j": 0, "terms": [{"k": 0, "coeff": "1/3"}]}]}"#;
    let alg = load(modular).unwrap();
    match &alg {
        DynAlgebra::Modular(a) => assert_eq!(a.product(0, 0)[0].1.value(), 5),
        other => panic!("wrong ring: {}", other.name()),
    }
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    std::fs::write(&p, poly).unwrap();
    // structure computations need a field
    assert_eq!(code(&["center", "--file", p.to_str().unwrap()]), 2);
    assert_eq!(code(&["check", "--file", p.to_str().unwrap(), "--identity", "associative"]), 0);
}
