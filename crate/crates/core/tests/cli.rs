use std::process::Command;

use serde_json::Value;

const B3: &str = "braid:classical:n=3";

fn garside(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_garside"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn validator() -> jsonschema::Validator {
    let text = include_str!("../../../docs/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, args: &[&str], doc: &str) {
    let value: Value = serde_json::from_str(doc).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    let errors: Vec<String> = v.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(
        errors.is_empty(),
        "{args:?} does not match the schema: {errors:?}"
    );
}

#[test]
fn every_command_matches_the_schema() {
    let v = validator();
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["audit", "braid:dual:n=4"], 0),
        (vec!["nf", B3, "s1 s2 s1 s2"], 0),
        (vec!["dist", B3, "s1", "s2^-1 D^3"], 0),
        (vec!["dist", B3, "s1", "s2", "--metric", "x"], 0),
        (vec!["path", B3, "s1^-1", "s2 s2 s1"], 0),
        (
            vec!["ball", B3, "s1", "--radius", "2", "--graph", "gammabar"],
            0,
        ),
        (vec!["rigid", B3, "s1 s2^-1"], 0),
        (vec!["project", B3, "s1", "s2 s1^-3"], 0),
        (
            vec![
                "scan-contraction",
                B3,
                "s1",
                "--radius",
                "2",
                "--window",
                "3",
            ],
            0,
        ),
        (vec!["scan-constriction", B3, "s1", "--samples", "20"], 0),
        (vec!["diagnostics", B3, "s1", "--samples", "50"], 0),
        (
            vec!["diagnostics", "braid:classical:n=4", "--samples", "50"],
            0,
        ),
        (vec!["absorbable", B3, "s1 s1"], 0),
        (
            vec!["absorbable", B3, "--scan-axis", "s1", "--samples", "50"],
            0,
        ),
        (
            vec!["cal-dist", "zn:n=3", "", "s1^3 s2^5", "--radius", "5"],
            0,
        ),
        (vec!["z3-diam", "--radius", "2"], 0),
        (vec!["wpd", B3, "s1", "--window", "3", "--radius", "3"], 0),
        (vec!["nf", B3, "s9"], 1),
        (vec!["ball", B3, "--radius", "12"], 2),
        (vec!["project", "zn:n=3", "s1", "s2"], 1),
    ];
    for (args, code) in cases {
        let (got, out) = garside(&args);
        assert_eq!(got, code, "{args:?}\n{out}");
        assert_valid(&v, &args, &out);
    }
}

#[test]
fn seeded_scans_are_byte_identical() {
    let runs: [&[&str]; 6] = [
        &[
            "scan-contraction",
            B3,
            "s1",
            "--radius",
            "2",
            "--window",
            "4",
        ],
        &[
            "scan-constriction",
            B3,
            "s1",
            "--samples",
            "30",
            "--seed",
            "9",
        ],
        &["diagnostics", B3, "s1", "--samples", "100", "--seed", "4"],
        &[
            "diagnostics",
            "braid:classical:n=4",
            "--samples",
            "100",
            "--seed",
            "4",
        ],
        &[
            "absorbable",
            B3,
            "--scan-axis",
            "s1",
            "--samples",
            "100",
            "--seed",
            "4",
        ],
        &["wpd", B3, "s1", "--window", "4", "--radius", "3"],
    ];
    for args in runs {
        let (c1, a) = garside(args);
        let (c2, b) = garside(args);
        assert_eq!((c1, c2), (0, 0), "{args:?}");
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn guard_override_needs_confirmation() {
    let (code, out) = garside(&["ball", B3, "--radius", "7", "--guard-override", "7"]);
    assert_eq!(code, 2);
    assert!(out.contains("--i-know"));
    let (code, out) = garside(&[
        "ball",
        "zn:n=2",
        "--radius",
        "7",
        "--guard-override",
        "7",
        "--i-know",
    ]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn table_output_is_flat() {
    let (code, out) = garside(&["z3-diam", "--radius", "1", "--table"]);
    assert_eq!(code, 0);
    assert!(out
        .lines()
        .any(|l| l.starts_with("constants.upper_bound") && l.ends_with('3')));
}

#[test]
fn unknown_atom_names_position() {
    let (code, out) = garside(&["nf", B3, "s1 s9"]);
    assert_eq!(code, 1);
    assert!(out.contains("unknown atom s9 at position 4"), "{out}");
}
