use std::io::Write;
use std::process::{Command, Output};

use hochschild_steenrod::cli::config::{parse_config, Command as Cmd};
use hochschild_steenrod::cli::{run, EXIT_OK, EXIT_PARSE, EXIT_PIPELINE, EXIT_VALIDATION};

fn hhsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hhsq"))
        .args(args)
        .output()
        .expect("hhsq runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn hh_on_t_u_prints_one_class_per_degree() {
    let o = hhsq(&[
        "hh",
        "--fixture",
        "t_u",
        "--max-degree",
        "6",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<u64> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d["dimension"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1; 7]);
    assert_eq!(v[2]["generators"][0], "u");
    assert_eq!(v[1]["generators"][0], "su");
}

#[test]
fn fixtures_lists_every_builtin() {
    let o = hhsq(&["fixtures"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let out = stdout(&o);
    for name in ["t_u", "sigma_cp2", "s4_wedge_s6", "truncated_poly K"] {
        assert!(out.contains(name), "{name} missing from\n{out}");
    }
}

#[test]
fn sq_ha_separates_the_two_cell_fixtures() {
    for (fixture, value) in [("sigma_cp2", "a6"), ("s4_wedge_s6", "0")] {
        let o = hhsq(&["sq-ha", "--fixture", fixture, "--format", "json"]);
        assert_eq!(
            o.status.code(),
            Some(EXIT_OK),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        let row = v
            .as_array()
            .unwrap()
            .iter()
            .find(|r| r["class"] == "a4" && r["i"] == 2)
            .unwrap();
        assert_eq!(row["value"], value, "{fixture}");
    }
}

#[test]
fn two_cell_fixtures_stop_at_degree_eight() {
    let o = hhsq(&["sq-ha", "--fixture", "sigma_cp2", "--max-degree", "10"]);
    assert_eq!(o.status.code(), Some(EXIT_PIPELINE));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported differential"));
}

#[test]
fn input_documents_are_read() {
    let doc = r#"{
        "max_degree": 6,
        "algebra": {"kind": "free", "generators": [{"name": "u", "degree": 2}]},
        "kappa": {"sharp": {"u#u": {"e_1": "u"}}},
        "names": {"u[]": "u", "1[u]": "su"}
    }"#;
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(doc.as_bytes()).unwrap();
    let path = file.path().to_str().unwrap();
    let o = hhsq(&[
        "steenrod",
        "--input",
        path,
        "--format",
        "json",
        "--degree-bound-direct",
        "2",
    ]);
    assert_eq!(
        o.status.code(),
        Some(EXIT_OK),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let value = |class: &str, i: i64| {
        v.as_array()
            .unwrap()
            .iter()
            .find(|r| r["class"] == class && r["i"] == i)
            .unwrap()["value"]
            .clone()
    };
    assert_eq!(value("u", 2), "u^2[]");
    assert_eq!(value("su", 1), "0");

    // u[u] in degree 3 is then computed directly, and its Sq^1 disagrees with the Cartan formula
    let o = hhsq(&["steenrod", "--input", path]);
    assert_eq!(o.status.code(), Some(EXIT_PIPELINE));
    assert!(stdout(&o).contains("warning: Cartan mismatch at Sq^1(u[u])"));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("u^2[] directly but 0 by the Cartan formula")
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        hhsq(&["hh", "--fixture", "nope"]).status.code(),
        Some(EXIT_PARSE)
    );
    assert_eq!(
        hhsq(&["hh", "--input", "/nonexistent.json"]).status.code(),
        Some(EXIT_PARSE)
    );
    assert_eq!(
        hhsq(&["steenrod", "--fixture", "truncated_poly 3"])
            .status
            .code(),
        Some(EXIT_VALIDATION)
    );
    assert_eq!(
        hhsq(&["hh", "--fixture", "t_u", "--max-degree", "1"])
            .status
            .code(),
        Some(EXIT_PARSE)
    );

    let mut c = parse_config(
        r#"{"prime": 3, "algebra": {"kind": "free", "generators": [{"name": "u", "degree": 2}]}}"#,
    )
    .unwrap();
    c.command = Some(Cmd::SqHa);
    assert_eq!(run(c).code, EXIT_PARSE);

    // κ̃(u'#u'') must satisfy D κ̃ = κ̃ d; a value at e_0 breaks it
    let mut c = parse_config(
        r#"{"max_degree": 6,
            "algebra": {"kind": "free", "generators": [{"name": "u", "degree": 2}]},
            "kappa": {"sharp": {"u#u": {"e_0": "u^2", "e_1": "u"}}}}"#,
    )
    .unwrap();
    c.command = Some(Cmd::SqHa);
    assert_eq!(run(c).code, EXIT_VALIDATION);
}

#[test]
fn verify_on_truncated_poly_skips_the_pipeline_suites() {
    let o = hhsq(&[
        "verify",
        "--fixture",
        "truncated_poly 3",
        "--max-degree",
        "6",
    ]);
    let out = stdout(&o);
    assert!(out.contains("SKIP  Cartan formula"), "{out}");
    assert!(out.contains("PASS  d^2 = 0"), "{out}");
}
