use std::process::{Command, Output};

use serde_json::Value;

fn quivkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quivkit")).args(args).env_remove("QUIVKIT_FIELD").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = quivkit(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&ok(&all)).unwrap()
}

#[test]
fn hom_dimension() {
    assert_eq!(ok(&["hom", "P1", "P3"]).trim(), "dim Hom = 3");
    assert_eq!(json(&["hom", "P1", "P3"])["result"]["dim"], 3);
}

#[test]
fn evaluation_kernel_decomposes() {
    let out = ok(&["ev", "R2@0", "R3@0", "--kernel", "--decompose"]);
    assert!(out.contains("ker ≅ R2@0"), "{out}");
}

#[test]
fn verify_table_passes() {
    let out = ok(&["verify-table", "--max-m", "4", "--max-n", "4", "--lambdas", "0,1,inf", "--field", "q"]);
    assert!(out.contains("0 kernel mismatches"), "{out}");
}

#[test]
fn verify_table_over_a_prime_field_with_every_parameter() {
    ok(&["verify-table", "--max-m", "3", "--max-n", "3", "--lambdas", "all", "--field", "gf:3"]);
}

#[test]
fn text_and_json_agree() {
    let text = ok(&["ev", "P1", "I1", "--kernel"]);
    let v = json(&["ev", "P1", "I1", "--kernel"]);
    let h = v["result"]["hom_dim"].as_u64().unwrap();
    assert!(text.contains(&format!("dim Hom = {h}")));
    assert_eq!(v["result"]["kernel"]["dims"]["x"], 0);
    assert!(text.contains("ker dims = (0,3)"));
}

#[test]
fn report_carries_run_metadata() {
    let v = json(&["decompose", "P2+R1@inf"]);
    assert_eq!(v["verb"], "decompose");
    assert_eq!(v["field"], "q");
    assert!(v["max_bit_size"].is_u64());
    assert!(v["wall_ms"].is_number());
}

#[test]
fn parameters_reduce_modulo_the_characteristic() {
    let o = quivkit(&["decompose", "R1@7", "--field", "gf:5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("R1@2"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn field_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_quivkit"))
        .args(["decompose", "R1@7"])
        .env("QUIVKIT_FIELD", "gf:5")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("R1@2"));
}

#[test]
fn translate_and_resolve() {
    assert!(ok(&["tau", "P3"]).contains("≅ P1"));
    assert!(ok(&["tau", "I0", "--inverse"]).contains("≅ 0"));
    assert!(ok(&["tau", "R2@1", "--power", "-3"]).contains("≅ R2@1"));
    assert!(ok(&["resolve", "I1"]).contains("exact: yes"));
    assert!(ok(&["resolve", "I1", "--minimal"]).contains("exact: yes"));
}

#[test]
fn isomorphism_verbs() {
    assert!(ok(&["iso", "P1+I1", "R1@0+R1@1+R1@inf"]).contains("isomorphic: no"));
    let out = ok(&["bongartz", "P1+P1", "P0+P2"]);
    assert!(out.contains("isomorphic: no") && out.contains("witness"), "{out}");
    assert!(ok(&["bongartz", "R2@0", "R2@0"]).contains("isomorphic: yes"));
}

#[test]
fn closure_check() {
    assert!(ok(&["cx-check", "--lambdas", "0", "--max-index", "3"]).contains("0 violations"));
}

#[test]
fn representation_files_round_trip() {
    let dir = std::env::temp_dir().join(format!("quivkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let v = json(&["tau", "I1"]);
    let path = dir.join("t.json");
    std::fs::write(&path, v["result"]["translate"].to_string()).unwrap();
    assert!(ok(&["decompose", path.to_str().unwrap()]).contains("I3"));

    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"field":"q","quiver":"kronecker","dims":{"x":1,"y":2},"maps":{"alpha":[["1"]],"beta":[["0"],["1"]]}}"#,
    )
    .unwrap();
    assert_eq!(quivkit(&["decompose", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["hom", "P1", "X3"][..],
        &["hom", "R1", "P0"],
        &["hom", "P1", "P2", "--field", "gf:4"],
        &["decompose", "R1@1/2", "--field", "gf:2"],
        &["verify-table", "--max-m", "0"],
        &["verify-table", "--lambdas", "all"],
        &["frobnicate"],
    ] {
        assert_eq!(quivkit(args).status.code(), Some(2), "{args:?}");
    }
}
