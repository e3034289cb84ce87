use std::process::{Command, Output};

fn bipolar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bipolar"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn vacuous_base_answers_zero_one() {
    let out = bipolar(&["query", "tests/data/empty.base", "p & !q"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "formula\tdelta\tpi\tnecessity\tpotential_necessity\np & !q\t0\t1\t0\t1\n");
}

#[test]
fn compile_reports_exact_degrees() {
    let out = bipolar(&["compile", "tests/data/weighted.base", "--check-eq6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("p !q\t1/3\t0.5\n"), "{text}");
    assert!(text.contains("p q\t0.8\t1\n"), "{text}");
    assert!(text.contains("eq6-holds\tyes\n"), "{text}");
}

#[test]
fn json_output_parses() {
    let out = bipolar(&["query", "tests/data/example2.net", "x1 & x2 & x3", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["delta"], "0.4");
    assert_eq!(value["pi"], "0.5");

    let out = bipolar(&["diagnose", "tests/data/flu.model", "tests/data/fever.obs", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["rows"][0]["cause"], "flu");
    assert_eq!(value["rows"][0]["cons"], "1");
}

#[test]
fn rules_compile_to_strata() {
    let out = bipolar(&["wop", "tests/data/birds.rules"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("order\tstratum\tdegree\tinterpretations\nupper\t1\t1\t"));
}

#[test]
fn diagnosis_ranks_flu_first() {
    let out = bipolar(&["diagnose", "tests/data/flu.model", "tests/data/fever.obs"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "rank\tcause\tcons\trel\n1\tflu\t1\t0\n2\tcold\t0.2\t0\n3\tallergy\t0\t0\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bipolar(&["compile"]).status.code(), Some(2));
    assert_eq!(bipolar(&["query", "tests/data/empty.base", "p", "--max-vars", "99"]).status.code(), Some(2));
}

#[test]
fn parse_errors_exit_3_with_line_numbers() {
    let out = bipolar(&["compile", "tests/data/bad_formula.base"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("line 2:"), "{}", stderr(&out));
}

#[test]
fn invalid_networks_exit_4() {
    let out = bipolar(&["net", "tests/data/unnormalized.net"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("pi normalization"));
}

#[test]
fn inconsistencies_exit_5() {
    let out = bipolar(&["compile", "tests/data/violation.base"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stderr(&out).contains("p !q, p q"));
    assert_eq!(bipolar(&["wop", "tests/data/contradictory.rules"]).status.code(), Some(5));
    assert_eq!(bipolar(&["net", "tests/data/incoherent.net", "--mode", "check"]).status.code(), Some(5));
}

#[test]
fn revision_repairs_incoherent_networks() {
    let out = bipolar(&["net", "tests/data/incoherent.net"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("x y\t0.3\t0.3\n"));
}

#[test]
fn variable_limit_exits_6() {
    let out = bipolar(&["compile", "tests/data/too_many.base"]);
    assert_eq!(out.status.code(), Some(6));
    assert!(bipolar(&["compile", "tests/data/too_many.base", "--max-vars", "20"]).status.success());
}

#[test]
fn missing_files_exit_7() {
    assert_eq!(bipolar(&["compile", "tests/data/missing.base"]).status.code(), Some(7));
}

#[test]
fn check_reports_every_file() {
    let out = bipolar(&["check", "tests/data/flu.model", "tests/data/fever.obs", "tests/data/bad_formula.base"]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.lines().nth(2).unwrap().contains("\tok\t"), "{text}");
}
