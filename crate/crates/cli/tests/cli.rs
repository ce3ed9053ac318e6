use std::process::{Command, Output};

use serde_json::Value;

fn spd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spd")).args(args).output().expect("spawn spd")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn case_check_confirms_c2_barrier_instance() {
    let o = spd(&["case-check", "--m", "30", "--n", "2000", "--k", "500", "--tau", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["verdict"], "separation-fails-confirmed");
    assert_eq!(v["cases"][0]["id"], "C2");
    assert_eq!(v["cases"][0]["holds"], "yes");
    assert_eq!(v["inputs"]["t"], 1507);
    assert_eq!(v["inputs"]["epsilon"], "50/3");
}

#[test]
fn case_check_alarm_exit_code() {
    let o = spd(&["case-check", "--m", "2", "--n", "20", "--k", "0", "--tau", "5"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json_of(&o);
    assert_eq!(v["alarm"], true);
    assert_eq!(v["verdict"], "out-of-regime");
}

#[test]
fn case_check_interval_mode_reports_log_interval() {
    let o = spd(&["case-check", "--m", "3", "--n", "40", "--k", "2", "--tau", "50", "--mode", "interval"]);
    let v = json_of(&o);
    for c in v["cases"].as_array().unwrap() {
        assert_eq!(c["arithmetic"], "interval");
        assert!(c["lhs"]["log_interval"].is_array());
    }
}

#[test]
fn case_check_output_is_byte_identical() {
    let args = ["case-check", "--m", "30", "--n", "2000", "--k", "10", "--tau", "180000001"];
    assert_eq!(spd(&args).stdout, spd(&args).stdout);
}

#[test]
fn case_check_rejects_missing_padding() {
    let o = spd(&["case-check", "--m", "5", "--n", "5", "--k", "0", "--tau", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("padding"));
}

#[test]
fn sweep_summary() {
    let o = spd(&["sweep", "--m", "2", "--n", "20", "--k-samples", "4,5,19,25", "--tau-samples", "0,1,400", "--summary"]);
    let v = json_of(&o);
    assert_eq!(v["instances"], 9);
    assert_eq!(v["in_regime"], true);
    assert_eq!(v["coverage"]["large_k_covered"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("k = 25 skipped"));
}

#[test]
fn rank_shifted_determinant() {
    let v = json_of(&spd(&["rank-shifted", "--poly", "det:3", "--k", "1", "--tau", "1"]));
    assert_eq!(v["rank"], 65);
    assert_eq!(v["partials_rank"], 9);
    assert_eq!(v["ambient"], 9);
}

#[test]
fn rank_partials_from_text_and_json_files() {
    let dir = std::env::temp_dir().join(format!("spd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = dir.join("p.txt");
    std::fs::write(&text, "# l1^3 + l2^3\n1 * l1^3\n1 * l2^3\n").unwrap();
    let v = json_of(&spd(&["rank-partials", "--poly", text.to_str().unwrap(), "--k", "1"]));
    assert_eq!(v["rank"], 2);
    let json = dir.join("p.json");
    std::fs::write(&json, r#"{"degree":2,"terms":[{"coeff":"1","exponents":{"x_1_1":1,"x_2_2":1}},{"coeff":"-1","exponents":{"x_1_2":1,"x_2_1":1}}]}"#)
        .unwrap();
    let v = json_of(&spd(&["rank-partials", "--poly", json.to_str().unwrap(), "--k", "1"]));
    assert_eq!(v["rank"], 4);
    let v = json_of(&spd(&["rank-partials", "--poly", json.to_str().unwrap(), "--k", "1", "--prime", "2305843009213693951"]));
    assert_eq!(v["rank"], 4);
    assert_eq!(v["mode"]["mode"], "prime-field");
    let o = spd(&["rank-partials", "--poly", json.to_str().unwrap(), "--k", "1", "--prime", "1000000007"]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn budget_is_enforced() {
    let o = spd(&["rank-shifted", "--poly", "det:4", "--k", "1", "--tau", "3", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn macaulay_commands() {
    let v = json_of(&spd(&["macaulay-rep", "3", "2"]));
    assert_eq!(v["rep"], serde_json::json!([["3", 2]]));
    let v = json_of(&spd(&["macaulay-bound", "3", "2", "1", "3"]));
    assert_eq!(v["bound"], "6");
}

#[test]
fn bound_values() {
    let v = json_of(&spd(&["bound", "padded-upper", "--n", "3", "--m", "2", "--k", "0", "--tau", "0"]));
    assert_eq!(v["quantity"]["value"], "45");
    assert_eq!(v["quantity"]["provenance"], "padded-upper");
    let o = spd(&["bound", "no-such-bound"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn degenerate_two_powers() {
    let o = spd(&["degenerate", "--kind", "c3", "--n", "4"]);
    let out = String::from_utf8(o.stdout).unwrap();
    let poly = out.split("# polynomial\n").nth(1).unwrap();
    assert_eq!(poly, "1 * l1^4\n1 * l2^4\n");
    let v = json_of(&spd(&["degenerate", "--kind", "c1", "--n", "6", "--m", "2", "--k", "4", "--format", "json"]));
    assert_eq!(v["kind"]["regime"], "boundary");
    assert_eq!(v["substitution"]["x_5_5"]["terms"][0]["exponents"]["l"], 1);
    assert_eq!(spd(&["degenerate", "--kind", "c1", "--n", "6", "--m", "2", "--k", "3"]).status.code(), Some(1));
}
