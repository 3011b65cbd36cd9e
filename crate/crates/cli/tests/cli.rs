//! Golden tests for the command-line interface; every documented example is
//! executed against the built binary and its output is pinned.

use std::process::{Command, Output};

const HAAGERUP_G: &str = "bwd1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1x2v2x1";
const HAAGERUP_PAIR: &str =
    "bwd1v1v1v1p1v1x0p0x1v1x0p0x1duals1v1v1x2v2x1,bwd1v1v1v1p1v1x0p1x0duals1v1v1x2";
const E10: &str = "bwd1v1v1v1v1v1v1p1v1x0duals1v1v1v1v1";
const PATTERN_SAME: &str = "bwd1v1p1v1x0p1x0duals1v1x2";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_subfactor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn norm_haagerup_exact() {
    let o = run(&["norm", HAAGERUP_G, "--exact", "--eps", "1e-9"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("norm   = 2.0743132930"), "{}", s);
    assert!(s.contains("norm^2 = 4.3027756374"), "{}", s);
}

#[test]
fn norm_single_edge() {
    let o = run(&["norm", "bwd1duals1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("norm   = 1.0000000000"), "{}", s);
    assert!(s.contains("norm^2 = 1.0000000000"), "{}", s);
}

#[test]
fn norm_e10() {
    let o = run(&["norm", E10, "--exact", "--eps", "1e-8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("norm^2 = 4.0264"), "{}", stdout(&o));
}

#[test]
fn norm_parse_error_exits_2() {
    let o = run(&["norm", "bwdnonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_haagerup_passes() {
    let o = run(&["check", HAAGERUP_PAIR]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    // one JSONL verdict per executed test; nothing fails (inconclusive is
    // fine for tests that need a weed limit or do not apply)
    let mut passes = 0;
    for line in s.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_ne!(v["outcome"], "Fail", "{}", line);
        if v["outcome"] == "Pass" {
            passes += 1;
        }
    }
    assert!(passes >= 6, "{}", s);
}

#[test]
fn check_forbidden_pattern_fails() {
    let pair = format!("{},{}", PATTERN_SAME, PATTERN_SAME);
    let o = run(&["check", &pair]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    assert!(
        s.lines().any(|l| l.contains("ocneanu_triple_point") && l.contains("Fail")),
        "{}",
        s
    );
}

#[test]
fn check_structural_error_exits_2() {
    // odd vertex counts differ at depth 1
    let o = run(&["check", "bwd1p1duals1,bwd1duals1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn atlas_lists_corpus() {
    let o = run(&["atlas"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for dec in ["4.30278", "4.37720", "4.56155", "4.73205", "4.79129"] {
        assert!(s.contains(dec), "missing {}", dec);
    }
    assert_eq!(s.matches("5.00000").count(), 7, "seven index-5 entries");
}

#[test]
fn atlas_validates() {
    let o = run(&["atlas", "--validate"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn tl_jw_3_matches_displayed_formula() {
    let o = run(&["tl", "jw", "--n", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("f(3) over rational functions in d, 5 terms:"), "{}", s);
    // identity has coefficient 1; single-hump diagrams carry -d/(d^2-1),
    // double-hump ones 1/(d^2-1)
    assert!(s.contains("((()))  1"), "{}", s);
    assert_eq!(s.matches("(-d) / (d^2 - 1)").count(), 2, "{}", s);
    assert_eq!(s.matches("(1) / (d^2 - 1)").count(), 2, "{}", s);
}

#[test]
fn tl_trace_jw5() {
    let o = run(&["tl", "trace", "--jw", "5"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "tr f(5) = d^5 - 4*d^3 + 3*d");
}

#[test]
fn tl_basis_counts() {
    let o = run(&["tl", "basis", "--n", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("14 diagrams on 4 strands:"));
}

#[test]
fn tl_jw_at_vanishing_delta_reports_error() {
    let o = run(&["tl", "jw", "--n", "5", "--delta", "(1+sqrt(5))/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("quantum integer"));
}

#[test]
fn odometer_run_stream_and_resume() {
    let dir = std::env::temp_dir().join(format!("subfactor-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("run.jsonl");
    let cp = dir.join("cp.json");

    // budget-limited run exits 3 and leaves a checkpoint
    let o = run(&[
        "odometer",
        "--root",
        "bwd1duals1,bwd1duals1",
        "--limit",
        "3+sqrt(2)",
        "--max-steps",
        "3",
        "--out",
        out.to_str().unwrap(),
        "--checkpoint",
        cp.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
    let events = std::fs::read_to_string(&out).unwrap();
    for line in events.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["event"].is_string());
    }
    assert!(events.contains("\"event\":\"summary\""));

    // resumed run completes
    let out2 = dir.join("run2.jsonl");
    let cp2 = dir.join("cp2.json");
    let o = run(&[
        "odometer",
        "--resume",
        cp.to_str().unwrap(),
        "--out",
        out2.to_str().unwrap(),
        "--checkpoint",
        cp2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    // a fresh full run reaches the same final sets
    let cp3 = dir.join("cp3.json");
    let o = run(&[
        "odometer",
        "--root",
        "bwd1duals1,bwd1duals1",
        "--limit",
        "3+sqrt(2)",
        "--out",
        dir.join("run3.jsonl").to_str().unwrap(),
        "--checkpoint",
        cp3.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let a: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cp2).unwrap()).unwrap();
    let b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&cp3).unwrap()).unwrap();
    assert_eq!(a["vines"], b["vines"]);
    assert_eq!(a["weeds"], b["weeds"]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn vines_haagerup_short_scan() {
    let o = run(&["vines", "--vine", HAAGERUP_PAIR, "--max-n", "9"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 4); // st 3, 5, 7, 9
    assert_eq!(records[0]["verdict"]["kind"], "survives");
    assert_eq!(records[1]["verdict"]["kind"], "eliminated");
    assert_eq!(records[2]["verdict"]["kind"], "survives");
    assert_eq!(records[3]["verdict"]["kind"], "eliminated");
}
