use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use perpetual_cli::format::SequenceFile;

fn perpetual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perpetual"))
        .args(args)
        .env_remove("PERPETUAL_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against a golden file; `UPDATE_GOLDEN=1` rewrites it.
fn assert_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "golden {name}");
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("perpetual-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn winners(args: &[&str]) -> String {
    let o = perpetual(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).split_whitespace().collect::<Vec<_>>().join(" ")
}

#[test]
fn run_examples() {
    assert_eq!(winners(&["run", "--rule", "av", "--simple", "2,1:3"]), "a a a");
    assert_eq!(winners(&["run", "--rule", "reset", "--simple", "3,1,1,1:6"]), "a a a b a c");
    assert_eq!(winners(&["run", "--rule", "consensus", "--simple", "2,1:3"]), "a b a");
}

#[test]
fn run_trace_is_exact() {
    let o = perpetual(&["run", "--rule", "consensus", "--simple", "2,1:3", "--trace"]);
    assert_golden("consensus_trace.txt", &stdout(&o));
}

#[test]
fn run_reads_sequence_files() {
    let path = golden("pav_golden.json");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(SequenceFile::parse(&text).unwrap().write(), text);
    assert_eq!(winners(&["run", "--rule", "pav", "--input", path.to_str().unwrap()]), "a a a b");
}

#[test]
fn exponential_round_cap_is_an_error() {
    let o = perpetual(&["run", "--rule", "exponential", "--simple", "1,1:4", "--max-round", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_iud_pav_writes_witness() {
    let dir = scratch("iud");
    let w = dir.join("witness.json");
    let o = perpetual(&["check", "--axiom", "iud", "--rule", "pav", "--witness-out", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verdict: refuted"));
    assert_golden("pav_iud_witness.json", &std::fs::read_to_string(&w).unwrap());
}

#[test]
fn check_campaigns_that_hold() {
    let o = perpetual(&["check", "--axiom", "simpleprop", "--rule", "phragmen", "--budget", "n<=7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = perpetual(&["check", "--axiom", "auq", "--rule", "consensus", "--budget", "k<=30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn check_json_report() {
    let o = perpetual(&["--json", "check", "--axiom", "alq", "--rule", "pav", "--simple", "2,1:6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["budget"]["examined"], 6);
}

#[test]
fn check_single_sequence_dry_spell() {
    let dir = scratch("dry");
    let o = perpetual(&["corpus", "export", "--dir", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let input = dir.join("reset-dry-spell-5.json");
    let o = perpetual(&["check", "--axiom", "dryspell", "--rule", "reset", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn check_degree_and_dictatorial() {
    let o = perpetual(&["check", "--axiom", "degree", "--rule", "phragmen"]);
    assert_eq!(o.status.code(), Some(2));
    let o = perpetual(&["check", "--axiom", "degree", "--rule", "phragmen", "--ell", "2", "--budget", "instances=300"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = perpetual(&["check", "--axiom", "dictatorial", "--rule", "dictator"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("longest_run: 5"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["run", "--rule", "nope", "--simple", "1:1"][..],
        &["run", "--rule", "av"],
        &["check", "--axiom", "iud", "--rule", "av", "--budget", "m<=3"],
        &["check", "--axiom", "bogus", "--rule", "av"],
        &["apportion", "--method", "frege", "--votes", "1,x", "--seats", "2"],
    ] {
        assert_eq!(perpetual(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn apportion_examples() {
    let o = perpetual(&["apportion", "--method", "dhondt", "--votes", "4,3,1", "--seats", "5"]);
    assert!(stdout(&o).contains("totals: 3,2,0"));
    let o = perpetual(&["--json", "apportion", "--method", "frege", "--votes", "3,2,1", "--seats", "6", "--verify-equivalence", "consensus"]);
    assert_eq!(o.status.code(), Some(0));
    assert_golden("frege_apportion.json", &stdout(&o));
    let o = perpetual(&["apportion", "--method", "frege", "--votes", "1,1", "--seats", "2", "--verify-equivalence", "consensus", "--voters", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn corpus_verifies_and_exports_byte_stable() {
    let o = perpetual(&["corpus", "verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
    let dir = scratch("export");
    perpetual(&["corpus", "export", "--dir", dir.to_str().unwrap()]);
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let text = std::fs::read_to_string(&path).unwrap();
        if name.ends_with(".expected.json") {
            let v: serde_json::Value = serde_json::from_str(&text).unwrap();
            assert!(v["expected"].is_object(), "{name}");
        } else {
            assert_eq!(SequenceFile::parse(&text).unwrap().write(), text, "{name}");
            files += 1;
        }
    }
    assert!(files > 40);
}

#[test]
fn quick_tables_render() {
    let o = perpetual(&["table", "--which", "rules", "--quick"]);
    let text = stdout(&o);
    assert!(text.contains("Per. Phragmén     ✓             ✗           ✓                    ✓            ✗"), "{text}");
    let o = perpetual(&["--json", "--jobs", "2", "table", "--which", "classes", "--quick"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let loss = v["rows"].as_array().unwrap().iter().find(|r| r["row"] == "loss-based WAMs").unwrap();
    let marks: Vec<&str> = loss["cells"].as_array().unwrap().iter().map(|c| c["computed"].as_str().unwrap()).collect();
    assert_eq!(marks, ["✗", "✓", "✗", "✗", "✗", "✗", "✗"]);
}
