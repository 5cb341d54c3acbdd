//! Black-box tests of the command-line interface.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codonfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn optimize_defaults_produce_json_report() {
    let output = run(&["optimize", "--aa", "TLPKAD", "--solver", "exact", "--seed", "1"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["aa"], "TLPKAD");
    assert_eq!(report["nt"].as_str().unwrap().len(), 18);
    assert!(report["cai"].as_f64().unwrap() > 0.0);
    assert!(report["mfe"].as_f64().unwrap() <= 0.0);
    assert_eq!(report["solver"], "exact");
    for key in ["structure", "objective", "theta", "alpha", "iterations", "evaluations", "cache_hits", "seed"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn optimize_replays_byte_identically() {
    let args = ["optimize", "--aa", "TLPKAD", "--solver", "sa", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn optimize_rejects_empty_sequence() {
    let output = run(&["optimize", "--aa", ""]);
    assert_eq!(output.status.code(), Some(2));
    let err = String::from_utf8_lossy(&output.stderr);
    assert!(err.contains("empty sequence"), "stderr: {err}");
}

#[test]
fn optimize_alpha_zero_sets_objective_to_mfe() {
    let output = run(&["optimize", "--aa", "TLPKAD", "--alpha", "0", "--seed", "1"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["objective"], report["mfe"]);
}

#[test]
fn fold_exact_small_hairpin() {
    let output = run(&["fold", "--seq", "GGGAAACCC", "--solver", "exact", "--output", "text"]);
    assert!(output.status.success());
    assert!(stdout(&output).starts_with("(((...)))"));
}

#[test]
fn fold_unpairable_sequence_is_flat() {
    let output = run(&["fold", "--seq", "AAAA"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["structure"], "....");
    assert_eq!(report["mfe"], 0.0);
}

#[test]
fn fold_histogram_requires_cvar() {
    let output = run(&["fold", "--seq", "GGGAAACCC", "--solver", "exact", "--histogram", "/tmp/h.csv"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn fold_cvar_writes_histogram_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hist.csv");
    let output = run(&[
        "fold",
        "--seq",
        "GGGAAACCC",
        "--solver",
        "cvar",
        "--shots",
        "256",
        "--cvar-maxiter",
        "10",
        "--seed",
        "5",
        "--histogram",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("energy,count"));
    let mut energies = Vec::new();
    let mut total = 0u64;
    for line in lines {
        let (energy, count) = line.split_once(',').unwrap();
        energies.push(energy.parse::<f64>().unwrap());
        total += count.parse::<u64>().unwrap();
    }
    assert_eq!(total, 256);
    for w in energies.windows(2) {
        assert!(w[0] < w[1], "rows sorted by energy");
    }
}

#[test]
fn score_reports_loop_breakdown() {
    let output = run(&["score", "--seq", "GGGAAACCC", "--structure", "(((...)))"]);
    assert!(output.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let loops = report["breakdown"]["loops"].as_array().unwrap();
    let stacks = loops.iter().filter(|l| l["kind"] == "stack").count();
    let hairpins = loops.iter().filter(|l| l["kind"] == "hairpin").count();
    assert_eq!(stacks, 2);
    assert_eq!(hairpins, 1);
    assert!(report["mfe"].as_f64().unwrap() < 0.0);
}

#[test]
fn score_rejects_unbalanced_structure() {
    let output = run(&["score", "--seq", "GGG", "--structure", "((("]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn score_rejects_length_mismatch() {
    let output = run(&["score", "--seq", "GGGAAACCC", "--structure", "(((...)))."]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn export_qubo_text_format() {
    let output = run(&["export-qubo", "--seq", "GGGAAACCC"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("vars 2 offset 0"), "got: {text}");
    assert!(text.contains("quad 0 1 -1"));
}

#[test]
fn solver_cap_exceeded_exits_3() {
    // 30-nt sequence has more variables than the exact solver allows
    let output = run(&[
        "fold",
        "--seq",
        "GAUAGGAAUAAGUUCCACCUGAGGUGGGAC",
        "--solver",
        "exact",
    ]);
    assert_eq!(output.status.code(), Some(3));
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "solver = sa\nseed = 11\nalpha = -0.25\n").unwrap();
    let from_file = run(&["optimize", "--aa", "MW", "--config", path.to_str().unwrap()]);
    assert!(from_file.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&from_file)).unwrap();
    assert_eq!(report["solver"], "sa");
    assert_eq!(report["seed"], 11);
    assert_eq!(report["alpha"], -0.25);

    let overridden = run(&[
        "optimize", "--aa", "MW", "--config", path.to_str().unwrap(), "--seed", "3",
    ]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert_eq!(report["seed"], 3);
    assert_eq!(report["solver"], "sa");
}

#[test]
fn stdin_input_is_accepted() {
    use std::io::Write as _;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_codonfold"))
        .args(["fold", "--solver", "exact", "--output", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"GGGAAACCC\n")
        .unwrap();
    let output = child.wait_with_output().unwrap();
    assert!(output.status.success());
    assert!(String::from_utf8_lossy(&output.stdout).starts_with("(((...)))"));
}

#[test]
fn help_documents_the_advertised_flags() {
    for (sub, flags) in [
        ("optimize", vec!["--solver", "--shots", "--beta", "--depth", "--seed", "--sweeps", "--restarts", "--rarity-sign", "--repeat-rule", "--alpha", "--theta0"]),
        ("fold", vec!["--solver", "--shots", "--beta", "--depth", "--seed", "--sweeps", "--restarts", "--histogram", "--min-loop", "--stack-reward", "--ua-penalty", "--lambda"]),
    ] {
        let output = run(&[sub, "--help"]);
        let text = stdout(&output);
        for flag in flags {
            assert!(text.contains(flag), "{sub} --help missing {flag}");
        }
    }
}

#[test]
fn custom_codon_table_is_honored() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    // uniform two-codon table for every amino acid that has options
    let mut text = String::new();
    for (aa, codons) in [
        ("A", vec![("GCU", 0.6), ("GCC", 0.4)]),
        ("C", vec![("UGC", 1.0)]),
        ("D", vec![("GAC", 1.0)]),
        ("E", vec![("GAG", 1.0)]),
        ("F", vec![("UUC", 1.0)]),
        ("G", vec![("GGC", 1.0)]),
        ("H", vec![("CAC", 1.0)]),
        ("I", vec![("AUC", 1.0)]),
        ("K", vec![("AAG", 1.0)]),
        ("L", vec![("CUG", 1.0)]),
        ("M", vec![("AUG", 1.0)]),
        ("N", vec![("AAC", 1.0)]),
        ("P", vec![("CCA", 1.0)]),
        ("Q", vec![("CAG", 1.0)]),
        ("R", vec![("AGA", 1.0)]),
        ("S", vec![("AGC", 1.0)]),
        ("T", vec![("ACC", 1.0)]),
        ("V", vec![("GUG", 1.0)]),
        ("W", vec![("UGG", 1.0)]),
        ("Y", vec![("UAC", 1.0)]),
    ] {
        for (codon, freq) in codons {
            text.push_str(&format!("{aa},{codon},{freq}\n"));
        }
    }
    std::fs::write(&path, text).unwrap();
    let output = run(&[
        "optimize", "--aa", "MA", "--codon-table", path.to_str().unwrap(), "--seed", "1",
    ]);
    assert!(output.status.success(), "{}", String::from_utf8_lossy(&output.stderr));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let nt = report["nt"].as_str().unwrap();
    assert!(nt == "AUGGCU" || nt == "AUGGCC", "nt = {nt}");
}
