use std::path::PathBuf;
use std::process::Command;

use qbpa::{parse_evidence_set, sample};
use qbpa_cli::run;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn qbpa(args: &[&str]) -> (i32, String, String) {
    run(std::iter::once("qbpa").chain(args.iter().copied()))
}

fn parse_md_matrix(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(2)
        .map(|l| {
            l.trim_matches('|')
                .split('|')
                .skip(1)
                .map(|c| c.trim().parse().unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_qbpa");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["fuse", "--input", &fixture("app1.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).starts_with("# Fusion report"));
    assert_eq!(status(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(status(&["--version"]).status.code(), Some(0));
    assert_eq!(status(&["fuse", "--input", "/nonexistent/x.json"]).status.code(), Some(2));
    let conflict = status(&["fuse", "--input", &fixture("conflict_total.json")]);
    assert_eq!(conflict.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&conflict.stderr).contains("total-conflict at combination step 1"));
    assert_eq!(status(&["reproduce", "app1"]).status.code(), Some(0));
}

#[test]
fn usage_errors() {
    assert_eq!(qbpa(&["measure", "--input", &fixture("app1.json"), "bogus"]).0, 1);
    assert_eq!(qbpa(&["reproduce", "app9"]).0, 1);
    assert_eq!(qbpa(&["fuse", "--input", &fixture("app1.json"), "--log-base", "3"]).0, 1);
    assert_eq!(qbpa(&["fuse", "--input", &fixture("app1.json"), "--copies", "0"]).0, 1);
    assert_eq!(qbpa(&["fuse"]).0, 1);
    let (code, out, _) = qbpa(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("reproduce"));
}

#[test]
fn data_errors_name_the_problem() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"frame": ["A", "B"], "evidences": [
        {"id": "x", "assignments": [{"set": ["A"], "amplitude": 0.5, "phase": 0.0}]},
        {"id": "y", "assignments": [{"set": ["A"], "amplitude": 1.0, "phase": 0.0}]}]}"#).unwrap();
    let (code, _, err) = qbpa(&["fuse", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("`x`") && err.contains("belief sum"), "{err}");
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(qbpa(&["fuse", "--input", bad.to_str().unwrap()]).0, 2);
}

#[test]
fn measure_dxp_is_normalized() {
    let (code, out, _) = qbpa(&["measure", "--input", &fixture("app1.json"), "dxp"]);
    assert_eq!(code, 0);
    let m = parse_md_matrix(&out);
    assert_eq!(m.len(), 4);
    let mut sum = 0.0;
    for i in 0..4 {
        assert_eq!(m[i][i], 0.0);
        for j in i + 1..4 {
            assert_eq!(m[i][j], m[j][i]);
            sum += m[i][j];
        }
    }
    assert!((sum - 1.0).abs() < 1e-8);
}

#[test]
fn measure_sim_has_diagonal_two() {
    let (code, out, _) = qbpa(&["measure", "--input", &fixture("app1.json"), "sim", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "evidence,E1,E2,E3,E4");
    for (i, l) in lines[1..].iter().enumerate() {
        let cells: Vec<&str> = l.split(',').collect();
        assert_eq!(cells[i + 1], "2.000000000");
    }
}

#[test]
fn divergence_matrix_is_base_independent() {
    let input = fixture("app1.json");
    let (_, ten, _) = qbpa(&["measure", "--input", &input, "dwb"]);
    let (_, e, _) = qbpa(&["measure", "--input", &input, "dwb", "--log-base", "e"]);
    let (a, b) = (parse_md_matrix(&ten), parse_md_matrix(&e));
    for (ra, rb) in a.iter().zip(&b) {
        for (x, y) in ra.iter().zip(rb) {
            assert!((x - y).abs() <= 1e-12);
        }
    }
}

#[test]
fn fuse_reports_strategy_and_weights() {
    let (code, out, _) = qbpa(&["fuse", "--input", &fixture("app1.json"), "--distance", "belief", "--log-base", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("strategy: distance=belief divergence-input=belief log-base=2; copies: 4"));
    assert!(out.contains("## weights\n\n| evidence | weight |"));
    for id in ["E1", "E2", "E3", "E4"] {
        assert!(out.contains(&format!("| {id} | 0.")));
    }
    assert!(out.contains("4 copies"));
}

#[test]
fn output_directory_and_byte_stability() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, out, _) = qbpa(&["reproduce", "app2", "--sweep", "--format", "csv", "--output", d]);
    assert_eq!(code, 0);
    assert!(out.starts_with("wrote "));
    let first = std::fs::read_to_string(dir.path().join("app2-reproduce.csv")).unwrap();
    let (_, again, _) = qbpa(&["reproduce", "app2", "--sweep", "--format", "csv", "--sequential"]);
    assert_eq!(first, again);
    assert!(first.lines().filter(|l| l.contains(",sweep,")).count() >= 18 * 4);

    let (code, _, _) = qbpa(&["fuse", "--input", &fixture("app3.json"), "--format", "csv", "--output", d]);
    assert_eq!(code, 0);
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("table,row,column,value\n"));
    assert!(csv.contains("weights,E5,weight,"));
}

#[test]
fn reproduce_app4_is_report_only() {
    let (code, out, _) = qbpa(&["reproduce", "app4"]);
    assert_eq!(code, 0);
    assert!(out.contains("proposed ranking (not asserted)"));
    assert!(out.contains("mass tolerance 0.1"));
}

#[test]
fn reproduce_app3_fails_rank_assertion_with_full_report() {
    let (code, out, err) = qbpa(&["reproduce", "app3", "--sweep"]);
    assert_eq!(code, 4);
    assert!(err.contains("app3: proposed result ranks {E} first"));
    assert!(out.contains("## discrepancies"));
    assert!(out.contains("## best strategy per table"));
}

#[test]
fn random_files_fuse_in_both_modes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let dir = tempfile::tempdir().unwrap();
    for k in 0..5 {
        let es = sample::evidence_set(&mut rng, 3 + k, 4, 4);
        let path = dir.path().join(format!("r{k}.json"));
        std::fs::write(&path, qbpa::document::to_json(&es)).unwrap();
        assert_eq!(parse_evidence_set(&std::fs::read_to_string(&path).unwrap()).unwrap(), es);
        let p = path.to_str().unwrap();
        let (c1, seq, _) = qbpa(&["fuse", "--input", p, "--sequential"]);
        let (c2, par, _) = qbpa(&["fuse", "--input", p]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(seq, par);
    }
}
