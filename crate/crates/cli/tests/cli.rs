// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_dephasim");

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN).arg("--out").arg(dir).args(args).output().expect("spawn dephasim")
}

fn ok(dir: &Path, args: &[&str]) {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
}

/// Header entries, column names and data rows.
type ParsedCsv = (Vec<(String, String)>, Vec<String>, Vec<Vec<String>>);

fn read_csv(path: &Path) -> ParsedCsv {
    let text = std::fs::read_to_string(path).unwrap();
    let mut header = Vec::new();
    let mut lines = text.lines();
    let mut columns = Vec::new();
    for line in lines.by_ref() {
        if let Some(kv) = line.strip_prefix("# ") {
            let (k, v) = kv.split_once(" = ").unwrap();
            header.push((k.to_string(), v.to_string()));
        } else {
            columns = line.split(',').map(String::from).collect();
            break;
        }
    }
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, columns, rows)
}

fn column(columns: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = columns.iter().position(|c| c == name).unwrap();
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn usage_and_config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["--n-steps", "0", "rates"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["bogus"]).status.code(), Some(2));
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "D_over_L = 4\nlambda_nm = abc\n").unwrap();
    let out = run(dir.path(), &["--config", cfg.to_str().unwrap(), "rates"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn rates_far_apart_have_no_cross_talk() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["--n-steps", "128", "rates"]);
    let (header, columns, rows) = read_csv(&dir.path().join("rates.csv"));
    assert_eq!(columns, ["tau", "gamma1", "gamma2", "gamma_sum", "gamma_diff"]);
    assert!(header.iter().any(|(k, v)| k == "D_over_L" && v == "2.0000000000000000e2"));
    let g1 = column(&columns, &rows, "gamma1");
    let g2 = column(&columns, &rows, "gamma2");
    let max1 = g1.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    assert!(g2.iter().all(|v| v.abs() <= 1e-6 * max1));
}

#[test]
fn close_qubits_rates_dip_below_zero_in_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["--set", "D_over_L=4", "--set", "a_B_over_aRb=0.02", "--n-steps", "128", "rates"]);
    let csv = dir.path().join("rates.csv");
    let (header, columns, rows) = read_csv(&csv);
    assert!(column(&columns, &rows, "gamma_sum").iter().any(|&v| v < 0.0));

    ok(dir.path(), &["plot", csv.to_str().unwrap(), "--kind", "rates"]);
    let svg = std::fs::read_to_string(dir.path().join("rates.svg")).unwrap();
    let attr = |line: &str, name: &str| -> String {
        let start = line.find(&format!("{name}=\"")).unwrap() + name.len() + 2;
        line[start..].split('"').next().unwrap().to_string()
    };
    let zero_line = svg.lines().find(|l| l.contains(r#"id="zero""#)).unwrap();
    let zero_y: f64 = attr(zero_line, "y1").parse().unwrap();
    let poly = svg.lines().find(|l| l.contains(r#"id="series-gamma_sum""#)).unwrap();
    let below = attr(poly, "points").split(' ').any(|p| p.split(',').nth(1).unwrap().parse::<f64>().unwrap() > zero_y);
    assert!(below, "gamma_sum polyline never crosses below the zero gridline");

    // The header holds everything needed to reproduce the file.
    let get = |k: &str| header.iter().find(|(key, _)| key == k).unwrap().1.clone();
    let mut args: Vec<String> = Vec::new();
    for key in ["m_E_amu", "m_S_amu", "a_B_over_aRb", "a_SE_over_a0", "n0_per_m3", "lambda_nm", "sigma_nm", "D_over_L"] {
        args.extend(["--set".into(), format!("{key}={}", get(key))]);
    }
    for (flag, key) in [("--tau-max", "tau_max"), ("--tol", "tol"), ("--n-steps", "n_steps"), ("--eta", "eta"), ("--seed", "seed")] {
        args.extend([flag.to_string(), get(key)]);
    }
    args.push("rates".into());
    let again = tempfile::tempdir().unwrap();
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    ok(again.path(), &args);
    assert_eq!(std::fs::read(&csv).unwrap(), std::fs::read(again.path().join("rates.csv")).unwrap());
}

#[test]
fn plot_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "# command = rates\ntau,gamma1,gamma2,gamma_sum,gamma_diff\n").unwrap();
    let out = run(dir.path(), &["plot", empty.to_str().unwrap(), "--kind", "rates"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema mismatch"));
    let wrong = dir.path().join("wrong.csv");
    std::fs::write(&wrong, "param,N_phi\n1,2\n").unwrap();
    let out = run(dir.path(), &["plot", wrong.to_str().unwrap(), "--kind", "scan"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`N_psi`"));
}

#[test]
fn distance_scan_decays_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    ok(dir.path(), &["--set", "a_B_over_aRb=0.02", "--n-steps", "256", "scan", "--values", "4,20,60,200"]);
    let (_, columns, rows) = read_csv(&dir.path().join("scan.csv"));
    assert_eq!(columns, ["param", "N_phi", "N_psi", "N_blp", "N1", "twoN1", "divisible"]);
    let n = column(&columns, &rows, "N_blp");
    assert!(n[0] > n[1] && n[1] > 1e-6);
    assert!(n[2] < 1e-6 && n[3] < 1e-6);
    let div: Vec<&str> = rows.iter().map(|r| r[6].as_str()).collect();
    assert_eq!(div, ["false", "false", "true", "true"]);
}

#[test]
fn scattering_length_scans() {
    let dir = tempfile::tempdir().unwrap();
    // Far apart: Markovian below a critical scattering length.
    ok(dir.path(), &["--n-steps", "256", "scan", "--axis", "aB_over_aRb", "--values", "0.02,0.2,0.3,1"]);
    let (_, columns, rows) = read_csv(&dir.path().join("scan.csv"));
    let n = column(&columns, &rows, "N_blp");
    assert!(n[0] == 0.0 && n[1] == 0.0);
    assert!(n[2] > 0.0 && n[3] > n[2]);

    // Close together: backflow for every scattering length.
    ok(dir.path(), &["--set", "D_over_L=4", "--n-steps", "256", "scan", "--axis", "aB_over_aRb", "--range", "0.02,1,3,log"]);
    let (header, columns, rows) = read_csv(&dir.path().join("scan.csv"));
    assert!(header.iter().any(|(k, v)| k == "axis" && v == "aB_over_aRb"));
    assert!(column(&columns, &rows, "N_blp").iter().all(|&v| v > 0.0));
}

#[test]
fn other_commands_write_their_schemas() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["--set", "D_over_L=4", "--set", "a_B_over_aRb=0.5", "--n-steps", "128"];
    fn with<'a>(base: &[&'a str], extra: &[&'a str]) -> Vec<&'a str> {
        base.iter().chain(extra).copied().collect()
    }

    ok(dir.path(), &with(&base, &["evolve", "--state", "psi-plus"]));
    let (_, columns, rows) = read_csv(&dir.path().join("evolve.csv"));
    assert_eq!(columns.len(), 33);
    assert_eq!((columns[1].as_str(), columns[32].as_str()), ("re_00", "im_33"));
    // Populations are conserved.
    assert!(column(&columns, &rows, "re_11").iter().all(|&v| (v - 0.5).abs() < 1e-15));

    ok(dir.path(), &with(&base, &["divisibility"]));
    let (_, columns, rows) = read_csv(&dir.path().join("divisibility.csv"));
    assert_eq!(columns, ["t_start", "t_end", "rate_combination"]);
    assert!(rows.iter().any(|r| r[2] == "gamma_sum") && rows.iter().any(|r| r[2] == "gamma1"));

    ok(dir.path(), &with(&base, &["blp"]));
    let (_, _, rows) = read_csv(&dir.path().join("blp.csv"));
    assert_eq!(rows[5], ["divisible", "false"]);

    ok(dir.path(), &with(&base, &["additivity"]));
    let (_, columns, rows) = read_csv(&dir.path().join("additivity.csv"));
    assert_eq!(columns, ["param", "N_phi", "N_psi", "N2", "twoN1", "factorized_prediction", "regime"]);
    assert_eq!(rows[0][6], "super");

    ok(dir.path(), &with(&base, &["pairs", "--n-pairs", "25"]));
    let (_, columns, rows) = read_csv(&dir.path().join("pairs.csv"));
    assert_eq!(columns, ["index", "category", "N", "argmax_flag"]);
    assert_eq!(rows.len(), 25);
    assert_eq!(rows.iter().filter(|r| r[3] == "1").count(), 1);
    let (_, columns, rows) = read_csv(&dir.path().join("pairs_argmax.csv"));
    assert_eq!((columns.len(), rows.len()), (33, 2));

    for (file, kind) in [("pairs.csv", "pairs"), ("additivity.csv", "additivity")] {
        ok(dir.path(), &["plot", dir.path().join(file).to_str().unwrap(), "--kind", kind]);
    }
}
