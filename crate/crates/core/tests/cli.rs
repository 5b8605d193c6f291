use std::process::{Command, Output};

use bosonic_regions::broadcast::{member_broadcast, BroadcastInstance, BroadcastPoint};
use bosonic_regions::cli::{exit_code_for, EXIT_INCONSISTENT, EXIT_USAGE};
use bosonic_regions::entropy::g;
use bosonic_regions::geometry::max_slack;
use bosonic_regions::search::DEFAULT_LAMBDA_GRID;
use bosonic_regions::tradeoff::{PrivateRegion, TradeoffInstance, TradeoffRegion};
use bosonic_regions::Error;

const MEMBER_TOL: f64 = 1e-6;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bosonic-regions"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn csv(args: &[&str]) -> (Vec<String>, Vec<Vec<String>>) {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<f64> {
    let i = header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"));
    rows.iter().map(|r| r[i].parse().unwrap()).collect()
}

#[test]
fn cq_slice_starts_at_quantum_capacity() {
    let (h, rows) = csv(&["tradeoff", "--kappa", "2", "--ns", "200", "--slice", "cq"]);
    assert_eq!(h, ["C_bits", "Q_qubits", "lambda", "TS_Q_qubits"]);
    let c = column(&h, &rows, "C_bits");
    let q = column(&h, &rows, "Q_qubits");
    assert_eq!(c[0], 0.0);
    assert!((q[0] - 0.994621256608).abs() < 1e-11);
    let c_end = g(401.0).unwrap() - g(1.0).unwrap();
    assert!((c.last().unwrap() - c_end).abs() < 1e-9);
    assert!(q.last().unwrap().abs() < 1e-9);
}

#[test]
fn identity_channel_cq_endpoint() {
    let (h, rows) = csv(&["tradeoff", "--kappa", "1", "--ns", "10", "--slice", "cq"]);
    let g10 = g(10.0).unwrap();
    assert!((column(&h, &rows, "Q_qubits")[0] - g10).abs() < 1e-9);
    assert!((column(&h, &rows, "C_bits").last().unwrap() - g10).abs() < 1e-9);
}

#[test]
fn ce_slice_reports_consumption_as_positive() {
    let (h, rows) = csv(&["tradeoff", "--kappa", "2", "--ns", "200", "--slice", "ce"]);
    let c = *column(&h, &rows, "C_bits").last().unwrap();
    let e = *column(&h, &rows, "E_ebits").last().unwrap();
    assert!((c - 10.0847732286).abs() < 1e-8);
    assert!((e - 9.09015197202).abs() < 1e-8);

    let (h, rows) = csv(&[
        "tradeoff",
        "--kappa",
        "2",
        "--ns",
        "200",
        "--slice",
        "ce",
        "--consumption-positive=false",
    ]);
    assert!((column(&h, &rows, "E_ebits").last().unwrap() + 9.09015197202).abs() < 1e-8);
}

#[test]
fn emitted_tradeoff_points_are_members() {
    let inst = TradeoffInstance::amplifier(2.0, 200.0).unwrap();
    let region = TradeoffRegion(inst);
    let (h, rows) = csv(&[
        "tradeoff",
        "--kappa",
        "2",
        "--ns",
        "200",
        "--slice",
        "cq",
        "--samples",
        "64",
    ]);
    for (c, q) in column(&h, &rows, "C_bits")
        .into_iter()
        .zip(column(&h, &rows, "Q_qubits"))
    {
        assert!(
            max_slack(&region, [c, q, 0.0], DEFAULT_LAMBDA_GRID).value >= -MEMBER_TOL,
            "({c}, {q})"
        );
    }
    let (h, rows) = csv(&[
        "tradeoff",
        "--kappa",
        "2",
        "--ns",
        "200",
        "--slice",
        "ce",
        "--samples",
        "64",
    ]);
    for (c, e) in column(&h, &rows, "C_bits")
        .into_iter()
        .zip(column(&h, &rows, "E_ebits"))
    {
        assert!(
            max_slack(&region, [c, 0.0, -e], DEFAULT_LAMBDA_GRID).value >= -MEMBER_TOL,
            "({c}, {e})"
        );
    }
}

#[test]
fn emitted_private_points_are_members() {
    let region = PrivateRegion(TradeoffInstance::amplifier(2.0, 200.0).unwrap());
    let (h, rows) = csv(&["private", "--kappa", "2", "--ns", "200", "--samples", "64"]);
    let r = column(&h, &rows, "R_bits");
    let p = column(&h, &rows, "P_bits");
    assert!((r.last().unwrap() - (g(401.0).unwrap() - g(1.0).unwrap())).abs() < 1e-9);
    for (r, p) in r.into_iter().zip(p) {
        assert!(
            max_slack(&region, [r, p, 0.0], DEFAULT_LAMBDA_GRID).value >= -MEMBER_TOL,
            "({r}, {p})"
        );
    }
    let (h, rows) = csv(&[
        "private",
        "--kappa",
        "2",
        "--ns",
        "200",
        "--slice",
        "rs",
        "--samples",
        "64",
    ]);
    for (r, s) in column(&h, &rows, "R_bits")
        .into_iter()
        .zip(column(&h, &rows, "S_bits"))
    {
        assert!(
            max_slack(&region, [r, 0.0, -s], DEFAULT_LAMBDA_GRID).value >= -MEMBER_TOL,
            "({r}, {s})"
        );
    }
}

#[test]
fn all_broadcast_strategies_lie_in_optimal_region() {
    let inst = BroadcastInstance::amplifier(2.0, 0.0, 5.0).unwrap();
    let (h, rows) = csv(&[
        "broadcast",
        "--kappa",
        "2",
        "--ns",
        "5",
        "--nb",
        "0",
        "--all-strategies",
        "--samples",
        "128",
    ]);
    let mut strategies: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    strategies.dedup();
    assert_eq!(strategies, ["optimal", "homodyne", "heterodyne"]);
    for (r_b, r_c) in column(&h, &rows, "R_B_bits")
        .into_iter()
        .zip(column(&h, &rows, "R_C_bits"))
    {
        assert!(member_broadcast(
            &inst,
            &BroadcastPoint { r_b, r_c },
            DEFAULT_LAMBDA_GRID,
            MEMBER_TOL
        ));
    }
}

#[test]
fn unit_gain_broadcast_has_no_second_receiver() {
    let (h, rows) = csv(&["broadcast", "--kappa", "1", "--ns", "5"]);
    assert!(column(&h, &rows, "R_C_bits").iter().all(|&v| v == 0.0));
}

#[test]
fn kappa_sweep_table() {
    let (h, rows) = csv(&[
        "broadcast",
        "--ns",
        "5",
        "--nb",
        "0",
        "--kappa-sweep",
        "1.1:10:8",
    ]);
    assert_eq!(rows.len(), 8);
    let kappa = column(&h, &rows, "kappa");
    assert_eq!((kappa[0], kappa[7]), (1.1, 10.0));
    let dev = column(&h, &rows, "max_sumrate_deviation_bits");
    assert!(dev.windows(2).all(|w| w[1] < w[0]));
    // frozen value at kappa = 10
    assert!((dev[7] - 0.064059309585).abs() < 1e-9);
}

#[test]
fn qepi_gaps_vanish_without_loss() {
    let (h, rows) = csv(&["qepi", "--eta", "1", "--ns", "10"]);
    for name in ["gap_c2q", "gap_qe", "gap_cqe"] {
        assert!(
            column(&h, &rows, name).iter().all(|v| v.abs() < 1e-12),
            "{name}"
        );
    }
}

#[test]
fn qepi_gaps_nonnegative() {
    let (h, rows) = csv(&["qepi", "--eta", "0.8", "--ns", "10"]);
    for name in ["gap_c2q", "gap_qe", "gap_cqe"] {
        assert!(
            column(&h, &rows, name).iter().all(|&v| v >= -1e-9),
            "{name}"
        );
    }
}

#[test]
fn verify_suite_passes() {
    let (h, rows) = csv(&["verify", "--seed", "7", "--trials", "2000"]);
    let trials = column(&h, &rows, "trials");
    let passed = column(&h, &rows, "passed");
    assert_eq!(trials, passed);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--seed", "3", "--trials", "500"][..],
        &[
            "--format", "json", "tradeoff", "--kappa", "3", "--ns", "50", "--slice", "ce",
        ][..],
        &["broadcast", "--kappa", "2", "--ns", "5", "--all-strategies"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn json_mirrors_csv() {
    let out = run(&[
        "--format",
        "json",
        "broadcast",
        "--kappa",
        "2",
        "--ns",
        "5",
        "--nb",
        "0.5",
        "--samples",
        "16",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["metadata"]["conditional"], true);
    assert_eq!(
        doc["columns"],
        serde_json::json!(["strategy", "lambda", "R_B_bits", "R_C_bits"])
    );
    assert_eq!(doc["data"].as_array().unwrap().len(), 16);
}

#[test]
fn output_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("bosonic-regions-{}.csv", std::process::id()));
    let args = ["qepi", "--eta", "0.7", "--ns", "10", "--samples", "32"];
    let mut with_file = args.to_vec();
    with_file.extend(["--output", path.to_str().unwrap()]);
    assert!(run(&with_file).status.success());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written, run(&args).stdout);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["tradeoff", "--kappa", "0.5", "--ns", "10"][..],
        &["tradeoff", "--kappa", "2", "--ns", "-1"][..],
        &["tradeoff", "--kappa", "2"][..],
        &[
            "broadcast",
            "--kappa",
            "2",
            "--ns",
            "5",
            "--nb",
            "1",
            "--all-strategies",
        ][..],
        &[
            "broadcast",
            "--kappa",
            "2",
            "--ns",
            "5",
            "--kappa-sweep",
            "1:2:3",
        ][..],
        &["qepi", "--eta", "0.3", "--ns", "10"][..],
        &["tradeoff", "--kappa", "2", "--ns", "10", "--samples", "4"][..],
        &["frobnicate"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(EXIT_USAGE), "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn inconsistency_maps_to_exit_3() {
    assert_eq!(
        exit_code_for(&Error::Inconsistency("x".into())),
        EXIT_INCONSISTENT
    );
    assert_eq!(exit_code_for(&Error::Domain("x".into())), EXIT_USAGE);
}
