//! Command-line front end. Every subcommand produces one [`Report`]: a metadata
//! block plus a single table, rendered as CSV or JSON.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 numerical inconsistency.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::broadcast::{
    broadcast_point, coherent_detection_point, convergence_profile, large_kappa_sumrate,
    BroadcastInstance, Detection,
};
use crate::entropy::PhotonNumber;
use crate::error::{domain, Error, Result};
use crate::geometry::{self, FacetRegion, RegionSlice, SliceSpec, DEFAULT_SAMPLES};
use crate::qepi::{
    bound_gap, conjectured_achievable_facets, qepi_outer_facets, ConjecturedRegion,
    LossTradeoffInstance, QepiOuterRegion,
};
use crate::search::{self, DEFAULT_LAMBDA_GRID};
use crate::tradeoff::{
    time_sharing_baseline, PrivateRegion, RatePoint, TradeoffInstance, TradeoffRegion,
};
use crate::verify;

/// Significant digits of every emitted number.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Gap below which the outer bound is reported as close to the conjectured region.
pub const CLOSENESS_THRESHOLD_BITS: f64 = 0.1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bosonic-regions",
    version,
    about = "Capacity regions of bosonic amplifier and loss channels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// (C,Q) or (C,E) slice of the classical/quantum/entanglement trade-off region.
    Tradeoff(TradeoffArgs),
    /// Two-receiver broadcast boundaries, or a gain sweep toward the large-gain limit.
    Broadcast(BroadcastArgs),
    /// (R,P) or (R,S) slice of the public/private/secret-key region.
    Private(PrivateArgs),
    /// Entropy-power outer bound vs. conjectured region for the pure-loss channel.
    Qepi(QepiArgs),
    /// Seeded randomized self-check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Grid {
    /// Number of x samples (or lambda samples for parametric curves).
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,

    /// Number of lambda grid points before refinement.
    #[arg(long, default_value_t = DEFAULT_LAMBDA_GRID)]
    pub lambda_grid: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TradeoffSlice {
    /// C vs Q at E = 0.
    Cq,
    /// C vs E at Q = 0.
    Ce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrivateSlice {
    /// R vs P at S = 0.
    Rp,
    /// R vs S at P = 0.
    Rs,
}

#[derive(Debug, Clone, Args)]
pub struct TradeoffArgs {
    #[arg(long)]
    pub kappa: f64,
    #[arg(long)]
    pub ns: f64,
    #[arg(long, value_enum, default_value_t = TradeoffSlice::Cq)]
    pub slice: TradeoffSlice,
    /// Emit consumed resources as positive numbers (default: on for consumption slices).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub consumption_positive: Option<bool>,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct PrivateArgs {
    #[arg(long)]
    pub kappa: f64,
    #[arg(long)]
    pub ns: f64,
    #[arg(long, value_enum, default_value_t = PrivateSlice::Rp)]
    pub slice: PrivateSlice,
    /// Emit consumed resources as positive numbers (default: on for consumption slices).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub consumption_positive: Option<bool>,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct BroadcastArgs {
    #[arg(long, conflicts_with = "kappa_sweep")]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub ns: f64,
    #[arg(long, default_value_t = 0.0)]
    pub nb: f64,
    /// Also emit homodyne and heterodyne boundaries (requires --nb 0).
    #[arg(long)]
    pub all_strategies: bool,
    /// Gain sweep `start:stop:count`, linearly spaced, replacing the boundary output.
    #[arg(long, value_parser = parse_sweep)]
    pub kappa_sweep: Option<Gains>,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct QepiArgs {
    #[arg(long)]
    pub eta: f64,
    #[arg(long)]
    pub ns: f64,
    /// Emit slice envelopes instead of the per-lambda facet table.
    #[arg(long, value_enum)]
    pub slice: Option<TradeoffSlice>,
    /// Emit consumed entanglement as positive numbers in `--slice ce` (default on).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub consumption_positive: Option<bool>,
    #[command(flatten)]
    pub grid: Grid,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

/// Parsed `--kappa-sweep` list. A plain `Vec` would make clap expect several values.
pub type Gains = Vec<f64>;

fn parse_sweep(s: &str) -> std::result::Result<Gains, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, count] = parts.as_slice() else {
        return Err("expected start:stop:count".into());
    };
    let start: f64 = start.parse().map_err(|e| format!("start: {e}"))?;
    let stop: f64 = stop.parse().map_err(|e| format!("stop: {e}"))?;
    let count: usize = count.parse().map_err(|e| format!("count: {e}"))?;
    if count == 0 || start.is_nan() || stop.is_nan() || start > stop {
        return Err("need count >= 1 and start <= stop".into());
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    Ok((0..count)
        .map(|k| {
            if k == count - 1 {
                stop
            } else {
                start + (stop - start) * k as f64 / (count - 1) as f64
            }
        })
        .collect())
}

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Count(u64),
    Text(String),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Count(v as u64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Output of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub metadata: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Set when a self-check found an inconsistency.
    pub failed: bool,
}

impl Report {
    fn new(metadata: Map<String, Value>, columns: &[&str]) -> Self {
        Report {
            metadata,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            failed: false,
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed {
            EXIT_INCONSISTENT
        } else {
            EXIT_OK
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(v) => format_significant(*v, SIGNIFICANT_DIGITS),
                    Cell::Count(n) => n.to_string(),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, c)| {
                        let v = match c {
                            Cell::Num(v) => rounded_json(*v),
                            Cell::Count(n) => Value::from(*n),
                            Cell::Text(t) => Value::String(t.clone()),
                        };
                        (k.clone(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "metadata": self.metadata, "columns": self.columns, "data": data });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `v` rounded to `digits` significant digits, in plain or scientific notation.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - magnitude;
    let s = if (0..=20).contains(&decimals) && magnitude < digits as i32 {
        format!("{:.*}", decimals as usize, v)
    } else {
        format!("{:.*e}", digits - 1, v)
    };
    // "-0" / "-0.000" after rounding
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0".to_string()
    } else {
        s
    }
}

fn rounded_json(v: f64) -> Value {
    format_significant(v, SIGNIFICANT_DIGITS)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

fn metadata(command: &str, params: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    m.insert("parameters".into(), params);
    m
}

/// Runs the parsed command.
pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Tradeoff(a) => cmd_tradeoff(a),
        Command::Broadcast(a) => cmd_broadcast(a),
        Command::Private(a) => cmd_private(a),
        Command::Qepi(a) => cmd_qepi(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Maps an error onto the process exit code.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Inconsistency(_) => EXIT_INCONSISTENT,
        _ => EXIT_USAGE,
    }
}

fn slice_spec(consumption: bool, grid: &Grid) -> SliceSpec {
    let spec = if consumption {
        SliceSpec::first_third()
    } else {
        SliceSpec::first_second()
    };
    spec.with_samples(grid.samples)
        .with_lambda_grid(grid.lambda_grid)
}

/// Slice rows plus a time-sharing column between the slice endpoints.
fn slice_with_time_sharing(
    slice: &RegionSlice,
    flip_sign: bool,
    ts_name: &str,
    report: &mut Report,
) -> Result<()> {
    let (Some((x0, y0)), Some((x1, y1))) = (slice.first(), slice.last()) else {
        return Err(domain("slice has no feasible points"));
    };
    // endpoints as rate points in (x, y, 0) coordinates
    let start = RatePoint::new(x0, y0, 0.0);
    let end = RatePoint::new(x1, y1, 0.0);
    let sign = if flip_sign { -1.0 } else { 1.0 };
    for (i, &(x, y)) in slice.vertices.iter().enumerate() {
        let t = if x1 > x0 { (x - x0) / (x1 - x0) } else { 0.0 };
        let ts = time_sharing_baseline(&end, &start, t)?;
        report.push(vec![
            x.into(),
            (sign * y).into(),
            slice.lambdas[i].into(),
            (sign * ts.q).into(),
        ]);
    }
    report
        .metadata
        .insert("time_sharing_column".into(), Value::String(ts_name.into()));
    Ok(())
}

pub fn cmd_tradeoff(a: &TradeoffArgs) -> Result<Report> {
    let inst = TradeoffInstance::amplifier(a.kappa, a.ns)?;
    let consumption = a.slice == TradeoffSlice::Ce;
    let flip = consumption && a.consumption_positive.unwrap_or(true);
    let spec = slice_spec(consumption, &a.grid);
    let region = TradeoffRegion(inst);
    let slice = geometry::slice(&region, &spec)?;
    let params = json!({
        "kappa": a.kappa, "ns": a.ns, "nb": 0.0,
        "slice": if consumption { "ce" } else { "cq" },
        "fixed": if consumption { "Q_qubits = 0" } else { "E_ebits = 0" },
    });
    let mut meta = metadata("tradeoff", params);
    meta.insert(
        "grid".into(),
        json!({ "samples": spec.samples, "lambda_grid": spec.lambda_grid }),
    );
    meta.insert(
        "e_sign".into(),
        Value::String(
            if flip {
                "consumption-positive"
            } else {
                "net-rate"
            }
            .into(),
        ),
    );
    let (y, ts) = if consumption {
        ("E_ebits", "TS_E_ebits")
    } else {
        ("Q_qubits", "TS_Q_qubits")
    };
    let mut report = Report::new(meta, &["C_bits", y, "lambda", ts]);
    slice_with_time_sharing(&slice, flip, ts, &mut report)?;
    Ok(report)
}

pub fn cmd_private(a: &PrivateArgs) -> Result<Report> {
    let inst = TradeoffInstance::amplifier(a.kappa, a.ns)?;
    let consumption = a.slice == PrivateSlice::Rs;
    let flip = consumption && a.consumption_positive.unwrap_or(true);
    let spec = slice_spec(consumption, &a.grid);
    let slice = geometry::slice(&PrivateRegion(inst), &spec)?;
    let params = json!({
        "kappa": a.kappa, "ns": a.ns, "nb": 0.0,
        "slice": if consumption { "rs" } else { "rp" },
        "fixed": if consumption { "P_bits = 0" } else { "S_bits = 0" },
    });
    let mut meta = metadata("private", params);
    meta.insert(
        "grid".into(),
        json!({ "samples": spec.samples, "lambda_grid": spec.lambda_grid }),
    );
    meta.insert(
        "s_sign".into(),
        Value::String(
            if flip {
                "consumption-positive"
            } else {
                "net-rate"
            }
            .into(),
        ),
    );
    let (y, ts) = if consumption {
        ("S_bits", "TS_S_bits")
    } else {
        ("P_bits", "TS_P_bits")
    };
    let mut report = Report::new(meta, &["R_bits", y, "lambda", ts]);
    slice_with_time_sharing(&slice, flip, ts, &mut report)?;
    Ok(report)
}

pub fn cmd_broadcast(a: &BroadcastArgs) -> Result<Report> {
    let ns = PhotonNumber::new(a.ns)?;
    let nb = PhotonNumber::new(a.nb)?;
    if let Some(kappas) = &a.kappa_sweep {
        let rows = convergence_profile(ns, nb, kappas, a.grid.lambda_grid)?;
        let limit = large_kappa_sumrate(ns, nb);
        let mut meta = metadata(
            "broadcast",
            json!({ "ns": a.ns, "nb": a.nb, "kappa_sweep": kappas }),
        );
        meta.insert("large_kappa_sumrate_bits".into(), rounded_json(limit));
        meta.insert("conditional".into(), Value::Bool(a.nb > 0.0));
        let mut report = Report::new(
            meta,
            &[
                "kappa",
                "max_sumrate_deviation_bits",
                "max_R_B_bits",
                "max_R_C_bits",
            ],
        );
        for r in rows {
            report.push(vec![
                r.kappa.into(),
                r.max_deviation.into(),
                r.max_r_b.into(),
                r.max_r_c.into(),
            ]);
        }
        return Ok(report);
    }
    let Some(kappa) = a.kappa else {
        return Err(domain("broadcast needs --kappa or --kappa-sweep"));
    };
    let inst = BroadcastInstance::amplifier(kappa, a.nb, a.ns)?;
    if a.all_strategies && inst.is_conditional() {
        return Err(domain(
            "coherent-detection baselines are only defined for --nb 0",
        ));
    }
    if a.grid.samples < 2 {
        return Err(domain("need at least 2 samples"));
    }
    let mut strategies: Vec<(&str, Option<Detection>)> = vec![("optimal", None)];
    if a.all_strategies {
        strategies.push(("homodyne", Some(Detection::Homodyne)));
        strategies.push(("heterodyne", Some(Detection::Heterodyne)));
    }
    let mut meta = metadata(
        "broadcast",
        json!({ "kappa": kappa, "ns": a.ns, "nb": a.nb }),
    );
    meta.insert("grid".into(), json!({ "samples": a.grid.samples }));
    meta.insert("conditional".into(), Value::Bool(inst.is_conditional()));
    let mut report = Report::new(meta, &["strategy", "lambda", "R_B_bits", "R_C_bits"]);
    for (name, detection) in strategies {
        for lambda in search::lambda_grid(a.grid.samples) {
            let p = match detection {
                None => broadcast_point(&inst, lambda)?,
                Some(d) => coherent_detection_point(&inst, lambda, d)?,
            };
            report.push(vec![name.into(), lambda.into(), p.r_b.into(), p.r_c.into()]);
        }
    }
    Ok(report)
}

pub fn cmd_qepi(a: &QepiArgs) -> Result<Report> {
    let inst = LossTradeoffInstance::pure_loss(a.eta, a.ns)?;
    let mut meta = metadata("qepi", json!({ "eta": a.eta, "ns": a.ns }));
    meta.insert(
        "achievable_label".into(),
        Value::String("conjectured".into()),
    );
    meta.insert(
        "closeness_threshold_bits".into(),
        rounded_json(CLOSENESS_THRESHOLD_BITS),
    );

    if let Some(kind) = a.slice {
        let consumption = kind == TradeoffSlice::Ce;
        let flip = consumption && a.consumption_positive.unwrap_or(true);
        let spec = slice_spec(consumption, &a.grid);
        let outer = QepiOuterRegion(inst);
        let conj = ConjecturedRegion(inst);
        let conj_slice = geometry::slice(&conj, &spec)?;
        let sign = if flip { -1.0 } else { 1.0 };
        let y = outer.axes()[spec.y_axis]
            .split('_')
            .next()
            .unwrap_or("y")
            .to_string();
        let unit = outer.axes()[spec.y_axis]
            .split('_')
            .nth(1)
            .unwrap_or("bits")
            .to_string();
        let cols = [
            "C_bits".to_string(),
            format!("{y}_outer_{unit}"),
            format!("{y}_conjectured_{unit}"),
            format!("gap_{unit}"),
        ];
        let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
        meta.insert(
            "grid".into(),
            json!({ "samples": spec.samples, "lambda_grid": spec.lambda_grid }),
        );
        meta.insert(
            "sign".into(),
            Value::String(
                if flip {
                    "consumption-positive"
                } else {
                    "net-rate"
                }
                .into(),
            ),
        );
        let mut report = Report::new(meta, &col_refs);
        let mut max_gap = 0.0_f64;
        for &(x, y_conj) in &conj_slice.vertices {
            let y_outer = geometry::envelope_at(&outer, &spec, x)
                .ok_or_else(|| Error::Inconsistency(format!("outer bound infeasible at C = {x}")))?
                .value;
            let gap = y_outer - y_conj;
            if gap < -crate::qepi::GAP_TOL {
                return Err(Error::Inconsistency(format!(
                    "outer envelope below conjectured at C = {x}"
                )));
            }
            max_gap = max_gap.max(gap);
            report.push(vec![
                x.into(),
                (sign * y_outer).into(),
                (sign * y_conj).into(),
                gap.into(),
            ]);
        }
        report
            .metadata
            .insert("max_gap_bits".into(), rounded_json(max_gap));
        return Ok(report);
    }

    let samples = a.grid.samples.max(2);
    meta.insert("grid".into(), json!({ "samples": samples }));
    let mut report = Report::new(
        meta,
        &[
            "lambda",
            "outer_c2q",
            "outer_qe",
            "outer_cqe",
            "conjectured_c2q",
            "conjectured_qe",
            "conjectured_cqe",
            "gap_c2q",
            "gap_qe",
            "gap_cqe",
        ],
    );
    let mut max_gap = 0.0_f64;
    for lambda in search::lambda_grid(samples) {
        let o = qepi_outer_facets(&inst, lambda)?;
        let c = conjectured_achievable_facets(&inst, lambda)?;
        let gap = bound_gap(&inst, lambda)?;
        max_gap = gap.iter().fold(max_gap, |m, g| m.max(*g));
        report.push(vec![
            lambda.into(),
            o.bound_c2q.into(),
            o.bound_qe.into(),
            o.bound_cqe.into(),
            c.bound_c2q.into(),
            c.bound_qe.into(),
            c.bound_cqe.into(),
            gap[0].into(),
            gap[1].into(),
            gap[2].into(),
        ]);
    }
    report
        .metadata
        .insert("max_gap_bits".into(), rounded_json(max_gap));
    Ok(report)
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Report> {
    if a.trials == 0 {
        return Err(domain("--trials must be positive"));
    }
    let suite = verify::run_suite(a.seed, a.trials)?;
    let meta = metadata("verify", json!({ "seed": a.seed, "trials": a.trials }));
    let mut report = Report::new(meta, &["check", "trials", "passed"]);
    for c in &suite.checks {
        report.push(vec![c.name.into(), c.trials.into(), c.passed.into()]);
    }
    report.failed = !suite.all_passed();
    report
        .metadata
        .insert("all_passed".into(), Value::Bool(!report.failed));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("bosonic-regions").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(0.0, 12), "0");
        assert_eq!(format_significant(2.0, 12), "2.00000000000");
        assert_eq!(format_significant(0.994621256608378, 12), "0.994621256608");
        assert_eq!(format_significant(10.08477322862809, 12), "10.0847732286");
        assert_eq!(format_significant(-9.09015197201984, 12), "-9.09015197202");
        assert_eq!(format_significant(1.5e-30, 3), "1.50e-30");
        assert_eq!(format_significant(-1e-40, 3), "-1.00e-40");
    }

    #[test]
    fn sweep_parsing() {
        assert_eq!(parse_sweep("1:2:3").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_sweep("1.1:10:8").unwrap().last(), Some(&10.0));
        assert!(parse_sweep("1:2").is_err());
        assert!(parse_sweep("2:1:3").is_err());
        assert!(parse_sweep("1:2:0").is_err());
    }

    #[test]
    fn tradeoff_cq_endpoint() {
        let cli = parse(&["tradeoff", "--kappa", "2", "--ns", "200", "--samples", "64"]);
        let r = run(&cli).unwrap();
        assert_eq!(r.columns, ["C_bits", "Q_qubits", "lambda", "TS_Q_qubits"]);
        let Cell::Num(q0) = r.rows[0][1] else {
            panic!()
        };
        assert!((q0 - 0.994_621_256_608_378_1).abs() < 1e-9);
    }

    #[test]
    fn identity_channel_c_endpoint() {
        let cli = parse(&["tradeoff", "--kappa", "1", "--ns", "10", "--samples", "32"]);
        let r = run(&cli).unwrap();
        let Cell::Num(c_max) = r.rows.last().unwrap()[0] else {
            panic!()
        };
        let Cell::Num(q_end) = r.rows.last().unwrap()[1] else {
            panic!()
        };
        assert!((c_max - crate::entropy::g(10.0).unwrap()).abs() < 1e-9);
        assert!(q_end.abs() < 1e-9);
    }

    #[test]
    fn coherent_detection_needs_vacuum() {
        let cli = parse(&[
            "broadcast",
            "--kappa",
            "2",
            "--ns",
            "5",
            "--nb",
            "1",
            "--all-strategies",
        ]);
        let err = run(&cli).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_USAGE);
    }

    #[test]
    fn broadcast_needs_a_gain() {
        let cli = parse(&["broadcast", "--ns", "5"]);
        assert!(run(&cli).is_err());
        assert!(Cli::try_parse_from([
            "x",
            "broadcast",
            "--ns",
            "5",
            "--kappa",
            "2",
            "--kappa-sweep",
            "1:2:2"
        ])
        .is_err());
    }

    #[test]
    fn json_rendering_has_metadata() {
        let cli = parse(&[
            "broadcast",
            "--kappa",
            "2",
            "--ns",
            "5",
            "--nb",
            "0.5",
            "--samples",
            "4",
        ]);
        let r = run(&cli).unwrap();
        let v: Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["metadata"]["conditional"], Value::Bool(true));
        assert_eq!(v["data"].as_array().unwrap().len(), 4);
        assert_eq!(v["data"][0]["strategy"], Value::String("optimal".into()));
    }

    #[test]
    fn verify_reports_all_checks() {
        let r = run(&parse(&["verify", "--trials", "50"])).unwrap();
        assert!(!r.failed);
        assert_eq!(r.exit_code(), EXIT_OK);
        assert!(r.rows.len() >= 8);
    }

    #[test]
    fn qepi_lossless_gap_is_zero() {
        let r = run(&parse(&[
            "qepi",
            "--eta",
            "1",
            "--ns",
            "10",
            "--samples",
            "16",
        ]))
        .unwrap();
        for row in &r.rows {
            for c in &row[7..] {
                let Cell::Num(v) = c else { panic!() };
                assert!(v.abs() < 1e-12);
            }
        }
        assert!(run(&parse(&["qepi", "--eta", "0.3", "--ns", "10"])).is_err());
    }
}
