//! Command-line front end: spectrum tables, shift tables, parameter scans,
//! the closed-form-vs-oracle verification report and the validity-regime
//! report, in CSV or JSON.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure,
//! 3 quadrature non-convergence.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Parser;

use crate::angular::HalfInt;
use crate::constants::{NORMAL_PRESSURE_PA, NORMAL_TEMPERATURE_K};
use crate::perturb::{
    displaced_quadratic_shift, fine_structure_energy, lennard_jones_shift, linear_shift,
    quadratic_shift, regime_check, vdw_shift,
};
use crate::states::{shell_states, QuantumNumbers};
use crate::verify::{run_verification, VerifyConfig};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

#[derive(Parser, Debug, Default)]
#[command(
    name = "hydroshift",
    about = "Hydrogen-like fine-structure levels and first-order shifts from axial perturbations",
    disable_help_flag = false
)]
struct CliArgs {
    /// spectrum | shift | verify | scan | regime
    #[arg(long)]
    command: Option<String>,
    #[arg(long = "n-min")]
    n_min: Option<u32>,
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    #[arg(long = "Z")]
    z: Option<u32>,
    /// linear | quadratic | dq | vdw | lj
    #[arg(long)]
    potential: Option<String>,
    /// Coupling for linear (Ry/a0) and quadratic forms (Ry/a0^2)
    #[arg(long)]
    lambda: Option<f64>,
    /// Oscillator displacement z0 in a0 (dq)
    #[arg(long)]
    z0: Option<f64>,
    /// van der Waals strength gamma in Ry/a0^2 (vdw)
    #[arg(long)]
    gamma: Option<f64>,
    /// van der Waals anisotropy beta (vdw); the potential carries beta^2
    #[arg(long)]
    beta: Option<f64>,
    /// Wall distance d in a0 (lj)
    #[arg(long)]
    d: Option<f64>,
    /// csv | json
    #[arg(long)]
    format: Option<String>,
    /// Relative tolerance for verify
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key=value config file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Scan parameter: lambda | z0 | gamma | beta | d
    #[arg(long = "scan-var")]
    scan_var: Option<String>,
    #[arg(long = "scan-min")]
    scan_min: Option<f64>,
    #[arg(long = "scan-max")]
    scan_max: Option<f64>,
    #[arg(long = "scan-step")]
    scan_step: Option<f64>,
    /// Gas pressure in Pa (regime)
    #[arg(long)]
    pressure: Option<f64>,
    /// Gas temperature in K (regime)
    #[arg(long)]
    temperature: Option<f64>,
    /// Verification test hook: perturb one closed-form coefficient so the
    /// verifier must flag a discrepancy
    #[arg(long = "inject-fault", default_value_t = false)]
    inject_fault: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Shift,
    Verify,
    Scan,
    Regime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PotentialKind {
    Linear,
    Quadratic,
    DisplacedQuadratic,
    GeneralizedVdw,
    LennardJones,
}

/// Fully resolved run configuration: flags over config file over defaults.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub n_min: u32,
    pub n_max: u32,
    pub z: u32,
    pub z_explicit: bool,
    pub potential: Option<PotentialKind>,
    pub lambda: f64,
    pub z0: f64,
    pub gamma: f64,
    pub beta: f64,
    pub d: f64,
    pub format: OutputFormat,
    pub tol: f64,
    pub out: Option<PathBuf>,
    pub scan_var: Option<String>,
    pub scan_min: f64,
    pub scan_max: f64,
    pub scan_step: f64,
    pub pressure: f64,
    pub temperature: f64,
    pub inject_fault: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Text(String),
    Num(f64),
}

/// Column-labelled output table; every emitter is deterministic and numbers
/// carry 17 significant digits (lossless for binary64).
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

fn fmt_num(x: f64) -> String {
    format!("{:.16e}", x)
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(s) => s.clone(),
                    Cell::Num(x) => fmt_num(*x),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n  \"columns\": [");
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            let _ = write!(out, "{}", serde_json::Value::String(c.clone()));
        }
        out.push_str("],\n  \"rows\": [\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str("    [");
            for (k, cell) in row.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                match cell {
                    Cell::Int(v) => {
                        let _ = write!(out, "{v}");
                    }
                    Cell::Text(s) => {
                        let _ = write!(out, "{}", serde_json::Value::String(s.clone()));
                    }
                    Cell::Num(x) => out.push_str(&fmt_num(*x)),
                }
            }
            out.push(']');
            if i + 1 < self.rows.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push_str("  ]\n}\n");
        out
    }
}

fn parse_command(s: &str) -> Result<Command> {
    match s {
        "spectrum" => Ok(Command::Spectrum),
        "shift" => Ok(Command::Shift),
        "verify" => Ok(Command::Verify),
        "scan" => Ok(Command::Scan),
        "regime" => Ok(Command::Regime),
        other => Err(Error::InvalidArgument(format!(
            "unknown command '{other}' (expected spectrum|shift|verify|scan|regime)"
        ))),
    }
}

fn parse_potential(s: &str) -> Result<PotentialKind> {
    match s {
        "linear" => Ok(PotentialKind::Linear),
        "quadratic" => Ok(PotentialKind::Quadratic),
        "dq" => Ok(PotentialKind::DisplacedQuadratic),
        "vdw" => Ok(PotentialKind::GeneralizedVdw),
        "lj" => Ok(PotentialKind::LennardJones),
        other => Err(Error::InvalidArgument(format!(
            "unknown potential '{other}' (expected linear|quadratic|dq|vdw|lj)"
        ))),
    }
}

fn parse_format(s: &str) -> Result<OutputFormat> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(Error::InvalidArgument(format!(
            "unknown format '{other}' (expected csv|json)"
        ))),
    }
}

fn load_config_file(path: &PathBuf) -> Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read config {path:?}: {e}")))?;
    let mut map = HashMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidArgument(format!("config line {} is not key=value", idx + 1))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn get_parsed<T: std::str::FromStr>(
    map: &HashMap<String, String>,
    key: &str,
) -> Result<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            Error::InvalidArgument(format!("config value for '{key}' is invalid: '{raw}'"))
        }),
    }
}

fn resolve(args: CliArgs) -> Result<RunConfig> {
    let file = match &args.config {
        Some(p) => load_config_file(p)?,
        None => HashMap::new(),
    };
    let command_str = args
        .command
        .or(file.get("command").cloned())
        .ok_or_else(|| Error::InvalidArgument("--command is required".into()))?;
    let potential_str = args.potential.or(file.get("potential").cloned());
    let format_str = args
        .format
        .or(file.get("format").cloned())
        .unwrap_or_else(|| "csv".into());

    let z_flag = args.z;
    let z_file: Option<u32> = get_parsed(&file, "Z")?;
    let cfg = RunConfig {
        command: parse_command(&command_str)?,
        n_min: args.n_min.or(get_parsed(&file, "n-min")?).unwrap_or(1),
        n_max: args.n_max.or(get_parsed(&file, "n-max")?).unwrap_or(3),
        z: z_flag.or(z_file).unwrap_or(1),
        z_explicit: z_flag.is_some() || z_file.is_some(),
        potential: match potential_str {
            Some(s) => Some(parse_potential(&s)?),
            None => None,
        },
        lambda: args.lambda.or(get_parsed(&file, "lambda")?).unwrap_or(1.0),
        z0: args.z0.or(get_parsed(&file, "z0")?).unwrap_or(0.0),
        gamma: args.gamma.or(get_parsed(&file, "gamma")?).unwrap_or(1.0),
        beta: args.beta.or(get_parsed(&file, "beta")?).unwrap_or(1.0),
        d: args.d.or(get_parsed(&file, "d")?).unwrap_or(10.0),
        format: parse_format(&format_str)?,
        tol: args.tol.or(get_parsed(&file, "tol")?).unwrap_or(1e-9),
        out: args.out.or(file.get("out").map(PathBuf::from)),
        scan_var: args.scan_var.or(file.get("scan-var").cloned()),
        scan_min: args.scan_min.or(get_parsed(&file, "scan-min")?).unwrap_or(0.0),
        scan_max: args.scan_max.or(get_parsed(&file, "scan-max")?).unwrap_or(0.0),
        scan_step: args
            .scan_step
            .or(get_parsed(&file, "scan-step")?)
            .unwrap_or(0.0),
        pressure: args
            .pressure
            .or(get_parsed(&file, "pressure")?)
            .unwrap_or(NORMAL_PRESSURE_PA),
        temperature: args
            .temperature
            .or(get_parsed(&file, "temperature")?)
            .unwrap_or(NORMAL_TEMPERATURE_K),
        inject_fault: args.inject_fault
            || matches!(file.get("inject-fault").map(String::as_str), Some("true")),
    };
    if cfg.n_min == 0 || cfg.n_min > cfg.n_max {
        return Err(Error::InvalidArgument(format!(
            "empty shell range: n-min = {} .. n-max = {}",
            cfg.n_min, cfg.n_max
        )));
    }
    if cfg.z == 0 {
        return Err(Error::InvalidArgument("Z must be >= 1".into()));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    Ok(cfg)
}

/// Shift of a single state under the configured potential, using the
/// branch-continuity convention for parity-mixing potentials: the "+"
/// branch belongs to l = j - 1/2, "-" to l = j + 1/2.
fn state_shift(cfg: &RunConfig, q: &QuantumNumbers) -> Result<f64> {
    let kind = cfg
        .potential
        .ok_or_else(|| Error::InvalidArgument("this command requires --potential".into()))?;
    let two_state = {
        // Both l = j -+ 1/2 fit below n?
        let l_hi = ((q.j.twice() + 1) / 2) as u32;
        l_hi <= q.n - 1 && q.j.twice() >= 1
    };
    let is_lower_l = 2 * q.l as i64 == q.j.twice() - 1;
    Ok(match kind {
        PotentialKind::Quadratic => quadratic_shift(q.n, q.l, q.j, q.m, cfg.lambda, q.z)?,
        PotentialKind::Linear => {
            if two_state {
                let pair = linear_shift(q.n, q.j, q.m, cfg.lambda, q.z)?;
                if is_lower_l {
                    pair.plus
                } else {
                    pair.minus
                }
            } else {
                0.0
            }
        }
        PotentialKind::DisplacedQuadratic => {
            let pair = displaced_quadratic_shift(q.n, q.j, q.m, cfg.lambda, cfg.z0, q.z)?;
            if is_lower_l || !two_state {
                pair.plus
            } else {
                pair.minus
            }
        }
        PotentialKind::GeneralizedVdw => vdw_shift(
            q.n,
            q.l,
            q.j,
            q.m,
            cfg.gamma,
            cfg.beta * cfg.beta,
            q.z,
        )?,
        PotentialKind::LennardJones => {
            if q.z != 1 {
                return Err(Error::InvalidArgument(
                    "the Lennard-Jones wall shift is defined for Z = 1 only".into(),
                ));
            }
            lennard_jones_shift(q.n, q.l, q.j, q.m, cfg.d)?
        }
    })
}

fn state_cells(q: &QuantumNumbers) -> Vec<Cell> {
    vec![
        Cell::Int(q.n as i64),
        Cell::Int(q.l as i64),
        Cell::Text(q.j.to_string()),
        Cell::Text(q.m.to_string()),
    ]
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Table> {
    let mut rows = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        for q in shell_states(n, cfg.z) {
            let fine = fine_structure_energy(q.n, q.j, q.z)?;
            let shift = if cfg.potential.is_some() {
                state_shift(cfg, &q)?
            } else {
                0.0
            };
            let mut row = state_cells(&q);
            row.push(Cell::Num(fine));
            row.push(Cell::Num(shift));
            row.push(Cell::Num(fine + shift));
            rows.push(row);
        }
    }
    Ok(Table {
        columns: vec![
            "n".into(),
            "l".into(),
            "j".into(),
            "m".into(),
            "E_fine_Ry".into(),
            "dE_Ry".into(),
            "E_total_Ry".into(),
        ],
        rows,
    })
}

pub fn cmd_shift(cfg: &RunConfig) -> Result<Table> {
    let mut rows = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        for q in shell_states(n, cfg.z) {
            let shift = state_shift(cfg, &q)?;
            let mut row = state_cells(&q);
            row.push(Cell::Num(shift));
            rows.push(row);
        }
    }
    Ok(Table {
        columns: vec![
            "n".into(),
            "l".into(),
            "j".into(),
            "m".into(),
            "dE_Ry".into(),
        ],
        rows,
    })
}

pub fn cmd_scan(cfg: &RunConfig) -> Result<Table> {
    let var = cfg
        .scan_var
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("scan requires --scan-var".into()))?;
    if !["lambda", "z0", "gamma", "beta", "d"].contains(&var) {
        return Err(Error::InvalidArgument(format!(
            "unknown scan variable '{var}' (expected lambda|z0|gamma|beta|d)"
        )));
    }
    if !(cfg.scan_step > 0.0) || !cfg.scan_step.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scan step must be positive and finite, got {}",
            cfg.scan_step
        )));
    }
    if !cfg.scan_min.is_finite() || !cfg.scan_max.is_finite() || cfg.scan_min > cfg.scan_max {
        return Err(Error::InvalidArgument(format!(
            "invalid scan range [{}, {}]",
            cfg.scan_min, cfg.scan_max
        )));
    }
    let mut rows = Vec::new();
    let steps = ((cfg.scan_max - cfg.scan_min) / cfg.scan_step).round() as i64;
    for i in 0..=steps {
        let value = cfg.scan_min + i as f64 * cfg.scan_step;
        if value > cfg.scan_max + 0.5 * cfg.scan_step {
            break;
        }
        let mut point_cfg = cfg.clone();
        match var {
            "lambda" => point_cfg.lambda = value,
            "z0" => point_cfg.z0 = value,
            "gamma" => point_cfg.gamma = value,
            "beta" => point_cfg.beta = value,
            "d" => point_cfg.d = value,
            _ => unreachable!(),
        }
        for n in cfg.n_min..=cfg.n_max {
            for q in shell_states(n, cfg.z) {
                let shift = state_shift(&point_cfg, &q)?;
                let mut row = vec![Cell::Num(value)];
                row.extend(state_cells(&q));
                row.push(Cell::Num(shift));
                rows.push(row);
            }
        }
    }
    Ok(Table {
        columns: vec![
            var.to_string(),
            "n".into(),
            "l".into(),
            "j".into(),
            "m".into(),
            "dE_Ry".into(),
        ],
        rows,
    })
}

/// Runs the oracle sweep; returns the report table and whether all checks
/// passed.
pub fn cmd_verify(cfg: &RunConfig) -> Result<(Table, bool)> {
    let vcfg = VerifyConfig {
        n_max: cfg.n_max.min(4).max(cfg.n_min),
        z_values: if cfg.z_explicit { vec![cfg.z] } else { vec![1, 2] },
        rel_tol: cfg.tol,
        abs_floor: 1e-12,
        inject_fault: cfg.inject_fault,
    };
    let report = run_verification(&vcfg)?;
    let mut rows = Vec::new();
    for rec in &report.records {
        for (branch, (c, o)) in rec.closed.iter().zip(&rec.oracle).enumerate() {
            rows.push(vec![
                Cell::Text("eigenvalue".into()),
                Cell::Text(rec.potential.clone()),
                Cell::Int(rec.n as i64),
                Cell::Text(HalfInt::from_twice(rec.twice_j).to_string()),
                Cell::Text(HalfInt::from_twice(rec.twice_m).to_string()),
                Cell::Int(rec.z as i64),
                Cell::Int(branch as i64),
                Cell::Num(*c),
                Cell::Num(*o),
                Cell::Num((c - o).abs()),
                Cell::Text(if rec.pass { "pass" } else { "fail" }.into()),
            ]);
        }
    }
    for (label, value) in [
        ("parity-forbidden-max", report.selection.max_parity_forbidden),
        ("cross-m-max", report.selection.max_cross_m),
    ] {
        rows.push(vec![
            Cell::Text(label.into()),
            Cell::Text("all".into()),
            Cell::Int(0),
            Cell::Text("-".into()),
            Cell::Text("-".into()),
            Cell::Int(1),
            Cell::Int(0),
            Cell::Num(0.0),
            Cell::Num(value),
            Cell::Num(value),
            Cell::Text(if report.selection.pass { "pass" } else { "fail" }.into()),
        ]);
    }
    let table = Table {
        columns: vec![
            "check".into(),
            "potential".into(),
            "n".into(),
            "j".into(),
            "m".into(),
            "Z".into(),
            "branch".into(),
            "closed_Ry".into(),
            "oracle_Ry".into(),
            "deviation_Ry".into(),
            "status".into(),
        ],
        rows,
    };
    Ok((table, report.all_passed()))
}

pub fn cmd_regime(cfg: &RunConfig) -> Result<Table> {
    let report = regime_check(cfg.pressure, cfg.temperature, cfg.n_max)?;
    let rows = vec![
        ("d_cubed_nm3", Cell::Num(report.d_cubed_nm3)),
        ("a0_over_2d_cubed", Cell::Num(report.a0_over_2d_cubed)),
        (
            "lj_condition_threshold",
            Cell::Num(report.lj_condition_threshold),
        ),
        ("alpha_squared", Cell::Num(report.alpha_squared)),
        ("fine_structure_scale_Ry", Cell::Num(report.fine_structure_scale)),
        ("lj_shift_scale_Ry", Cell::Num(report.lj_shift_scale)),
        ("lamb_shift_s_states_Ry", Cell::Num(report.lamb_shift_s_states)),
        ("lamb_shift_other_Ry", Cell::Num(report.lamb_shift_other)),
        ("hyperfine_scale", Cell::Num(report.hyperfine_scale)),
        (
            "coupled_basis_applies",
            Cell::Text(report.coupled_basis_applies.to_string()),
        ),
        (
            "hyperfine_negligible",
            Cell::Text(report.hyperfine_negligible.to_string()),
        ),
    ];
    Ok(Table {
        columns: vec!["quantity".into(), "value".into()],
        rows: rows
            .into_iter()
            .map(|(k, v)| vec![Cell::Text(k.into()), v])
            .collect(),
    })
}

fn emit(cfg: &RunConfig, table: &Table) -> Result<()> {
    let text = match cfg.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {path:?}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_resolved(cfg: &RunConfig) -> Result<i32> {
    match cfg.command {
        Command::Spectrum => {
            emit(cfg, &cmd_spectrum(cfg)?)?;
            Ok(EXIT_OK)
        }
        Command::Shift => {
            emit(cfg, &cmd_shift(cfg)?)?;
            Ok(EXIT_OK)
        }
        Command::Scan => {
            emit(cfg, &cmd_scan(cfg)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify => {
            let (table, passed) = cmd_verify(cfg)?;
            emit(cfg, &table)?;
            Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
        Command::Regime => {
            emit(cfg, &cmd_regime(cfg)?)?;
            Ok(EXIT_OK)
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let args = match CliArgs::try_parse() {
        Ok(a) => a,
        Err(e) => {
            // Let clap print its own help/version output with code 0.
            if e.use_stderr() {
                eprintln!("{e}");
                return EXIT_USAGE;
            }
            print!("{e}");
            return EXIT_OK;
        }
    };
    let cfg = match resolve(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    match run_resolved(&cfg) {
        Ok(code) => code,
        Err(Error::QuadratureNonConvergence(msg)) => {
            eprintln!("error: quadrature did not converge: {msg}");
            EXIT_NO_CONVERGENCE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
