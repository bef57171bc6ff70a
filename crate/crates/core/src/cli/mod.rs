//! Command-line front end: tables, curves, beamdepth sweeps, validation and
//! geometry export.
//!
//! Exit codes: 0 success, 1 usage error, 2 validation failure, 3 I/O error.

pub mod output;

use std::collections::HashMap;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use crate::closed_form::normalized_power_at_distance;
use crate::closed_form::{af_argument, vergence_difference};
use crate::error::Error as LibError;
use crate::geometry::ArrayGeometry;
use crate::kind::{GeometryKind, ProcessingMode};
use crate::metrics::{
    alpha, beamdepth_result, geometry_metrics, max_nf_range, BeamdepthResult, GeometryMetrics,
};
use crate::validation::{self, ValidationReport, CROSSING_REL_TOLERANCE, MAINLOBE_REL_TOLERANCE};
use output::{Format, Table};

pub const TOOL_VERSION: &str = concat!("nfambig ", env!("CARGO_PKG_VERSION"));

/// Floor applied to curve output in dB.
pub const DB_FLOOR: f64 = -60.0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<LibError> for CliError {
    fn from(e: LibError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "nfambig",
    version,
    about = "Near-field range ambiguity function and beamdepth metrics for ULA/UCA/URA/UPCA arrays"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// α, x_3dB, ratio and PSL per geometry (both processing modes).
    Tables,
    /// Closed-form normalized power versus probe distance.
    AfCurve,
    /// Beamdepth versus target distance.
    BeamdepthSweep,
    /// Compare direct summation with the closed form along the sensing axis.
    Validate,
    /// Element positions of one geometry.
    DumpGeometry,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Tables => "tables",
            Command::AfCurve => "af-curve",
            Command::BeamdepthSweep => "beamdepth-sweep",
            Command::Validate => "validate",
            Command::DumpGeometry => "dump-geometry",
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Comma-separated geometry kinds: ula,uca,ura,upca (default: all).
    #[arg(long, global = true)]
    pub kind: Option<String>,
    /// Comma-separated processing modes: simo,mimo (default: both).
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Aperture D in wavelengths.
    #[arg(long, global = true)]
    pub aperture_lambda: Option<f64>,
    /// Target distance d' in wavelengths.
    #[arg(long, global = true)]
    pub target_lambda: Option<f64>,
    /// Wavelength in meters.
    #[arg(long, global = true)]
    pub wavelength: Option<f64>,
    /// Distance sweep in wavelengths, `start:stop:points`.
    #[arg(long, global = true)]
    pub sweep: Option<String>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Plain-text `key = value` file with defaults for the flags above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Distance grid in wavelengths, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Sweep {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let bad = || CliError::Usage(format!("invalid sweep '{s}', expected start:stop:points"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].parse().map_err(|_| bad())?;
        let points: usize = parts[2].parse().map_err(|_| bad())?;
        let sweep = Self { start, stop, points };
        sweep.check()?;
        Ok(sweep)
    }

    fn check(&self) -> Result<(), CliError> {
        if !(self.start.is_finite() && self.stop.is_finite()) || self.start <= 0.0 {
            return Err(CliError::Usage("sweep bounds must be positive and finite".into()));
        }
        if self.start >= self.stop {
            return Err(CliError::Usage("sweep start must be below stop".into()));
        }
        if self.points < 2 {
            return Err(CliError::Usage("sweep needs at least 2 points".into()));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..self.points)
            .map(|i| {
                if i == n {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / n as f64
                }
            })
            .collect()
    }
}

/// Fully resolved run parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub kinds: Vec<GeometryKind>,
    pub modes: Vec<ProcessingMode>,
    pub aperture_lambda: f64,
    pub target_lambda: f64,
    pub wavelength_m: f64,
    pub sweep: Sweep,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn aperture_m(&self) -> f64 {
        self.aperture_lambda * self.wavelength_m
    }

    pub fn target_m(&self) -> f64 {
        self.target_lambda * self.wavelength_m
    }

    /// `2D²/λ` for the nominal aperture.
    pub fn fraunhofer_m(&self) -> f64 {
        let d = self.aperture_m();
        2.0 * d * d / self.wavelength_m
    }

    pub fn sweep_m(&self) -> Vec<f64> {
        self.sweep
            .values()
            .into_iter()
            .map(|v| v * self.wavelength_m)
            .collect()
    }

    /// Merges the optional config file under the command-line flags and
    /// fills in per-command defaults.
    pub fn resolve(command: Command, flags: &Options) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => read_config_file(path)?,
            None => HashMap::new(),
        };
        let text = |flag: &Option<String>, key: &str| -> Option<String> {
            flag.clone().or_else(|| file.get(key).cloned())
        };
        let number = |flag: Option<f64>, key: &str| -> Result<Option<f64>, CliError> {
            match flag {
                Some(v) => Ok(Some(v)),
                None => file
                    .get(key)
                    .map(|s| {
                        s.parse::<f64>()
                            .map_err(|_| CliError::Usage(format!("config '{key}': '{s}' is not a number")))
                    })
                    .transpose(),
            }
        };

        let kinds = match text(&flags.kind, "kind") {
            Some(s) => parse_list::<GeometryKind>(&s, "geometry kinds")?,
            None => GeometryKind::ALL.to_vec(),
        };
        let modes = match text(&flags.mode, "mode") {
            Some(s) => parse_list::<ProcessingMode>(&s, "processing modes")?,
            None => ProcessingMode::ALL.to_vec(),
        };
        let aperture_lambda = number(flags.aperture_lambda, "aperture-lambda")?.unwrap_or(50.0);
        let target_lambda = number(flags.target_lambda, "target-lambda")?.unwrap_or(100.0);
        let wavelength_m = number(flags.wavelength, "wavelength")?.unwrap_or(1.0);
        let sweep = match text(&flags.sweep, "sweep") {
            Some(s) => Sweep::parse(&s)?,
            None if command == Command::BeamdepthSweep => Sweep {
                start: 1.0,
                stop: 1500.0,
                points: 1500,
            },
            None => Sweep {
                start: 50.0,
                stop: 400.0,
                points: 2000,
            },
        };
        let format = match text(&flags.format, "format").as_deref().map(str::trim) {
            None | Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            Some(other) => return Err(CliError::Usage(format!("unknown format '{other}'"))),
        };
        let output_path = flags.out.clone().or_else(|| file.get("out").map(PathBuf::from));

        for (name, v) in [
            ("aperture-lambda", aperture_lambda),
            ("target-lambda", target_lambda),
            ("wavelength", wavelength_m),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        if command == Command::DumpGeometry && kinds.len() != 1 {
            return Err(CliError::Usage("dump-geometry needs exactly one --kind".into()));
        }

        Ok(Self {
            command,
            kinds,
            modes,
            aperture_lambda,
            target_lambda,
            wavelength_m,
            sweep,
            output_path,
            format,
        })
    }
}

const CONFIG_KEYS: [&str; 8] = [
    "kind",
    "mode",
    "aperture-lambda",
    "target-lambda",
    "wavelength",
    "sweep",
    "format",
    "out",
];

/// Parses `key = value` lines; `#` starts a comment, underscores in keys are
/// accepted in place of dashes.
pub fn parse_config(text: &str) -> Result<HashMap<String, String>, CliError> {
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!(
                "config line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn read_config_file(path: &Path) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

fn parse_list<T>(s: &str, what: &str) -> Result<Vec<T>, CliError>
where
    T: std::str::FromStr<Err = LibError> + PartialEq,
{
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let v: T = item
            .parse()
            .map_err(|e: LibError| CliError::Usage(e.to_string()))?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage(format!("no {what} requested")));
    }
    Ok(out)
}

/// Rows of the α/PSL tables plus run metadata.
#[derive(Debug, Clone)]
pub struct TableReport {
    pub rows: Vec<GeometryMetrics>,
    pub aperture_m: f64,
    pub wavelength_m: f64,
    pub fraunhofer_m: f64,
}

pub fn cmd_tables(cfg: &RunConfig) -> Result<TableReport, CliError> {
    if cfg.kinds.is_empty() {
        return Err(CliError::Usage("no geometry kinds requested".into()));
    }
    let rows = cfg
        .kinds
        .par_iter()
        .map(|&k| geometry_metrics(k))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TableReport {
        rows,
        aperture_m: cfg.aperture_m(),
        wavelength_m: cfg.wavelength_m,
        fraunhofer_m: cfg.fraunhofer_m(),
    })
}

impl TableReport {
    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            "kind",
            "a",
            "x3db_simo",
            "x3db_mimo",
            "alpha_simo",
            "alpha_mimo",
            "alpha_ratio",
            "psl_simo_db",
            "psl_mimo_db",
            "max_nf_range_simo_m",
            "max_nf_range_mimo_m",
        ]);
        t.meta("tool", TOOL_VERSION)
            .meta("command", "tables")
            .meta("lambda_m", self.wavelength_m)
            .meta("aperture_m", self.aperture_m)
            .meta("fraunhofer_m", self.fraunhofer_m)
            .meta("x3db_tolerance", 1e-12)
            .meta("psl_x_max", crate::metrics::PSL_X_MAX)
            .meta("psl_grid_points", crate::metrics::PSL_GRID_POINTS);
        for r in &self.rows {
            t.push(vec![
                r.kind.as_str().into(),
                r.a.into(),
                r.x3db_simo.into(),
                r.x3db_mimo.into(),
                r.alpha_simo.into(),
                r.alpha_mimo.into(),
                r.alpha_ratio.into(),
                r.psl_simo_db.into(),
                r.psl_mimo_db.into(),
                max_nf_range(self.fraunhofer_m, r.alpha_simo).into(),
                max_nf_range(self.fraunhofer_m, r.alpha_mimo).into(),
            ]);
        }
        t
    }
}

/// Closed-form normalized power sampled over probe distance.
#[derive(Debug, Clone)]
pub struct AfCurve {
    pub kind: GeometryKind,
    pub mode: ProcessingMode,
    pub alpha: f64,
    /// `(probe distance m, argument x, normalized power)`.
    pub samples: Vec<(f64, f64, f64)>,
}

fn series(cfg: &RunConfig) -> Vec<(GeometryKind, ProcessingMode)> {
    cfg.kinds
        .iter()
        .flat_map(|&k| cfg.modes.iter().map(move |&m| (k, m)))
        .collect()
}

pub fn cmd_af_curve(cfg: &RunConfig) -> Result<Vec<AfCurve>, CliError> {
    let d_fa = cfg.fraunhofer_m();
    let target = cfg.target_m();
    let probes = cfg.sweep_m();
    series(cfg)
        .into_par_iter()
        .map(|(kind, mode)| {
            let samples = probes
                .iter()
                .map(|&d| {
                    let x = af_argument(kind, d_fa, vergence_difference(target, d)?)?;
                    let p = normalized_power_at_distance(kind, mode, d_fa, target, d)?;
                    Ok((d, x, p))
                })
                .collect::<Result<Vec<_>, LibError>>()?;
            Ok(AfCurve {
                kind,
                mode,
                alpha: alpha(kind, mode)?,
                samples,
            })
        })
        .collect()
}

/// Power in dB with the [`DB_FLOOR`] clamp.
pub fn power_db(p: f64) -> f64 {
    if p > 0.0 {
        (10.0 * p.log10()).max(DB_FLOOR)
    } else {
        DB_FLOOR
    }
}

fn af_curve_table(cfg: &RunConfig, curves: &[AfCurve]) -> Table {
    let mut t = Table::new(&["kind", "mode", "d_m", "x", "power", "power_db"]);
    common_meta(&mut t, cfg);
    t.meta("target_m", cfg.target_m()).meta("db_floor", DB_FLOOR);
    for c in curves {
        t.meta(format!("series.{}.{}.alpha", c.kind, c.mode), c.alpha);
    }
    for c in curves {
        for &(d, x, p) in &c.samples {
            t.push(vec![
                c.kind.as_str().into(),
                c.mode.as_str().into(),
                d.into(),
                x.into(),
                p.into(),
                power_db(p).into(),
            ]);
        }
    }
    t
}

/// Beamdepth over target distance for one geometry and mode.
#[derive(Debug, Clone)]
pub struct BeamdepthSeries {
    pub kind: GeometryKind,
    pub mode: ProcessingMode,
    pub alpha: f64,
    pub max_nf_range_m: f64,
    pub points: Vec<(f64, BeamdepthResult)>,
}

pub fn cmd_beamdepth_sweep(cfg: &RunConfig) -> Result<Vec<BeamdepthSeries>, CliError> {
    let d_fa = cfg.fraunhofer_m();
    let targets = cfg.sweep_m();
    series(cfg)
        .into_par_iter()
        .map(|(kind, mode)| {
            let a = alpha(kind, mode)?;
            let points = targets
                .iter()
                .map(|&d| Ok((d, beamdepth_result(d, d_fa, a)?)))
                .collect::<Result<Vec<_>, LibError>>()?;
            Ok(BeamdepthSeries {
                kind,
                mode,
                alpha: a,
                max_nf_range_m: max_nf_range(d_fa, a),
                points,
            })
        })
        .collect()
}

fn beamdepth_table(cfg: &RunConfig, all: &[BeamdepthSeries]) -> Table {
    let mut t = Table::new(&["kind", "mode", "d_target_m", "bd_m", "d_low_m", "d_high_m"]);
    common_meta(&mut t, cfg);
    for s in all {
        t.meta(format!("series.{}.{}.alpha", s.kind, s.mode), s.alpha);
        t.meta(
            format!("series.{}.{}.max_nf_range_m", s.kind, s.mode),
            s.max_nf_range_m,
        );
    }
    for s in all {
        for (d, r) in &s.points {
            t.push(vec![
                s.kind.as_str().into(),
                s.mode.as_str().into(),
                (*d).into(),
                r.bd.into(),
                r.d_low.into(),
                r.d_high.into(),
            ]);
        }
    }
    t
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<Vec<ValidationReport>, CliError> {
    let probes = cfg.sweep_m();
    series(cfg)
        .into_iter()
        .map(|(kind, mode)| {
            validation::validate(
                kind,
                mode,
                cfg.aperture_m(),
                cfg.wavelength_m,
                cfg.target_m(),
                &probes,
            )
            .map(|(report, _)| report)
            .map_err(CliError::from)
        })
        .collect()
}

fn validation_table(cfg: &RunConfig, reports: &[ValidationReport]) -> Table {
    let mut t = Table::new(&[
        "kind",
        "mode",
        "elements",
        "aperture_m",
        "fraunhofer_m",
        "alpha",
        "mainlobe_samples",
        "max_mainlobe_rel_error",
        "d3db_low_exact_m",
        "d3db_low_predicted_m",
        "d3db_high_exact_m",
        "d3db_high_predicted_m",
        "max_crossing_rel_error",
        "passed",
    ]);
    common_meta(&mut t, cfg);
    t.meta("target_m", cfg.target_m())
        .meta("mainlobe_rel_tolerance", MAINLOBE_REL_TOLERANCE)
        .meta("crossing_rel_tolerance", CROSSING_REL_TOLERANCE);
    for r in reports {
        t.push(vec![
            r.kind.as_str().into(),
            r.mode.as_str().into(),
            r.elements.into(),
            r.aperture_m.into(),
            r.fraunhofer_m.into(),
            r.alpha.into(),
            r.mainlobe_samples.into(),
            r.max_mainlobe_rel_error.into(),
            r.d3db_low_exact_m.into(),
            r.d3db_low_predicted_m.into(),
            r.d3db_high_exact_m.into(),
            r.d3db_high_predicted_m.into(),
            r.max_crossing_rel_error.into(),
            r.passed.into(),
        ]);
    }
    t
}

pub fn cmd_dump_geometry(cfg: &RunConfig) -> Result<ArrayGeometry, CliError> {
    let kind = match cfg.kinds.as_slice() {
        [k] => *k,
        _ => return Err(CliError::Usage("dump-geometry needs exactly one --kind".into())),
    };
    Ok(ArrayGeometry::build(kind, cfg.aperture_m(), cfg.wavelength_m)?)
}

fn geometry_table(cfg: &RunConfig, g: &ArrayGeometry) -> Table {
    let mut t = Table::new(&["index", "x", "y", "z"]);
    t.meta("tool", TOOL_VERSION)
        .meta("command", "dump-geometry")
        .meta("kind", g.kind().map_or("custom", GeometryKind::as_str))
        .meta("lambda_m", cfg.wavelength_m)
        .meta("aperture_m", g.aperture())
        .meta("elements", g.len());
    for (i, p) in g.elements().iter().enumerate() {
        t.push(vec![i.into(), p[0].into(), p[1].into(), p[2].into()]);
    }
    t
}

fn common_meta(t: &mut Table, cfg: &RunConfig) {
    t.meta("tool", TOOL_VERSION)
        .meta("command", cfg.command.name())
        .meta("lambda_m", cfg.wavelength_m)
        .meta("aperture_m", cfg.aperture_m())
        .meta("fraunhofer_m", cfg.fraunhofer_m());
}

/// Table to emit plus an optional validation failure message.
pub struct Outcome {
    pub table: Table,
    pub failure: Option<String>,
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let mut failure = None;
    let table = match cfg.command {
        Command::Tables => cmd_tables(cfg)?.to_table(),
        Command::AfCurve => af_curve_table(cfg, &cmd_af_curve(cfg)?),
        Command::BeamdepthSweep => beamdepth_table(cfg, &cmd_beamdepth_sweep(cfg)?),
        Command::Validate => {
            let reports = cmd_validate(cfg)?;
            let failed: Vec<String> = reports
                .iter()
                .filter(|r| !r.passed)
                .map(|r| {
                    format!(
                        "{} {}: mainlobe error {:.4}, crossing error {:.4}",
                        r.kind, r.mode, r.max_mainlobe_rel_error, r.max_crossing_rel_error
                    )
                })
                .collect();
            if !failed.is_empty() {
                failure = Some(format!("validation failed: {}", failed.join("; ")));
            }
            validation_table(cfg, &reports)
        }
        Command::DumpGeometry => geometry_table(cfg, &cmd_dump_geometry(cfg)?),
    };
    Ok(Outcome { table, failure })
}

fn write_outcome(cfg: &RunConfig, outcome: &Outcome) -> Result<(), CliError> {
    let io_err = |e: io::Error| CliError::Io(format!("write failed: {e}"));
    match &cfg.output_path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            outcome.table.write(cfg.format, &mut w).map_err(io_err)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            // a closed reader (e.g. `| head`) ends output normally
            match outcome.table.write(cfg.format, &mut w).and_then(|()| w.flush()) {
                Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
                other => other.map_err(io_err),
            }
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = RunConfig::resolve(cli.command, &cli.options).and_then(|cfg| {
        let outcome = execute(&cfg)?;
        write_outcome(&cfg, &outcome)?;
        match outcome.failure {
            Some(msg) => Err(CliError::Validation(msg)),
            None => Ok(()),
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("nfambig: {e}");
            e.exit_code()
        }
    }
}
