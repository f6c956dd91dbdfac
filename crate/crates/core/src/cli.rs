//! Command-line front end. The `geophase` binary forwards to [`run`].
//!
//! Exit codes: 0 success, 1 a check or tolerance failed, 2 bad usage or an
//! invalid pulse program.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::angle::{wrap_pi, Angle};
use crate::error::{Error, Result};
use crate::experiment::{
    active_branch, cycle_program, records_csv, records_json, run_single, run_sweep, summarize, to_csv, Conventions,
    ExperimentConfig, Model, RunRecord, RunRow, Stage, SweepSummary,
};
use crate::geometry::{
    check_geodesic, dynamical_phase, idealized_lune, pancharatnam_phase, solid_angle, trace_eigenvector_path, LuneSpec,
    PathFrame, StatePath, TraceOptions,
};
use crate::policy::{self, NumericPolicy};
use crate::pulse::{parse_sequence, render_sequence, Branch, PulseEvent, Relaxation, SpinSystemParams};
use crate::quantum::{ket_minus, ket_plus, ket_to_bloch, Ket};
use crate::theory::theory_curve;

#[derive(Debug, Parser)]
#[command(name = "geophase", version, about = "Mixed-state geometric phases in a two-spin NMR interferometer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Debug, Args)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Phase tolerance (rad) for pass/fail checks [default: 1e-9].
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Sign conventions, e.g. `s=+1` or `s=-1,sense=left,offset=standard`.
    #[arg(long, global = true, default_value = "s=+1")]
    convention: String,
    /// Numeric policy override `key=value`, repeatable (e.g. `overlap_guard=0.2`).
    #[arg(long = "policy", global = true, value_name = "KEY=VALUE")]
    policy: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    #[value(alias = "literal")]
    LiteralSequence,
    #[value(alias = "idealized")]
    IdealizedControlledU,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::LiteralSequence => Model::LiteralSequence,
            ModelArg::IdealizedControlledU => Model::IdealizedControlledU,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Eigenvector {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpinA {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrameArg {
    Toggling,
    Rotating,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form phase and visibility on the purity grid r = cos(n pi/12).
    Theory {
        /// Solid angle, e.g. `pi/2`, `3pi/2`, `1.2`.
        #[arg(long, value_parser = parse_angle)]
        omega: Angle,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
    /// Simulated versus predicted phases over a (theta, n) grid.
    Sweep {
        /// Comma-separated lune angles; the solid angle is 4 theta.
        #[arg(long, required = true, num_args = 1.., value_delimiter = ',', value_parser = parse_angle)]
        theta: Vec<Angle>,
        /// Purity indices: `a-b` range or comma list.
        #[arg(long, default_value = "0-11", value_parser = parse_indices)]
        n: Indices,
        #[arg(long, value_enum, default_value_t = ModelArg::LiteralSequence)]
        model: ModelArg,
        #[command(flatten)]
        relax: RelaxArgs,
        /// Largest accepted relative visibility loss when relaxation is on.
        #[arg(long, default_value_t = 0.016)]
        tolerance_visibility: f64,
    },
    /// One run with every intermediate state.
    Simulate {
        #[arg(long, value_parser = parse_angle)]
        theta: Angle,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, value_enum, default_value_t = ModelArg::LiteralSequence)]
        model: ModelArg,
        #[command(flatten)]
        relax: RelaxArgs,
    },
    /// Bloch path of the spin-b eigenvectors under the conditional cycle.
    TracePath {
        #[arg(long, value_parser = parse_angle)]
        theta: Angle,
        /// Eigenvector of the spin-b input state to follow.
        #[arg(long, value_enum, default_value_t = Eigenvector::Both)]
        branch: Eigenvector,
        /// Spin-a branch; defaults to the one with nonzero spin-b evolution.
        #[arg(long, value_enum)]
        spin_a: Option<SpinA>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = FrameArg::Toggling)]
        frame: FrameArg,
        #[arg(long, value_enum, default_value_t = ModelArg::LiteralSequence)]
        model: ModelArg,
    },
    /// Geodesic and dynamical-phase checks on the idealized lune traversal.
    CheckTransport {
        #[arg(long, value_parser = parse_angle)]
        theta: Angle,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Test hook: tilt the rotation axes by this amount.
        #[arg(long, default_value_t = 0.0)]
        perturb: f64,
    },
    /// Validates a pulse-program file and prints its normalized form.
    Parse { file: PathBuf },
}

#[derive(Debug, Args)]
struct RelaxArgs {
    /// Transverse relaxation times `T2a,T2b` in seconds.
    #[arg(long, value_parser = parse_relaxation)]
    relaxation: Option<Relaxation>,
}

#[derive(Debug, Clone)]
struct Indices(Vec<u32>);

fn parse_angle(s: &str) -> std::result::Result<Angle, String> {
    Angle::parse(s).map_err(|e| e.to_string())
}

fn parse_indices(s: &str) -> std::result::Result<Indices, String> {
    let bad = || format!("invalid index list '{s}' (use e.g. 0-11 or 0,3,6)");
    if let Some((a, b)) = s.split_once('-') {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok(Indices((a..=b).collect()));
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<std::result::Result<_, _>>().map(Indices)
}

fn parse_relaxation(s: &str) -> std::result::Result<Relaxation, String> {
    let bad = || format!("invalid relaxation '{s}' (use T2a,T2b in seconds)");
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let t2a: f64 = a.trim().parse().map_err(|_| bad())?;
    let t2b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(t2a > 0.0 && t2b > 0.0) {
        return Err(bad());
    }
    Ok(Relaxation { t2a, t2b })
}

/// Outcome of a subcommand: its report, and whether all checks passed.
struct Report {
    body: String,
    passed: bool,
    diagnostics: Vec<String>,
}

impl Report {
    fn ok(body: String) -> Self {
        Self { body, passed: true, diagnostics: Vec::new() }
    }
}

/// Parses `args` (program name first), runs the subcommand and returns the
/// exit code. Reports go to `out` (or `--output`), diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            for d in &report.diagnostics {
                let _ = writeln!(err, "{d}");
            }
            match emit(&cli.global, out, &report.body) {
                // a closed downstream pipe is not our failure
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    return 2;
                }
                Ok(()) => {}
            }
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Sampling(_) | Error::Convention(_) => 1,
                _ => 2,
            }
        }
    }
}

fn emit(global: &Global, out: &mut dyn Write, body: &str) -> std::io::Result<()> {
    match &global.output {
        Some(path) => std::fs::write(path, body),
        None => out.write_all(body.as_bytes()),
    }
}

fn install_policy(overrides: &[String]) -> Result<()> {
    if overrides.is_empty() {
        return Ok(());
    }
    let mut p = NumericPolicy::default();
    for item in overrides {
        let (key, value) =
            item.split_once('=').ok_or_else(|| Error::Usage(format!("policy override '{item}' is not key=value")))?;
        let value: f64 =
            value.trim().parse().map_err(|_| Error::Usage(format!("policy value '{value}' is not a number")))?;
        p = p
            .with_override(key.trim(), value)
            .ok_or_else(|| Error::Usage(format!("unknown policy key '{}'", key.trim())))?;
    }
    if !policy::install(p) && *policy::current() != p {
        return Err(Error::Usage("numeric policy was already fixed for this process".into()));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Report> {
    install_policy(&cli.global.policy)?;
    let conventions: Conventions = cli.global.convention.parse()?;
    let g = &cli.global;
    match &cli.command {
        Command::Theory { omega, n_max } => cmd_theory(g, conventions, *omega, *n_max),
        Command::Sweep { theta, n, model, relax, tolerance_visibility } => {
            let template = ExperimentConfig {
                model: (*model).into(),
                relaxation: relax.relaxation,
                conventions,
                ..ExperimentConfig::new(Angle::ZERO, 0)
            };
            cmd_sweep(g, theta, &n.0, &template, *tolerance_visibility)
        }
        Command::Simulate { theta, n, model, relax } => {
            let config = ExperimentConfig {
                model: (*model).into(),
                relaxation: relax.relaxation,
                conventions,
                snapshots: true,
                ..ExperimentConfig::new(*theta, *n)
            };
            cmd_simulate(g, &config)
        }
        Command::TracePath { theta, branch, spin_a, samples, frame, model } => {
            cmd_trace_path(g, conventions, *theta, *branch, *spin_a, *samples, *frame, (*model).into())
        }
        Command::CheckTransport { theta, samples, perturb } => cmd_check_transport(g, *theta, *samples, *perturb),
        Command::Parse { file } => cmd_parse(g, conventions, file),
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Usage(format!("JSON output failed: {e}")))?;
    s.push('\n');
    Ok(s)
}

fn cmd_theory(g: &Global, conv: Conventions, omega: Angle, n_max: u32) -> Result<Report> {
    let rows = theory_curve(omega, n_max, conv.orientation)?;
    let body = match g.format {
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                n: u32,
                r: f64,
                gamma_rad: f64,
                visibility: f64,
            }
            to_csv(
                &rows
                    .iter()
                    .map(|t| Row { n: t.n, r: t.r, gamma_rad: t.gamma, visibility: t.visibility })
                    .collect::<Vec<_>>(),
            )?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row {
                n: u32,
                r: f64,
                gamma_rad: f64,
                visibility: f64,
                defined: bool,
                flipped: bool,
            }
            #[derive(Serialize)]
            struct Doc {
                omega_rad: f64,
                orientation: String,
                rows: Vec<Row>,
            }
            json(&Doc {
                omega_rad: omega.radians(),
                orientation: conv.orientation.to_string(),
                rows: rows
                    .iter()
                    .map(|t| Row {
                        n: t.n,
                        r: t.r,
                        gamma_rad: t.gamma,
                        visibility: t.visibility,
                        defined: t.defined,
                        flipped: t.flipped,
                    })
                    .collect(),
            })?
        }
    };
    Ok(Report::ok(body))
}

fn summary_footer(s: &SweepSummary) -> String {
    format!(
        "# rows={} defined_rows={} failed_rows={} max_abs_residual_rad={:?} rms_residual_rad={:?} max_visibility_error={:?}\n",
        s.rows, s.defined_rows, s.failed_rows, s.max_abs_residual, s.rms_residual, s.max_visibility_error
    )
}

fn records_body(g: &Global, records: &[RunRecord], summary: &SweepSummary) -> Result<String> {
    Ok(match g.format {
        Format::Csv => records_csv(records)? + &summary_footer(summary),
        Format::Json => records_json(records, summary)? + "\n",
    })
}

/// Per-row tolerance checks; returns one diagnostic per violation.
fn check_records(records: &[RunRecord], tolerance: Option<f64>, visibility_loss: f64) -> Vec<String> {
    let mut bad = Vec::new();
    for rec in records {
        let at = format!("theta={:?} n={}", rec.config.theta.radians(), rec.config.n);
        if rec.config.relaxation.is_none() {
            let tol = tolerance.unwrap_or(1e-9);
            if rec.defined && rec.residual.abs() > tol {
                bad.push(format!("{at}: |residual| = {:e} exceeds {tol:e}", rec.residual.abs()));
            }
            let dv = (rec.visibility_measured - rec.visibility_theory).abs();
            if dv > tol {
                bad.push(format!("{at}: visibility error {dv:e} exceeds {tol:e}"));
            }
        } else {
            if let Some(tol) = tolerance {
                if rec.defined && rec.residual.abs() > tol {
                    bad.push(format!("{at}: |residual| = {:e} exceeds {tol:e}", rec.residual.abs()));
                }
            }
            if rec.visibility_theory >= 1e-6 {
                let loss = 1.0 - rec.visibility_measured / rec.visibility_theory;
                if loss > visibility_loss {
                    bad.push(format!("{at}: visibility loss {loss:.5} exceeds {visibility_loss}"));
                }
            }
        }
    }
    bad
}

fn cmd_sweep(
    g: &Global,
    thetas: &[Angle],
    ns: &[u32],
    template: &ExperimentConfig,
    visibility_loss: f64,
) -> Result<Report> {
    let sweep = run_sweep(thetas, ns, template)?;
    let mut diagnostics: Vec<String> =
        sweep.failures.iter().map(|f| format!("theta={} n={}: {}", f.theta, f.n, f.error)).collect();
    diagnostics.extend(check_records(&sweep.records, g.tolerance, visibility_loss));
    let body = records_body(g, &sweep.records, &sweep.summary)?;
    Ok(Report { body, passed: diagnostics.is_empty(), diagnostics })
}

fn cmd_simulate(g: &Global, config: &ExperimentConfig) -> Result<Report> {
    let rec = run_single(config)?;
    let diagnostics = check_records(std::slice::from_ref(&rec), g.tolerance, 0.016);
    let snaps = rec.snapshots.as_deref().unwrap_or(&[]);
    let stage = |s: Stage| match s {
        Stage::Thermal => "thermal",
        Stage::EffectivePure => "effective_pure",
        Stage::Mixed => "mixed",
        Stage::Cycle => "cycle",
    };
    let body = match g.format {
        Format::Csv => {
            let mut text = records_csv(std::slice::from_ref(&rec))?;
            text.push('\n');
            let mut header = vec!["stage".to_string(), "time_s".to_string()];
            for part in ["re", "im"] {
                for r in 0..4 {
                    for c in 0..4 {
                        header.push(format!("{part}_{r}{c}"));
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Usage(format!("CSV output failed: {e}"));
            w.write_record(&header).map_err(io)?;
            for s in snaps {
                let mut row = vec![stage(s.stage).to_string(), format!("{:?}", s.time)];
                row.extend(s.state.op().entries().iter().map(|z| format!("{:?}", z.re)));
                row.extend(s.state.op().entries().iter().map(|z| format!("{:?}", z.im)));
                w.write_record(&row).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Usage(e.to_string()))?;
            text.push_str(&String::from_utf8_lossy(&bytes));
            text
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Snap {
                stage: &'static str,
                time_s: f64,
                re: Vec<f64>,
                im: Vec<f64>,
            }
            #[derive(Serialize)]
            struct Doc {
                row: RunRow,
                conventions: String,
                summary: SweepSummary,
                snapshots: Vec<Snap>,
            }
            json(&Doc {
                row: RunRow::from(&rec),
                conventions: config.conventions.to_string(),
                summary: summarize(std::slice::from_ref(&rec), 0),
                snapshots: snaps
                    .iter()
                    .map(|s| Snap {
                        stage: stage(s.stage),
                        time_s: s.time,
                        re: s.state.op().entries().iter().map(|z| z.re).collect(),
                        im: s.state.op().entries().iter().map(|z| z.im).collect(),
                    })
                    .collect(),
            })?
        }
    };
    Ok(Report { body, passed: diagnostics.is_empty(), diagnostics })
}

#[derive(Debug, Serialize)]
struct PathReport {
    branch: &'static str,
    solid_angle_rad: f64,
    pancharatnam_phase_rad: f64,
    dynamical_phase_rad: f64,
    /// Coplanarity deviation of each free-evolution segment.
    geodesic_deviation: Vec<f64>,
}

fn analyse(branch: &'static str, path: &StatePath) -> Result<PathReport> {
    let bloch = path.bloch_path()?;
    let geodesic_deviation = path
        .segments()
        .iter()
        .map(|r| path.slice(r.clone()).bloch_path().map(|b| check_geodesic(&b)))
        .collect::<Result<_>>()?;
    Ok(PathReport {
        branch,
        solid_angle_rad: if bloch.is_closed() { solid_angle(&bloch)? } else { f64::NAN },
        pancharatnam_phase_rad: if path.is_projectively_closed() { pancharatnam_phase(path)? } else { f64::NAN },
        dynamical_phase_rad: dynamical_phase(path)?,
        geodesic_deviation,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_trace_path(
    g: &Global,
    conv: Conventions,
    theta: Angle,
    which: Eigenvector,
    spin_a: Option<SpinA>,
    samples: usize,
    frame: FrameArg,
    model: Model,
) -> Result<Report> {
    let params = SpinSystemParams { conventions: conv.engine, ..SpinSystemParams::default() };
    let kets: Vec<(&'static str, Ket)> = match which {
        Eigenvector::Plus => vec![("plus", ket_plus())],
        Eigenvector::Minus => vec![("minus", ket_minus())],
        Eigenvector::Both => vec![("plus", ket_plus()), ("minus", ket_minus())],
    };
    let mut traced = Vec::new();
    for (label, ket) in kets {
        let path = match model {
            Model::LiteralSequence => {
                let prog = cycle_program(theta, &params)?;
                let branch = match spin_a {
                    Some(SpinA::Up) => Branch::Up,
                    Some(SpinA::Down) => Branch::Down,
                    None => active_branch(&params)?,
                };
                let frame = match frame {
                    FrameArg::Toggling => PathFrame::Toggling,
                    FrameArg::Rotating => PathFrame::Rotating,
                };
                trace_eigenvector_path(&prog, branch, &ket, &TraceOptions { samples, frame })?
            }
            Model::IdealizedControlledU => idealized_lune(&LuneSpec::new(theta.radians())?, &ket, samples, 0.0)?,
        };
        let report = analyse(label, &path)?;
        traced.push((path, report));
    }
    let body = match g.format {
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                time_s: f64,
                x: f64,
                y: f64,
                z: f64,
                branch: &'static str,
            }
            let rows: Vec<Row> = traced
                .iter()
                .flat_map(|(path, rep)| {
                    path.samples().iter().map(move |(t, psi)| {
                        let p = ket_to_bloch(psi);
                        Row { time_s: *t, x: p.x, y: p.y, z: p.z, branch: rep.branch }
                    })
                })
                .collect();
            let mut text = to_csv(&rows)?;
            for (_, r) in &traced {
                let geo: Vec<String> = r.geodesic_deviation.iter().map(|d| format!("{d:?}")).collect();
                text.push_str(&format!(
                    "# branch={} solid_angle_rad={:?} pancharatnam_phase_rad={:?} dynamical_phase_rad={:?} geodesic_deviation={}\n",
                    r.branch,
                    r.solid_angle_rad,
                    r.pancharatnam_phase_rad,
                    r.dynamical_phase_rad,
                    geo.join(",")
                ));
            }
            text
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                theta_rad: f64,
                paths: Vec<PathDoc<'a>>,
            }
            #[derive(Serialize)]
            struct PathDoc<'a> {
                #[serde(flatten)]
                report: &'a PathReport,
                samples: Vec<[f64; 4]>,
            }
            json(&Doc {
                theta_rad: theta.radians(),
                paths: traced
                    .iter()
                    .map(|(path, report)| PathDoc {
                        report,
                        samples: path
                            .samples()
                            .iter()
                            .map(|(t, psi)| {
                                let p = ket_to_bloch(psi);
                                [*t, p.x, p.y, p.z]
                            })
                            .collect(),
                    })
                    .collect(),
            })?
        }
    };
    Ok(Report::ok(body))
}

fn cmd_check_transport(g: &Global, theta: Angle, samples: usize, perturb: f64) -> Result<Report> {
    let spec = LuneSpec::new(theta.radians())?;
    let path = idealized_lune(&spec, &ket_plus(), samples, perturb)?;
    let dyn_tol = g.tolerance.unwrap_or(1e-9);
    let geo_tol = policy::current().geodesic;

    #[derive(Serialize)]
    struct Segment {
        segment: &'static str,
        dynamical_phase_rad: f64,
        geodesic_deviation: f64,
        passed: bool,
    }
    let mut segments = Vec::new();
    for (name, range) in ["ABC", "CDA"].into_iter().zip(path.segments()) {
        let piece = path.slice(range.clone());
        let d = dynamical_phase(&piece)?;
        let geo = check_geodesic(&piece.bloch_path()?);
        segments.push(Segment {
            segment: name,
            dynamical_phase_rad: d,
            geodesic_deviation: geo,
            passed: d.abs() <= dyn_tol && geo <= geo_tol,
        });
    }
    let loop_check = if path.is_projectively_closed() {
        let omega = solid_angle(&path.bloch_path()?)?;
        let gamma = pancharatnam_phase(&path)?;
        Some((omega, gamma, wrap_pi(gamma + 0.5 * omega)))
    } else {
        None
    };
    let passed = segments.iter().all(|s| s.passed);

    let body = match g.format {
        Format::Csv => {
            let mut text = to_csv(&segments)?;
            match loop_check {
                Some((omega, gamma, miss)) => text.push_str(&format!(
                    "# solid_angle_rad={omega:?} pancharatnam_phase_rad={gamma:?} berry_mismatch_rad={miss:?}\n"
                )),
                None => text.push_str("# loop does not close; no loop phase\n"),
            }
            text.push_str(if passed { "# PASS\n" } else { "# FAIL\n" });
            text
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                theta_rad: f64,
                perturbation: f64,
                segments: Vec<Segment>,
                solid_angle_rad: Option<f64>,
                pancharatnam_phase_rad: Option<f64>,
                passed: bool,
            }
            json(&Doc {
                theta_rad: theta.radians(),
                perturbation: perturb,
                solid_angle_rad: loop_check.map(|l| l.0),
                pancharatnam_phase_rad: loop_check.map(|l| l.1),
                segments,
                passed,
            })?
        }
    };
    let diagnostics = if passed {
        Vec::new()
    } else {
        vec!["parallel-transport check failed; see the per-segment report".to_string()]
    };
    Ok(Report { body, passed, diagnostics })
}

fn cmd_parse(g: &Global, conv: Conventions, file: &PathBuf) -> Result<Report> {
    let text =
        std::fs::read_to_string(file).map_err(|e| Error::Usage(format!("cannot read {}: {e}", file.display())))?;
    let params = SpinSystemParams { conventions: conv.engine, ..SpinSystemParams::default() };
    let prog = parse_sequence(&text, &params).map_err(|e| match e {
        Error::Parse { line, column, message } => {
            Error::Usage(format!("{}:{line}:{column}: {message}", file.display()))
        }
        other => other,
    })?;
    let per_j = prog.total_duration() * params.j_hz;
    let body = match g.format {
        Format::Csv => format!(
            "{}# events={} total_duration_s={:?} total_duration_per_j={:?}\n",
            render_sequence(&prog),
            prog.events().len(),
            prog.total_duration(),
            per_j
        ),
        Format::Json => {
            #[derive(Serialize)]
            struct Doc {
                events: Vec<String>,
                frames: Vec<String>,
                event_count: usize,
                total_duration_s: f64,
                total_duration_per_j: f64,
            }
            let rendered = render_sequence(&prog);
            json(&Doc {
                frames: rendered.lines().filter(|l| l.starts_with("frame")).map(String::from).collect(),
                events: prog.events().iter().map(PulseEvent::to_string).collect(),
                event_count: prog.events().len(),
                total_duration_s: prog.total_duration(),
                total_duration_per_j: per_j,
            })?
        }
    };
    Ok(Report::ok(body))
}
