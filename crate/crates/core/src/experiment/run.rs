use rayon::prelude::*;
use serde::Serialize;

use crate::angle::{wrap_pi, Angle};
use crate::error::{Error, Result};
use crate::pulse::{EngineConventions, OffsetSign, RotationSense, RunOptions, SpinSystemParams};
use crate::theory::{grid_phase, grid_purity, Orientation};

use super::config::{Conventions, ExperimentConfig, Model, RunRecord, Snapshot, Stage};
use super::stages::{
    controlled_cycle_traced, idealized_controlled_cycle, prepare_effective_pure, prepare_mixed, readout_phase,
    spin_a_coherence, thermal_state,
};

/// Runs preparation, the controlled cycle and readout for one grid point.
pub fn run_single(config: &ExperimentConfig) -> Result<RunRecord> {
    config.validate()?;
    let params = config.params();
    let mut snaps = config.snapshots.then(Vec::new);
    let mut keep = |stage, time, state| {
        if let Some(s) = snaps.as_mut() {
            s.push(Snapshot { stage, time, state });
        }
    };

    let rho = thermal_state();
    keep(Stage::Thermal, 0.0, rho);
    let rho = prepare_effective_pure(&rho, &params)?;
    keep(Stage::EffectivePure, 0.0, rho);
    let rho = prepare_mixed(&rho, config.n, &params)?;
    keep(Stage::Mixed, 0.0, rho);
    let reference = spin_a_coherence(&rho)?;

    let out = match config.model {
        Model::LiteralSequence => {
            let opts =
                RunOptions { samples_per_delay: if config.snapshots { 16 } else { 0 }, relaxation: config.relaxation };
            let traj = controlled_cycle_traced(&rho, config.theta, &params, &opts)?;
            if config.snapshots {
                for s in &traj.samples {
                    keep(Stage::Cycle, s.time, s.state);
                }
            }
            traj.final_state
        }
        Model::IdealizedControlledU => {
            let out = idealized_controlled_cycle(&rho, config.theta, &params)?;
            keep(Stage::Cycle, 0.0, out);
            out
        }
    };
    let measured = readout_phase(&out, reference)?;
    let theory = grid_phase(config.n, config.omega(), config.conventions.orientation)?;
    let defined = measured.defined && theory.defined;
    Ok(RunRecord {
        config: *config,
        r: grid_purity(config.n),
        gamma_measured: measured.gamma,
        visibility_measured: measured.visibility,
        gamma_theory: theory.gamma,
        visibility_theory: theory.visibility,
        residual: if defined { wrap_pi(measured.gamma - theory.gamma) } else { 0.0 },
        defined,
        snapshots: snaps,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct SweepSummary {
    pub rows: usize,
    pub defined_rows: usize,
    pub failed_rows: usize,
    /// Over rows with both phases defined.
    pub max_abs_residual: f64,
    pub rms_residual: f64,
    pub max_visibility_error: f64,
}

#[derive(Debug, Clone)]
pub struct SweepFailure {
    pub theta: Angle,
    pub n: u32,
    pub error: Error,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    /// Theta-major, n-minor.
    pub records: Vec<RunRecord>,
    pub failures: Vec<SweepFailure>,
    pub summary: SweepSummary,
}

/// Evaluates every `(theta, n)` pair, using `template` for everything else.
///
/// Grid points run in parallel; the output order is always theta-major,
/// n-minor. Failing points are collected rather than aborting the sweep.
pub fn run_sweep(thetas: &[Angle], ns: &[u32], template: &ExperimentConfig) -> Result<Sweep> {
    if thetas.is_empty() {
        return Err(Error::Usage("sweep needs at least one theta".into()));
    }
    if ns.is_empty() {
        return Err(Error::Usage("sweep needs at least one purity index".into()));
    }
    let grid: Vec<(Angle, u32)> = thetas.iter().flat_map(|&t| ns.iter().map(move |&n| (t, n))).collect();
    let results: Vec<_> =
        grid.par_iter().map(|&(theta, n)| run_single(&ExperimentConfig { theta, n, ..*template })).collect();
    let mut records = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for ((theta, n), res) in grid.into_iter().zip(results) {
        match res {
            Ok(r) => records.push(r),
            Err(error) => failures.push(SweepFailure { theta, n, error }),
        }
    }
    let summary = summarize(&records, failures.len());
    Ok(Sweep { records, failures, summary })
}

pub fn summarize(records: &[RunRecord], failed_rows: usize) -> SweepSummary {
    let defined: Vec<&RunRecord> = records.iter().filter(|r| r.defined).collect();
    let max_abs_residual = defined.iter().map(|r| r.residual.abs()).fold(0.0, f64::max);
    let rms_residual = if defined.is_empty() {
        0.0
    } else {
        (defined.iter().map(|r| r.residual * r.residual).sum::<f64>() / defined.len() as f64).sqrt()
    };
    let max_visibility_error =
        records.iter().map(|r| (r.visibility_measured - r.visibility_theory).abs()).fold(0.0, f64::max);
    SweepSummary {
        rows: records.len() + failed_rows,
        defined_rows: defined.len(),
        failed_rows,
        max_abs_residual,
        rms_residual,
        max_visibility_error,
    }
}

/// Finds engine conventions under which both preparation stages reach
/// their targets and pure-state runs give `gamma = s omega/2`.
///
/// Candidates are tried in a fixed order starting from right-handed pulses
/// with the standard offset sign; the first one that passes is returned.
pub fn calibrate(orientation: Orientation, system: &SpinSystemParams) -> Result<Conventions> {
    let candidates = [
        (RotationSense::RightHanded, OffsetSign::Standard),
        (RotationSense::RightHanded, OffsetSign::Reversed),
        (RotationSense::LeftHanded, OffsetSign::Standard),
        (RotationSense::LeftHanded, OffsetSign::Reversed),
    ];
    let mut tried = Vec::new();
    for (rotation_sense, offset_sign) in candidates {
        let conventions = Conventions { engine: EngineConventions { rotation_sense, offset_sign }, orientation };
        match check_candidate(conventions, system) {
            Ok(()) => return Ok(conventions),
            Err(e) => tried.push(format!("{conventions}: {e}")),
        }
    }
    Err(Error::Convention(format!("no convention set reproduces the targets; {}", tried.join("; "))))
}

fn check_candidate(conventions: Conventions, system: &SpinSystemParams) -> Result<()> {
    for theta in [Angle::pi_frac(1, 8), Angle::pi_frac(3, 8)] {
        let config = ExperimentConfig { conventions, system: *system, ..ExperimentConfig::new(theta, 0) };
        let rec = run_single(&config)?;
        let expected = wrap_pi(conventions.orientation.sign() * 2.0 * theta.radians());
        let miss = wrap_pi(rec.gamma_measured - expected).abs();
        if miss > 1e-9 || (rec.visibility_measured - 1.0).abs() > 1e-9 {
            return Err(Error::Convention(format!(
                "pure-state phase {:.6} at theta = {theta}, expected {expected:.6}",
                rec.gamma_measured
            )));
        }
    }
    // every purity index must also prepare cleanly
    for n in 1..12 {
        let params = SpinSystemParams { conventions: conventions.engine, ..*system };
        let pure = prepare_effective_pure(&thermal_state(), &params)?;
        prepare_mixed(&pure, n, &params)?;
    }
    Ok(())
}
