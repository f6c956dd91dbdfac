//! The three experimental stages as pulse programs, phase readout, and
//! sweeps over the `(theta, n)` grid.
//!
//! A run prepares the effective pure state from the thermal deviation,
//! turns it into `(1 + sigma_x^a)/2 (x) (1 + r sigma_x^b)/2` with
//! `r = cos(n pi/12)`, applies the controlled lune traversal with solid
//! angle `4 theta` and reads the spin-a coherence against its value before
//! the cycle.

mod config;
mod output;
mod run;
mod stages;

pub use config::{Conventions, ExperimentConfig, Model, RunRecord, Snapshot, Stage};
pub use output::{records_csv, records_json, to_csv, RunRow};
pub use run::{calibrate, run_single, run_sweep, summarize, Sweep, SweepFailure, SweepSummary};
pub use stages::{
    active_branch, branch_unitaries, controlled_cycle, controlled_cycle_traced, cycle_program, direction_error,
    effective_pure_program, effective_pure_target, eigenvector_phases, idealized_controlled_cycle, mixed_program,
    mixed_target, prepare_effective_pure, prepare_mixed, readout_phase, spin_a_coherence, thermal_state, PREP_PURE,
};
