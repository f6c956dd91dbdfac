//! Restriction of a two-spin program to one spin-a basis state.
//!
//! Spin-b pulses and free delays are block diagonal in spin a, so with
//! spin a in `|up>` or `|down>` the program acts on spin b alone through a
//! sequence of 2x2 kicks and constant-Hamiltonian intervals.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::event::{PulseEvent, SequenceProgram};
use super::propagator::{free_phase, single_spin_pulse};
use crate::error::{Error, Result};
use crate::quantum::{pauli, Operator, Subsystem};

/// Spin-a basis state selecting a branch of the controlled evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Up,
    Down,
}

impl Branch {
    /// `2 m_a`.
    pub fn sign(self) -> i64 {
        match self {
            Branch::Up => 1,
            Branch::Down => -1,
        }
    }

    pub fn other(self) -> Branch {
        match self {
            Branch::Up => Branch::Down,
            Branch::Down => Branch::Up,
        }
    }

    /// Row/column offset of this branch's 2x2 block in the product basis.
    pub fn block_offset(self) -> usize {
        match self {
            Branch::Up => 0,
            Branch::Down => 2,
        }
    }
}

impl FromStr for Branch {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "up" => Ok(Branch::Up),
            "down" => Ok(Branch::Down),
            other => Err(Error::Usage(format!("unknown branch '{other}' (expected up or down)"))),
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Up => "up",
            Branch::Down => "down",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchStep {
    /// Instantaneous spin-b pulse.
    Kick { event: usize, unitary: Operator },
    /// Free evolution under `H = omega I_z^b` for `duration` seconds.
    Evolve { event: usize, duration: f64, omega: f64, propagator: Operator },
}

impl BranchStep {
    pub fn propagator(&self) -> &Operator {
        match self {
            BranchStep::Kick { unitary, .. } => unitary,
            BranchStep::Evolve { propagator, .. } => propagator,
        }
    }
}

/// Branch Hamiltonian frequency `omega` in `H_b = omega I_z^b` for spin a in `branch`.
///
/// The constant spin-a Zeeman term of the branch is dropped; it is a phase
/// common to every spin-b state.
pub fn branch_frequency(prog: &SequenceProgram, branch: Branch) -> f64 {
    let p = prog.params();
    let z = p.conventions.offset_sign.sign() as f64;
    z * p.delta(Subsystem::B) + 2.0 * std::f64::consts::PI * p.j_hz * 0.5 * branch.sign() as f64
}

pub fn restrict_to_branch(prog: &SequenceProgram, branch: Branch) -> Result<Vec<BranchStep>> {
    let params = prog.params();
    let omega = branch_frequency(prog, branch);
    prog.events()
        .iter()
        .enumerate()
        .map(|(idx, ev)| match ev {
            PulseEvent::Rotation { spin: Subsystem::B, .. } => {
                let (_, unitary) = single_spin_pulse(params, ev)?;
                Ok(BranchStep::Kick { event: idx, unitary })
            }
            PulseEvent::Rotation { spin: Subsystem::A, .. } => Err(Error::Usage(format!(
                "event {}: '{ev}' rotates spin a, so the a-branches are not invariant",
                idx + 1
            ))),
            PulseEvent::Gradient => {
                Err(Error::Usage(format!("event {}: gradients are not unitary and have no branch propagator", idx + 1)))
            }
            PulseEvent::Delay(d) => {
                let phase = |sb| {
                    let (s, c) = free_phase(params, branch.sign(), sb, d, false).sin_cos();
                    C64::new(c, -s)
                };
                let zero = C64::new(0.0, 0.0);
                let propagator = Operator::from_rows(2, &[phase(1), zero, zero, phase(-1)])?;
                Ok(BranchStep::Evolve { event: idx, duration: d.seconds(params.j_hz), omega, propagator })
            }
        })
        .collect()
}

/// Net spin-b propagator of `prog` with spin a fixed in `branch`.
pub fn branch_propagator(prog: &SequenceProgram, branch: Branch) -> Result<Operator> {
    Ok(restrict_to_branch(prog, branch)?.iter().fold(pauli::identity(), |u, step| *step.propagator() * u))
}
