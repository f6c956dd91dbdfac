use serde::{Deserialize, Serialize};

use super::event::{Delay, PulseEvent, SequenceProgram};
use super::propagator::{apply_t2_relaxation, free_evolution, gradient_crusher, pulse_unitary};
use crate::angle::Rational;
use crate::error::{Error, Result};
use crate::quantum::{evolve, DensityOperator, Operator};

/// Transverse relaxation times of the two spins (seconds).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Relaxation {
    pub t2a: f64,
    pub t2b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    /// Intermediate states recorded inside each delay; 0 records event boundaries only.
    pub samples_per_delay: usize,
    /// Dephasing applied during delays; `None` keeps the evolution unitary.
    pub relaxation: Option<Relaxation>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { samples_per_delay: 64, relaxation: None }
    }
}

impl RunOptions {
    pub fn final_only() -> Self {
        Self { samples_per_delay: 0, relaxation: None }
    }

    pub fn with_relaxation(mut self, relaxation: Option<Relaxation>) -> Self {
        self.relaxation = relaxation;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub time: f64,
    /// Index of the event that produced this sample; `None` for the initial state.
    pub event: Option<usize>,
    pub state: DensityOperator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub final_state: DensityOperator,
    pub samples: Vec<Sample>,
}

/// Executes `prog` left to right on `rho0`.
///
/// Pulses and gradients act instantly. Each delay is applied with its closed
/// form propagator; the sub-samples recorded inside a delay are computed
/// from the state at the start of the delay, so sampling never changes the
/// final state.
pub fn run_sequence(rho0: &DensityOperator, prog: &SequenceProgram, opts: &RunOptions) -> Result<Trajectory> {
    if rho0.dim() != 4 {
        return Err(Error::Dimension("pulse programs act on two-spin states".into()));
    }
    let params = prog.params();
    let mut rho = *rho0;
    let mut time = 0.0;
    let mut samples = vec![Sample { time, event: None, state: rho }];
    for (idx, ev) in prog.events().iter().enumerate() {
        match ev {
            PulseEvent::Rotation { .. } => {
                rho = evolve(&rho, &pulse_unitary(params, ev)?)?;
            }
            PulseEvent::Gradient => {
                rho = gradient_crusher(&rho)?;
            }
            PulseEvent::Delay(d) => {
                let duration = d.seconds(params.j_hz);
                let n = opts.samples_per_delay;
                for k in 1..n {
                    let frac = Rational::new(k as i64, n as i64);
                    let partial = scale_delay(d, frac);
                    let state = apply_delay(&rho, prog, &partial, opts)?;
                    samples.push(Sample { time: time + partial.seconds(params.j_hz), event: Some(idx), state });
                }
                rho = apply_delay(&rho, prog, d, opts)?;
                time += duration;
            }
        }
        samples.push(Sample { time, event: Some(idx), state: rho });
    }
    Ok(Trajectory { final_state: rho, samples })
}

fn scale_delay(d: &Delay, frac: Rational) -> Delay {
    match *d {
        Delay::PerJ(k) => Delay::PerJ(k * frac),
        Delay::Seconds(t) => Delay::Seconds(t * *frac.numer() as f64 / *frac.denom() as f64),
    }
}

fn apply_delay(rho: &DensityOperator, prog: &SequenceProgram, d: &Delay, opts: &RunOptions) -> Result<DensityOperator> {
    let params = prog.params();
    let out = evolve(rho, &free_evolution(params, d)?)?;
    match opts.relaxation {
        // dephasing is diagonal in the product basis and commutes with free evolution
        Some(r) => apply_t2_relaxation(&out, d.seconds(params.j_hz), r.t2a, r.t2b),
        None => Ok(out),
    }
}

/// Product of all propagators of a gradient-free program.
pub fn program_propagator(prog: &SequenceProgram) -> Result<Operator> {
    let params = prog.params();
    let mut u = Operator::identity(4)?;
    for ev in prog.events() {
        let step = match ev {
            PulseEvent::Rotation { .. } => pulse_unitary(params, ev)?,
            PulseEvent::Delay(d) => free_evolution(params, d)?,
            PulseEvent::Gradient => {
                return Err(Error::Usage("a program with gradients has no single propagator".into()))
            }
        };
        u = step * u;
    }
    Ok(u)
}
