use num_complex::Complex64 as C64;

use super::path::StatePath;
use crate::error::{Error, Result};
use crate::pulse::{restrict_to_branch, Branch, BranchStep, SequenceProgram};
use crate::quantum::{apply, pauli, Ket, Operator};

/// Picture in which a traced spin-b path is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathFrame {
    /// Rotating frame with the pulses removed: `psi = P^dagger psi_rot`
    /// where `P` is the product of the pulses applied so far. Pulses leave
    /// the state unchanged and the Hamiltonian becomes `P^dagger H P`.
    #[default]
    Toggling,
    /// Plain rotating frame. Pulses appear as jumps; their generators are
    /// not part of the recorded Hamiltonian.
    Rotating,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceOptions {
    /// Approximate total number of samples, split evenly across the delays.
    pub samples: usize,
    pub frame: PathFrame,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { samples: 10_000, frame: PathFrame::Toggling }
    }
}

/// Spin-b trajectory of `initial` with spin a held in `branch`.
///
/// The initial state should be an eigenvector of the spin-b state the
/// program acts on; the trajectory is then that eigenvector's path and its
/// Bloch image is the loop whose solid angle fixes the geometric phase.
/// Each delay contributes one entry to [`StatePath::segments`].
pub fn trace_eigenvector_path(
    prog: &SequenceProgram,
    branch: Branch,
    initial: &Ket,
    opts: &TraceOptions,
) -> Result<StatePath> {
    if (initial.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Domain("initial state must be normalized".into()));
    }
    let steps = restrict_to_branch(prog, branch)?;
    let delays = steps.iter().filter(|s| matches!(s, BranchStep::Evolve { duration, .. } if *duration > 0.0)).count();
    let per_delay = (opts.samples / delays.max(1)).max(2);

    let id = pauli::identity();
    let mut u = id;
    let mut p = id;
    let mut t = 0.0;
    let view = |u: &Operator, p: &Operator| -> Ket {
        let psi = apply(u, initial);
        match opts.frame {
            PathFrame::Toggling => apply(&p.adjoint(), &psi),
            PathFrame::Rotating => psi,
        }
    };
    let mut samples = vec![(t, *initial)];
    let mut gens = vec![Operator::zero(2)?];
    let mut segments = Vec::new();
    for step in &steps {
        match *step {
            BranchStep::Kick { unitary, .. } => {
                u = unitary * u;
                p = unitary * p;
            }
            BranchStep::Evolve { duration, omega, propagator, .. } => {
                if duration > 0.0 {
                    let h = pauli::z() * (0.5 * omega);
                    let h = match opts.frame {
                        PathFrame::Toggling => p.adjoint() * h * p,
                        PathFrame::Rotating => h,
                    };
                    let first = samples.len();
                    for k in 0..=per_delay {
                        let tau = duration * k as f64 / per_delay as f64;
                        let phase = C64::from_polar(1.0, -0.5 * omega * tau);
                        let e = Operator::diagonal(&[phase, phase.conj()])?;
                        samples.push((t + tau, view(&(e * u), &p)));
                        gens.push(h);
                    }
                    segments.push(first..samples.len());
                }
                u = propagator * u;
                t += duration;
                if let Some(last) = samples.last_mut() {
                    last.1 = view(&u, &p);
                }
            }
        }
    }
    samples.push((t, view(&u, &p)));
    gens.push(Operator::zero(2)?);
    Ok(StatePath::new(samples, Some(gens))?.with_segments(segments))
}
