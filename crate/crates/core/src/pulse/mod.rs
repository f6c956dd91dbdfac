//! Pulse-level propagators for the two-spin rotating-frame Hamiltonian and
//! the textual pulse-program format.

mod branch;
mod event;
mod params;
mod parser;
mod propagator;
mod runner;

pub use branch::{branch_frequency, branch_propagator, restrict_to_branch, Branch, BranchStep};
pub use event::{flip_angle_text, Delay, PhaseAxis, PulseEvent, SequenceProgram};
pub use params::{EngineConventions, FrameOffset, OffsetSign, RotationSense, SpinSystemParams};
pub use parser::{parse_sequence, render_sequence};
pub use propagator::{apply_t2_relaxation, free_evolution, free_evolution_unitary, gradient_crusher, pulse_unitary};
pub use runner::{program_propagator, run_sequence, Relaxation, RunOptions, Sample, Trajectory};
