//! Bloch-sphere paths and their phases: the two-geodesic lune, oriented
//! solid angles, discrete Pancharatnam and dynamical phases, geodesic
//! checks, and branch-restricted eigenvector trajectories.

mod geodesic;
mod lune;
mod path;
mod phase;
mod solid;
mod trace;

pub use geodesic::{check_geodesic, is_geodesic};
pub use lune::{idealized_lune, ket_from_bloch, lune_path, lune_unitary, LuneSpec};
pub use path::{BlochPath, StatePath};
pub use phase::{dynamical_phase, pancharatnam_phase};
pub use solid::solid_angle;
pub use trace::{trace_eigenvector_path, PathFrame, TraceOptions};
