//! Simulation of the geometric phase of mixed qubit states in a two-spin
//! NMR interferometer.
//!
//! Spin `a` acts as the control register and spin `b` as the target whose
//! Bloch vector is carried around a lune of solid angle `Omega = 4 theta`.
//! The crate covers the operator algebra ([`quantum`]), hard-pulse sequence
//! programs and their propagators ([`pulse`]), Bloch-path geometry
//! ([`geometry`]), the closed-form mixed-state phase ([`theory`]) and the
//! full preparation, cycle and readout pipeline ([`experiment`]). The
//! `geophase` binary wraps these in a command line ([`cli`]).
//!
//! Conventions that the physics leaves open (pulse rotation sense, which
//! control state drives the target, the global orientation `s`) are fixed by
//! [`experiment::Conventions::calibrated`]; see the README for the table.

// `!(x >= 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angle;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod geometry;
pub mod policy;
pub mod pulse;
pub mod quantum;
pub mod theory;

pub use error::{Error, Result};
