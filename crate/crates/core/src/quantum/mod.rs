//! Two- and four-dimensional operator algebra: states, rotations, tensor
//! products, the partial trace and Bloch-sphere conversions.
//!
//! Basis ordering for two spins is `|up up>, |up down>, |down up>, |down down>`
//! with spin `a` as the left tensor factor.

mod operator;
mod state;

pub use operator::{pauli, tensor, Operator, I, ONE, ZERO};
pub(crate) use state::rotation_from_half_angle;
pub use state::{
    apply, bloch_projector, bloch_to_density, density_to_bloch, eigendecompose_qubit, evolve, expectation, ket_down,
    ket_minus, ket_plus, ket_to_bloch, ket_up, overlap, partial_trace, rotation_unitary, BlochVector, DensityOperator,
    Ket, QubitEigensystem, Subsystem,
};

pub use num_complex::Complex64 as C64;
