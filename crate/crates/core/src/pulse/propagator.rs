use num_complex::Complex64 as C64;

use super::event::{Delay, PulseEvent};
use super::params::{FrameOffset, SpinSystemParams};
use crate::angle::{Angle, Rational};
use crate::error::{Error, Result};
use crate::quantum::{pauli, rotation_from_half_angle, tensor, DensityOperator, Operator, Subsystem};

/// Twice the z quantum number: `+1` for up, `-1` for down.
pub(crate) fn spin_sign(bit: usize) -> i64 {
    if bit == 0 {
        1
    } else {
        -1
    }
}

/// Phase `phi` with `<m_a m_b| U |m_a m_b> = exp(-i phi)` for a free delay.
///
/// `phi = [z (delta_a m_a + delta_b m_b) + 2 pi J m_a m_b] t`. When the offsets
/// are given in units of J and the delay as a multiple of 1/J the phase is an
/// exact rational multiple of pi.
pub(crate) fn free_phase(params: &SpinSystemParams, sa: i64, sb: i64, delay: &Delay, include_a_offset: bool) -> Angle {
    let z = params.conventions.offset_sign.sign();
    let ka = if include_a_offset { params.offset_a } else { FrameOffset::ZERO };
    let kb = params.offset_b;
    if let (Delay::PerJ(tau), FrameOffset::InJ(ka), FrameOffset::InJ(kb)) = (*delay, ka, kb) {
        // delta = -2 pi k J and t = tau / J, so delta m t = -pi k s tau with s = 2m.
        let zeeman = -(ka * sa + kb * sb) * z;
        let coupling = Rational::new(sa * sb, 2);
        return Angle::Pi((zeeman + coupling) * tau);
    }
    let t = delay.seconds(params.j_hz);
    let da = -ka.angular(params.j_hz);
    let db = -kb.angular(params.j_hz);
    let (ma, mb) = (0.5 * sa as f64, 0.5 * sb as f64);
    let phi = (z as f64 * (da * ma + db * mb) + 2.0 * std::f64::consts::PI * params.j_hz * ma * mb) * t;
    Angle::Radians(phi)
}

fn unit_phase(phi: Angle) -> C64 {
    let (s, c) = phi.sin_cos();
    C64::new(c, -s)
}

/// `exp(-i H t)` for the rotating-frame Hamiltonian
/// `H = z(delta_a I_z^a + delta_b I_z^b) + 2 pi J I_z^a I_z^b`.
pub fn free_evolution_unitary(params: &SpinSystemParams, t: f64) -> Result<Operator> {
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("evolution time must be nonnegative, got {t}")));
    }
    free_evolution(params, &Delay::Seconds(t))
}

/// Exact-phase variant of [`free_evolution_unitary`] for a program delay.
pub fn free_evolution(params: &SpinSystemParams, delay: &Delay) -> Result<Operator> {
    if delay.seconds(params.j_hz) < 0.0 {
        return Err(Error::Domain(format!("delay {delay} is negative")));
    }
    let diag: Vec<C64> =
        (0..4).map(|k| unit_phase(free_phase(params, spin_sign(k >> 1), spin_sign(k & 1), delay, true))).collect();
    Operator::diagonal(&diag)
}

/// Spin-level rotation for a pulse, before embedding into the two-spin space.
pub(crate) fn single_spin_pulse(params: &SpinSystemParams, ev: &PulseEvent) -> Result<(Subsystem, Operator)> {
    match *ev {
        PulseEvent::Rotation { spin, axis, angle } => {
            let signed = angle * params.conventions.rotation_sense.sign();
            let (s, c) = signed.half().sin_cos();
            Ok((spin, rotation_from_half_angle(&axis.unit_vector(), s, c)))
        }
        _ => Err(Error::Usage(format!("'{ev}' is not a rotation"))),
    }
}

/// Instantaneous selective pulse embedded as `R (x) I` or `I (x) R`.
pub fn pulse_unitary(params: &SpinSystemParams, ev: &PulseEvent) -> Result<Operator> {
    let (spin, r) = single_spin_pulse(params, ev)?;
    let id = pauli::identity();
    match spin {
        Subsystem::A => tensor(&r, &id),
        Subsystem::B => tensor(&id, &r),
    }
}

/// Pulsed z-gradient: removes every coherence of the heteronuclear pair,
/// leaving only the diagonal in the Zeeman product basis.
pub fn gradient_crusher(rho: &DensityOperator) -> Result<DensityOperator> {
    if rho.dim() != 4 {
        return Err(Error::Dimension("gradient crusher acts on two-spin states".into()));
    }
    let op = rho.op().map(|r, c, z| if r == c { z } else { C64::new(0.0, 0.0) });
    Ok(rho.like(op))
}

/// Phenomenological transverse relaxation for a time `t`.
///
/// The element `<i|rho|j>` decays by `exp(-|a_i - a_j| t/T2a - |b_i - b_j| t/T2b)`
/// where `a`, `b` are the spin quantum numbers, so a single-quantum coherence
/// of spin k decays as `exp(-t/T2k)`. Populations are untouched.
pub fn apply_t2_relaxation(rho: &DensityOperator, t: f64, t2a: f64, t2b: f64) -> Result<DensityOperator> {
    if rho.dim() != 4 {
        return Err(Error::Dimension("relaxation acts on two-spin states".into()));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("relaxation time must be nonnegative, got {t}")));
    }
    if !(t2a > 0.0 && t2b > 0.0) {
        return Err(Error::Domain(format!("T2 values must be positive, got ({t2a}, {t2b})")));
    }
    let op = rho.op().map(|r, c, z| {
        let da = ((r >> 1) as f64 - (c >> 1) as f64).abs();
        let db = ((r & 1) as f64 - (c & 1) as f64).abs();
        z * (-da * t / t2a - db * t / t2b).exp()
    });
    Ok(rho.like(op))
}
