use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::{format_rational, ratio_to_f64, Rational};
use crate::error::{Error, Result};
use crate::quantum::Subsystem;

/// Sense in which a pulse of flip angle `alpha` is applied.
///
/// `RightHanded` maps `R_n(alpha)` to `exp(-i alpha n.sigma/2)`;
/// `LeftHanded` to `exp(+i alpha n.sigma/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RotationSense {
    RightHanded,
    LeftHanded,
}

impl RotationSense {
    pub fn sign(self) -> i64 {
        match self {
            RotationSense::RightHanded => 1,
            RotationSense::LeftHanded => -1,
        }
    }
}

/// Sign of the rotating-frame offset term in the free Hamiltonian,
/// `H = z (omega - omega_frame) I_z + ...` with `z = +1` (`Standard`) or `-1`.
///
/// This decides which spin-a branch sees a vanishing spin-b Hamiltonian in
/// the `omega_b' = omega_b - pi J` frame: `a = down` for `Standard`,
/// `a = up` for `Reversed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OffsetSign {
    Standard,
    Reversed,
}

impl OffsetSign {
    pub fn sign(self) -> i64 {
        match self {
            OffsetSign::Standard => 1,
            OffsetSign::Reversed => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EngineConventions {
    pub rotation_sense: RotationSense,
    pub offset_sign: OffsetSign,
}

impl Default for EngineConventions {
    fn default() -> Self {
        Self { rotation_sense: RotationSense::RightHanded, offset_sign: OffsetSign::Standard }
    }
}

/// Shift of a rotating-frame reference frequency, `omega_frame - omega`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FrameOffset {
    /// `2 pi * value` rad/s.
    Hz(f64),
    /// `2 pi * k * J` rad/s, exact in units of the coupling; written `<k>piJ`.
    InJ(Rational),
}

impl FrameOffset {
    pub const ZERO: FrameOffset = FrameOffset::InJ(Rational::new_raw(0, 1));

    pub fn angular(&self, j_hz: f64) -> f64 {
        match *self {
            FrameOffset::Hz(v) => 2.0 * PI * v,
            FrameOffset::InJ(k) => 2.0 * PI * ratio_to_f64(k) * j_hz,
        }
    }

    pub fn is_zero(&self) -> bool {
        match *self {
            FrameOffset::Hz(v) => v == 0.0,
            FrameOffset::InJ(k) => *k.numer() == 0,
        }
    }
}

impl fmt::Display for FrameOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FrameOffset::Hz(v) => write!(f, "{v:?}Hz"),
            FrameOffset::InJ(k) => write!(f, "{}piJ", format_rational(k)),
        }
    }
}

/// Two-spin system in the doubly rotating frame.
///
/// Absolute Larmor frequencies are carried for reference only; propagators
/// see them through the frame offsets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpinSystemParams {
    pub omega_a: f64,
    pub omega_b: f64,
    pub j_hz: f64,
    pub offset_a: FrameOffset,
    pub offset_b: FrameOffset,
    pub conventions: EngineConventions,
}

impl Default for SpinSystemParams {
    /// 13C-labelled chloroform at 9.4 T: 13C near 100 MHz, 1H near 400 MHz,
    /// J = 214.5 Hz, both frames on resonance.
    fn default() -> Self {
        Self {
            omega_a: 2.0 * PI * 100.0e6,
            omega_b: 2.0 * PI * 400.0e6,
            j_hz: 214.5,
            offset_a: FrameOffset::ZERO,
            offset_b: FrameOffset::ZERO,
            conventions: EngineConventions::default(),
        }
    }
}

impl SpinSystemParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.j_hz > 0.0 && self.j_hz.is_finite()) {
            return Err(Error::Domain(format!("coupling J must be positive, got {}", self.j_hz)));
        }
        let limit = 10.0 * 2.0 * PI * self.j_hz;
        for (spin, off) in [(Subsystem::A, self.offset_a), (Subsystem::B, self.offset_b)] {
            let w = off.angular(self.j_hz);
            if !(w.abs() <= limit) {
                return Err(Error::Domain(format!("frame offset of spin {spin} is {w:.3} rad/s, beyond 10 * 2 pi J")));
            }
        }
        Ok(())
    }

    pub fn offset(&self, spin: Subsystem) -> FrameOffset {
        match spin {
            Subsystem::A => self.offset_a,
            Subsystem::B => self.offset_b,
        }
    }

    pub fn set_offset(&mut self, spin: Subsystem, offset: FrameOffset) {
        match spin {
            Subsystem::A => self.offset_a = offset,
            Subsystem::B => self.offset_b = offset,
        }
    }

    /// Rotating-frame reference frequency of `spin` (rad/s).
    pub fn omega_frame(&self, spin: Subsystem) -> f64 {
        let omega = match spin {
            Subsystem::A => self.omega_a,
            Subsystem::B => self.omega_b,
        };
        omega + self.offset(spin).angular(self.j_hz)
    }

    /// `omega - omega_frame` (rad/s), computed from the exact offset.
    pub fn delta(&self, spin: Subsystem) -> f64 {
        -self.offset(spin).angular(self.j_hz)
    }

    /// Parameters for the conditional-evolution frame `omega_b' = omega_b - pi J`.
    pub fn with_cycle_frame(mut self) -> Self {
        self.offset_b = FrameOffset::InJ(Rational::new(-1, 2));
        self
    }
}
