use std::fmt;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::params::SpinSystemParams;
use crate::angle::{format_rational, ratio_to_f64, Angle, Rational};
use crate::error::{Error, Result};
use crate::quantum::Subsystem;

/// Transverse rotation axis of a pulse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PhaseAxis {
    X,
    MinusX,
    Y,
    MinusY,
    /// `(cos phi, sin phi, 0)`.
    Phase(f64),
}

impl PhaseAxis {
    pub fn unit_vector(&self) -> Vector3<f64> {
        match *self {
            PhaseAxis::X => Vector3::new(1.0, 0.0, 0.0),
            PhaseAxis::MinusX => Vector3::new(-1.0, 0.0, 0.0),
            PhaseAxis::Y => Vector3::new(0.0, 1.0, 0.0),
            PhaseAxis::MinusY => Vector3::new(0.0, -1.0, 0.0),
            PhaseAxis::Phase(phi) => Vector3::new(phi.cos(), phi.sin(), 0.0),
        }
    }
}

impl fmt::Display for PhaseAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseAxis::X => f.write_str("x"),
            PhaseAxis::MinusX => f.write_str("-x"),
            PhaseAxis::Y => f.write_str("y"),
            PhaseAxis::MinusY => f.write_str("-y"),
            PhaseAxis::Phase(phi) => write!(f, "phase:{phi:?}"),
        }
    }
}

/// Free-evolution interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Delay {
    /// `k / J`, exact.
    PerJ(Rational),
    Seconds(f64),
}

impl Delay {
    pub fn seconds(&self, j_hz: f64) -> f64 {
        match *self {
            Delay::PerJ(k) => ratio_to_f64(k) / j_hz,
            Delay::Seconds(t) => t,
        }
    }
}

impl fmt::Display for Delay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Delay::PerJ(k) if *k.denom() == 1 => write!(f, "{}/J", k.numer()),
            Delay::PerJ(k) if *k.numer() == 1 => write!(f, "1/({}J)", k.denom()),
            Delay::PerJ(k) => write!(f, "{}/J", format_rational(k)),
            Delay::Seconds(t) => write!(f, "{t:?}s"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PulseEvent {
    /// Instantaneous selective rotation of one spin.
    Rotation {
        spin: Subsystem,
        axis: PhaseAxis,
        angle: Angle,
    },
    Delay(Delay),
    /// z-gradient crusher.
    Gradient,
}

impl PulseEvent {
    pub fn rotation(spin: Subsystem, axis: PhaseAxis, angle: Angle) -> Result<Self> {
        let a = angle.radians();
        let two_pi = 2.0 * std::f64::consts::PI;
        let in_range = match angle.as_pi_multiple() {
            Some(q) => q > Rational::from_integer(-2) && q <= Rational::from_integer(2),
            None => a > -two_pi && a <= two_pi,
        };
        if !in_range {
            return Err(Error::Domain(format!("flip angle {angle} outside (-2pi, 2pi]")));
        }
        Ok(PulseEvent::Rotation { spin, axis, angle })
    }

    pub fn delay(d: Delay) -> Result<Self> {
        let negative = match d {
            Delay::PerJ(k) => k < Rational::from_integer(0),
            Delay::Seconds(t) => !(t >= 0.0),
        };
        if negative {
            return Err(Error::Domain(format!("delay {d} is negative")));
        }
        Ok(PulseEvent::Delay(d))
    }
}

/// Flip angle in program syntax: exact degrees for multiples of pi,
/// otherwise radians with round-trip precision.
pub fn flip_angle_text(angle: &Angle) -> String {
    match angle.as_pi_multiple() {
        Some(q) => format!("{}deg", format_rational(q * 180)),
        None => format!("{:?}rad", angle.radians()),
    }
}

impl fmt::Display for PulseEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PulseEvent::Rotation { spin, axis, angle } => {
                write!(f, "pulse {spin} {axis} {}", flip_angle_text(angle))
            }
            PulseEvent::Delay(d) => write!(f, "delay {d}"),
            PulseEvent::Gradient => f.write_str("grad z"),
        }
    }
}

/// Ordered pulse events executed against one set of spin-system parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequenceProgram {
    events: Vec<PulseEvent>,
    params: SpinSystemParams,
    total_duration: f64,
}

impl SequenceProgram {
    pub fn new(events: Vec<PulseEvent>, params: SpinSystemParams) -> Result<Self> {
        params.validate()?;
        let total_duration = events
            .iter()
            .map(|e| match e {
                PulseEvent::Delay(d) => d.seconds(params.j_hz),
                _ => 0.0,
            })
            .sum();
        Ok(Self { events, params, total_duration })
    }

    pub fn events(&self) -> &[PulseEvent] {
        &self.events
    }

    pub fn params(&self) -> &SpinSystemParams {
        &self.params
    }

    /// Sum of all delays in seconds; pulses and gradients take no time.
    pub fn total_duration(&self) -> f64 {
        self.total_duration
    }

    /// Same events with replaced parameters (for example other conventions).
    pub fn with_params(&self, params: SpinSystemParams) -> Result<Self> {
        Self::new(self.events.clone(), params)
    }
}
