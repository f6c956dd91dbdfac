//! Closed-form mixed-state phases: the eigenvalue-weighted average of
//! eigenvector phase factors and its qubit reduction.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::angle::{wrap_pi, Angle};
use crate::error::{Error, Result};
use crate::policy;

/// Global sign `s` tying the sense of a Bloch loop to the sign of its phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }
}

impl FromStr for Orientation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Orientation::Positive),
            "-1" | "-" => Ok(Orientation::Negative),
            other => Err(Error::Usage(format!("orientation must be +1 or -1, got '{other}'"))),
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Positive => "+1",
            Orientation::Negative => "-1",
        })
    }
}

/// Phase and visibility of an interference average `v e^{i gamma}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseResult {
    /// Radians in `(-pi, pi]`; meaningful only when `defined`.
    pub gamma: f64,
    pub visibility: f64,
    pub defined: bool,
}

impl PhaseResult {
    pub fn from_complex(z: C64) -> Self {
        let visibility = z.norm();
        let defined = visibility >= policy::current().undefined_visibility;
        Self { gamma: if defined { wrap_pi(z.arg()) } else { 0.0 }, visibility, defined }
    }
}

/// `v e^{i gamma} = sum_n p_n e^{i gamma_n}`.
pub fn sjoqvist_average(p: &[f64], gamma: &[f64]) -> Result<PhaseResult> {
    if p.len() != gamma.len() {
        return Err(Error::Dimension(format!("{} weights for {} phases", p.len(), gamma.len())));
    }
    if p.iter().any(|&w| !(w >= 0.0)) {
        return Err(Error::Domain("weights must be nonnegative".into()));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("weights sum to {total}, expected 1")));
    }
    let z: C64 = p.iter().zip(gamma).map(|(&w, &g)| C64::from_polar(w, g)).sum();
    Ok(PhaseResult::from_complex(z))
}

/// `v e^{i gamma} = cos(omega/2) + i s r sin(omega/2)`.
pub fn qubit_mixed_phase(r: f64, omega: Angle, s: Orientation) -> Result<PhaseResult> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("purity {r} is outside [0, 1]")));
    }
    let (sin, cos) = omega.half().sin_cos();
    Ok(PhaseResult::from_complex(C64::new(cos, s.sign() * r * sin)))
}

/// `gamma = -arctan(r tan(omega/2))`, valid for `|omega| < pi`.
pub fn arctan_law(r: f64, omega: f64) -> f64 {
    -(r * (0.5 * omega).tan()).atan()
}

/// Signed purity `cos(n pi/12)` of grid index `n`.
pub fn grid_purity(n: u32) -> f64 {
    Angle::pi_frac(n as i64, 12).sin_cos().1
}

/// Closed-form phase and visibility for grid index `n` at solid angle `omega`.
///
/// A negative `cos(n pi/12)` is a state along `-x` with purity `|r|`; its
/// eigenvector weights are swapped, which reverses the phase.
pub fn grid_phase(n: u32, omega: Angle, s: Orientation) -> Result<PhaseResult> {
    let r = grid_purity(n);
    let mut res = qubit_mixed_phase(r.abs(), omega, s)?;
    if r < 0.0 && res.defined {
        res.gamma = wrap_pi(-res.gamma);
    }
    Ok(res)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoryRow {
    pub n: u32,
    /// Bloch length `|cos(n pi/12)|`.
    pub r: f64,
    pub gamma: f64,
    pub visibility: f64,
    pub defined: bool,
    /// `cos(n pi/12) < 0`; see [`grid_phase`].
    pub flipped: bool,
}

/// Rows `n = 0 .. n_max-1` of the purity grid `r = cos(n pi/12)` at fixed `omega`.
pub fn theory_curve(omega: Angle, n_max: u32, s: Orientation) -> Result<Vec<TheoryRow>> {
    if n_max < 1 {
        return Err(Error::Usage("n_max must be at least 1".into()));
    }
    (0..n_max)
        .map(|n| {
            let signed = grid_purity(n);
            let res = grid_phase(n, omega, s)?;
            Ok(TheoryRow {
                n,
                r: signed.abs(),
                gamma: res.gamma,
                visibility: res.visibility,
                defined: res.defined,
                flipped: signed < 0.0,
            })
        })
        .collect()
}
