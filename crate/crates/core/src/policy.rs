//! Process-wide numeric tolerances.
//!
//! Every guard in the crate reads its threshold from one [`NumericPolicy`].
//! The record can be replaced once, before first use, with [`install`];
//! afterwards [`current`] always returns the same values.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericPolicy {
    /// Max entrywise |A - A†| for a Hermitian operator.
    pub hermitian: f64,
    /// Allowed deviation of a normalized state's trace from 1.
    pub trace: f64,
    /// Most negative eigenvalue accepted for a normalized state.
    pub positivity: f64,
    /// Max entrywise |U†U - I| accepted by `evolve`.
    pub unitary: f64,
    /// Slack on |r| <= 1 for Bloch vectors.
    pub bloch_norm: f64,
    /// Slack on unit length for rotation axes and path points.
    pub unit_axis: f64,
    /// Purity below which a qubit state is treated as maximally mixed.
    pub degenerate_purity: f64,
    /// Visibility below which a phase is reported as undefined.
    pub undefined_visibility: f64,
    /// Minimum |<psi_k|psi_k+1>| along a discrete state path.
    pub overlap_guard: f64,
    /// Max coplanarity deviation for a geodesic segment.
    pub geodesic: f64,
    /// Distance within which a path is considered closed.
    pub closure: f64,
    /// Max direction error when a prepared deviation is compared with its target.
    pub proportionality: f64,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            trace: 1e-12,
            positivity: 1e-10,
            unitary: 1e-10,
            bloch_norm: 1e-12,
            unit_axis: 1e-9,
            degenerate_purity: 1e-12,
            undefined_visibility: 1e-9,
            overlap_guard: 0.1,
            geodesic: 1e-6,
            closure: 1e-9,
            proportionality: 1e-9,
        }
    }
}

impl NumericPolicy {
    /// Applies `key=value` overrides, e.g. `unitary=1e-8`.
    pub fn with_override(mut self, key: &str, value: f64) -> Option<Self> {
        let slot = match key {
            "hermitian" => &mut self.hermitian,
            "trace" => &mut self.trace,
            "positivity" => &mut self.positivity,
            "unitary" => &mut self.unitary,
            "bloch_norm" => &mut self.bloch_norm,
            "unit_axis" => &mut self.unit_axis,
            "degenerate_purity" => &mut self.degenerate_purity,
            "undefined_visibility" => &mut self.undefined_visibility,
            "overlap_guard" => &mut self.overlap_guard,
            "geodesic" => &mut self.geodesic,
            "closure" => &mut self.closure,
            "proportionality" => &mut self.proportionality,
            _ => return None,
        };
        *slot = value;
        Some(self)
    }
}

static POLICY: OnceLock<NumericPolicy> = OnceLock::new();

/// Installs `policy` for the rest of the process. Returns `false` if a policy
/// was already installed or read.
pub fn install(policy: NumericPolicy) -> bool {
    POLICY.set(policy).is_ok()
}

pub fn current() -> &'static NumericPolicy {
    POLICY.get_or_init(NumericPolicy::default)
}
