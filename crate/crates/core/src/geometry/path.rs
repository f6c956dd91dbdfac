use std::ops::Range;

use nalgebra::Vector3;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::policy;
use crate::quantum::{ket_to_bloch, overlap, Ket, Operator};

/// Time-stamped sequence of points on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochPath {
    samples: Vec<(f64, Vector3<f64>)>,
    closed: bool,
}

impl BlochPath {
    pub fn new(samples: Vec<(f64, Vector3<f64>)>, closed: bool) -> Result<Self> {
        let pol = policy::current();
        if let Some((k, (_, p))) = samples.iter().enumerate().find(|(_, (_, p))| (p.norm() - 1.0).abs() > pol.unit_axis)
        {
            return Err(Error::Domain(format!("path point {k} has norm {}, expected 1", p.norm())));
        }
        if closed {
            match (samples.first(), samples.last()) {
                (Some((_, a)), Some((_, b))) if (a - b).norm() <= pol.closure => {}
                (Some(_), Some(_)) => return Err(Error::Domain("closed path must end where it starts".into())),
                _ => return Err(Error::Domain("closed path needs at least one sample".into())),
            }
        }
        Ok(Self { samples, closed })
    }

    /// Path with sample index used as time.
    pub fn from_points(points: Vec<Vector3<f64>>, closed: bool) -> Result<Self> {
        Self::new(points.into_iter().enumerate().map(|(k, p)| (k as f64, p)).collect(), closed)
    }

    /// Closed path through `points`, appending the starting point at the end.
    pub fn closed_loop(mut points: Vec<Vector3<f64>>) -> Result<Self> {
        if let Some(&first) = points.first() {
            points.push(first);
        }
        Self::from_points(points, true)
    }

    pub fn samples(&self) -> &[(f64, Vector3<f64>)] {
        &self.samples
    }

    pub fn points(&self) -> impl Iterator<Item = &Vector3<f64>> + '_ {
        self.samples.iter().map(|(_, p)| p)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Same loop traversed backwards in time.
    pub fn reversed(&self) -> Self {
        let end = self.samples.last().map_or(0.0, |s| s.0);
        let samples = self.samples.iter().rev().map(|&(t, p)| (end - t, p)).collect();
        Self { samples, closed: self.closed }
    }

    /// Open sub-path over the sample index range `range`.
    pub fn segment(&self, range: std::ops::Range<usize>) -> Self {
        Self { samples: self.samples[range].to_vec(), closed: false }
    }

    /// Sum of great-circle distances between consecutive samples.
    pub fn arc_length(&self) -> f64 {
        self.samples.windows(2).map(|w| w[0].1.cross(&w[1].1).norm().atan2(w[0].1.dot(&w[1].1))).sum()
    }

    /// Points scaled to length `r`, the Bloch-vector trajectory of a state
    /// with purity `r` whose eigenvector follows this path.
    pub fn scaled(&self, r: f64) -> Vec<(f64, Vector3<f64>)> {
        self.samples.iter().map(|&(t, p)| (t, p * r)).collect()
    }
}

/// Time-stamped sequence of pure qubit states, optionally with the
/// Hamiltonian (rad/s) acting at each sample.
#[derive(Debug, Clone, PartialEq)]
pub struct StatePath {
    samples: Vec<(f64, Ket)>,
    generators: Option<Vec<Operator>>,
    segments: Vec<Range<usize>>,
}

impl StatePath {
    pub fn new(samples: Vec<(f64, Ket)>, generators: Option<Vec<Operator>>) -> Result<Self> {
        let pol = policy::current();
        for (k, (_, psi)) in samples.iter().enumerate() {
            let n = psi.norm();
            if (n - 1.0).abs() > 1e-10 {
                return Err(Error::Domain(format!("state {k} has norm {n}, expected 1")));
            }
        }
        for (k, w) in samples.windows(2).enumerate() {
            let o = overlap(&w[0].1, &w[1].1).norm();
            if o <= pol.overlap_guard {
                return Err(Error::Sampling(format!(
                    "|<psi_{k}|psi_{}>| = {o:.3} is below {}",
                    k + 1,
                    pol.overlap_guard
                )));
            }
        }
        if let Some(g) = &generators {
            if g.len() != samples.len() {
                return Err(Error::Dimension(format!("{} generator samples for {} states", g.len(), samples.len())));
            }
            if g.iter().any(|h| h.dim() != 2) {
                return Err(Error::Dimension("generators must be 2x2".into()));
            }
        }
        Ok(Self { samples, generators, segments: Vec::new() })
    }

    pub fn samples(&self) -> &[(f64, Ket)] {
        &self.samples
    }

    pub fn generators(&self) -> Option<&[Operator]> {
        self.generators.as_deref()
    }

    /// Sample ranges of the free-evolution pieces, if the producer marked them.
    pub fn segments(&self) -> &[Range<usize>] {
        &self.segments
    }

    pub fn with_segments(mut self, segments: Vec<Range<usize>>) -> Self {
        self.segments = segments;
        self
    }

    /// Open sub-path over `range`, keeping the aligned generators.
    pub fn slice(&self, range: Range<usize>) -> Self {
        Self {
            samples: self.samples[range.clone()].to_vec(),
            generators: self.generators.as_ref().map(|g| g[range].to_vec()),
            segments: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// True when the last state equals the first up to a phase.
    pub fn is_projectively_closed(&self) -> bool {
        match (self.samples.first(), self.samples.last()) {
            (Some((_, a)), Some((_, b))) => (ket_to_bloch(a) - ket_to_bloch(b)).norm() <= policy::current().closure,
            _ => false,
        }
    }

    /// Multiplies sample `k` by `exp(i phases[k])`.
    pub fn regauged(&self, phases: &[f64]) -> Result<Self> {
        if phases.len() != self.samples.len() {
            return Err(Error::Dimension("one phase per sample required".into()));
        }
        let samples =
            self.samples.iter().zip(phases).map(|(&(t, psi), &a)| (t, psi * C64::from_polar(1.0, a))).collect();
        Ok(Self { samples, generators: self.generators.clone(), segments: self.segments.clone() })
    }

    /// Bloch image; closed when the state path is projectively closed.
    pub fn bloch_path(&self) -> Result<BlochPath> {
        let pts = self.samples.iter().map(|&(t, psi)| (t, ket_to_bloch(&psi))).collect();
        BlochPath::new(pts, self.is_projectively_closed())
    }
}
