use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Rotation3, Unit, Vector3};

use super::path::{BlochPath, StatePath};
use crate::error::{Error, Result};
use crate::quantum::{apply, pauli, rotation_unitary, Ket, Operator};

/// Two half great circles from `A = vertex_axis` to its antipode and back,
/// with dihedral angle `2 theta` at the vertices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuneSpec {
    pub theta: f64,
    pub vertex_axis: Vector3<f64>,
}

impl LuneSpec {
    pub fn new(theta: f64) -> Result<Self> {
        let spec = Self { theta, vertex_axis: Vector3::x() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_vertex_axis(mut self, axis: Vector3<f64>) -> Result<Self> {
        self.vertex_axis = axis;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=FRAC_PI_2).contains(&self.theta) {
            return Err(Error::Domain(format!("lune angle {} is outside [0, pi/2]", self.theta)));
        }
        if (self.vertex_axis.norm() - 1.0).abs() > crate::policy::current().unit_axis {
            return Err(Error::Domain("lune vertex axis must be a unit vector".into()));
        }
        Ok(())
    }

    /// Enclosed signed solid angle `4 theta`.
    pub fn solid_angle(&self) -> f64 {
        4.0 * self.theta
    }

    /// Rotation taking the reference vertex `x` onto `vertex_axis`.
    fn frame(&self) -> Rotation3<f64> {
        Rotation3::rotation_between(&Vector3::x(), &self.vertex_axis)
            .unwrap_or_else(|| Rotation3::from_axis_angle(&Vector3::z_axis(), PI))
    }

    /// Rotation axes `(n1, n2)` of the segments ABC and CDA; each segment is
    /// a right-handed rotation by pi.
    pub fn axes(&self) -> (Vector3<f64>, Vector3<f64>) {
        let (s, c) = self.theta.sin_cos();
        let r = self.frame();
        (r * Vector3::new(0.0, -s, -c), r * Vector3::new(0.0, -s, c))
    }

    /// Vertices `[A, B, C, D]`.
    pub fn vertices(&self) -> [Vector3<f64>; 4] {
        let (s, c) = self.theta.sin_cos();
        let r = self.frame();
        [r * Vector3::x(), r * Vector3::new(0.0, -c, s), -(r * Vector3::x()), r * Vector3::new(0.0, -c, -s)]
    }
}

pub(crate) fn rotate(v: &Vector3<f64>, axis: &Vector3<f64>, angle: f64) -> Vector3<f64> {
    Rotation3::from_axis_angle(&Unit::new_normalize(*axis), angle) * v
}

/// Closed loop A -> B -> C -> D -> A with `n_samples` steps; sample times
/// run over `[0, 1]`.
pub fn lune_path(spec: &LuneSpec, n_samples: usize) -> Result<BlochPath> {
    spec.validate()?;
    if n_samples < 8 {
        return Err(Error::Domain(format!("a lune needs at least 8 samples, got {n_samples}")));
    }
    let (n1, n2) = spec.axes();
    let [a, _, c, _] = spec.vertices();
    let h1 = n_samples / 2;
    let h2 = n_samples - h1;
    let mut pts = Vec::with_capacity(n_samples + 1);
    pts.extend((0..h1).map(|k| rotate(&a, &n1, PI * k as f64 / h1 as f64)));
    pts.extend((0..h2).map(|k| rotate(&c, &n2, PI * k as f64 / h2 as f64)));
    pts.push(a);
    let n = n_samples as f64;
    BlochPath::new(pts.into_iter().enumerate().map(|(k, p)| (k as f64 / n, p)).collect(), true)
}

/// `R_{n2}(pi) R_{n1}(pi)`, the unitary of the two-geodesic traversal.
pub fn lune_unitary(spec: &LuneSpec) -> Operator {
    let (n1, n2) = spec.axes();
    let half = |n: Vector3<f64>| pauli::dot([n.x, n.y, n.z]).scale(crate::quantum::C64::new(0.0, -1.0));
    half(n2) * half(n1)
}

/// Ket with Bloch direction `n` (phase fixed by a real first component).
pub fn ket_from_bloch(n: &Vector3<f64>) -> Ket {
    let beta = n.z.clamp(-1.0, 1.0).acos();
    let phi = n.y.atan2(n.x);
    Ket::new(
        crate::quantum::C64::new((0.5 * beta).cos(), 0.0),
        crate::quantum::C64::from_polar((0.5 * beta).sin(), phi),
    )
}

/// Lune traversed by precession: `H = pi n1.sigma` on `[0, 1/2]`, then
/// `H = pi n2.sigma` on `[1/2, 1]`, starting from `start`.
///
/// `perturbation` tilts each rotation axis towards its segment's starting
/// point by that amount; any nonzero value bends the segments off the great
/// circles and introduces a dynamical phase. The two free-evolution segments
/// are recorded in [`StatePath::segments`].
pub fn idealized_lune(spec: &LuneSpec, start: &Ket, n_samples: usize, perturbation: f64) -> Result<StatePath> {
    spec.validate()?;
    if n_samples < 8 {
        return Err(Error::Domain(format!("a lune needs at least 8 samples, got {n_samples}")));
    }
    let (n1, n2) = spec.axes();
    let h = [n_samples / 2, n_samples - n_samples / 2];
    let mut samples = Vec::with_capacity(n_samples + 2);
    let mut gens = Vec::with_capacity(n_samples + 2);
    let mut segments = Vec::new();
    let mut psi = *start;
    for (seg, (&n, &steps)) in [n1, n2].iter().zip(&h).enumerate() {
        let p0 = crate::quantum::ket_to_bloch(&psi);
        let axis = (n + p0 * perturbation).normalize();
        let hamiltonian = pauli::dot([axis.x, axis.y, axis.z]) * PI;
        let t0 = 0.5 * seg as f64;
        let first = samples.len();
        for k in 0..=steps {
            let tau = 0.5 * k as f64 / steps as f64;
            let u = rotation_unitary(&axis, 2.0 * PI * tau)?;
            samples.push((t0 + tau, apply(&u, &psi)));
            gens.push(hamiltonian);
        }
        segments.push(first..samples.len());
        psi = samples.last().map(|s| s.1).unwrap_or(psi);
    }
    Ok(StatePath::new(samples, Some(gens))?.with_segments(segments))
}
