use std::fmt;
use std::str::FromStr;

use nalgebra::{Vector2, Vector3};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::operator::{pauli, Operator, ONE, ZERO};
use crate::error::{Error, Result};
use crate::policy;

/// Pure qubit state vector in the `|up>, |down>` basis.
pub type Ket = Vector2<C64>;

/// Hermitian operator used as a quantum state.
///
/// `normalized` states have unit trace and a nonnegative spectrum. Deviation
/// operators (the traceless part NMR manipulates) skip those two checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOperator {
    op: Operator,
    normalized: bool,
}

impl DensityOperator {
    pub fn new(op: Operator) -> Result<Self> {
        let tol = policy::current();
        let herm = op.hermiticity_error();
        if herm > tol.hermitian {
            return Err(Error::Domain(format!("state is not Hermitian (error {herm:.3e})")));
        }
        let tr = op.trace();
        if (tr - ONE).norm() > tol.trace {
            return Err(Error::Domain(format!("state trace is {tr}, expected 1")));
        }
        let min = op.hermitian_eigenvalues()[0];
        if min < -tol.positivity {
            return Err(Error::Domain(format!("state has negative eigenvalue {min:.3e}")));
        }
        Ok(Self { op, normalized: true })
    }

    /// Wraps a Hermitian operator without trace or positivity requirements.
    pub fn deviation(op: Operator) -> Result<Self> {
        let herm = op.hermiticity_error();
        if herm > policy::current().hermitian {
            return Err(Error::Domain(format!("deviation operator is not Hermitian (error {herm:.3e})")));
        }
        Ok(Self { op, normalized: false })
    }

    /// Rewraps an operator produced by a trace- and spectrum-preserving map.
    pub(crate) fn like(&self, op: Operator) -> Self {
        Self { op, normalized: self.normalized }
    }

    pub fn op(&self) -> &Operator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn trace(&self) -> f64 {
        self.op.trace().re
    }

    /// Scales the underlying operator; the result is a deviation operator
    /// unless `k == 1`.
    pub fn scaled(&self, k: f64) -> Self {
        Self { op: self.op * k, normalized: self.normalized && k == 1.0 }
    }

    /// Traceless part `rho - Tr(rho)/d`.
    pub fn traceless_part(&self) -> Operator {
        let d = self.dim();
        let shift = self.op.trace() / d as f64;
        self.op.map(|r, c, z| if r == c { z - shift } else { z })
    }
}

/// Real 3-vector `r` with `rho = (1 + r.sigma)/2`; its length is the purity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector(pub Vector3<f64>);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self(Vector3::new(x, y, z))
    }

    pub fn purity(&self) -> f64 {
        self.0.norm()
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }
}

/// Eigenvalues `(1 +- r)/2` and eigen-axis of a qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitEigensystem {
    pub p_plus: f64,
    pub p_minus: f64,
    /// Unit Bloch direction of the `p_plus` eigenvector; `(0,0,1)` when degenerate.
    pub axis: Vector3<f64>,
    /// Set for the maximally mixed state; `axis` carries no information then.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

impl FromStr for Subsystem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "A" => Ok(Subsystem::A),
            "b" | "B" => Ok(Subsystem::B),
            other => Err(Error::Usage(format!("unknown spin label '{other}' (expected a or b)"))),
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subsystem::A => "a",
            Subsystem::B => "b",
        })
    }
}

/// Reduces a two-spin operator to the spin named by `keep`.
pub fn partial_trace(rho_ab: &DensityOperator, keep: Subsystem) -> Result<DensityOperator> {
    if rho_ab.dim() != 4 {
        return Err(Error::Dimension(format!("partial trace needs a 4x4 state, got {0}x{0}", rho_ab.dim())));
    }
    let m = rho_ab.op();
    let mut out = Operator::zero(2)?;
    for r in 0..2 {
        for c in 0..2 {
            let z = match keep {
                Subsystem::A => m.get(2 * r, 2 * c) + m.get(2 * r + 1, 2 * c + 1),
                Subsystem::B => m.get(r, c) + m.get(2 + r, 2 + c),
            };
            out.set(r, c, z);
        }
    }
    Ok(DensityOperator { op: out, normalized: rho_ab.normalized })
}

pub fn bloch_to_density(r: &BlochVector) -> Result<DensityOperator> {
    let len = r.purity();
    if len > 1.0 + policy::current().bloch_norm {
        return Err(Error::Domain(format!("Bloch vector length {len} exceeds 1")));
    }
    let op = (pauli::identity() + pauli::dot(r.as_array())) * 0.5;
    Ok(DensityOperator { op, normalized: true })
}

/// `r_k = Tr(rho sigma_k)`.
pub fn density_to_bloch(rho: &DensityOperator) -> Result<BlochVector> {
    if rho.dim() != 2 {
        return Err(Error::Dimension("Bloch vectors describe single spins only".into()));
    }
    let m = rho.op();
    let r = |s: Operator| (s * *m).trace().re;
    Ok(BlochVector::new(r(pauli::x()), r(pauli::y()), r(pauli::z())))
}

/// Projector onto the pure state with Bloch direction `n`.
pub fn bloch_projector(n: &Vector3<f64>) -> Operator {
    (pauli::identity() + pauli::dot([n.x, n.y, n.z])) * 0.5
}

pub fn eigendecompose_qubit(rho: &DensityOperator) -> Result<QubitEigensystem> {
    if !rho.is_normalized() {
        return Err(Error::Usage("eigendecomposition expects a normalized qubit state".into()));
    }
    let r = density_to_bloch(rho)?;
    let len = r.purity();
    if len < policy::current().degenerate_purity {
        return Ok(QubitEigensystem { p_plus: 0.5, p_minus: 0.5, axis: Vector3::z(), degenerate: true });
    }
    Ok(QubitEigensystem { p_plus: 0.5 * (1.0 + len), p_minus: 0.5 * (1.0 - len), axis: r.0 / len, degenerate: false })
}

/// `exp(-i angle n.sigma / 2)`: rotates Bloch vectors by `angle` about `n`
/// with the right-hand rule.
pub fn rotation_unitary(axis: &Vector3<f64>, angle: f64) -> Result<Operator> {
    let norm = axis.norm();
    if (norm - 1.0).abs() > policy::current().unit_axis {
        return Err(Error::Domain(format!("rotation axis has length {norm}, expected 1")));
    }
    let (s, c) = (0.5 * angle).sin_cos();
    Ok(rotation_from_half_angle(axis, s, c))
}

/// Same as [`rotation_unitary`] with `sin`/`cos` of the half angle supplied,
/// so exact angles keep exact entries.
pub(crate) fn rotation_from_half_angle(n: &Vector3<f64>, s: f64, c: f64) -> Operator {
    let (nx, ny, nz) = (n.x, n.y, n.z);
    Operator::qubit(C64::new(c, -s * nz), C64::new(-s * ny, -s * nx), C64::new(s * ny, -s * nx), C64::new(c, s * nz))
}

/// `U rho U†`, refusing non-unitary `U`.
pub fn evolve(rho: &DensityOperator, u: &Operator) -> Result<DensityOperator> {
    if u.dim() != rho.dim() {
        return Err(Error::Dimension(format!("propagator is {0}x{0} but state is {1}x{1}", u.dim(), rho.dim())));
    }
    let err = u.unitarity_error();
    if err > policy::current().unitary {
        return Err(Error::Domain(format!("propagator is not unitary (error {err:.3e})")));
    }
    Ok(rho.like(u.conjugate(rho.op())?))
}

pub fn ket_up() -> Ket {
    Ket::new(ONE, ZERO)
}

pub fn ket_down() -> Ket {
    Ket::new(ZERO, ONE)
}

/// `(|up> + |down>)/sqrt2`.
pub fn ket_plus() -> Ket {
    Ket::new(ONE, ONE) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

/// `(|up> - |down>)/sqrt2`.
pub fn ket_minus() -> Ket {
    Ket::new(ONE, -ONE) * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
}

pub fn apply(u: &Operator, psi: &Ket) -> Ket {
    debug_assert_eq!(u.dim(), 2);
    Ket::new(u.get(0, 0) * psi[0] + u.get(0, 1) * psi[1], u.get(1, 0) * psi[0] + u.get(1, 1) * psi[1])
}

/// `<phi|psi>`.
pub fn overlap(phi: &Ket, psi: &Ket) -> C64 {
    phi[0].conj() * psi[0] + phi[1].conj() * psi[1]
}

/// `<psi|op|psi>` for a 2x2 operator.
pub fn expectation(op: &Operator, psi: &Ket) -> C64 {
    overlap(psi, &apply(op, psi))
}

/// Bloch direction of a normalized ket.
pub fn ket_to_bloch(psi: &Ket) -> Vector3<f64> {
    let (a, b) = (psi[0], psi[1]);
    let ab = a.conj() * b;
    Vector3::new(2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn bloch_to_density_examples() {
        let mixed = bloch_to_density(&BlochVector::new(0.0, 0.0, 0.0)).unwrap();
        assert!(mixed.op().max_abs_diff(&(pauli::identity() * 0.5)) < 1e-15);

        let up = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        let p_up = Operator::diagonal(&[ONE, ZERO]).unwrap();
        assert!(up.op().max_abs_diff(&p_up) < 1e-15);

        let r = (PI / 12.0).cos();
        let rho = bloch_to_density(&BlochVector::new(r, 0.0, 0.0)).unwrap();
        let ev = rho.op().hermitian_eigenvalues();
        assert!((ev[0] - 0.5 * (1.0 - r)).abs() < 1e-15);
        assert!((ev[1] - 0.5 * (1.0 + r)).abs() < 1e-15);
    }

    #[test]
    fn bloch_to_density_rejects_long_vectors() {
        let err = bloch_to_density(&BlochVector::new(0.8, 0.7, 0.0)).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
    }

    #[test]
    fn density_to_bloch_examples() {
        let half = pauli::identity() * 0.5;
        let r = density_to_bloch(&DensityOperator::new(half).unwrap()).unwrap();
        assert_eq!(r.as_array(), [0.0, 0.0, 0.0]);

        let py = (pauli::identity() + pauli::y()) * 0.5;
        let r = density_to_bloch(&DensityOperator::new(py).unwrap()).unwrap();
        assert_eq!(r.as_array(), [0.0, 1.0, 0.0]);

        let op = (pauli::identity() + pauli::x() * 0.5 + pauli::z() * 0.5) * 0.5;
        let r = density_to_bloch(&DensityOperator::new(op).unwrap()).unwrap();
        assert_eq!(r.as_array(), [0.5, 0.0, 0.5]);
    }

    #[test]
    fn eigendecompose_examples() {
        let rho = bloch_to_density(&BlochVector::new(0.8, 0.0, 0.0)).unwrap();
        let e = eigendecompose_qubit(&rho).unwrap();
        assert!((e.p_plus - 0.9).abs() < 1e-15 && (e.p_minus - 0.1).abs() < 1e-15);
        assert!((e.axis - Vector3::x()).norm() < 1e-15 && !e.degenerate);

        let e = eigendecompose_qubit(&bloch_to_density(&BlochVector::new(0.0, 0.0, 0.0)).unwrap()).unwrap();
        assert!(e.degenerate && e.p_plus == 0.5 && e.axis == Vector3::z());
    }

    #[test]
    fn eigendecompose_negative_r_flips_axis() {
        // Independent route: diagonalize the 2x2 matrix (1 + r sigma_x)/2 with r < 0
        // directly, its eigenvectors are |+> (value (1+r)/2) and |-> (value (1-r)/2).
        let r = (11.0 * PI / 12.0).cos();
        let rho = bloch_to_density(&BlochVector::new(r, 0.0, 0.0)).unwrap();
        let ev = rho.op().hermitian_eigenvalues();
        let e = eigendecompose_qubit(&rho).unwrap();
        assert!((e.axis - Vector3::new(-1.0, 0.0, 0.0)).norm() < 1e-15);
        assert!((e.p_plus - 0.5 * (1.0 + r.abs())).abs() < 1e-15);
        assert!((e.p_plus - ev[1]).abs() < 1e-15);
        let minus_proj = bloch_projector(&Vector3::new(-1.0, 0.0, 0.0));
        let lambda = (minus_proj * *rho.op()).trace().re;
        assert!((lambda - e.p_plus).abs() < 1e-15);
    }

    #[test]
    fn rotation_examples() {
        let x = Vector3::x();
        assert!(rotation_unitary(&x, 0.0).unwrap().max_abs_diff(&pauli::identity()) < 1e-15);
        let flip = rotation_unitary(&x, PI).unwrap();
        assert!(flip.max_abs_diff(&pauli::x().scale(c(0.0, -1.0))) < 1e-15);
        let rz = rotation_unitary(&Vector3::z(), FRAC_PI_2).unwrap();
        let expected =
            Operator::diagonal(&[C64::from_polar(1.0, -FRAC_PI_4), C64::from_polar(1.0, FRAC_PI_4)]).unwrap();
        assert!(rz.max_abs_diff(&expected) < 1e-15);
        assert!(matches!(rotation_unitary(&Vector3::new(1.0, 1.0, 0.0), 1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn evolve_examples() {
        let up = DensityOperator::new(Operator::diagonal(&[ONE, ZERO]).unwrap()).unwrap();
        assert_eq!(evolve(&up, &pauli::identity()).unwrap(), up);

        let flipped = evolve(&up, &rotation_unitary(&Vector3::x(), PI).unwrap()).unwrap();
        assert!(flipped.op().max_abs_diff(&Operator::diagonal(&[ZERO, ONE]).unwrap()) < 1e-15);

        // sigma_x conjugated by a pi/2 z-rotation becomes sigma_y.
        let px = DensityOperator::new((pauli::identity() + pauli::x()) * 0.5).unwrap();
        let out = evolve(&px, &rotation_unitary(&Vector3::z(), FRAC_PI_2).unwrap()).unwrap();
        let py = (pauli::identity() + pauli::y()) * 0.5;
        assert!(out.op().max_abs_diff(&py) < 1e-15);
    }

    #[test]
    fn evolve_rejects_non_unitary() {
        let up = DensityOperator::new(Operator::diagonal(&[ONE, ZERO]).unwrap()).unwrap();
        let bad = pauli::identity() * 1.01;
        assert!(matches!(evolve(&up, &bad), Err(Error::Domain(_))));
        let id4 = Operator::identity(4).unwrap();
        assert!(matches!(evolve(&up, &id4), Err(Error::Dimension(_))));
    }

    #[test]
    fn partial_trace_examples() {
        let quarter = DensityOperator::new(Operator::identity(4).unwrap() * 0.25).unwrap();
        let red = partial_trace(&quarter, Subsystem::A).unwrap();
        assert!(red.op().max_abs_diff(&(pauli::identity() * 0.5)) < 1e-15);

        // (|uu> + |dd>)/sqrt2 projector: entries 1/2 at the four corners.
        let mut bell = Operator::zero(4).unwrap();
        for (r, col) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell.set(r, col, c(0.5, 0.0));
        }
        let bell = DensityOperator::new(bell).unwrap();
        for keep in [Subsystem::A, Subsystem::B] {
            let red = partial_trace(&bell, keep).unwrap();
            assert!(red.op().max_abs_diff(&(pauli::identity() * 0.5)) < 1e-15);
        }
        let single = bloch_to_density(&BlochVector::new(0.0, 0.0, 1.0)).unwrap();
        assert!(partial_trace(&single, Subsystem::A).is_err());
        assert!("c".parse::<Subsystem>().is_err());
    }

    #[test]
    fn ket_bloch_directions() {
        assert!((ket_to_bloch(&ket_plus()) - Vector3::x()).norm() < 1e-15);
        assert!((ket_to_bloch(&ket_minus()) + Vector3::x()).norm() < 1e-15);
        assert!((ket_to_bloch(&ket_up()) - Vector3::z()).norm() < 1e-15);
    }

    #[test]
    fn new_rejects_invalid_states() {
        assert!(DensityOperator::new(pauli::x()).is_err());
        assert!(DensityOperator::new(pauli::identity()).is_err());
        let neg = (pauli::identity() + pauli::z() * 1.5) * 0.5;
        assert!(DensityOperator::new(neg).is_err());
        assert!(DensityOperator::deviation(pauli::z()).is_ok());
        assert!(DensityOperator::deviation(pauli::y().scale(C64::new(0.0, 1.0))).is_err());
    }
}
