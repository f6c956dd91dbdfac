use std::fmt;
use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Dense square complex matrix of dimension 2 (one spin) or 4 (two spins).
///
/// Entries are stored row-major in a fixed 16-slot buffer so the type stays
/// `Copy`; only the leading `dim * dim` slots are meaningful.
#[derive(Clone, Copy, PartialEq)]
pub struct Operator {
    dim: usize,
    data: [C64; 16],
}

impl Operator {
    pub fn zero(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self { dim, data: [ZERO; 16] })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut op = Self::zero(dim)?;
        for k in 0..dim {
            op.set(k, k, ONE);
        }
        Ok(op)
    }

    /// Builds an operator from `dim * dim` row-major entries.
    pub fn from_rows(dim: usize, entries: &[C64]) -> Result<Self> {
        let mut op = Self::zero(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!("{} entries given for a {dim}x{dim} operator", entries.len())));
        }
        op.data[..dim * dim].copy_from_slice(entries);
        Ok(op)
    }

    pub fn diagonal(entries: &[C64]) -> Result<Self> {
        let mut op = Self::zero(entries.len())?;
        for (k, &z) in entries.iter().enumerate() {
            op.set(k, k, z);
        }
        Ok(op)
    }

    pub(crate) fn qubit(a: C64, b: C64, c: C64, d: C64) -> Self {
        let mut data = [ZERO; 16];
        data[..4].copy_from_slice(&[a, b, c, d]);
        Self { dim: 2, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        debug_assert!(row < self.dim && col < self.dim);
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        debug_assert!(row < self.dim && col < self.dim);
        self.data[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data[..self.dim * self.dim]
    }

    pub fn map(&self, f: impl Fn(usize, usize, C64) -> C64) -> Self {
        let mut out = *self;
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(r, c, f(r, c, self.get(r, c)));
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    pub fn scale(&self, k: C64) -> Self {
        self.map(|_, _, z| z * k)
    }

    /// Hilbert-Schmidt inner product `Tr(self† other)`.
    pub fn inner(&self, other: &Operator) -> C64 {
        self.entries().iter().zip(other.entries()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`; `INFINITY` on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries().iter().zip(other.entries()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// `max |U†U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let id = Self::identity(self.dim).expect("valid dim");
        (self.adjoint() * *self).max_abs_diff(&id)
    }

    pub fn determinant(&self) -> C64 {
        let m = self.to_nalgebra();
        m.determinant()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let m = self.to_nalgebra();
        let herm = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    fn to_nalgebra(self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, self.entries())
    }

    pub fn try_mul(&self, rhs: &Operator) -> Result<Operator> {
        if self.dim != rhs.dim {
            return Err(Error::Dimension(format!("cannot multiply {0}x{0} by {1}x{1}", self.dim, rhs.dim)));
        }
        let n = self.dim;
        let mut out = Self { dim: n, data: [ZERO; 16] };
        for r in 0..n {
            for c in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += self.data[r * n + k] * rhs.data[k * n + c];
                }
                out.data[r * n + c] = acc;
            }
        }
        Ok(out)
    }

    /// `self * rho * self†`.
    pub fn conjugate(&self, rho: &Operator) -> Result<Operator> {
        self.try_mul(rho)?.try_mul(&self.adjoint())
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::Dimension(format!("operators must be 2x2 or 4x4, got {dim}")))
    }
}

/// Kronecker product with `a` as the left (spin a) factor.
pub fn tensor(a: &Operator, b: &Operator) -> Result<Operator> {
    if a.dim != 2 || b.dim != 2 {
        return Err(Error::Usage(format!(
            "tensor expects two 2x2 operators, got {}x{} and {}x{}",
            a.dim, a.dim, b.dim, b.dim
        )));
    }
    let mut out = Operator::zero(4)?;
    for (ar, ac, br, bc) in block_indices() {
        out.set(2 * ar + br, 2 * ac + bc, a.get(ar, ac) * b.get(br, bc));
    }
    Ok(out)
}

fn block_indices() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..16).map(|k| (k >> 3 & 1, k >> 2 & 1, k >> 1 & 1, k & 1))
}

impl Mul for Operator {
    type Output = Operator;
    /// Panics on dimension mismatch; use [`Operator::try_mul`] for a checked product.
    fn mul(self, rhs: Operator) -> Operator {
        self.try_mul(&rhs).expect("operator dimensions must match")
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        assert_eq!(self.dim, rhs.dim, "operator dimensions must match");
        let mut out = self;
        for (o, r) in out.data.iter_mut().zip(rhs.data) {
            *o += r;
        }
        out
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        self + rhs.scale(-ONE)
    }
}

impl Mul<f64> for Operator {
    type Output = Operator;
    fn mul(self, k: f64) -> Operator {
        self.scale(C64::new(k, 0.0))
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Operator({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self.get(r, c);
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Identity and Pauli matrices on one spin.
pub mod pauli {
    use super::*;

    pub fn identity() -> Operator {
        Operator::qubit(ONE, ZERO, ZERO, ONE)
    }
    pub fn x() -> Operator {
        Operator::qubit(ZERO, ONE, ONE, ZERO)
    }
    pub fn y() -> Operator {
        Operator::qubit(ZERO, -I, I, ZERO)
    }
    pub fn z() -> Operator {
        Operator::qubit(ONE, ZERO, ZERO, -ONE)
    }

    /// `n . sigma` for a real 3-vector.
    pub fn dot(n: [f64; 3]) -> Operator {
        x() * n[0] + y() * n[1] + z() * n[2]
    }
}
