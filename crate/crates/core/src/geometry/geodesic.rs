use nalgebra::{Matrix3, SymmetricEigen};

use super::path::BlochPath;

/// Largest distance of a sample from the least-squares plane through the
/// origin. A segment lies on a great circle when this is at most the
/// policy's geodesic tolerance.
pub fn check_geodesic(path: &BlochPath) -> f64 {
    if path.len() < 3 {
        // two points and the origin are always coplanar
        return 0.0;
    }
    let m: Matrix3<f64> = path.points().map(|p| p * p.transpose()).sum();
    let eig = SymmetricEigen::new(m);
    let k = eig.eigenvalues.imin();
    let normal = eig.eigenvectors.column(k).into_owned();
    path.points().map(|p| normal.dot(p).abs()).fold(0.0, f64::max)
}

/// True when [`check_geodesic`] is within the configured tolerance.
pub fn is_geodesic(path: &BlochPath) -> bool {
    check_geodesic(path) <= crate::policy::current().geodesic
}
