use std::f64::consts::PI;

use nalgebra::Vector3;

use super::path::BlochPath;
use crate::error::{Error, Result};

/// Signed excess of the geodesic triangle `(c, p, q)`, positive when the
/// vertices run counterclockwise seen from outside the sphere.
fn triangle_excess(c: &Vector3<f64>, p: &Vector3<f64>, q: &Vector3<f64>) -> f64 {
    let num = c.dot(&p.cross(q));
    let den = 1.0 + c.dot(p) + p.dot(q) + q.dot(c);
    2.0 * num.atan2(den)
}

/// Fan point for the triangulation: the centroid direction unless it is
/// undefined or sits on the antipode of a sample.
fn fan_point(points: &[Vector3<f64>]) -> Vector3<f64> {
    let clearance = |c: &Vector3<f64>| points.iter().map(|p| (c + p).norm()).fold(f64::INFINITY, f64::min);
    let mean: Vector3<f64> = points.iter().sum::<Vector3<f64>>() / points.len() as f64;
    if mean.norm() > 1e-6 {
        let c = mean.normalize();
        if clearance(&c) > 1e-6 {
            return c;
        }
    }
    let s = 1.0 / 3f64.sqrt();
    let candidates = [
        Vector3::x(),
        Vector3::y(),
        Vector3::z(),
        -Vector3::x(),
        -Vector3::y(),
        -Vector3::z(),
        Vector3::new(s, s, s),
        Vector3::new(-s, s, s),
        Vector3::new(s, -s, s),
        Vector3::new(s, s, -s),
    ];
    candidates.into_iter().max_by(|a, b| clearance(a).total_cmp(&clearance(b))).unwrap_or_else(Vector3::z)
}

/// Oriented area enclosed by a closed path, in `(-2 pi, 2 pi]`.
///
/// Consecutive samples are joined by minor great-circle arcs and the
/// resulting polygon is fanned into triangles from a common point.
pub fn solid_angle(path: &BlochPath) -> Result<f64> {
    if !path.is_closed() {
        return Err(Error::Usage("solid angle needs a closed path".into()));
    }
    let points: Vec<Vector3<f64>> = path.points().copied().collect();
    let first = match points.first() {
        Some(p) => *p,
        None => return Ok(0.0),
    };
    if points.iter().all(|p| (p - first).norm() <= 1e-9) {
        return Ok(0.0);
    }
    let c = fan_point(&points);
    let total: f64 = points.windows(2).map(|w| triangle_excess(&c, &w[0], &w[1])).sum();
    Ok(reduce(total))
}

/// Reduces modulo `4 pi` into `(-2 pi, 2 pi]`.
fn reduce(x: f64) -> f64 {
    let y = x.rem_euclid(4.0 * PI);
    if y > 2.0 * PI {
        y - 4.0 * PI
    } else {
        y
    }
}
