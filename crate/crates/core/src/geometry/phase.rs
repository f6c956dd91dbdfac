use super::path::StatePath;
use crate::angle::wrap_pi;
use crate::error::{Error, Result};
use crate::policy;
use crate::quantum::{expectation, overlap};

/// Discrete Pancharatnam phase `-arg prod <psi_k|psi_k+1>` of a closed
/// state path, closing overlap included. Result in `(-pi, pi]`.
pub fn pancharatnam_phase(path: &StatePath) -> Result<f64> {
    if !path.is_projectively_closed() {
        return Err(Error::Usage("Pancharatnam phase needs a path that returns to its initial ray".into()));
    }
    let s = path.samples();
    let guard = policy::current().overlap_guard;
    let closing = overlap(&s[s.len() - 1].1, &s[0].1);
    let mut prod = closing;
    for (k, w) in s.windows(2).enumerate() {
        let o = overlap(&w[0].1, &w[1].1);
        if o.norm() <= guard {
            return Err(Error::Sampling(format!("overlap {:.3} between samples {k} and {}", o.norm(), k + 1)));
        }
        prod *= o / o.norm();
    }
    Ok(wrap_pi(-prod.arg()))
}

/// `-integral <psi|H|psi> dt` by the trapezoidal rule on the sample grid.
pub fn dynamical_phase(path: &StatePath) -> Result<f64> {
    let gens = path.generators().ok_or_else(|| Error::Usage("dynamical phase needs generator samples".into()))?;
    let e: Vec<f64> = path.samples().iter().zip(gens).map(|((_, psi), h)| expectation(h, psi).re).collect();
    let integral: f64 =
        path.samples().windows(2).zip(e.windows(2)).map(|(t, e)| 0.5 * (e[0] + e[1]) * (t[1].0 - t[0].0)).sum();
    Ok(-integral)
}
