//! Dynamical and geometric phase along the idealized geodesic lune.

use nmr_geophase::angle::wrap_pi;
use nmr_geophase::geometry::{
    check_geodesic, dynamical_phase, idealized_lune, pancharatnam_phase, solid_angle, LuneSpec,
};
use nmr_geophase::quantum::ket_plus;

fn main() -> nmr_geophase::Result<()> {
    let spec = LuneSpec::new(std::f64::consts::FRAC_PI_8)?;
    for perturbation in [0.0, 0.01] {
        let path = idealized_lune(&spec, &ket_plus(), 4000, perturbation)?;
        println!("perturbation {perturbation}");
        for seg in path.segments() {
            let piece = path.slice(seg.clone());
            println!(
                "  segment {seg:?}: dynamical {:+.3e} rad, off-plane {:.3e}",
                dynamical_phase(&piece)?,
                check_geodesic(&piece.bloch_path()?)
            );
        }
        if !path.is_projectively_closed() {
            println!("  loop does not close; no geometric phase");
            continue;
        }
        let omega = solid_angle(&path.bloch_path()?)?;
        let gamma = pancharatnam_phase(&path)?;
        println!("  Omega={omega:.9} gamma={gamma:+.9} gamma+Omega/2={:+.2e}", wrap_pi(gamma + 0.5 * omega));
    }
    Ok(())
}
