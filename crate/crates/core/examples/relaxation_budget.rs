//! Visibility lost to transverse relaxation during the controlled cycle.

use nmr_geophase::angle::Angle;
use nmr_geophase::experiment::{run_single, ExperimentConfig};
use nmr_geophase::pulse::Relaxation;

fn main() -> nmr_geophase::Result<()> {
    let relax = Relaxation { t2a: 0.3, t2b: 0.4 };
    for k in 1..=3 {
        let theta = Angle::pi_frac(k, 8);
        for n in [0, 3, 9] {
            let plain = run_single(&ExperimentConfig::new(theta, n))?;
            let damped = run_single(&ExperimentConfig { relaxation: Some(relax), ..ExperimentConfig::new(theta, n) })?;
            println!(
                "theta={theta} n={n}: v {:.6} -> {:.6} (loss {:.3}%), gamma shift {:+.2e} rad",
                plain.visibility_measured,
                damped.visibility_measured,
                100.0 * (1.0 - damped.visibility_measured / plain.visibility_measured),
                damped.gamma_measured - plain.gamma_measured
            );
        }
    }
    Ok(())
}
