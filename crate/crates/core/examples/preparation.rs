//! Thermal state to effective pure state to the purity-`r` mixtures.

use nmr_geophase::experiment::{
    direction_error, effective_pure_target, mixed_target, prepare_effective_pure, prepare_mixed, thermal_state,
    ExperimentConfig,
};
use nmr_geophase::theory::grid_purity;

fn main() -> nmr_geophase::Result<()> {
    let params = ExperimentConfig::new(nmr_geophase::angle::Angle::ZERO, 0).params();
    let pure = prepare_effective_pure(&thermal_state(), &params)?;
    println!("effective pure state: direction error {:.2e}", direction_error(&pure, &effective_pure_target()));
    for n in 0..12 {
        let r = grid_purity(n);
        let rho = prepare_mixed(&pure, n, &params)?;
        println!("n={n:2} r={r:+.4} direction error {:.2e}", direction_error(&rho, &mixed_target(r)));
    }
    Ok(())
}
