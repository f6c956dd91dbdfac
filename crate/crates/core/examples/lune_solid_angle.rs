//! Solid angle of the lune and of the traced eigenvector loop.

use nmr_geophase::angle::Angle;
use nmr_geophase::experiment::{cycle_program, ExperimentConfig};
use nmr_geophase::geometry::{lune_path, solid_angle, trace_eigenvector_path, LuneSpec, TraceOptions};
use nmr_geophase::pulse::Branch;
use nmr_geophase::quantum::ket_plus;

fn main() -> nmr_geophase::Result<()> {
    let params = ExperimentConfig::new(Angle::ZERO, 0).params();
    for k in 1..=4 {
        let theta = Angle::pi_frac(k, 8);
        let spec = LuneSpec::new(theta.radians())?;
        let ideal = solid_angle(&lune_path(&spec, 2000)?)?;
        let prog = cycle_program(theta, &params)?;
        let traced = trace_eigenvector_path(&prog, Branch::Down, &ket_plus(), &TraceOptions::default())?;
        let measured = solid_angle(&traced.bloch_path()?)?;
        println!("theta={theta}: 4 theta={:.9} lune={ideal:.9} traced={measured:.9}", 4.0 * theta.radians());
    }
    Ok(())
}
