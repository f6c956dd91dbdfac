//! Full pipeline on the 36-point grid, printed as CSV.

use nmr_geophase::angle::Angle;
use nmr_geophase::experiment::{records_csv, run_sweep, ExperimentConfig};

fn main() -> nmr_geophase::Result<()> {
    let thetas = [Angle::pi_frac(1, 8), Angle::pi_frac(1, 4), Angle::pi_frac(3, 8)];
    let ns: Vec<u32> = (0..12).collect();
    let sweep = run_sweep(&thetas, &ns, &ExperimentConfig::new(Angle::ZERO, 0))?;
    print!("{}", records_csv(&sweep.records)?);
    let s = sweep.summary;
    eprintln!("{} rows, {} defined, max residual {:.2e} rad", s.rows, s.defined_rows, s.max_abs_residual);
    Ok(())
}
