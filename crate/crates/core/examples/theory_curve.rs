//! Closed-form phase and visibility on the purity grid `r = cos(n pi/12)`.

use nmr_geophase::angle::Angle;
use nmr_geophase::theory::{theory_curve, Orientation};

fn main() -> nmr_geophase::Result<()> {
    for omega in [Angle::pi_frac(1, 2), Angle::pi_frac(1, 1), Angle::pi_frac(3, 2)] {
        println!("omega = {omega}");
        for row in theory_curve(omega, 12, Orientation::Positive)? {
            let gamma = if row.defined { format!("{:+.6}", row.gamma) } else { "undefined".into() };
            println!("  n={:2} r={:.4} gamma={gamma} v={:.6}", row.n, row.r, row.visibility);
        }
    }
    Ok(())
}
