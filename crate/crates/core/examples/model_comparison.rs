//! Literal pulse sequence against the idealized controlled rotation.

use nmr_geophase::angle::{wrap_pi, Angle};
use nmr_geophase::experiment::{branch_unitaries, eigenvector_phases, run_single, ExperimentConfig, Model};

fn main() -> nmr_geophase::Result<()> {
    let theta = Angle::pi_frac(1, 8);
    let params = ExperimentConfig::new(theta, 0).params();
    for model in [Model::LiteralSequence, Model::IdealizedControlledU] {
        let (up, down) = branch_unitaries(model, theta, &params)?;
        let [plus, minus] = eigenvector_phases(model, theta, &params)?;
        println!(
            "{model}: branch unitarity {:.1e}/{:.1e}, phases {plus:+.6} {minus:+.6}",
            up.unitarity_error(),
            down.unitarity_error()
        );
    }
    for n in 0..12 {
        let literal = run_single(&ExperimentConfig::new(theta, n))?;
        let ideal =
            run_single(&ExperimentConfig { model: Model::IdealizedControlledU, ..ExperimentConfig::new(theta, n) })?;
        println!(
            "n={n:2}: literal {:+.9} idealized {:+.9} offset {:+.1e}",
            literal.gamma_measured,
            ideal.gamma_measured,
            wrap_pi(literal.gamma_measured - ideal.gamma_measured)
        );
    }
    Ok(())
}
