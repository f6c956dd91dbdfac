use num_complex::Complex64 as C64;

use crate::angle::{Angle, Rational};
use crate::error::{Error, Result};
use crate::geometry::{lune_unitary, LuneSpec};
use crate::policy;
use crate::pulse::{
    branch_frequency, branch_propagator, flip_angle_text, parse_sequence, run_sequence, Branch, FrameOffset,
    RunOptions, SequenceProgram, SpinSystemParams, Trajectory,
};
use crate::quantum::{
    apply, evolve, ket_minus, ket_plus, overlap, partial_trace, pauli, tensor, DensityOperator, Operator, Subsystem,
};
use crate::theory::{grid_purity, PhaseResult};

use super::config::Model;

/// Effective-pure-state preparation from the thermal deviation.
pub const PREP_PURE: &str = include_str!("../../sequences/prep_pure.pulse");

fn on_resonance(params: &SpinSystemParams) -> SpinSystemParams {
    SpinSystemParams { offset_a: FrameOffset::ZERO, offset_b: FrameOffset::ZERO, ..*params }
}

fn kron(a: Operator, b: Operator) -> Operator {
    tensor(&a, &b).expect("2x2 factors")
}

/// Thermal deviation `I_z^a + 4 I_z^b`, the gyromagnetic ratio 1:4 of the pair.
pub fn thermal_state() -> DensityOperator {
    let id = pauli::identity();
    let op = (kron(pauli::z(), id) + kron(id, pauli::z()) * 4.0) * 0.5;
    DensityOperator::deviation(op).expect("Hermitian by construction")
}

/// Traceless part of `|up up><up up|`.
pub fn effective_pure_target() -> Operator {
    let id = pauli::identity();
    let z = pauli::z();
    (kron(z, id) + kron(id, z) + kron(z, z)) * 0.25
}

/// Traceless part of `(1 + sigma_x^a)/2 (x) (1 + r sigma_x^b)/2`.
pub fn mixed_target(r: f64) -> Operator {
    let id = pauli::identity();
    let x = pauli::x();
    (kron(x, id) + kron(id, x) * r + kron(x, x) * r) * 0.25
}

/// Distance between the Frobenius-normalized traceless parts of `rho` and
/// `target`; small values mean `rho` is a positive multiple of `target`.
pub fn direction_error(rho: &DensityOperator, target: &Operator) -> f64 {
    let a = rho.traceless_part();
    let (na, nb) = (a.frobenius_norm(), target.frobenius_norm());
    if na == 0.0 || nb == 0.0 {
        return f64::INFINITY;
    }
    (a * (1.0 / na) - *target * (1.0 / nb)).frobenius_norm()
}

fn check_target(rho: &DensityOperator, target: &Operator, what: &str, params: &SpinSystemParams) -> Result<()> {
    let err = direction_error(rho, target);
    if err > policy::current().proportionality {
        return Err(Error::Convention(format!(
            "{what} missed its target by direction error {err:.3e} under {:?}",
            params.conventions
        )));
    }
    Ok(())
}

pub fn effective_pure_program(params: &SpinSystemParams) -> Result<SequenceProgram> {
    parse_sequence(PREP_PURE, &on_resonance(params))
}

/// Pulse program turning the effective pure state into the mixed input
/// with spin-b purity `cos(n pi/12)`.
pub fn mixed_program(n: u32, params: &SpinSystemParams) -> Result<SequenceProgram> {
    if n > 11 {
        return Err(Error::Domain(format!("purity index {n} is outside 0..=11")));
    }
    let tip = Angle::pi_frac(n as i64, 12);
    let text = format!("pulse b x {}\ngrad z\npulse a -y 90deg\npulse b -y 90deg\n", flip_angle_text(&tip));
    parse_sequence(&text, &on_resonance(params))
}

/// Conditional evolution `R_-x^b(theta) - 1/(2J) - R_-x^b(pi - 2 theta) - 1/(2J)`
/// in the frame `omega_b' = omega_b - pi J`.
pub fn cycle_program(theta: Angle, params: &SpinSystemParams) -> Result<SequenceProgram> {
    let t = theta.radians();
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&t) {
        return Err(Error::Domain(format!("theta = {t} is outside [0, pi/2]")));
    }
    let second = Angle::pi_frac(1, 1) - theta * Rational::from_integer(2);
    let text = format!(
        "frame b offset -0.5piJ\npulse b -x {}\ndelay 1/(2J)\npulse b -x {}\ndelay 1/(2J)\n",
        flip_angle_text(&theta),
        flip_angle_text(&second)
    );
    parse_sequence(&text, &on_resonance(params))
}

fn run_final(rho: &DensityOperator, prog: &SequenceProgram) -> Result<DensityOperator> {
    Ok(run_sequence(rho, prog, &RunOptions::final_only())?.final_state)
}

/// Spatial-averaging preparation of the effective pure state.
///
/// Fails with a convention error when the result is not a positive
/// multiple of the traceless part of `|up up><up up|`.
pub fn prepare_effective_pure(rho_th: &DensityOperator, params: &SpinSystemParams) -> Result<DensityOperator> {
    let out = run_final(rho_th, &effective_pure_program(params)?)?;
    check_target(&out, &effective_pure_target(), "effective pure state preparation", params)?;
    Ok(out)
}

/// Mixed input `(1 + sigma_x^a)/2 (x) (1 + r sigma_x^b)/2`, `r = cos(n pi/12)`.
pub fn prepare_mixed(rho_pure: &DensityOperator, n: u32, params: &SpinSystemParams) -> Result<DensityOperator> {
    let out = run_final(rho_pure, &mixed_program(n, params)?)?;
    let what = format!("mixed state preparation (n = {n})");
    check_target(&out, &mixed_target(grid_purity(n)), &what, params)?;
    Ok(out)
}

pub fn controlled_cycle(rho: &DensityOperator, theta: Angle, params: &SpinSystemParams) -> Result<DensityOperator> {
    run_final(rho, &cycle_program(theta, params)?)
}

/// [`controlled_cycle`] with sampling and optional dephasing.
pub fn controlled_cycle_traced(
    rho: &DensityOperator,
    theta: Angle,
    params: &SpinSystemParams,
    opts: &RunOptions,
) -> Result<Trajectory> {
    run_sequence(rho, &cycle_program(theta, params)?, opts)
}

/// Spin-a branch whose spin-b Hamiltonian does not vanish in the cycle frame.
pub fn active_branch(params: &SpinSystemParams) -> Result<Branch> {
    let prog = cycle_program(Angle::ZERO, params)?;
    let up = branch_frequency(&prog, Branch::Up).abs();
    let down = branch_frequency(&prog, Branch::Down).abs();
    Ok(if up > down { Branch::Up } else { Branch::Down })
}

fn controlled(active: Branch, u: &Operator) -> Operator {
    let mut out = Operator::zero(4).expect("4x4");
    let passive = active.other();
    for r in 0..2 {
        out.set(passive.block_offset() + r, passive.block_offset() + r, C64::new(1.0, 0.0));
        for c in 0..2 {
            out.set(active.block_offset() + r, active.block_offset() + c, u.get(r, c));
        }
    }
    out
}

/// `|passive><passive| (x) I + |active><active| (x) U_lune`.
pub fn idealized_controlled_cycle(
    rho: &DensityOperator,
    theta: Angle,
    params: &SpinSystemParams,
) -> Result<DensityOperator> {
    let spec = LuneSpec::new(theta.radians())?;
    let u = controlled(active_branch(params)?, &lune_unitary(&spec));
    evolve(rho, &u)
}

/// Per-branch spin-b propagators `(U_up, U_down)` of the chosen model.
pub fn branch_unitaries(model: Model, theta: Angle, params: &SpinSystemParams) -> Result<(Operator, Operator)> {
    match model {
        Model::LiteralSequence => {
            let prog = cycle_program(theta, params)?;
            Ok((branch_propagator(&prog, Branch::Up)?, branch_propagator(&prog, Branch::Down)?))
        }
        Model::IdealizedControlledU => {
            let u = lune_unitary(&LuneSpec::new(theta.radians())?);
            Ok(match active_branch(params)? {
                Branch::Up => (u, pauli::identity()),
                Branch::Down => (pauli::identity(), u),
            })
        }
    }
}

/// Relative phases `arg <n| U_down^dagger U_up |n>` for `n = +, -`, the
/// phase each spin-b eigenvector imprints on the spin-a coherence.
pub fn eigenvector_phases(model: Model, theta: Angle, params: &SpinSystemParams) -> Result<[f64; 2]> {
    let (up, down) = branch_unitaries(model, theta, params)?;
    let w = down.adjoint() * up;
    Ok([ket_plus(), ket_minus()].map(|k| overlap(&k, &apply(&w, &k)).arg()))
}

/// Spin-a coherence `<up| rho_a |down>`.
pub fn spin_a_coherence(rho_ab: &DensityOperator) -> Result<C64> {
    Ok(partial_trace(rho_ab, Subsystem::A)?.op().get(0, 1))
}

/// Phase and visibility of the spin-a coherence relative to `reference`.
pub fn readout_phase(rho_ab: &DensityOperator, reference: C64) -> Result<PhaseResult> {
    if reference.norm() == 0.0 || !reference.norm().is_finite() {
        return Err(Error::Usage("reference coherence is zero; prepare a spin-a superposition first".into()));
    }
    let c = spin_a_coherence(rho_ab)?;
    Ok(PhaseResult::from_complex(c / reference))
}
