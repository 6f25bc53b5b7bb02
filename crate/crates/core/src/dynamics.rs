//! Schrodinger and Lindblad propagation of the atom under time-dependent
//! fields, steady-state pumping, and state-quality metrics.

use std::f64::consts::PI;

use crate::atom::{AtomModel, CollapseOperator, DecayConfig, FieldConfig, NUM_LEVELS};
use crate::error::{invalid, Error, Result};
use crate::numerics::{evolve_rk4_inspect, hermitian_eigs, rk4_step, Stepping, Trajectory};
use crate::{c64, DensityMatrix, DensityTrajectory, Ket, KetTrajectory, C64};

/// Norm drift that aborts a Schrodinger evolution.
pub const NORM_ABORT: f64 = 1e-6;
/// Trace drift that aborts a Lindblad evolution.
pub const TRACE_TOLERANCE: f64 = 1e-9;
/// Most negative eigenvalue tolerated in a density matrix.
pub const POSITIVITY_TOLERANCE: f64 = 1e-9;

/// Fields as a function of time over `[0, duration]`.
pub trait FieldSchedule {
    fn duration(&self) -> f64;

    fn fields_at(&self, t: f64) -> FieldConfig;
}

/// Time profile of one complex Rabi frequency, parametrized by the fraction
/// `u = t / duration` of the schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    Constant(C64),
    Linear { from: C64, to: C64 },
    /// `from + (to - from) sin^2(pi u / 2)`, flat at both ends.
    SineSquared { from: C64, to: C64 },
}

impl Profile {
    pub fn value(&self, u: f64) -> C64 {
        let u = u.clamp(0.0, 1.0);
        match *self {
            Profile::Constant(v) => v,
            Profile::Linear { from, to } => from + (to - from) * u,
            Profile::SineSquared { from, to } => {
                let s = (0.5 * PI * u).sin();
                from + (to - from) * (s * s)
            }
        }
    }
}

/// Independent profiles for the two beams plus a fixed detuning.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Schedule {
    pub duration: f64,
    pub omega_p: Profile,
    pub omega_z: Profile,
    pub detuning: f64,
}

impl Schedule {
    pub fn constant(fields: FieldConfig, duration: f64) -> Self {
        Self {
            duration,
            omega_p: Profile::Constant(fields.omega_p),
            omega_z: Profile::Constant(fields.omega_z),
            detuning: fields.detuning,
        }
    }
}

impl FieldSchedule for Schedule {
    fn duration(&self) -> f64 {
        self.duration
    }

    fn fields_at(&self, t: f64) -> FieldConfig {
        let u = if self.duration > 0.0 { t / self.duration } else { 0.0 };
        FieldConfig {
            omega_p: self.omega_p.value(u),
            omega_z: self.omega_z.value(u),
            detuning: self.detuning,
        }
    }
}

fn minus_i() -> C64 {
    c64(0.0, -1.0)
}

/// Propagates `d psi/dt = -i H(t) psi`.
pub fn schrodinger_evolve(
    model: &AtomModel,
    psi0: &Ket,
    schedule: &impl FieldSchedule,
    stepping: impl Into<Stepping<f64>>,
) -> Result<KetTrajectory> {
    if psi0.len() != NUM_LEVELS {
        return Err(Error::DimensionMismatch {
            expected: NUM_LEVELS,
            got: psi0.len(),
        });
    }
    let n0 = psi0.norm();
    if (n0 - 1.0).abs() > 1e-10 {
        return Err(invalid("psi0", format!("must be normalized, |psi0| = {n0}")));
    }
    evolve_rk4_inspect(
        psi0.clone(),
        |t, psi: &Ket| {
            model
                .interaction_hamiltonian(&schedule.fields_at(t))
                .mul_vec(psi)
                .scale(minus_i())
        },
        0.0,
        schedule.duration(),
        stepping,
        |t, psi| {
            let drift = (psi.norm() - 1.0).abs();
            if drift > NORM_ABORT {
                Err(Error::NormDrift { time: t, drift })
            } else {
                Ok(())
            }
        },
    )
}

/// Precomputed Lindblad dissipator for single-element collapse operators.
#[derive(Clone, Debug)]
pub struct Dissipator {
    jumps: Vec<CollapseOperator>,
    /// Diagonal of `sum_k L_k^dag L_k`.
    outflow: [f64; NUM_LEVELS],
    jump_weight: f64,
}

impl Dissipator {
    pub fn new(model: &AtomModel, decay: &DecayConfig) -> Self {
        let jumps = model.collapse_operators(decay);
        let mut outflow = [0.0; NUM_LEVELS];
        for op in &jumps {
            outflow[op.from.index()] += op.rate;
        }
        Self {
            jumps,
            outflow,
            jump_weight: model.jump_weight(),
        }
    }

    pub fn jumps(&self) -> &[CollapseOperator] {
        &self.jumps
    }

    /// `sum_k (L rho L^dag - 1/2 {L^dag L, rho})`, term by term.
    pub fn apply(&self, rho: &DensityMatrix, out: &mut DensityMatrix) {
        for op in &self.jumps {
            let a = op.to.index();
            let b = op.from.index();
            out[(a, a)] += rho[(b, b)] * (op.rate * self.jump_weight);
        }
        for i in 0..NUM_LEVELS {
            for j in 0..NUM_LEVELS {
                let decay = 0.5 * (self.outflow[i] + self.outflow[j]);
                if decay != 0.0 {
                    out[(i, j)] -= rho[(i, j)] * decay;
                }
            }
        }
    }
}

/// Right-hand side `-i[H, rho] + D[rho]`.
pub fn lindblad_rhs(model: &AtomModel, fields: &FieldConfig, dissipator: &Dissipator, rho: &DensityMatrix) -> DensityMatrix {
    let h = model.interaction_hamiltonian(fields);
    let mut out = h.commutator(rho).scale(minus_i());
    dissipator.apply(rho, &mut out);
    out
}

fn check_density(rho: &DensityMatrix, name: &'static str) -> Result<()> {
    if rho.dim() != NUM_LEVELS {
        return Err(Error::DimensionMismatch {
            expected: NUM_LEVELS,
            got: rho.dim(),
        });
    }
    if !rho.is_hermitian(1e-10) {
        return Err(invalid(name, "must be Hermitian"));
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
        return Err(invalid(name, format!("must have unit trace, got {tr}")));
    }
    let min = min_eigenvalue(rho)?;
    if min < -1e-10 {
        return Err(invalid(name, format!("must be positive, min eigenvalue {min:e}")));
    }
    Ok(())
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(rho: &DensityMatrix) -> Result<f64> {
    Ok(hermitian_eigs(rho)?.values[0])
}

fn hygiene_check(t: f64, rho: &DensityMatrix) -> Result<()> {
    let drift = (rho.trace() - c64(1.0, 0.0)).norm();
    if drift > TRACE_TOLERANCE {
        return Err(Error::TraceDrift { time: t, drift });
    }
    let min = min_eigenvalue(rho)?;
    if min < -POSITIVITY_TOLERANCE {
        return Err(Error::NegativeEigenvalue {
            time: t,
            min_eigenvalue: min,
        });
    }
    Ok(())
}

/// Propagates the Lindblad master equation, aborting on trace or positivity
/// violations at any snapshot.
pub fn lindblad_evolve(
    model: &AtomModel,
    rho0: &DensityMatrix,
    schedule: &impl FieldSchedule,
    decay: &DecayConfig,
    stepping: impl Into<Stepping<f64>>,
) -> Result<DensityTrajectory> {
    check_density(rho0, "rho0")?;
    decay.validate()?;
    let dissipator = Dissipator::new(model, decay);
    evolve_rk4_inspect(
        rho0.clone(),
        |t, rho: &DensityMatrix| lindblad_rhs(model, &schedule.fields_at(t), &dissipator, rho),
        0.0,
        schedule.duration(),
        stepping,
        hygiene_check,
    )
}

/// Trace and positivity extremes over a density-matrix trajectory.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hygiene {
    pub max_trace_drift: f64,
    pub min_eigenvalue: f64,
}

impl Hygiene {
    pub fn new() -> Self {
        Self {
            max_trace_drift: 0.0,
            min_eigenvalue: f64::INFINITY,
        }
    }

    pub fn record(&mut self, rho: &DensityMatrix) -> Result<()> {
        self.max_trace_drift = self.max_trace_drift.max((rho.trace() - c64(1.0, 0.0)).norm());
        self.min_eigenvalue = self.min_eigenvalue.min(min_eigenvalue(rho)?);
        Ok(())
    }

    pub fn of(trajectory: &DensityTrajectory) -> Result<Self> {
        let mut h = Self::new();
        for (_, rho) in trajectory.iter() {
            h.record(rho)?;
        }
        Ok(h)
    }
}

impl Default for Hygiene {
    fn default() -> Self {
        Self::new()
    }
}

/// Integration controls for [`steady_state`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SteadyStateOptions {
    /// Upper bound on integration time, in units of `1/gamma`.
    pub max_time: f64,
    /// Convergence threshold on `|d rho/dt|_F / gamma`.
    pub settle_tol: f64,
    pub dt: f64,
    /// Spacing of recorded snapshots; `None` keeps only the endpoints.
    pub snapshot_interval: Option<f64>,
    /// Steps between convergence checks.
    pub check_every: usize,
}

impl Default for SteadyStateOptions {
    fn default() -> Self {
        Self {
            max_time: 500.0,
            settle_tol: 1e-8,
            dt: 0.01,
            snapshot_interval: None,
            check_every: 10,
        }
    }
}

/// Outcome of pumping to a steady state.
#[derive(Clone, Debug)]
pub struct SteadyState {
    pub rho: DensityMatrix,
    pub converged: bool,
    /// Time at which the residual first met the threshold, or the final
    /// time when it never did.
    pub t_settle: f64,
    /// Final `|d rho/dt|_F`.
    pub residual: f64,
    pub purity: f64,
    pub hygiene: Hygiene,
    pub trajectory: DensityTrajectory,
}

/// Integrates constant fields until `|d rho/dt|_F <= settle_tol * gamma` or
/// `max_time / gamma` elapses. Non-convergence is reported, not an error.
pub fn steady_state(
    model: &AtomModel,
    rho0: &DensityMatrix,
    fields: &FieldConfig,
    decay: &DecayConfig,
    options: &SteadyStateOptions,
) -> Result<SteadyState> {
    check_density(rho0, "rho0")?;
    decay.validate()?;
    if !(decay.gamma > 0.0) {
        return Err(invalid("gamma", "steady-state pumping needs gamma > 0"));
    }
    if !(options.dt > 0.0) || !(options.max_time > 0.0) || !(options.settle_tol > 0.0) {
        return Err(invalid("options", "dt, max_time and settle_tol must be positive"));
    }
    let dissipator = Dissipator::new(model, decay);
    let mut rhs = |_: f64, rho: &DensityMatrix| lindblad_rhs(model, fields, &dissipator, rho);

    let t_end = options.max_time / decay.gamma;
    let threshold = options.settle_tol * decay.gamma;
    let n_steps = (t_end / options.dt).ceil() as usize;
    let snapshot_steps = options
        .snapshot_interval
        .map(|dt_snap| ((dt_snap / options.dt).round() as usize).max(1));
    let check_every = options.check_every.max(1);

    let mut hygiene = Hygiene::new();
    hygiene.record(rho0)?;
    let mut trajectory = Trajectory::new();
    trajectory.push(0.0, rho0.clone());

    let mut rho = rho0.clone();
    let mut t = 0.0;
    let mut converged = false;
    let mut residual = rhs(0.0, &rho).frobenius_norm();
    for step in 1..=n_steps {
        let next = (step as f64 * options.dt).min(t_end);
        rho = rk4_step(&mut rhs, t, &rho, next - t);
        t = next;
        if !rho.all_finite() {
            return Err(Error::NonFinite { time: t });
        }
        let snapshot = snapshot_steps.is_some_and(|k| step % k == 0);
        if step % check_every == 0 || snapshot || step == n_steps {
            hygiene_check(t, &rho)?;
            hygiene.record(&rho)?;
            residual = rhs(t, &rho).frobenius_norm();
            if residual <= threshold {
                converged = true;
            }
        }
        if snapshot || converged || step == n_steps {
            trajectory.push(t, rho.clone());
        }
        if converged {
            break;
        }
    }
    let purity = purity(&rho);
    Ok(SteadyState {
        rho,
        converged,
        t_settle: t,
        residual,
        purity,
        hygiene,
        trajectory,
    })
}

/// `<target| rho |target>`, clipped to `[0, 1]`.
pub fn fidelity(rho: &DensityMatrix, target: &Ket) -> f64 {
    target.inner(&rho.mul_vec(target)).re.clamp(0.0, 1.0)
}

/// `Tr rho^2`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    rho.frobenius_norm().powi(2)
}

/// Maximally mixed state over the three ground sublevels.
pub fn mixed_ground_state() -> DensityMatrix {
    let mut rho = DensityMatrix::zeros(NUM_LEVELS);
    for g in crate::atom::Level::GROUND {
        rho[(g.index(), g.index())] = c64(1.0 / 3.0, 0.0);
    }
    rho
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::Level;
    use crate::numerics::ComplexMatrix;
    use approx::assert_abs_diff_eq;

    fn model() -> AtomModel {
        AtomModel::default()
    }

    #[test]
    fn fidelity_edge_cases() {
        let g0 = Level::GZero.ket();
        assert_eq!(fidelity(&g0.projector(), &g0), 1.0);
        assert_eq!(fidelity(&Level::GPlus.ket().projector(), &g0), 0.0);
        let plus = Level::GMinus.ket().add(&Level::GPlus.ket()).normalized();
        assert_abs_diff_eq!(fidelity(&mixed_ground_state(), &plus), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn zero_fields_give_identity_evolution() {
        let psi0 = Level::GMinus.ket();
        let traj = schrodinger_evolve(&model(), &psi0, &Schedule::constant(FieldConfig::real(0.0, 0.0), 3.0), 0.01).unwrap();
        assert_eq!(traj.last().unwrap().1, &psi0);
    }

    #[test]
    fn dark_state_is_stationary_under_schrodinger() {
        let fields = FieldConfig::new(c64(0.8, 0.3), c64(1.1, 0.0));
        let dark = model().dark_state(&fields).unwrap();
        let traj = schrodinger_evolve(&model(), &dark, &Schedule::constant(fields, 20.0), 0.01).unwrap();
        let last = traj.last().unwrap().1;
        assert!(last.sub(&dark).norm() < 1e-10 * 20.0);
    }

    #[test]
    fn g0_under_transverse_drive_matches_reduced_three_level_model() {
        // g0 couples to e- and e+ with equal strength kappa = omega_p / (4 sqrt2);
        // the bright combination (e- + e+)/sqrt2 couples with sqrt2 kappa.
        let omega = 1.0;
        let kappa = omega / (4.0 * 2f64.sqrt());
        let t_end = 7.3;
        let traj = schrodinger_evolve(
            &model(),
            &Level::GZero.ket(),
            &Schedule::constant(FieldConfig::real(omega, 0.0), t_end),
            0.005,
        )
        .unwrap();
        for (t, psi) in traj.iter().step_by(97) {
            let p_g0 = psi[Level::GZero.index()].norm_sqr();
            let expect = (2f64.sqrt() * kappa * t).cos().powi(2);
            assert_abs_diff_eq!(p_g0, expect, epsilon = 1e-9);
            assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-9);
            let p_excited = psi[Level::EMinus.index()].norm_sqr() + psi[Level::EPlus.index()].norm_sqr();
            assert_abs_diff_eq!(p_g0 + p_excited, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn schrodinger_rejects_unnormalized_input() {
        let psi = Level::GZero.ket().scale_real(2.0);
        let err = schrodinger_evolve(&model(), &psi, &Schedule::constant(FieldConfig::real(1.0, 0.0), 1.0), 0.01);
        assert!(err.is_err());
    }

    #[test]
    fn huge_step_trips_norm_guard() {
        let err = schrodinger_evolve(
            &model(),
            &Level::GZero.ket(),
            &Schedule::constant(FieldConfig::real(50.0, 10.0), 10.0),
            1.0,
        )
        .unwrap_err();
        assert!(matches!(err, Error::NormDrift { .. } | Error::NonFinite { .. }));
    }

    #[test]
    fn dark_projector_is_lindblad_fixed_point() {
        let fields = FieldConfig::real(0.7, 1.3);
        let dark = model().dark_state(&fields).unwrap();
        let rho0 = dark.projector();
        let traj = lindblad_evolve(
            &model(),
            &rho0,
            &Schedule::constant(fields, 100.0),
            &DecayConfig::closed(1.0),
            Stepping::new(0.01).every(500),
        )
        .unwrap();
        let last = traj.last().unwrap().1;
        assert!((last - &rho0).frobenius_norm() < 1e-8);
        assert!(fidelity(last, &dark) >= 1.0 - 1e-6);
    }

    #[test]
    fn no_dissipation_matches_schrodinger() {
        let fields = FieldConfig::new(c64(0.9, 0.2), c64(0.4, -0.1));
        let schedule = Schedule::constant(fields, 5.0);
        let psi0 = Level::GMinus.ket();
        let pure = schrodinger_evolve(&model(), &psi0, &schedule, 0.005).unwrap();
        let mixed = lindblad_evolve(&model(), &psi0.projector(), &schedule, &DecayConfig::closed(0.0), 0.005).unwrap();
        let psi = pure.last().unwrap().1;
        assert!((mixed.last().unwrap().1 - &psi.projector()).frobenius_norm() < 1e-8);
    }

    #[test]
    fn transverse_pumping_accumulates_in_antisymmetric_pair() {
        let one = Level::GMinus.ket().sub(&Level::GPlus.ket()).normalized();
        let traj = lindblad_evolve(
            &model(),
            &mixed_ground_state(),
            &Schedule::constant(FieldConfig::real(1.0, 0.0), 200.0),
            &DecayConfig::closed(1.0),
            Stepping::new(0.01).every(200),
        )
        .unwrap();
        let fids: Vec<f64> = traj.states().iter().map(|rho| fidelity(rho, &one)).collect();
        // after the first few snapshots the pumped population only grows
        assert!(fids.windows(2).skip(2).all(|w| w[1] >= w[0] - 1e-12));
        assert!(*fids.last().unwrap() > 0.999);
        let h = Hygiene::of(&traj).unwrap();
        assert!(h.max_trace_drift <= TRACE_TOLERANCE);
        assert!(h.min_eigenvalue >= -POSITIVITY_TOLERANCE);
    }

    #[test]
    fn lindblad_rejects_invalid_initial_state() {
        let rho = ComplexMatrix::identity(NUM_LEVELS);
        let err = lindblad_evolve(&model(), &rho, &Schedule::constant(FieldConfig::real(1.0, 0.0), 1.0), &DecayConfig::closed(1.0), 0.01);
        assert!(err.is_err());
    }

    #[test]
    fn pi_pumping_reaches_g0() {
        let ss = steady_state(
            &model(),
            &mixed_ground_state(),
            &FieldConfig::real(0.0, 1.0),
            &DecayConfig::closed(1.0),
            &SteadyStateOptions::default(),
        )
        .unwrap();
        assert!(ss.converged);
        assert!(fidelity(&ss.rho, &Level::GZero.ket()) >= 1.0 - 1e-6);
        assert!(ss.t_settle <= 500.0);
    }

    #[test]
    fn transverse_pumping_reaches_antisymmetric_pair() {
        let one = Level::GMinus.ket().sub(&Level::GPlus.ket()).normalized();
        let ss = steady_state(
            &model(),
            &mixed_ground_state(),
            &FieldConfig::real(1.0, 0.0),
            &DecayConfig::closed(1.0),
            &SteadyStateOptions::default(),
        )
        .unwrap();
        assert!(ss.converged, "residual {}", ss.residual);
        assert!(fidelity(&ss.rho, &one) >= 1.0 - 1e-6);
    }

    #[test]
    fn both_beams_pump_into_null_space_dark_state() {
        let fields = FieldConfig::new(c64(0.6, 0.0), c64(0.5, 0.5));
        let dark = model().dark_state(&fields).unwrap();
        let ss = steady_state(&model(), &mixed_ground_state(), &fields, &DecayConfig::closed(1.0), &SteadyStateOptions::default()).unwrap();
        assert!(ss.converged);
        assert!(fidelity(&ss.rho, &dark) >= 1.0 - 1e-6);
        assert!(ss.purity >= 1.0 - 1e-6);
    }

    #[test]
    fn short_max_time_reports_non_convergence() {
        let options = SteadyStateOptions {
            max_time: 1.0,
            ..Default::default()
        };
        let ss = steady_state(&model(), &mixed_ground_state(), &FieldConfig::real(1.0, 0.0), &DecayConfig::closed(1.0), &options).unwrap();
        assert!(!ss.converged);
        assert_abs_diff_eq!(ss.t_settle, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn sine_squared_profile_is_flat_at_ends() {
        let p = Profile::SineSquared {
            from: c64(0.0, 0.0),
            to: c64(2.0, 0.0),
        };
        assert_eq!(p.value(0.0), c64(0.0, 0.0));
        assert_abs_diff_eq!(p.value(1.0).re, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.value(0.5).re, 1.0, epsilon = 1e-15);
        let slope0 = (p.value(1e-6).re - p.value(0.0).re) / 1e-6;
        assert!(slope0.abs() < 1e-4);
    }
}
