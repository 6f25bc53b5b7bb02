//! Coherent bit flip by slowly rotating the half-wave plate that splits one
//! laser between the two beams, so the atom follows the instantaneous dark
//! state from one qubit state to the other.

use std::f64::consts::{FRAC_PI_4, PI};

use crate::atom::{mixing_angle, AtomModel, DecayConfig, FieldConfig, Level};
use crate::dynamics::{fidelity, lindblad_evolve, schrodinger_evolve, FieldSchedule, Hygiene};
use crate::error::{invalid, Error, Result};
use crate::numerics::{hermitian_eigs, Stepping};
use crate::{DensityTrajectory, Ket, KetTrajectory, C64};

/// Overlap with the starting dark state below which a flip is refused.
pub const MIN_START_OVERLAP: f64 = 0.999;

/// Shape of the plate-angle ramp.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RampProfile {
    Linear,
    /// `sin^2` easing with zero slope at both ends.
    SineSquared,
}

impl RampProfile {
    fn ease(self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        match self {
            RampProfile::Linear => u,
            RampProfile::SineSquared => (0.5 * PI * u).sin().powi(2),
        }
    }
}

/// Beam amplitudes behind a plate rotated by `alpha`: the polarizing splitter
/// sends `cos 2 alpha` of the field amplitude into the pi beam and
/// `sin 2 alpha` into the transverse beam.
pub fn hwp_to_fields(alpha: f64, total_field_rabi: f64) -> FieldConfig {
    FieldConfig::real(total_field_rabi * (2.0 * alpha).sin(), total_field_rabi * (2.0 * alpha).cos())
}

/// Plate angle at which only the pi beam is lit (qubit `|0>`).
pub const ALPHA_ZERO: f64 = 0.0;
/// Plate angle at which only the transverse beam is lit (qubit `|1>`).
pub const ALPHA_ONE: f64 = FRAC_PI_4;

/// Half-wave-plate angle ramp over `[0, ramp_time]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HwpSchedule {
    pub profile: RampProfile,
    pub alpha_start: f64,
    pub alpha_end: f64,
    pub ramp_time: f64,
    pub total_field_rabi: f64,
    /// Optical phase carried by the transverse beam, held fixed.
    pub phase: f64,
}

impl HwpSchedule {
    /// Ramp from `|0>` to `|1>`.
    pub fn flip_to_one(profile: RampProfile, ramp_time: f64, total_field_rabi: f64) -> Self {
        Self {
            profile,
            alpha_start: ALPHA_ZERO,
            alpha_end: ALPHA_ONE,
            ramp_time,
            total_field_rabi,
            phase: 0.0,
        }
    }

    /// Ramp from `|1>` to `|0>`.
    pub fn flip_to_zero(profile: RampProfile, ramp_time: f64, total_field_rabi: f64) -> Self {
        Self {
            alpha_start: ALPHA_ONE,
            alpha_end: ALPHA_ZERO,
            ..Self::flip_to_one(profile, ramp_time, total_field_rabi)
        }
    }

    /// Plate parked at `alpha` for `duration`.
    pub fn hold(alpha: f64, duration: f64, total_field_rabi: f64) -> Self {
        Self {
            profile: RampProfile::Linear,
            alpha_start: alpha,
            alpha_end: alpha,
            ramp_time: duration,
            total_field_rabi,
            phase: 0.0,
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            alpha_start: self.alpha_end,
            alpha_end: self.alpha_start,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ramp_time > 0.0 && self.ramp_time.is_finite()) {
            return Err(invalid("ramp_time", format!("must be positive, got {}", self.ramp_time)));
        }
        if !(self.total_field_rabi > 0.0 && self.total_field_rabi.is_finite()) {
            return Err(invalid("total_rabi", format!("must be positive, got {}", self.total_field_rabi)));
        }
        Ok(())
    }

    pub fn alpha(&self, t: f64) -> f64 {
        let s = self.profile.ease(t / self.ramp_time);
        self.alpha_start + (self.alpha_end - self.alpha_start) * s
    }

    /// Mixing angle `theta` of the instantaneous fields.
    pub fn theta(&self, t: f64) -> f64 {
        mixing_angle(&self.fields_at(t)).map(|m| m.theta).unwrap_or(0.0)
    }

    /// `|d theta / dt|` by central differences.
    pub fn theta_rate(&self, t: f64) -> f64 {
        let h = 1e-6 * self.ramp_time;
        let lo = (t - h).max(0.0);
        let hi = (t + h).min(self.ramp_time);
        ((self.theta(hi) - self.theta(lo)) / (hi - lo)).abs()
    }
}

impl FieldSchedule for HwpSchedule {
    fn duration(&self) -> f64 {
        self.ramp_time
    }

    fn fields_at(&self, t: f64) -> FieldConfig {
        let mut f = hwp_to_fields(self.alpha(t), self.total_field_rabi);
        f.omega_p *= C64::from_polar(1.0, self.phase);
        f
    }
}

/// Smallest separation between the dark eigenvalue and a bright dressed
/// eigenvalue of the six-level Hamiltonian (sink excluded).
///
/// Bright dressed states are recognized by carrying both ground and excited
/// weight; uncoupled excited directions also sit at zero energy but never
/// couple to the dark state, so they are skipped.
pub fn dark_gap(model: &AtomModel, fields: &FieldConfig) -> Result<f64> {
    let h = model.interaction_hamiltonian(fields);
    let six: Vec<usize> = Level::ALL.iter().filter(|l| **l != Level::Sink).map(|l| l.index()).collect();
    let block = h.submatrix(&six, &six);
    let eig = hermitian_eigs(&block)?;
    let scale = block.max_abs().max(f64::MIN_POSITIVE);
    let mut gap = f64::INFINITY;
    for (k, &lambda) in eig.values.iter().enumerate() {
        let v = eig.vector(k);
        let ground: f64 = (0..3).map(|i| v[i].norm_sqr()).sum();
        if ground > 0.05 && ground < 0.95 && lambda.abs() > 1e-9 * scale {
            gap = gap.min(lambda.abs());
        }
    }
    Ok(gap)
}

/// Outcome of an adiabatic flip.
#[derive(Clone, Debug)]
pub struct FlipResult {
    pub psi_final: Ket,
    /// `|<dark(end)|psi(T)>|^2`.
    pub flip_fidelity: f64,
    pub min_gap: f64,
    pub max_theta_rate: f64,
    /// Smallest instantaneous dark-state population over the snapshots.
    pub min_tracking: f64,
    pub trajectory: KetTrajectory,
}

/// Coherent flip without dissipation. `psi0` must be the dark state of the
/// starting fields.
pub fn adiabatic_flip(
    model: &AtomModel,
    schedule: &HwpSchedule,
    psi0: &Ket,
    stepping: impl Into<Stepping<f64>>,
) -> Result<FlipResult> {
    schedule.validate()?;
    let start_dark = model.dark_state(&schedule.fields_at(0.0))?;
    let overlap = start_dark.overlap(psi0);
    if overlap < MIN_START_OVERLAP {
        return Err(Error::NotDark { overlap });
    }
    let trajectory = schrodinger_evolve(model, psi0, schedule, stepping)?;

    let mut min_gap = f64::INFINITY;
    let mut max_theta_rate: f64 = 0.0;
    let mut min_tracking: f64 = 1.0;
    for (t, psi) in trajectory.iter() {
        let fields = schedule.fields_at(t);
        min_gap = min_gap.min(dark_gap(model, &fields)?);
        max_theta_rate = max_theta_rate.max(schedule.theta_rate(t));
        min_tracking = min_tracking.min(model.dark_state(&fields)?.overlap(psi));
    }
    let (t_end, psi_final) = trajectory.last().expect("trajectory has endpoints");
    let end_dark = model.dark_state(&schedule.fields_at(t_end))?;
    Ok(FlipResult {
        flip_fidelity: end_dark.overlap(psi_final),
        psi_final: psi_final.clone(),
        min_gap,
        max_theta_rate,
        min_tracking,
        trajectory,
    })
}

/// Dissipative re-run of a flip quantifying excited-state involvement.
#[derive(Clone, Debug)]
pub struct DissipativeCheck {
    /// `int_0^T P_excited dt` by the trapezoid rule over snapshots.
    pub excited_population_integral: f64,
    pub max_excited_population: f64,
    pub final_sink_population: f64,
    pub flip_fidelity: f64,
    pub hygiene: Hygiene,
    pub trajectory: DensityTrajectory,
}

pub fn verify_with_dissipation(
    model: &AtomModel,
    schedule: &HwpSchedule,
    psi0: &Ket,
    decay: &DecayConfig,
    stepping: impl Into<Stepping<f64>>,
) -> Result<DissipativeCheck> {
    schedule.validate()?;
    let trajectory = lindblad_evolve(model, &psi0.projector(), schedule, decay, stepping)?;
    let excited = |rho: &crate::DensityMatrix| -> f64 { Level::EXCITED.iter().map(|l| rho[(l.index(), l.index())].re).sum() };
    let mut integral = 0.0;
    let mut max_excited: f64 = 0.0;
    let times = trajectory.times();
    let states = trajectory.states();
    for k in 0..states.len() {
        let p = excited(&states[k]);
        max_excited = max_excited.max(p);
        if k > 0 {
            integral += 0.5 * (p + excited(&states[k - 1])) * (times[k] - times[k - 1]);
        }
    }
    let (t_end, rho_end) = trajectory.last().unwrap();
    let end_dark = model.dark_state(&schedule.fields_at(t_end))?;
    Ok(DissipativeCheck {
        excited_population_integral: integral,
        max_excited_population: max_excited,
        final_sink_population: rho_end[(Level::Sink.index(), Level::Sink.index())].re,
        flip_fidelity: fidelity(rho_end, &end_dark),
        hygiene: Hygiene::of(&trajectory)?,
        trajectory,
    })
}

/// Family of flips over a grid of dimensionless ramp lengths `T * total_rabi`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub products: Vec<f64>,
    pub total_field_rabi: f64,
    pub profile: RampProfile,
    pub to_one: bool,
    /// Step in units of `1 / total_field_rabi`.
    pub dt_scaled: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub ramp_time: f64,
    pub product: f64,
    pub flip_fidelity: f64,
    pub min_gap: f64,
    pub max_theta_rate: f64,
}

#[derive(Clone, Debug)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    /// Fidelity grows with ramp length, up to the allowed wiggle.
    pub monotone: bool,
    pub final_states: Vec<Ket>,
}

/// Oscillatory dip tolerated when judging the fidelity trend.
pub const SWEEP_WIGGLE: f64 = 0.02;

pub fn ramp_sweep(model: &AtomModel, spec: &SweepSpec) -> Result<SweepTable> {
    if spec.products.len() < 3 {
        return Err(invalid("products", format!("need at least 3 grid points, got {}", spec.products.len())));
    }
    if !(spec.dt_scaled > 0.0) {
        return Err(invalid("dt", "must be positive"));
    }
    let mut rows = Vec::with_capacity(spec.products.len());
    let mut final_states = Vec::with_capacity(spec.products.len());
    for &product in &spec.products {
        let ramp_time = product / spec.total_field_rabi;
        let schedule = if spec.to_one {
            HwpSchedule::flip_to_one(spec.profile, ramp_time, spec.total_field_rabi)
        } else {
            HwpSchedule::flip_to_zero(spec.profile, ramp_time, spec.total_field_rabi)
        };
        let psi0 = model.dark_state(&schedule.fields_at(0.0))?;
        let dt = spec.dt_scaled / spec.total_field_rabi;
        let result = adiabatic_flip(model, &schedule, &psi0, Stepping::new(dt).with_snapshot_count(ramp_time, 200))?;
        rows.push(SweepRow {
            ramp_time,
            product,
            flip_fidelity: result.flip_fidelity,
            min_gap: result.min_gap,
            max_theta_rate: result.max_theta_rate,
        });
        final_states.push(result.psi_final);
    }
    let mut sorted = rows.clone();
    sorted.sort_by(|a, b| a.product.total_cmp(&b.product));
    let mut monotone = sorted.last().unwrap().flip_fidelity > sorted[0].flip_fidelity;
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            if sorted[j].flip_fidelity < sorted[i].flip_fidelity - SWEEP_WIGGLE {
                monotone = false;
            }
        }
    }
    Ok(SweepTable { rows, monotone, final_states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stateprep::QubitMap;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_8, SQRT_2};

    #[test]
    fn plate_endpoints_select_single_beams() {
        let f0 = hwp_to_fields(0.0, 3.0);
        assert_eq!((f0.omega_p.re, f0.omega_z.re), (0.0, 3.0));
        let f1 = hwp_to_fields(FRAC_PI_4, 3.0);
        assert_abs_diff_eq!(f1.omega_p.re, 3.0);
        assert_abs_diff_eq!(f1.omega_z.re, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn eighth_turn_splits_evenly() {
        let f = hwp_to_fields(FRAC_PI_8, 2.0);
        assert_abs_diff_eq!(f.omega_p.re, SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(f.omega_z.re, SQRT_2, epsilon = 1e-15);
        let theta = mixing_angle(&f).unwrap().theta;
        assert_abs_diff_eq!(theta, 2.0 * 1f64.atan2(SQRT_2), epsilon = 1e-15);
    }

    #[test]
    fn endpoint_dark_states_are_the_qubit_states() {
        let model = AtomModel::default();
        let map = QubitMap::standard();
        let d0 = model.dark_state(&hwp_to_fields(ALPHA_ZERO, 1.0)).unwrap();
        let d1 = model.dark_state(&hwp_to_fields(ALPHA_ONE, 1.0)).unwrap();
        assert_abs_diff_eq!(d0.overlap(&map.zero), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d1.overlap(&map.one), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn slow_ramp_flips_with_high_fidelity() {
        let model = AtomModel::default();
        let omega = 10.0;
        let schedule = HwpSchedule::flip_to_one(RampProfile::SineSquared, 200.0 / omega, omega);
        let psi0 = QubitMap::standard().zero;
        let r = adiabatic_flip(&model, &schedule, &psi0, Stepping::new(0.005 / omega).every(50)).unwrap();
        assert!(r.flip_fidelity >= 0.999, "fidelity {}", r.flip_fidelity);
        assert!(r.min_tracking >= 0.99);
        assert!(r.min_gap > 0.0 && r.min_gap.is_finite());
        assert!(r.max_theta_rate > 0.0);
    }

    #[test]
    fn sudden_ramp_leaves_atom_behind() {
        let model = AtomModel::default();
        let omega = 10.0;
        let schedule = HwpSchedule::flip_to_one(RampProfile::SineSquared, 1e-3 / omega, omega);
        let r = adiabatic_flip(&model, &schedule, &QubitMap::standard().zero, 0.005 / omega).unwrap();
        assert!(r.flip_fidelity <= 0.05);
    }

    #[test]
    fn parked_plate_is_stationary() {
        let model = AtomModel::default();
        let schedule = HwpSchedule::hold(0.3, 5.0, 4.0);
        let psi0 = model.dark_state(&schedule.fields_at(0.0)).unwrap();
        let r = adiabatic_flip(&model, &schedule, &psi0, 0.001).unwrap();
        assert!(r.psi_final.overlap(&psi0) >= 1.0 - 1e-8);
    }

    #[test]
    fn refuses_bright_start() {
        let model = AtomModel::default();
        let schedule = HwpSchedule::flip_to_one(RampProfile::Linear, 1.0, 1.0);
        let err = adiabatic_flip(&model, &schedule, &Level::GMinus.ket(), 0.01).unwrap_err();
        assert!(matches!(err, Error::NotDark { .. }));
    }

    #[test]
    fn sweep_needs_three_points() {
        let spec = SweepSpec {
            products: vec![10.0],
            total_field_rabi: 1.0,
            profile: RampProfile::SineSquared,
            to_one: true,
            dt_scaled: 0.01,
        };
        assert!(ramp_sweep(&AtomModel::default(), &spec).is_err());
    }

    #[test]
    fn gap_at_single_beam_endpoint() {
        // pi light only: g+- pair with e+- at coupling 1/(2 sqrt2) each
        let gap = dark_gap(&AtomModel::default(), &hwp_to_fields(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(gap, 0.5 / SQRT_2, epsilon = 1e-12);
    }
}
