//! Optical-pumping preparation of the qubit basis states and of arbitrary
//! Bloch vectors with both beams on.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::atom::{fields_for_bloch, wrap_angle, AtomModel, DecayConfig, FieldConfig, Level};
use crate::dynamics::{fidelity, mixed_ground_state, steady_state, SteadyState, SteadyStateOptions};
use crate::error::{invalid, Result};
use crate::{c64, DensityMatrix, Ket};

/// Computational basis state of a dark-state qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qubit {
    /// `|g0>`, dark to the pi beam.
    Zero,
    /// `(|g-> - |g+>)/sqrt2`, dark to the transverse beam.
    One,
}

impl Qubit {
    pub fn from_index(which: u8) -> Result<Self> {
        match which {
            0 => Ok(Qubit::Zero),
            1 => Ok(Qubit::One),
            _ => Err(invalid("which", format!("must be 0 or 1, got {which}"))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Qubit::Zero => 0,
            Qubit::One => 1,
        }
    }
}

/// Map from qubit labels to atomic states.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitMap {
    pub zero: Ket,
    pub one: Ket,
}

impl QubitMap {
    pub fn standard() -> Self {
        Self {
            zero: Level::GZero.ket(),
            one: Level::GMinus
                .ket()
                .sub(&Level::GPlus.ket())
                .scale_real(FRAC_1_SQRT_2),
        }
    }

    pub fn state(&self, which: Qubit) -> &Ket {
        match which {
            Qubit::Zero => &self.zero,
            Qubit::One => &self.one,
        }
    }

    /// `cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>`.
    pub fn bloch_state(&self, theta: f64, phi: f64) -> Ket {
        self.zero
            .scale_real((theta / 2.0).cos())
            .add(&self.one.scale(crate::C64::from_polar((theta / 2.0).sin(), phi)))
    }

    /// The superposition with the weights of the displayed `theta` form taken
    /// literally: `sin(theta/2)|0> + e^{i phi} cos(theta/2)|1>`.
    pub fn literal_state(&self, theta: f64, phi: f64) -> Ket {
        self.zero
            .scale_real((theta / 2.0).sin())
            .add(&self.one.scale(crate::C64::from_polar((theta / 2.0).cos(), phi)))
    }

    /// Bloch angles read off the qubit-subspace block of `rho`.
    pub fn read_bloch(&self, rho: &DensityMatrix) -> (f64, f64) {
        let p0 = fidelity(rho, &self.zero);
        let p1 = fidelity(rho, &self.one);
        let theta = 2.0 * p1.sqrt().atan2(p0.sqrt());
        // <1|rho|0> = sin cos e^{i phi}
        let coherence = self.one.inner(&rho.mul_vec(&self.zero));
        let phi = if coherence.norm() > 1e-12 { wrap_angle(coherence.arg()) } else { 0.0 };
        (theta, phi)
    }
}

impl Default for QubitMap {
    fn default() -> Self {
        Self::standard()
    }
}

/// Result of pumping into a qubit state.
#[derive(Clone, Debug)]
pub struct Preparation {
    pub fields: FieldConfig,
    pub rho: DensityMatrix,
    pub fidelity: f64,
    pub converged: bool,
    pub t_settle: f64,
    pub steady: SteadyState,
}

/// Pumps the maximally mixed ground manifold with a single beam: pi light for
/// `|0>`, transverse light for `|1>`.
pub fn prepare_qubit(
    model: &AtomModel,
    which: Qubit,
    decay: &DecayConfig,
    pump_rabi: f64,
    options: &SteadyStateOptions,
) -> Result<Preparation> {
    prepare_qubit_from(model, which, decay, pump_rabi, options, &mixed_ground_state())
}

/// As [`prepare_qubit`] from an arbitrary initial density matrix.
pub fn prepare_qubit_from(
    model: &AtomModel,
    which: Qubit,
    decay: &DecayConfig,
    pump_rabi: f64,
    options: &SteadyStateOptions,
    rho0: &DensityMatrix,
) -> Result<Preparation> {
    if !(pump_rabi > 0.0 && pump_rabi.is_finite()) {
        return Err(invalid("pump_rabi", format!("must be positive, got {pump_rabi}")));
    }
    let fields = match which {
        Qubit::Zero => FieldConfig::real(0.0, pump_rabi),
        Qubit::One => FieldConfig::real(pump_rabi, 0.0),
    };
    let steady = steady_state(model, rho0, &fields, decay, options)?;
    let target = QubitMap::standard().state(which).clone();
    Ok(Preparation {
        fields,
        rho: steady.rho.clone(),
        fidelity: fidelity(&steady.rho, &target),
        converged: steady.converged,
        t_settle: steady.t_settle,
        steady,
    })
}

/// Result of pumping into a Bloch-vector superposition.
#[derive(Clone, Debug)]
pub struct BlochPreparation {
    pub fields: FieldConfig,
    pub rho: DensityMatrix,
    /// Null-space dark state of `fields`, the scoring target.
    pub target: Ket,
    pub fidelity: f64,
    /// Fidelity against the literal-weights superposition, for comparison.
    pub literal_fidelity: f64,
    pub achieved_theta: f64,
    pub achieved_phi: f64,
    pub converged: bool,
    pub t_settle: f64,
    pub purity: f64,
    pub steady: SteadyState,
}

/// Sets both beams for the requested Bloch angles and pumps to the steady
/// state. `theta` of exactly `0` or `pi` reduces to single-beam pumping.
pub fn prepare_bloch(
    model: &AtomModel,
    theta: f64,
    phi: f64,
    total_rabi: f64,
    decay: &DecayConfig,
    options: &SteadyStateOptions,
) -> Result<BlochPreparation> {
    let fields = fields_for_bloch(theta, phi, total_rabi)?;
    let map = QubitMap::standard();
    let (steady, target) = if theta == 0.0 || theta == PI {
        let which = if theta == 0.0 { Qubit::Zero } else { Qubit::One };
        let pump = if theta == 0.0 { fields.omega_z.norm() } else { fields.omega_p.norm() };
        let prep = prepare_qubit(model, which, decay, pump, options)?;
        (prep.steady, map.state(which).clone())
    } else {
        let target = model.dark_state(&fields)?;
        (steady_state(model, &mixed_ground_state(), &fields, decay, options)?, target)
    };
    let (achieved_theta, achieved_phi) = map.read_bloch(&steady.rho);
    Ok(BlochPreparation {
        fields,
        rho: steady.rho.clone(),
        fidelity: fidelity(&steady.rho, &target),
        literal_fidelity: fidelity(&steady.rho, &map.literal_state(theta, phi)),
        target,
        achieved_theta,
        achieved_phi,
        converged: steady.converged,
        t_settle: steady.t_settle,
        purity: steady.purity,
        steady,
    })
}

/// The state displayed as the three-component trap state, with the field
/// ratio on the `|g0>` component: `((p/z)|g0> - |g-> + |g+>) / sqrt(2 + |p/z|^2)`.
pub fn literal_three_component_state(fields: &FieldConfig) -> Result<Ket> {
    if fields.omega_z.norm() == 0.0 {
        return Err(invalid("omega_z", "the displayed form needs omega_z != 0"));
    }
    let ratio = fields.omega_p / fields.omega_z;
    let mut psi = Ket::zeros(crate::atom::NUM_LEVELS);
    psi[Level::GZero.index()] = ratio;
    psi[Level::GMinus.index()] = c64(-1.0, 0.0);
    psi[Level::GPlus.index()] = c64(1.0, 0.0);
    Ok(psi.scale_real(1.0 / (2.0 + ratio.norm_sqr()).sqrt()))
}
