//! Pair Hamiltonian, RF pulses and propagation in the four-state product
//! basis `|00>, |01>, |10>, |11>` (first digit atom 1).

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{invalid, Result};
use crate::numerics::{evolve_rk4, hermitian_eigs, Eigen, Stepping};
use crate::{c64, CMatrix, Ket, C64};

pub const DIM: usize = 4;
pub const S00: usize = 0;
pub const S01: usize = 1;
pub const S10: usize = 2;
pub const S11: usize = 3;
pub const BASIS_LABELS: [&str; DIM] = ["00", "01", "10", "11"];

/// Upper bound on `omega_dd / omega_i` for the weak-coupling picture.
pub const MAX_COUPLING_RATIO: f64 = 0.1;

/// Excitation number of each basis state.
const EXCITATIONS: [f64; DIM] = [0.0, 1.0, 1.0, 2.0];

pub fn basis(k: usize) -> Ket {
    Ket::basis(DIM, k)
}

/// `(|01> + |10>)/sqrt2`.
pub fn symmetric() -> Ket {
    basis(S01).add(&basis(S10)).scale_real(FRAC_1_SQRT_2)
}

/// `(|01> - |10>)/sqrt2`.
pub fn singlet() -> Ket {
    basis(S01).sub(&basis(S10)).scale_real(FRAC_1_SQRT_2)
}

/// Larmor frequencies and dipole scale of an atom pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinPairConfig {
    pub omega1: f64,
    pub omega2: f64,
    pub omega_dd: f64,
}

impl SpinPairConfig {
    pub fn homogeneous(omega_l: f64, omega_dd: f64) -> Self {
        Self {
            omega1: omega_l,
            omega2: omega_l,
            omega_dd,
        }
    }

    pub fn heterogeneous(omega1: f64, omega2: f64, omega_dd: f64) -> Self {
        Self { omega1, omega2, omega_dd }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.omega1 == self.omega2
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in [("omega1", self.omega1), ("omega2", self.omega2)] {
            if !(w > 0.0 && w.is_finite()) {
                return Err(invalid(name, format!("must be positive, got {w}")));
            }
        }
        if !(self.omega_dd >= 0.0 && self.omega_dd.is_finite()) {
            return Err(invalid("omega_dd", format!("must be non-negative, got {}", self.omega_dd)));
        }
        let ratio = self.omega_dd / self.omega1.min(self.omega2);
        if ratio > MAX_COUPLING_RATIO {
            return Err(invalid(
                "omega_dd",
                format!("omega_dd / omega_L = {ratio:.3} exceeds {MAX_COUPLING_RATIO}"),
            ));
        }
        Ok(())
    }

    pub(crate) fn require_homogeneous(&self) -> Result<()> {
        self.validate()?;
        if !self.is_homogeneous() {
            return Err(invalid("omega2", "this gate needs omega1 == omega2"));
        }
        Ok(())
    }

    pub(crate) fn require_heterogeneous(&self) -> Result<()> {
        self.validate()?;
        if self.is_homogeneous() {
            return Err(invalid("omega2", "this gate needs omega1 != omega2"));
        }
        Ok(())
    }
}

/// Rectangular transverse RF pulse under the rotating-wave approximation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RfPulse {
    pub carrier: f64,
    /// Single-spin Rabi frequency.
    pub rabi: f64,
    pub duration: f64,
    pub phase: f64,
    /// Lab time at which the pulse switches on; the carrier phase is
    /// referenced to lab time zero.
    pub start: f64,
    /// Ratio of the driven transition's Rabi frequency to `rabi`, e.g.
    /// `sqrt2` for the collective `|00> <-> symmetric` transition.
    pub transition_factor: f64,
}

impl RfPulse {
    pub fn new(carrier: f64, rabi: f64, duration: f64) -> Self {
        Self {
            carrier,
            rabi,
            duration,
            phase: 0.0,
            start: 0.0,
            transition_factor: 1.0,
        }
    }

    /// Pulse whose area on the driven transition equals `area`.
    pub fn with_area(carrier: f64, rabi: f64, area: f64, transition_factor: f64) -> Result<Self> {
        if !(rabi > 0.0 && rabi.is_finite()) {
            return Err(invalid("rf_rabi", format!("must be positive, got {rabi}")));
        }
        if !(area > 0.0 && area.is_finite()) {
            return Err(invalid("area", format!("must be positive, got {area}")));
        }
        Ok(Self {
            transition_factor,
            ..Self::new(carrier, rabi, area / (transition_factor * rabi))
        })
    }

    pub fn starting_at(mut self, start: f64) -> Self {
        self.start = start;
        self
    }

    pub fn end(&self) -> f64 {
        self.start + self.duration
    }

    /// Area on the driven transition.
    pub fn area(&self) -> f64 {
        self.transition_factor * self.rabi * self.duration
    }
}

/// Time-independent pair Hamiltonian without drive.
pub fn static_hamiltonian(config: &SpinPairConfig) -> CMatrix {
    let (w1, w2, v) = (config.omega1, config.omega2, config.omega_dd);
    let mut h = CMatrix::diagonal(&[0.0, w2, w1, w1 + w2]);
    if config.is_homogeneous() {
        h[(S01, S10)] += c64(v, 0.0);
        h[(S10, S01)] += c64(v, 0.0);
        h[(S01, S01)] += c64(v, 0.0);
        h[(S10, S10)] += c64(v, 0.0);
    } else {
        h[(S11, S11)] += c64(v, 0.0);
    }
    h
}

/// Transverse drive `(rabi/2)(e^{-i phase} sigma_+ + h.c.)` on both spins.
pub fn rf_coupling(rabi: f64, phase: f64) -> CMatrix {
    let up = C64::from_polar(0.5 * rabi, -phase);
    let mut h = CMatrix::zeros(DIM);
    for (lo, hi) in [(S00, S01), (S00, S10), (S01, S11), (S10, S11)] {
        h[(hi, lo)] = up;
        h[(lo, hi)] = up.conj();
    }
    h
}

/// Pair Hamiltonian, in the frame rotating at the pulse carrier when a pulse
/// is given.
pub fn build_pair_hamiltonian(config: &SpinPairConfig, pulse: Option<&RfPulse>) -> CMatrix {
    let h = static_hamiltonian(config);
    match pulse {
        None => h,
        Some(p) => {
            let shift: Vec<f64> = EXCITATIONS.iter().map(|n| -p.carrier * n).collect();
            &(&h + &CMatrix::diagonal(&shift)) + &rf_coupling(p.rabi, p.phase)
        }
    }
}

/// `e^{-i omega N t}` for the excitation-number operator `N`.
pub fn frame_rotation(omega: f64, t: f64) -> CMatrix {
    let mut u = CMatrix::zeros(DIM);
    for (k, n) in EXCITATIONS.iter().enumerate() {
        u[(k, k)] = C64::from_polar(1.0, -omega * n * t);
    }
    u
}

/// Free evolution under the static Hamiltonian via its eigenbasis.
#[derive(Clone, Debug)]
pub struct FreeEvolution {
    eig: Eigen<f64>,
}

impl FreeEvolution {
    pub fn new(config: &SpinPairConfig) -> Result<Self> {
        Ok(Self {
            eig: hermitian_eigs(&static_hamiltonian(config))?,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eig.values
    }

    pub fn eigen(&self) -> &Eigen<f64> {
        &self.eig
    }

    /// `e^{-i H t}`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let v = &self.eig.vectors;
        let mut phased = v.clone();
        for k in 0..DIM {
            let w = C64::from_polar(1.0, -self.eig.values[k] * t);
            for i in 0..DIM {
                phased[(i, k)] = v[(i, k)] * w;
            }
        }
        &phased * &v.adjoint()
    }

    /// Lab-frame map over `[t0, t1]` to the interaction picture of the free
    /// Hamiltonian: `e^{i H t1} U e^{-i H t0}`.
    pub fn to_interaction(&self, u_lab: &CMatrix, t0: f64, t1: f64) -> CMatrix {
        &(&self.propagator(-t1) * u_lab) * &self.propagator(t0)
    }
}

/// Rotating-frame propagator snapshots of one pulse, by RK4 on `U`.
pub(crate) fn rotating_propagator(
    config: &SpinPairConfig,
    pulse: &RfPulse,
    stepping: Stepping<f64>,
) -> Result<crate::numerics::Trajectory<CMatrix, f64>> {
    let generator = build_pair_hamiltonian(config, Some(pulse)).scale(c64(0.0, -1.0));
    evolve_rk4(CMatrix::identity(DIM), |_, u: &CMatrix| &generator * u, 0.0, pulse.duration, stepping)
}

/// Lab-frame map from the rotating-frame propagator after time `tau` into
/// the pulse.
pub(crate) fn lab_from_rotating(pulse: &RfPulse, u_rot: &CMatrix, tau: f64) -> CMatrix {
    &(&frame_rotation(pulse.carrier, pulse.start + tau) * u_rot) * &frame_rotation(pulse.carrier, -pulse.start)
}

/// Closed-form lab-frame map of a pulse through the eigen decomposition of
/// the rotating-frame Hamiltonian.
pub fn pulse_unitary_exact(config: &SpinPairConfig, pulse: &RfPulse) -> Result<CMatrix> {
    let u_rot = crate::numerics::unitary_exp(&build_pair_hamiltonian(config, Some(pulse)), pulse.duration)?;
    Ok(lab_from_rotating(pulse, &u_rot, pulse.duration))
}

/// Dressed basis energy of each product state: eigenvalue of the static
/// Hamiltonian whose eigenvector has the largest weight on it.
pub fn level_energies(free: &FreeEvolution) -> [f64; DIM] {
    let eig = free.eigen();
    let mut out = [0.0; DIM];
    for (s, slot) in out.iter_mut().enumerate() {
        let best = (0..DIM)
            .max_by(|&a, &b| eig.vectors[(s, a)].norm_sqr().total_cmp(&eig.vectors[(s, b)].norm_sqr()))
            .unwrap();
        *slot = eig.values[best];
    }
    out
}
