//! The driven F=1 to F'=1 atom: level basis, Clebsch-Gordan couplings,
//! rotating-frame interaction Hamiltonian, spontaneous-emission channels and
//! dark states.
//!
//! Conventions, fixed here and nowhere else:
//!
//! * Basis order is `g-, g0, g+, e-, e0, e+, sink`.
//! * The coupling for polarization `q` from `g_m` to `e_{m+q}` is
//!   `H[e, g] = (1/2) * Omega_q * c(q, m)` with `c` the Condon-Shortley
//!   coefficient `<1 m; 1 q | 1 m+q>`.
//! * The `E_z` beam is pure pi light, `Omega_0 = omega_z`.
//! * The `E_p` beam is linear in the transverse plane and splits into circular
//!   components `Omega_+ = -omega_p / 2` and `Omega_- = +omega_p / 2`. With this
//!   split the dark state is exactly `cos(theta/2)|g0> + e^{i phi} sin(theta/2)
//!   (|g-> - |g+>)/sqrt2` with `theta/2 = atan2(|omega_p|, sqrt2 |omega_z|)`.
//! * Excited levels carry `-detuning` on the diagonal.

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

use crate::error::{invalid, Error, Result};
use crate::numerics::{null_space, spectral_norm};
use crate::{c64, CMatrix, Ket, C64};

/// Number of basis levels including the loss reservoir.
pub const NUM_LEVELS: usize = 7;

/// Atomic basis level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    GMinus,
    GZero,
    GPlus,
    EMinus,
    EZero,
    EPlus,
    /// Aggregate F=2 reservoir fed by off-manifold decay.
    Sink,
}

impl Level {
    pub const ALL: [Level; NUM_LEVELS] = [
        Level::GMinus,
        Level::GZero,
        Level::GPlus,
        Level::EMinus,
        Level::EZero,
        Level::EPlus,
        Level::Sink,
    ];
    pub const GROUND: [Level; 3] = [Level::GMinus, Level::GZero, Level::GPlus];
    pub const EXCITED: [Level; 3] = [Level::EMinus, Level::EZero, Level::EPlus];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn ground(m: i8) -> Level {
        match m {
            -1 => Level::GMinus,
            0 => Level::GZero,
            1 => Level::GPlus,
            _ => panic!("m = {m} outside the F=1 manifold"),
        }
    }

    pub fn excited(m: i8) -> Level {
        match m {
            -1 => Level::EMinus,
            0 => Level::EZero,
            1 => Level::EPlus,
            _ => panic!("m = {m} outside the F'=1 manifold"),
        }
    }

    pub fn is_ground(self) -> bool {
        matches!(self, Level::GMinus | Level::GZero | Level::GPlus)
    }

    pub fn is_excited(self) -> bool {
        matches!(self, Level::EMinus | Level::EZero | Level::EPlus)
    }

    /// Magnetic quantum number, `None` for the sink.
    pub fn m(self) -> Option<i8> {
        match self {
            Level::GMinus | Level::EMinus => Some(-1),
            Level::GZero | Level::EZero => Some(0),
            Level::GPlus | Level::EPlus => Some(1),
            Level::Sink => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Level::GMinus => "gminus",
            Level::GZero => "g0",
            Level::GPlus => "gplus",
            Level::EMinus => "eminus",
            Level::EZero => "e0",
            Level::EPlus => "eplus",
            Level::Sink => "sink",
        }
    }

    pub fn ket(self) -> Ket {
        Ket::basis(NUM_LEVELS, self.index())
    }
}

/// Clebsch-Gordan factors `c(q, m_g)` for `g_{m_g} -> e_{m_g + q}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingTable {
    // [q + 1][m_g + 1]; entries with m_g + q outside [-1, 1] are unused
    entries: [[f64; 3]; 3],
}

impl CouplingTable {
    /// Condon-Shortley `<1 m; 1 q | 1 m+q>`.
    pub fn condon_shortley() -> Self {
        let s = FRAC_1_SQRT_2;
        Self {
            entries: [
                // q = -1: m_g = 0 -> e-, m_g = +1 -> e0
                [0.0, s, s],
                // q = 0: g- -> e-, g0 -> e0 (forbidden), g+ -> e+
                [-s, 0.0, s],
                // q = +1: g- -> e0, g0 -> e+
                [-s, -s, 0.0],
            ],
        }
    }

    /// Coefficient for polarization `q` from ground sublevel `m_g`; zero when
    /// the target sublevel does not exist.
    pub fn get(&self, q: i8, m_g: i8) -> f64 {
        let m_e = m_g + q;
        if !(-1..=1).contains(&q) || !(-1..=1).contains(&m_g) || !(-1..=1).contains(&m_e) {
            return 0.0;
        }
        self.entries[(q + 1) as usize][(m_g + 1) as usize]
    }

    /// Returns a copy with one coefficient replaced.
    pub fn with_entry(mut self, q: i8, m_g: i8, value: f64) -> Self {
        assert!((-1..=1).contains(&(m_g + q)), "no excited sublevel m = {}", m_g + q);
        self.entries[(q + 1) as usize][(m_g + 1) as usize] = value;
        self
    }
}

impl Default for CouplingTable {
    fn default() -> Self {
        Self::condon_shortley()
    }
}

/// Laser fields in units of the decay rate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldConfig {
    /// Complex Rabi frequency of the transverse (`E_p`) beam.
    pub omega_p: C64,
    /// Complex Rabi frequency of the pi-polarized (`E_z`) beam.
    pub omega_z: C64,
    /// Common detuning of both beams from resonance.
    pub detuning: f64,
}

impl FieldConfig {
    pub fn new(omega_p: C64, omega_z: C64) -> Self {
        Self {
            omega_p,
            omega_z,
            detuning: 0.0,
        }
    }

    pub fn real(omega_p: f64, omega_z: f64) -> Self {
        Self::new(c64(omega_p, 0.0), c64(omega_z, 0.0))
    }

    pub fn with_detuning(mut self, detuning: f64) -> Self {
        self.detuning = detuning;
        self
    }

    pub fn is_dark_capable(&self) -> bool {
        self.omega_p.norm() > 0.0 || self.omega_z.norm() > 0.0
    }

    /// Scales both Rabi frequencies by a common real factor.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            omega_p: self.omega_p * factor,
            omega_z: self.omega_z * factor,
            detuning: self.detuning,
        }
    }

    /// Circular components `(Omega_-, Omega_0, Omega_+)` seen by the atom.
    pub fn polarization_components(&self) -> [C64; 3] {
        [self.omega_p * 0.5, self.omega_z, self.omega_p * -0.5]
    }
}

/// Spontaneous emission, loss to the reservoir, and repumping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayConfig {
    /// Total excited-state decay rate.
    pub gamma: f64,
    /// Fraction of emissions that leave the manifold into the sink.
    pub loss_fraction: f64,
    /// Total incoherent refill rate from the sink, split equally over the
    /// three ground sublevels.
    pub repump_rate: f64,
}

impl DecayConfig {
    /// Closed manifold with the given decay rate.
    pub fn closed(gamma: f64) -> Self {
        Self {
            gamma,
            loss_fraction: 0.0,
            repump_rate: 0.0,
        }
    }

    pub fn with_loss(mut self, loss_fraction: f64, repump_rate: f64) -> Self {
        self.loss_fraction = loss_fraction;
        self.repump_rate = repump_rate;
        self
    }

    /// Checks ranges. `gamma = 0` is accepted so dissipation can be switched
    /// off entirely.
    pub fn validate(&self) -> Result<()> {
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(invalid("gamma", format!("must be finite and >= 0, got {}", self.gamma)));
        }
        if !(0.0..=1.0).contains(&self.loss_fraction) {
            return Err(invalid("beta", format!("must lie in [0, 1], got {}", self.loss_fraction)));
        }
        if !(self.repump_rate >= 0.0 && self.repump_rate.is_finite()) {
            return Err(invalid("repump_rate", format!("must be >= 0, got {}", self.repump_rate)));
        }
        Ok(())
    }
}

impl Default for DecayConfig {
    fn default() -> Self {
        Self::closed(1.0)
    }
}

/// Transition operator `sqrt(rate) |to><from|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollapseOperator {
    pub from: Level,
    pub to: Level,
    pub rate: f64,
}

impl CollapseOperator {
    pub fn amplitude(&self) -> f64 {
        self.rate.sqrt()
    }

    pub fn matrix(&self) -> CMatrix {
        let mut m = CMatrix::zeros(NUM_LEVELS);
        m[(self.to.index(), self.from.index())] = c64(self.amplitude(), 0.0);
        m
    }
}

/// Bloch angles of a dark-state qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingAngle {
    /// Polar angle in `[0, pi]`.
    pub theta: f64,
    /// Relative phase in `(-pi, pi]`.
    pub phi: f64,
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// The atom's coupling data together with the form of its dissipator.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomModel {
    pub couplings: CouplingTable,
    /// Multiplies the jump term of the dissipator. Physical value `1`.
    #[cfg(feature = "fault-injection")]
    pub jump_sign: f64,
}

impl Default for AtomModel {
    fn default() -> Self {
        Self::new(CouplingTable::condon_shortley())
    }
}

impl AtomModel {
    pub fn new(couplings: CouplingTable) -> Self {
        Self {
            couplings,
            #[cfg(feature = "fault-injection")]
            jump_sign: 1.0,
        }
    }

    #[cfg(feature = "fault-injection")]
    pub fn with_flipped_dissipator(mut self) -> Self {
        self.jump_sign = -1.0;
        self
    }

    pub(crate) fn jump_weight(&self) -> f64 {
        #[cfg(feature = "fault-injection")]
        {
            self.jump_sign
        }
        #[cfg(not(feature = "fault-injection"))]
        {
            1.0
        }
    }

    /// Rotating-frame interaction Hamiltonian (7x7, Hermitian).
    pub fn interaction_hamiltonian(&self, fields: &FieldConfig) -> CMatrix {
        let mut h = CMatrix::zeros(NUM_LEVELS);
        let components = fields.polarization_components();
        for q in -1i8..=1 {
            let amp = components[(q + 1) as usize];
            for m_g in -1i8..=1 {
                let m_e = m_g + q;
                if !(-1..=1).contains(&m_e) {
                    continue;
                }
                let c = self.couplings.get(q, m_g);
                let e = Level::excited(m_e).index();
                let g = Level::ground(m_g).index();
                let coupling = amp * (0.5 * c);
                h[(e, g)] += coupling;
                h[(g, e)] += coupling.conj();
            }
        }
        for level in Level::EXCITED {
            h[(level.index(), level.index())] = c64(-fields.detuning, 0.0);
        }
        h
    }

    /// Collapse channels with nonzero rate: in-manifold decay weighted by the
    /// squared couplings, loss into the sink, and repumping out of it.
    pub fn collapse_operators(&self, decay: &DecayConfig) -> Vec<CollapseOperator> {
        let mut ops = Vec::new();
        let in_manifold = decay.gamma * (1.0 - decay.loss_fraction);
        for excited in Level::EXCITED {
            let m_e = excited.m().unwrap();
            let weights: Vec<(Level, f64)> = Level::GROUND
                .iter()
                .map(|&g| {
                    let m_g = g.m().unwrap();
                    let c = self.couplings.get(m_e - m_g, m_g);
                    (g, c * c)
                })
                .collect();
            let total: f64 = weights.iter().map(|(_, w)| w).sum();
            if total > 0.0 {
                for (g, w) in weights {
                    let rate = in_manifold * w / total;
                    if rate > 0.0 {
                        ops.push(CollapseOperator { from: excited, to: g, rate });
                    }
                }
            }
            let loss = decay.gamma * decay.loss_fraction;
            if loss > 0.0 {
                ops.push(CollapseOperator {
                    from: excited,
                    to: Level::Sink,
                    rate: loss,
                });
            }
        }
        if decay.repump_rate > 0.0 {
            for g in Level::GROUND {
                ops.push(CollapseOperator {
                    from: Level::Sink,
                    to: g,
                    rate: decay.repump_rate / 3.0,
                });
            }
        }
        ops
    }

    /// Ground-manifold null vectors of the interaction Hamiltonian, phase
    /// fixed so the largest component is real and positive.
    ///
    /// Only the excited-from-ground block is searched, so excited or sink
    /// directions that are trivially uncoupled never appear.
    pub fn dark_states(&self, fields: &FieldConfig) -> Result<Vec<Ket>> {
        if !fields.is_dark_capable() {
            return Err(invalid("fields", "at least one Rabi frequency must be nonzero"));
        }
        let h = self.interaction_hamiltonian(fields);
        let excited: Vec<usize> = Level::EXCITED.iter().map(|l| l.index()).collect();
        let ground: Vec<usize> = Level::GROUND.iter().map(|l| l.index()).collect();
        let block = h.submatrix(&excited, &ground);
        let null = null_space(&block, DARK_TOLERANCE)?;
        Ok(null
            .into_iter()
            .map(|v| {
                let mut full = Ket::zeros(NUM_LEVELS);
                for (k, &g) in ground.iter().enumerate() {
                    full[g] = v[k];
                }
                full.normalized().fix_global_phase()
            })
            .collect())
    }

    /// The unique dark state; an error if none or several exist.
    pub fn dark_state(&self, fields: &FieldConfig) -> Result<Ket> {
        let mut states = self.dark_states(fields)?;
        match states.len() {
            1 => Ok(states.pop().unwrap()),
            0 => Err(Error::NoDarkState),
            n => Err(invalid("fields", format!("dark manifold is {n}-dimensional, expected 1"))),
        }
    }

    /// `|H psi| / |H|` (spectral norm), the relative darkness residual.
    pub fn darkness_residual(&self, fields: &FieldConfig, psi: &Ket) -> f64 {
        let h = self.interaction_hamiltonian(fields);
        let norm = spectral_norm(&h);
        if norm == 0.0 {
            return 0.0;
        }
        h.mul_vec(psi).norm() / norm
    }
}

/// Relative singular-value cutoff for dark-state detection.
pub const DARK_TOLERANCE: f64 = 1e-10;

/// Interaction Hamiltonian with the standard coupling table.
pub fn build_interaction_hamiltonian(fields: &FieldConfig) -> CMatrix {
    AtomModel::default().interaction_hamiltonian(fields)
}

/// Collapse operators with the standard coupling table.
pub fn build_collapse_operators(decay: &DecayConfig) -> Vec<CollapseOperator> {
    AtomModel::default().collapse_operators(decay)
}

/// Dark states with the standard coupling table.
pub fn dark_states(fields: &FieldConfig) -> Result<Vec<Ket>> {
    AtomModel::default().dark_states(fields)
}

/// `theta/2 = atan2(|omega_p|, sqrt2 |omega_z|)`, `phi = arg omega_p - arg omega_z`.
pub fn mixing_angle(fields: &FieldConfig) -> Result<MixingAngle> {
    if !fields.is_dark_capable() {
        return Err(invalid("fields", "at least one Rabi frequency must be nonzero"));
    }
    let theta = 2.0 * fields.omega_p.norm().atan2(SQRT_2 * fields.omega_z.norm());
    let phi = wrap_angle(fields.omega_p.arg() - fields.omega_z.arg());
    Ok(MixingAngle { theta, phi })
}

/// Field settings realizing a Bloch angle at fixed total coupling
/// `sqrt(|omega_p|^2 + 2 |omega_z|^2) = total_rabi`. The phase is carried by
/// `omega_p`.
pub fn fields_for_bloch(theta: f64, phi: f64, total_rabi: f64) -> Result<FieldConfig> {
    if !(0.0..=PI).contains(&theta) {
        return Err(invalid("theta", format!("must lie in [0, pi], got {theta}")));
    }
    if !(total_rabi > 0.0 && total_rabi.is_finite()) {
        return Err(invalid("total_rabi", format!("must be positive, got {total_rabi}")));
    }
    let p = total_rabi * (theta / 2.0).sin();
    let z = total_rabi * (theta / 2.0).cos() / SQRT_2;
    Ok(FieldConfig::new(C64::from_polar(p, phi), c64(z, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn model() -> AtomModel {
        AtomModel::default()
    }

    #[test]
    fn forbidden_pi_transition_is_zero() {
        let table = CouplingTable::condon_shortley();
        assert_eq!(table.get(0, 0), 0.0);
        for q in -1..=1 {
            for m in -1..=1 {
                let c = table.get(q, m).abs();
                assert!(c == 0.0 || (c - FRAC_1_SQRT_2).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn free_atom_has_only_detuning() {
        let h = build_interaction_hamiltonian(&FieldConfig::real(0.0, 0.0).with_detuning(0.3));
        for i in 0..NUM_LEVELS {
            for j in 0..NUM_LEVELS {
                let expect = if i == j && Level::ALL[i].is_excited() { -0.3 } else { 0.0 };
                assert_eq!(h[(i, j)], c64(expect, 0.0));
            }
        }
    }

    #[test]
    fn pi_light_couples_two_pairs_and_leaves_g0_alone() {
        let h = build_interaction_hamiltonian(&FieldConfig::real(0.0, 1.0));
        let g0 = Level::GZero.index();
        for j in 0..NUM_LEVELS {
            assert_eq!(h[(g0, j)], c64(0.0, 0.0));
        }
        assert_abs_diff_eq!(h[(Level::EMinus.index(), Level::GMinus.index())].re, -0.5 * FRAC_1_SQRT_2);
        assert_abs_diff_eq!(h[(Level::EPlus.index(), Level::GPlus.index())].re, 0.5 * FRAC_1_SQRT_2);
        let nonzero = h.as_slice().iter().filter(|z| z.norm() > 0.0).count();
        assert_eq!(nonzero, 4);
    }

    #[test]
    fn transverse_light_matches_hand_built_matrix() {
        // omega_p = 1: Omega_+ = -1/2, Omega_- = +1/2, each entry (1/2) Omega_q c(q, m)
        let h = build_interaction_hamiltonian(&FieldConfig::real(1.0, 0.0));
        let s = FRAC_1_SQRT_2;
        let mut expect = CMatrix::zeros(NUM_LEVELS);
        let mut set = |e: Level, g: Level, v: f64| {
            expect[(e.index(), g.index())] = c64(v, 0.0);
            expect[(g.index(), e.index())] = c64(v, 0.0);
        };
        set(Level::EZero, Level::GMinus, 0.5 * -0.5 * -s);
        set(Level::EPlus, Level::GZero, 0.5 * -0.5 * -s);
        set(Level::EMinus, Level::GZero, 0.5 * 0.5 * s);
        set(Level::EZero, Level::GPlus, 0.5 * 0.5 * s);
        assert!((&h - &expect).max_abs() < 1e-16);
        assert!(h.is_hermitian(0.0));
    }

    #[test]
    fn closed_manifold_has_six_channels_with_unit_total() {
        let ops = build_collapse_operators(&DecayConfig::closed(1.0));
        assert_eq!(ops.len(), 6);
        for e in Level::EXCITED {
            let total: f64 = ops.iter().filter(|o| o.from == e).map(|o| o.rate).sum();
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-15);
        }
        assert!(!ops.iter().any(|o| o.from == Level::EZero && o.to == Level::GZero));
    }

    #[test]
    fn full_loss_routes_everything_to_sink() {
        let ops = build_collapse_operators(&DecayConfig::closed(1.0).with_loss(1.0, 0.0));
        assert_eq!(ops.len(), 3);
        assert!(ops.iter().all(|o| o.to == Level::Sink && o.rate == 1.0));
    }

    #[test]
    fn half_loss_halves_manifold_rates() {
        let ops = build_collapse_operators(&DecayConfig::closed(1.0).with_loss(0.5, 0.0));
        for op in &ops {
            if op.to == Level::Sink {
                assert_abs_diff_eq!(op.rate, 0.5);
            } else {
                assert_abs_diff_eq!(op.rate, 0.25, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn repump_refills_each_ground_level_equally() {
        let ops = build_collapse_operators(&DecayConfig::closed(1.0).with_loss(0.2, 0.3));
        let repump: Vec<_> = ops.iter().filter(|o| o.from == Level::Sink).collect();
        assert_eq!(repump.len(), 3);
        assert!(repump.iter().all(|o| (o.rate - 0.1).abs() < 1e-15));
    }

    #[test]
    fn transverse_only_dark_state_is_antisymmetric_pair() {
        let d = model().dark_state(&FieldConfig::real(1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(d[Level::GMinus.index()].re, FRAC_1_SQRT_2, epsilon = 1e-14);
        assert_abs_diff_eq!(d[Level::GPlus.index()].re, -FRAC_1_SQRT_2, epsilon = 1e-14);
        assert_abs_diff_eq!(d[Level::GZero.index()].norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn pi_only_dark_state_is_g0() {
        let d = model().dark_state(&FieldConfig::real(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(d[Level::GZero.index()].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn equal_fields_give_three_component_state() {
        // hand-solved null vector: 2 omega_z |g0> + omega_p (|g-> - |g+>)
        let d = model().dark_state(&FieldConfig::real(1.0, 1.0)).unwrap();
        let n = 6f64.sqrt();
        assert_abs_diff_eq!(d[Level::GZero.index()].re, 2.0 / n, epsilon = 1e-13);
        assert_abs_diff_eq!(d[Level::GMinus.index()].re, 1.0 / n, epsilon = 1e-13);
        assert_abs_diff_eq!(d[Level::GPlus.index()].re, -1.0 / n, epsilon = 1e-13);
        assert!(model().darkness_residual(&FieldConfig::real(1.0, 1.0), &d) < 1e-14);
    }

    #[test]
    fn mixing_angle_endpoints() {
        assert_eq!(mixing_angle(&FieldConfig::real(0.0, 1.0)).unwrap().theta, 0.0);
        assert_abs_diff_eq!(mixing_angle(&FieldConfig::real(1.0, 0.0)).unwrap().theta, PI);
        let mid = mixing_angle(&FieldConfig::real(SQRT_2, 1.0)).unwrap();
        assert_abs_diff_eq!(mid.theta, FRAC_PI_2, epsilon = 1e-15);
        assert!(mixing_angle(&FieldConfig::real(0.0, 0.0)).is_err());
    }

    #[test]
    fn mixing_angle_phase_is_relative() {
        let f = FieldConfig::new(C64::from_polar(1.0, 0.7), C64::from_polar(2.0, -0.4));
        assert_abs_diff_eq!(mixing_angle(&f).unwrap().phi, 1.1, epsilon = 1e-15);
    }

    #[test]
    fn dark_state_requires_a_field() {
        assert!(dark_states(&FieldConfig::real(0.0, 0.0)).is_err());
    }

    #[test]
    fn nonzero_forbidden_coefficient_destroys_darkness() {
        let broken = AtomModel::new(CouplingTable::condon_shortley().with_entry(0, 0, 0.3));
        assert!(broken.dark_states(&FieldConfig::real(0.0, 1.0)).unwrap().is_empty());
        assert!(broken.dark_states(&FieldConfig::real(1.0, 1.0)).unwrap().is_empty());
    }

    #[test]
    fn wrap_angle_range() {
        assert_abs_diff_eq!(wrap_angle(-PI), PI);
        assert_abs_diff_eq!(wrap_angle(3.0 * PI / 2.0), -FRAC_PI_2, epsilon = 1e-15);
    }
}
