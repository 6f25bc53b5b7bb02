//! Two-qubit gate protocols: resonant 2pi pulse on the dipole-shifted line,
//! hold under the exchange coupling, and selective pulses on a
//! heterogeneous pair.

use std::f64::consts::{PI, SQRT_2};

use super::hamiltonian::*;
use crate::atom::wrap_angle;
use crate::error::{invalid, Error, Result};
use crate::numerics::{evolve_rk4, Stepping};
use crate::{c64, CMatrix, Ket, C64};

/// Largest `U^dagger U - I` entry accepted for a gate map.
pub const UNITARITY_TOLERANCE: f64 = 1e-8;

/// Step control for pair propagation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairIntegration {
    /// Fixed RK4 step; defaults to `DT_FACTOR / max|H|` of the frame used.
    pub dt: Option<f64>,
    /// Approximate number of recorded samples per pulse.
    pub samples: usize,
}

pub const DT_FACTOR: f64 = 0.005;

impl Default for PairIntegration {
    fn default() -> Self {
        Self { dt: None, samples: 400 }
    }
}

impl PairIntegration {
    pub fn with_dt(dt: f64) -> Self {
        Self { dt: Some(dt), ..Self::default() }
    }

    fn resolve(&self, h: &CMatrix, duration: f64) -> Result<Stepping<f64>> {
        let dt = match self.dt {
            Some(dt) if dt > 0.0 && dt.is_finite() => dt,
            Some(dt) => return Err(invalid("dt", format!("must be positive, got {dt}"))),
            None => DT_FACTOR / h.max_abs().max(1e-300),
        };
        Ok(Stepping::new(dt).with_snapshot_count(duration, self.samples))
    }
}

/// One row of a pair time series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSample {
    pub t: f64,
    pub populations: [f64; DIM],
    /// `rho_{01,10} = c01 conj(c10)`.
    pub c01_10: C64,
    pub phase_accum: f64,
}

impl PairSample {
    fn of(t: f64, psi: &Ket, phase_accum: f64) -> Self {
        let mut populations = [0.0; DIM];
        for (k, p) in populations.iter_mut().enumerate() {
            *p = psi[k].norm_sqr();
        }
        Self {
            t,
            populations,
            c01_10: psi[S01] * psi[S10].conj(),
            phase_accum,
        }
    }
}

/// Continuous branch of a sequence of angles.
#[derive(Clone, Copy, Debug, Default)]
struct Unwrapper {
    last: Option<f64>,
    offset: f64,
}

impl Unwrapper {
    fn push(&mut self, raw: f64) -> f64 {
        if let Some(prev) = self.last {
            let d = raw - prev;
            if d > PI {
                self.offset -= 2.0 * PI;
            } else if d < -PI {
                self.offset += 2.0 * PI;
            }
        }
        self.last = Some(raw);
        raw + self.offset
    }
}

/// Interaction-picture maps of one pulse at the recorded snapshot times.
struct PulseRun {
    dt: f64,
    times: Vec<f64>,
    maps: Vec<CMatrix>,
}

impl PulseRun {
    fn last(&self) -> &CMatrix {
        self.maps.last().unwrap()
    }
}

fn run_pulse(config: &SpinPairConfig, free: &FreeEvolution, pulse: &RfPulse, integration: &PairIntegration) -> Result<PulseRun> {
    let h_rot = build_pair_hamiltonian(config, Some(pulse));
    let stepping = integration.resolve(&h_rot, pulse.duration)?;
    let dt = stepping.dt;
    let traj = rotating_propagator(config, pulse, stepping)?;
    let mut times = Vec::with_capacity(traj.len());
    let mut maps = Vec::with_capacity(traj.len());
    for (tau, u_rot) in traj.iter() {
        let lab = lab_from_rotating(pulse, u_rot, tau);
        times.push(pulse.start + tau);
        maps.push(free.to_interaction(&lab, pulse.start, pulse.start + tau));
    }
    let u_end = maps.last().unwrap();
    let deviation = u_end.unitarity_defect();
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NonUnitary { deviation });
    }
    Ok(PulseRun { dt, times, maps })
}

/// Samples for `psi0` driven through `runs` in order, with the phase of the
/// overlap with `reference` tracked continuously.
fn sample_runs(runs: &[&PulseRun], psi0: &Ket, reference: &Ket) -> Vec<PairSample> {
    let mut out = Vec::new();
    let mut unwrap = Unwrapper::default();
    let mut before = CMatrix::identity(DIM);
    for run in runs {
        for (k, (&t, u)) in run.times.iter().zip(&run.maps).enumerate() {
            if k == 0 && !out.is_empty() {
                continue;
            }
            let psi = (&(u * &before)).mul_vec(psi0);
            let phase = unwrap.push(reference.inner(&psi).arg());
            out.push(PairSample::of(t, &psi, phase));
        }
        before = run.last() * &before;
    }
    out
}

/// Phase and population bookkeeping for one input state.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseEntry {
    pub label: String,
    /// `arg <in|U_I|in>` relative to free evolution, in `(-pi, pi]`.
    pub phase: f64,
    /// `1 - |<in|U_I|in>|^2`.
    pub population_change: f64,
}

fn phase_entry(label: &str, u: &CMatrix, psi: &Ket) -> PhaseEntry {
    let amp = psi.inner(&u.mul_vec(psi));
    PhaseEntry {
        label: label.to_string(),
        phase: wrap_angle(amp.arg()),
        population_change: (1.0 - amp.norm_sqr()).max(0.0),
    }
}

/// Angular distance between two phases on the circle.
pub fn phase_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// `diag(1, 1, 1, -1)`.
pub fn controlled_z() -> CMatrix {
    CMatrix::diagonal(&[1.0, 1.0, 1.0, -1.0])
}

#[derive(Clone, Debug)]
pub struct CphaseReport {
    pub pulse: RfPulse,
    /// Gate map in the interaction picture of the static pair Hamiltonian.
    pub unitary: CMatrix,
    /// Entries for `00, 01, 10, 11, sym, singlet` in that order.
    pub table: Vec<PhaseEntry>,
    pub gate_fidelity: f64,
    pub spectator_leakage: f64,
    pub warnings: Vec<String>,
    /// RK4 step used.
    pub dt: f64,
    /// Evolution of the symmetric state.
    pub samples: Vec<PairSample>,
}

impl CphaseReport {
    pub fn entry(&self, label: &str) -> Option<&PhaseEntry> {
        self.table.iter().find(|e| e.label == label)
    }
}

/// 2pi pulse at `omega_L + 2 omega_dd` on a homogeneous pair.
pub fn cphase_2pi(config: &SpinPairConfig, rf_rabi: f64, integration: &PairIntegration) -> Result<CphaseReport> {
    config.require_homogeneous()?;
    if !(config.omega_dd > 0.0) {
        return Err(invalid("omega_dd", "the 2pi gate needs a dipole shift"));
    }
    let carrier = config.omega1 + 2.0 * config.omega_dd;
    let pulse = RfPulse::with_area(carrier, rf_rabi, 2.0 * PI, SQRT_2)?;
    let free = FreeEvolution::new(config)?;
    let run = run_pulse(config, &free, &pulse, integration)?;
    let u = run.last().clone();

    let inputs = [
        ("00", basis(S00)),
        ("01", basis(S01)),
        ("10", basis(S10)),
        ("11", basis(S11)),
        ("sym", symmetric()),
        ("singlet", singlet()),
    ];
    let table: Vec<PhaseEntry> = inputs.iter().map(|(l, psi)| phase_entry(l, &u, psi)).collect();
    let spectator_leakage = table[3].population_change.max(table[5].population_change);

    let mut warnings = Vec::new();
    if rf_rabi > config.omega_dd / 10.0 {
        warnings.push(format!(
            "rf_rabi {rf_rabi} exceeds omega_dd/10 = {}; spectator leakage {spectator_leakage:.3e}",
            config.omega_dd / 10.0
        ));
    }
    let sym = symmetric();
    Ok(CphaseReport {
        gate_fidelity: gate_fidelity(&u, &controlled_z(), true)?,
        samples: sample_runs(&[&run], &sym, &sym),
        dt: run.dt,
        pulse,
        unitary: u,
        table,
        spectator_leakage,
        warnings,
    })
}

/// Non-negative piecewise-linear coupling `V(t)`, zero outside its knots.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingProfile {
    knots: Vec<(f64, f64)>,
}

impl CouplingProfile {
    /// `knots` are `(t, V)` pairs with strictly increasing times from `0`.
    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(invalid("profile", "needs at least two knots"));
        }
        if knots[0].0 != 0.0 {
            return Err(invalid("profile", "first knot must sit at t = 0"));
        }
        for w in knots.windows(2) {
            if !(w[1].0 > w[0].0) || !w[1].0.is_finite() {
                return Err(invalid("profile", "knot times must increase strictly"));
            }
        }
        if knots.iter().any(|&(_, v)| !(v >= 0.0 && v.is_finite())) {
            return Err(invalid("profile", "coupling must be finite and non-negative"));
        }
        Ok(Self { knots })
    }

    pub fn rectangular(height: f64, length: f64) -> Result<Self> {
        Self::piecewise_linear(vec![(0.0, height), (length, height)])
    }

    /// Linear rise over `rise`, flat top for `flat`, linear fall over `rise`.
    pub fn trapezoid(height: f64, rise: f64, flat: f64) -> Result<Self> {
        if !(rise > 0.0) {
            return Self::rectangular(height, flat);
        }
        let mut knots = vec![(0.0, 0.0), (rise, height)];
        if flat > 0.0 {
            knots.push((rise + flat, height));
        }
        knots.push((2.0 * rise + flat.max(0.0), 0.0));
        Self::piecewise_linear(knots)
    }

    pub fn knots(&self) -> &[(f64, f64)] {
        &self.knots
    }

    pub fn duration(&self) -> f64 {
        self.knots.last().unwrap().0
    }

    pub fn peak(&self) -> f64 {
        self.knots.iter().map(|k| k.1).fold(0.0, f64::max)
    }

    pub fn value(&self, t: f64) -> f64 {
        if t < 0.0 || t > self.duration() {
            return 0.0;
        }
        let i = self.knots.partition_point(|k| k.0 <= t).clamp(1, self.knots.len() - 1);
        let (t0, v0) = self.knots[i - 1];
        let (t1, v1) = self.knots[i];
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// Exact `int V dt`.
    pub fn area(&self) -> f64 {
        self.knots.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct HoldReport {
    /// `<10|psi(T)>` from `|10>`.
    pub amp10: C64,
    /// `<01|psi(T)>` from `|10>`.
    pub amp01: C64,
    /// Exchange angle `A` with `psi = cos A |10> - i sin A |01>`, unwrapped.
    pub exchange_phase: f64,
    /// `int V dt` of the profile over the hold.
    pub coupling_area: f64,
    pub populations: [f64; DIM],
    /// Map on the full four-state space.
    pub unitary: CMatrix,
    pub dt: f64,
    pub samples: Vec<PairSample>,
}

/// Exchange coupling `|01><10| + |10><01|`.
fn exchange_operator() -> CMatrix {
    let mut x = CMatrix::zeros(DIM);
    x[(S01, S10)] = c64(1.0, 0.0);
    x[(S10, S01)] = c64(1.0, 0.0);
    x
}

/// Hold at constant coupling `omega_dd` for `hold_time`.
pub fn cphase_hold(config: &SpinPairConfig, hold_time: f64, integration: &PairIntegration) -> Result<HoldReport> {
    config.require_homogeneous()?;
    if !(config.omega_dd > 0.0) {
        return Err(invalid("omega_dd", "the hold gate needs a dipole coupling"));
    }
    if !(hold_time > 0.0 && hold_time.is_finite()) {
        return Err(invalid("hold_time", format!("must be positive, got {hold_time}")));
    }
    ramped_hold(config, &CouplingProfile::rectangular(config.omega_dd, hold_time)?, hold_time, integration)
}

/// Hold under a time-dependent exchange coupling, in the interaction picture
/// of the (degenerate) diagonal part so only the exchange term remains.
pub fn ramped_hold(
    config: &SpinPairConfig,
    profile: &CouplingProfile,
    total_time: f64,
    integration: &PairIntegration,
) -> Result<HoldReport> {
    config.require_homogeneous()?;
    if !(total_time > 0.0 && total_time.is_finite()) {
        return Err(invalid("total_time", format!("must be positive, got {total_time}")));
    }
    let peak = profile.peak();
    let dt = match integration.dt {
        Some(dt) if dt > 0.0 && dt.is_finite() => dt,
        Some(dt) => return Err(invalid("dt", format!("must be positive, got {dt}"))),
        None => 0.5 * DT_FACTOR / peak.max(1.0 / total_time),
    };

    // integrate knot to knot so the kinks of V(t) fall on step boundaries
    let mut edges: Vec<f64> = profile.knots().iter().map(|k| k.0).filter(|&t| t > 0.0 && t < total_time).collect();
    edges.insert(0, 0.0);
    edges.push(total_time);

    let x = exchange_operator();
    let psi0 = basis(S10);
    let mut u = CMatrix::identity(DIM);
    let mut unwrap = Unwrapper::default();
    let mut samples = vec![PairSample::of(0.0, &psi0, unwrap.push(0.0))];
    for w in edges.windows(2) {
        let traj = evolve_rk4(u.clone(), |t, m: &CMatrix| (&x * m).scale(c64(0.0, -profile.value(t))), w[0], w[1], dt)?;
        for (t, m) in traj.iter().skip(1) {
            let psi = m.column(S10);
            let angle = unwrap.push((-psi[S01].im).atan2(psi[S10].re));
            samples.push(PairSample::of(t, &psi, angle));
        }
        u = traj.last().unwrap().1.clone();
    }
    let deviation = u.unitarity_defect();
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NonUnitary { deviation });
    }
    let psi = u.column(S10);
    let last = samples.last().unwrap();
    Ok(HoldReport {
        amp10: psi[S10],
        amp01: psi[S01],
        exchange_phase: last.phase_accum,
        coupling_area: clipped_area(profile, total_time),
        populations: last.populations,
        unitary: u,
        dt,
        samples: thin(samples, integration.samples),
    })
}

/// `int_0^T V dt` for a window possibly shorter than the profile.
fn clipped_area(profile: &CouplingProfile, total_time: f64) -> f64 {
    if total_time >= profile.duration() {
        return profile.area();
    }
    let mut knots: Vec<(f64, f64)> = profile.knots().iter().copied().filter(|k| k.0 < total_time).collect();
    knots.push((total_time, profile.value(total_time)));
    knots.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum()
}

/// Keeps roughly `count` samples, always including both ends.
fn thin(samples: Vec<PairSample>, count: usize) -> Vec<PairSample> {
    let stride = (samples.len() / count.max(1)).max(1);
    let n = samples.len();
    samples
        .into_iter()
        .enumerate()
        .filter(|(i, _)| i % stride == 0 || *i == n - 1)
        .map(|(_, s)| s)
        .collect()
}

/// Single-spin-flip transition of a heterogeneous pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Transition {
    T01To11,
    T10To11,
    T00To01,
    T00To10,
}

impl Transition {
    pub const ALL: [Transition; 4] = [Transition::T01To11, Transition::T10To11, Transition::T00To01, Transition::T00To10];

    pub fn lower(self) -> usize {
        match self {
            Transition::T01To11 => S01,
            Transition::T10To11 => S10,
            Transition::T00To01 | Transition::T00To10 => S00,
        }
    }

    pub fn upper(self) -> usize {
        match self {
            Transition::T01To11 | Transition::T10To11 => S11,
            Transition::T00To01 => S01,
            Transition::T00To10 => S10,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Transition::T01To11 => "01-11",
            Transition::T10To11 => "10-11",
            Transition::T00To01 => "00-01",
            Transition::T00To10 => "00-10",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Transition::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| invalid("which", format!("unknown transition {s:?}; expected one of 01-11, 10-11, 00-01, 00-10")))
    }
}

/// Transition frequencies of a pair from its static eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum {
    pub energies: [f64; DIM],
}

impl Spectrum {
    pub fn of(config: &SpinPairConfig) -> Result<Self> {
        Ok(Self {
            energies: level_energies(&FreeEvolution::new(config)?),
        })
    }

    pub fn frequency(&self, t: Transition) -> f64 {
        self.energies[t.upper()] - self.energies[t.lower()]
    }

    /// Distance from `t` to the nearest other line.
    pub fn separation(&self, t: Transition) -> f64 {
        Transition::ALL
            .into_iter()
            .filter(|&o| o != t)
            .map(|o| (self.frequency(o) - self.frequency(t)).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Clone, Debug)]
pub struct SelectiveReport {
    pub transition: Transition,
    pub pulse: RfPulse,
    pub separation: f64,
    pub unitary: CMatrix,
    /// `|<upper|U|lower>|^2`.
    pub transfer: f64,
    /// `arg <lower|U|lower>`.
    pub phase_lower: f64,
    /// Largest population change among the two states off the transition.
    pub spectator_leakage: f64,
    pub spectators: Vec<PhaseEntry>,
    pub warnings: Vec<String>,
    pub dt: f64,
    /// Evolution of the lower state.
    pub samples: Vec<PairSample>,
}

fn crowding_warning(separation: f64, rf_rabi: f64, leakage: f64) -> Option<String> {
    (separation < 10.0 * rf_rabi).then(|| {
        format!("spectral crowding: separation {separation:.4e} < 10 rf_rabi = {:.4e}; spectator leakage {leakage:.3e}", 10.0 * rf_rabi)
    })
}

/// Pulse of the given area on one transition of a heterogeneous pair. The
/// carrier is the line frequency plus `carrier_detuning`.
pub fn hetero_selective_pulse(
    config: &SpinPairConfig,
    which: Transition,
    area: f64,
    rf_rabi: f64,
    carrier_detuning: f64,
    integration: &PairIntegration,
) -> Result<SelectiveReport> {
    config.require_heterogeneous()?;
    let spectrum = Spectrum::of(config)?;
    let separation = spectrum.separation(which);
    let pulse = RfPulse::with_area(spectrum.frequency(which) + carrier_detuning, rf_rabi, area, 1.0)?;
    let free = FreeEvolution::new(config)?;
    let run = run_pulse(config, &free, &pulse, integration)?;
    let u = run.last().clone();
    let (lo, hi) = (which.lower(), which.upper());
    let spectators: Vec<PhaseEntry> = (0..DIM)
        .filter(|&k| k != lo && k != hi)
        .map(|k| phase_entry(BASIS_LABELS[k], &u, &basis(k)))
        .collect();
    let spectator_leakage = spectators.iter().map(|e| e.population_change).fold(0.0, f64::max);
    let lower = basis(lo);
    let samples = sample_runs(&[&run], &lower, &lower);
    Ok(SelectiveReport {
        transition: which,
        separation,
        transfer: u[(hi, lo)].norm_sqr(),
        phase_lower: wrap_angle(u[(lo, lo)].arg()),
        spectator_leakage,
        spectators,
        warnings: crowding_warning(separation, rf_rabi, spectator_leakage).into_iter().collect(),
        unitary: u,
        pulse,
        dt: run.dt,
        samples,
    })
}

#[derive(Clone, Debug)]
pub struct SwapReport {
    pub pulses: [RfPulse; 2],
    pub separation: f64,
    pub unitary: CMatrix,
    /// `|<01|U|10>|^2`.
    pub swap_fidelity: f64,
    /// Mean of `|<01|U|10>|^2` and `|<10|U|01>|^2`.
    pub block_fidelity: f64,
    /// `1 - |<00|U|00>|^2`.
    pub zero_state_change: f64,
    pub warnings: Vec<String>,
    /// Larger of the two pulse steps.
    pub dt: f64,
    /// Evolution of `|10>` through both pulses.
    pub samples: Vec<PairSample>,
}

/// Raman-type transfer `|10> -> |11> -> |01>` by two pi pulses.
pub fn controlled_swap(config: &SpinPairConfig, rf_rabi: f64, integration: &PairIntegration) -> Result<SwapReport> {
    config.require_heterogeneous()?;
    let spectrum = Spectrum::of(config)?;
    let separation = spectrum.separation(Transition::T10To11).min(spectrum.separation(Transition::T01To11));
    let first = RfPulse::with_area(spectrum.frequency(Transition::T10To11), rf_rabi, PI, 1.0)?;
    let second = RfPulse::with_area(spectrum.frequency(Transition::T01To11), rf_rabi, PI, 1.0)?.starting_at(first.end());
    let free = FreeEvolution::new(config)?;
    let run1 = run_pulse(config, &free, &first, integration)?;
    let run2 = run_pulse(config, &free, &second, integration)?;
    let u = run2.last() * run1.last();
    let deviation = u.unitarity_defect();
    if deviation > UNITARITY_TOLERANCE {
        return Err(Error::NonUnitary { deviation });
    }
    let swap_fidelity = u[(S01, S10)].norm_sqr();
    let zero_state_change = (1.0 - u[(S00, S00)].norm_sqr()).max(0.0);
    let psi0 = basis(S10);
    let target = basis(S01);
    Ok(SwapReport {
        pulses: [first, second],
        separation,
        swap_fidelity,
        block_fidelity: 0.5 * (swap_fidelity + u[(S10, S01)].norm_sqr()),
        zero_state_change,
        warnings: crowding_warning(separation, rf_rabi, zero_state_change.max(1.0 - swap_fidelity)).into_iter().collect(),
        samples: sample_runs(&[&run1, &run2], &psi0, &target),
        dt: run1.dt.max(run2.dt),
        unitary: u,
    })
}

/// `|Tr(U_target^dagger U_sim)| / 4`, optionally maximized over the
/// single-qubit phase frames `diag(1, e^{ib}, e^{ia}, e^{i(a+b)})`.
///
/// The `b` optimum is closed form, leaving a scan over `a` at 1e-3 rad
/// followed by golden-section refinement.
pub fn gate_fidelity(u_sim: &CMatrix, u_target: &CMatrix, mod_local_phases: bool) -> Result<f64> {
    for u in [u_sim, u_target] {
        if u.dim() != DIM {
            return Err(Error::DimensionMismatch { expected: DIM, got: u.dim() });
        }
        let deviation = u.unitarity_defect();
        if !(deviation <= UNITARITY_TOLERANCE) {
            return Err(Error::NonUnitary { deviation });
        }
    }
    let m = u_sim * &u_target.adjoint();
    if !mod_local_phases {
        return Ok((m.trace().norm() / DIM as f64).min(1.0));
    }
    let d = [m[(0, 0)], m[(1, 1)], m[(2, 2)], m[(3, 3)]];
    let score = |a: f64| {
        let e = C64::from_polar(1.0, a);
        ((d[0] + e * d[2]).norm() + (d[1] + e * d[3]).norm()) / DIM as f64
    };
    let step = 1e-3;
    let n = (2.0 * PI / step).ceil() as usize;
    let best = (0..n).map(|k| k as f64 * step).max_by(|&x, &y| score(x).total_cmp(&score(y))).unwrap();
    let (mut lo, mut hi) = (best - step, best + step);
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..60 {
        let x1 = hi - golden * (hi - lo);
        let x2 = lo + golden * (hi - lo);
        if score(x1) < score(x2) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    Ok(score(0.5 * (lo + hi)).max(score(best)).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn homogeneous() -> SpinPairConfig {
        SpinPairConfig::homogeneous(1.0, 0.05)
    }

    fn hetero() -> SpinPairConfig {
        SpinPairConfig::heterogeneous(1.0, 0.8, 0.05)
    }

    #[test]
    fn fidelity_basics() {
        let cz = controlled_z();
        assert_abs_diff_eq!(gate_fidelity(&cz, &cz, false).unwrap(), 1.0);
        let phased = cz.scale(C64::from_polar(1.0, PI / 7.0));
        assert_abs_diff_eq!(gate_fidelity(&phased, &cz, false).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(gate_fidelity(&CMatrix::identity(4), &cz, false).unwrap(), 0.5);
        let bad = CMatrix::identity(4).scale_real(1.1);
        assert!(matches!(gate_fidelity(&bad, &cz, false), Err(Error::NonUnitary { .. })));
    }

    #[test]
    fn local_phases_are_optimized_away() {
        let local = CMatrix::from_fn(4, |i, j| {
            if i != j {
                return c64(0.0, 0.0);
            }
            let a = if i >= 2 { 0.9 } else { 0.0 };
            let b = if i % 2 == 1 { -2.1 } else { 0.0 };
            C64::from_polar(1.0, a + b + 0.3)
        });
        let u = &local * &controlled_z();
        assert!(gate_fidelity(&u, &controlled_z(), false).unwrap() < 0.9);
        assert_abs_diff_eq!(gate_fidelity(&u, &controlled_z(), true).unwrap(), 1.0, epsilon = 1e-10);
        // CZ is not locally equivalent to the identity
        let f = gate_fidelity(&CMatrix::identity(4), &controlled_z(), true).unwrap();
        assert_abs_diff_eq!(f, 0.5 * SQRT_2, epsilon = 1e-9);
    }

    #[test]
    fn two_pi_pulse_on_symmetric_line() {
        let cfg = homogeneous();
        let r = cphase_2pi(&cfg, cfg.omega_dd / 20.0, &PairIntegration::default()).unwrap();
        assert!((r.pulse.area() - 2.0 * PI).abs() <= 1e-9);
        let sym = r.entry("sym").unwrap();
        assert!(phase_distance(sym.phase, PI) <= 0.05, "sym phase {}", sym.phase);
        assert!(r.entry("00").unwrap().population_change <= 1e-4);
        assert!(r.entry("singlet").unwrap().population_change <= 1e-6);
        assert!(r.warnings.is_empty());
        assert!(r.unitary.unitarity_defect() <= 1e-8);
    }

    #[test]
    fn fast_two_pi_pulse_warns() {
        let cfg = homogeneous();
        let r = cphase_2pi(&cfg, cfg.omega_dd / 2.0, &PairIntegration::default()).unwrap();
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn hold_period_and_half_period() {
        let cfg = homogeneous();
        let t = PI / cfg.omega_dd;
        let full = cphase_hold(&cfg, t, &PairIntegration::default()).unwrap();
        assert!((full.amp10 - c64(-1.0, 0.0)).norm() <= 1e-6);
        assert_abs_diff_eq!(full.exchange_phase, PI, epsilon = 1e-6);
        let half = cphase_hold(&cfg, t / 2.0, &PairIntegration::default()).unwrap();
        assert_abs_diff_eq!(half.populations[S01], 1.0, epsilon = 1e-6);
        let double = cphase_hold(&cfg, 2.0 * t, &PairIntegration::default()).unwrap();
        assert!((double.amp10 - c64(1.0, 0.0)).norm() <= 1e-6);
    }

    #[test]
    fn hold_follows_closed_form() {
        let cfg = homogeneous();
        let r = cphase_hold(&cfg, 13.0, &PairIntegration::default()).unwrap();
        for s in &r.samples {
            let a = cfg.omega_dd * s.t;
            assert_abs_diff_eq!(s.populations[S10], a.cos().powi(2), epsilon = 1e-9);
            assert_abs_diff_eq!(s.phase_accum, a, epsilon = 1e-9);
        }
    }

    #[test]
    fn trapezoid_area_sets_phase() {
        let cfg = homogeneous();
        // rise 10, flat f: area = V (10 + f)
        let v = 0.05;
        let flat = PI / v - 10.0;
        let profile = CouplingProfile::trapezoid(v, 10.0, flat).unwrap();
        assert_abs_diff_eq!(profile.area(), PI, epsilon = 1e-12);
        let r = ramped_hold(&cfg, &profile, profile.duration(), &PairIntegration::default()).unwrap();
        assert_abs_diff_eq!(r.exchange_phase, PI, epsilon = 1e-6);
        assert!((r.amp10 - c64(-1.0, 0.0)).norm() <= 1e-6);
    }

    #[test]
    fn rectangular_profile_matches_hold() {
        let cfg = homogeneous();
        let t = PI / cfg.omega_dd;
        let a = cphase_hold(&cfg, t, &PairIntegration::default()).unwrap();
        let b = ramped_hold(&cfg, &CouplingProfile::rectangular(cfg.omega_dd, t).unwrap(), t, &PairIntegration::default()).unwrap();
        assert!((&a.unitary - &b.unitary).max_abs() < 1e-14);
    }

    #[test]
    fn profile_validation() {
        assert!(CouplingProfile::piecewise_linear(vec![(0.0, 1.0)]).is_err());
        assert!(CouplingProfile::piecewise_linear(vec![(0.0, 1.0), (0.0, 1.0)]).is_err());
        assert!(CouplingProfile::piecewise_linear(vec![(0.0, -1.0), (1.0, 1.0)]).is_err());
        assert!(CouplingProfile::piecewise_linear(vec![(0.5, 1.0), (1.0, 1.0)]).is_err());
        let p = CouplingProfile::trapezoid(2.0, 1.0, 3.0).unwrap();
        assert_eq!(p.value(0.5), 1.0);
        assert_eq!(p.value(2.0), 2.0);
        assert_eq!(p.value(4.5), 1.0);
        assert_eq!(p.value(7.0), 0.0);
        assert_eq!(p.area(), 8.0);
    }

    #[test]
    fn hetero_line_positions() {
        let s = Spectrum::of(&hetero()).unwrap();
        assert_abs_diff_eq!(s.frequency(Transition::T00To01), 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(s.frequency(Transition::T00To10), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.frequency(Transition::T10To11), 0.85, epsilon = 1e-12);
        assert_abs_diff_eq!(s.frequency(Transition::T01To11), 1.05, epsilon = 1e-12);
        assert_abs_diff_eq!(s.separation(Transition::T01To11), 0.05, epsilon = 1e-12);
    }

    #[test]
    fn selective_two_pi_and_pi() {
        let cfg = hetero();
        let s = Spectrum::of(&cfg).unwrap();
        let rf = s.separation(Transition::T01To11) / 20.0;
        let r = hetero_selective_pulse(&cfg, Transition::T01To11, 2.0 * PI, rf, 0.0, &PairIntegration::default()).unwrap();
        assert!(phase_distance(r.phase_lower, PI) <= 0.05);
        assert!(r.spectator_leakage <= 1e-3);
        let p = hetero_selective_pulse(&cfg, Transition::T01To11, PI, rf, 0.0, &PairIntegration::default()).unwrap();
        assert!(p.transfer >= 0.999);
    }

    #[test]
    fn detuned_carrier_barely_transfers() {
        let cfg = hetero();
        let rf = 0.0025;
        let on = hetero_selective_pulse(&cfg, Transition::T00To01, PI, rf, 0.0, &PairIntegration::default()).unwrap();
        assert!(on.transfer >= 0.999);
        let off = hetero_selective_pulse(&cfg, Transition::T00To01, PI, rf, cfg.omega_dd, &PairIntegration::default()).unwrap();
        assert!(off.transfer <= (rf / cfg.omega_dd).powi(2));
    }

    #[test]
    fn swap_moves_ten_to_zero_one() {
        let cfg = hetero();
        let sep = Spectrum::of(&cfg).unwrap().separation(Transition::T10To11);
        let r = controlled_swap(&cfg, sep / 20.0, &PairIntegration::default()).unwrap();
        assert!(r.swap_fidelity >= 0.995);
        assert!(r.zero_state_change <= 1e-3);
        assert!(r.warnings.is_empty());
        let crowded = controlled_swap(&cfg, sep / 2.0, &PairIntegration::default()).unwrap();
        assert!(!crowded.warnings.is_empty());
        assert!(crowded.swap_fidelity < r.swap_fidelity - 1e-3);
    }

    #[test]
    fn gate_kinds_reject_wrong_pair() {
        assert!(cphase_2pi(&hetero(), 0.001, &PairIntegration::default()).is_err());
        assert!(controlled_swap(&homogeneous(), 0.001, &PairIntegration::default()).is_err());
        assert!(Transition::parse("11-00").is_err());
        assert_eq!(Transition::parse("10-11").unwrap(), Transition::T10To11);
    }
}
