//! Fixed-step classic fourth-order Runge-Kutta.

use super::matrix::ComplexMatrix;
use super::scalar::Real;
use super::state::StateVector;
use crate::error::{Error, Result};

/// State that can be advanced by a Runge-Kutta step.
pub trait OdeState<T: Real>: Clone {
    /// `self += a * other`.
    fn axpy(&mut self, a: T, other: &Self);

    fn all_finite(&self) -> bool;
}

impl<T: Real> OdeState<T> for StateVector<T> {
    fn axpy(&mut self, a: T, other: &Self) {
        StateVector::axpy(self, a, other)
    }

    fn all_finite(&self) -> bool {
        StateVector::all_finite(self)
    }
}

impl<T: Real> OdeState<T> for ComplexMatrix<T> {
    fn axpy(&mut self, a: T, other: &Self) {
        ComplexMatrix::axpy(self, a, other)
    }

    fn all_finite(&self) -> bool {
        ComplexMatrix::all_finite(self)
    }
}

/// Snapshots of a state sampled at strictly increasing times.
#[derive(Clone, Debug)]
pub struct Trajectory<X, T> {
    times: Vec<T>,
    states: Vec<X>,
}

impl<X, T: Real> Trajectory<X, T> {
    pub fn new() -> Self {
        Self {
            times: Vec::new(),
            states: Vec::new(),
        }
    }

    /// Appends a snapshot; panics if `t` does not exceed the last time.
    pub fn push(&mut self, t: T, x: X) {
        if let Some(&last) = self.times.last() {
            assert!(t > last, "trajectory times must be strictly increasing");
        }
        self.times.push(t);
        self.states.push(x);
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn states(&self) -> &[X] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(T, &X)> {
        self.times.last().map(|&t| (t, self.states.last().unwrap()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, &X)> {
        self.times.iter().copied().zip(self.states.iter())
    }

    pub fn into_parts(self) -> (Vec<T>, Vec<X>) {
        (self.times, self.states)
    }
}

impl<X, T: Real> Default for Trajectory<X, T> {
    fn default() -> Self {
        Self::new()
    }
}

/// Step size together with the snapshot cadence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Stepping<T> {
    pub dt: T,
    /// Record a snapshot every this many steps. The initial and final states
    /// are always recorded.
    pub snapshot_every: usize,
}

impl<T: Real> Stepping<T> {
    pub fn new(dt: T) -> Self {
        Self { dt, snapshot_every: 1 }
    }

    pub fn every(mut self, steps: usize) -> Self {
        self.snapshot_every = steps.max(1);
        self
    }

    /// Cadence chosen so that roughly `count` snapshots span `duration`.
    pub fn with_snapshot_count(self, duration: T, count: usize) -> Self {
        let steps = (duration / self.dt).ceil().to_f64_lossy().max(1.0) as usize;
        self.every(steps / count.max(1))
    }
}

impl<T: Real> From<T> for Stepping<T> {
    fn from(dt: T) -> Self {
        Self::new(dt)
    }
}

/// One classic RK4 step of size `h` from `(t, x)`.
pub fn rk4_step<T, X, F>(f: &mut F, t: T, x: &X, h: T) -> X
where
    T: Real,
    X: OdeState<T>,
    F: FnMut(T, &X) -> X,
{
    let half = h / T::from_f64(2.0);
    let k1 = f(t, x);
    let mut probe = x.clone();
    probe.axpy(half, &k1);
    let k2 = f(t + half, &probe);
    probe = x.clone();
    probe.axpy(half, &k2);
    let k3 = f(t + half, &probe);
    probe = x.clone();
    probe.axpy(h, &k3);
    let k4 = f(t + h, &probe);

    let sixth = h / T::from_f64(6.0);
    let third = h / T::from_f64(3.0);
    let mut next = x.clone();
    next.axpy(sixth, &k1);
    next.axpy(third, &k2);
    next.axpy(third, &k3);
    next.axpy(sixth, &k4);
    next
}

/// Integrates `dx/dt = f(t, x)` from `t0` to `t1`.
///
/// The final step is shortened so the trajectory ends exactly at `t1`.
pub fn evolve_rk4<T, X, F>(x0: X, f: F, t0: T, t1: T, stepping: impl Into<Stepping<T>>) -> Result<Trajectory<X, T>>
where
    T: Real,
    X: OdeState<T>,
    F: FnMut(T, &X) -> X,
{
    evolve_rk4_inspect(x0, f, t0, t1, stepping, |_, _| Ok(()))
}

/// As [`evolve_rk4`], calling `inspect` on every recorded snapshot; an error
/// from `inspect` aborts the integration.
pub fn evolve_rk4_inspect<T, X, F, I>(
    x0: X,
    mut f: F,
    t0: T,
    t1: T,
    stepping: impl Into<Stepping<T>>,
    mut inspect: I,
) -> Result<Trajectory<X, T>>
where
    T: Real,
    X: OdeState<T>,
    F: FnMut(T, &X) -> X,
    I: FnMut(T, &X) -> Result<()>,
{
    let Stepping { dt, snapshot_every } = stepping.into();
    if !(dt > T::zero()) || !dt.is_finite() {
        return Err(Error::InvalidTimeGrid(format!("dt must be positive, got {dt}")));
    }
    if !(t1 > t0) {
        return Err(Error::InvalidTimeGrid(format!("t1 ({t1}) must exceed t0 ({t0})")));
    }
    if !x0.all_finite() {
        return Err(Error::NonFinite { time: t0.to_f64_lossy() });
    }
    inspect(t0, &x0)?;

    let mut trajectory = Trajectory::new();
    trajectory.push(t0, x0.clone());

    // steps are indexed from t0 to avoid accumulating rounding in t
    let span = t1 - t0;
    let full_steps = (span / dt).floor();
    let n_full = full_steps.to_f64_lossy() as usize;
    let remainder = span - full_steps * dt;
    let tiny = dt * T::from_f64(1e-9);
    let total_steps = if remainder > tiny { n_full + 1 } else { n_full };

    let mut x = x0;
    let mut t = t0;
    for step in 1..=total_steps {
        let next_t = if step == total_steps {
            t1
        } else {
            t0 + dt * T::from_f64(step as f64)
        };
        let h = next_t - t;
        x = rk4_step(&mut f, t, &x, h);
        t = next_t;
        if !x.all_finite() {
            return Err(Error::NonFinite { time: t.to_f64_lossy() });
        }
        if step % snapshot_every == 0 || step == total_steps {
            inspect(t, &x)?;
            trajectory.push(t, x.clone());
        }
    }
    Ok(trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::Complex;

    type Ket = StateVector<f64>;

    #[test]
    fn phase_rotation_matches_analytic() {
        let psi0 = Ket::from_real(&[1.0]);
        let traj = evolve_rk4(
            psi0,
            |_, x: &Ket| x.scale(Complex::new(0.0, -1.0)),
            0.0,
            std::f64::consts::PI,
            1e-3,
        )
        .unwrap();
        let (t, last) = traj.last().unwrap();
        assert_eq!(t, std::f64::consts::PI);
        assert!((last[0] - Complex::new(-1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn zero_generator_is_identity() {
        let psi0 = Ket::from_real(&[0.6, 0.8]);
        let traj = evolve_rk4(psi0.clone(), |_, x: &Ket| Ket::zeros(x.len()), 0.0, 2.5, 0.1).unwrap();
        assert_eq!(traj.last().unwrap().1, &psi0);
    }

    #[test]
    fn resonant_rabi_two_pi_returns_with_sign_flip() {
        // H = (Omega/2) sigma_x, closed form: psi(t) = cos(Omega t/2)|0> - i sin(Omega t/2)|1>
        let omega = 1.3;
        let t1 = 2.0 * std::f64::consts::PI / omega;
        let traj = evolve_rk4(
            Ket::from_real(&[1.0, 0.0]),
            |_, x: &Ket| {
                let h = Complex::new(0.0, -omega / 2.0);
                Ket::from_vec(vec![x[1] * h, x[0] * h])
            },
            0.0,
            t1,
            1e-3,
        )
        .unwrap();
        let psi = traj.last().unwrap().1;
        assert!((psi[0].norm_sqr() - 1.0).abs() < 1e-6);
        assert!((psi[0] - Complex::new(-1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn final_partial_step_lands_on_t1() {
        let traj = evolve_rk4(Ket::from_real(&[1.0]), |_, x: &Ket| x.clone(), 0.0, 1.05, 0.1).unwrap();
        assert_eq!(traj.times().last().copied(), Some(1.05));
        assert_eq!(traj.len(), 12);
        let exact = 1.05f64.exp();
        assert!((traj.last().unwrap().1[0].re - exact).abs() < 1e-5);
    }

    #[test]
    fn snapshot_cadence_keeps_endpoints() {
        let traj = evolve_rk4(
            Ket::from_real(&[1.0]),
            |_, x: &Ket| x.scale_real(-1.0),
            0.0,
            1.0,
            Stepping::new(0.01).every(30),
        )
        .unwrap();
        assert_eq!(traj.times()[0], 0.0);
        assert_eq!(traj.times().last().copied(), Some(1.0));
        assert_eq!(traj.len(), 5);
    }

    #[test]
    fn blow_up_reports_time() {
        let err = evolve_rk4(Ket::from_real(&[1.0]), |_, x: &Ket| x.scale_real(1e300), 0.0, 1.0, 0.1)
            .unwrap_err();
        match err {
            Error::NonFinite { time } => assert!(time > 0.0 && time <= 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_grid() {
        let f = |_: f64, x: &Ket| x.clone();
        assert!(evolve_rk4(Ket::from_real(&[1.0]), f, 0.0, 1.0, 0.0).is_err());
        assert!(evolve_rk4(Ket::from_real(&[1.0]), f, 1.0, 1.0, 0.1).is_err());
    }
}
