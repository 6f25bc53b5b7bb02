//! Conversion from physical spin parameters to model frequencies.

use crate::error::{invalid, Result};

/// Reduced Planck constant, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// `mu_0 / 4 pi`, T m / A.
pub const MU0_OVER_4PI: f64 = 1e-7;
/// One gauss in tesla.
pub const GAUSS: f64 = 1e-4;
/// Range read as "a few hundred kHz per gauss".
pub const LARMOR_SANITY_KHZ_PER_GAUSS: (f64, f64) = (100.0, 1000.0);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalSpinParams {
    /// Gyromagnetic ratios, rad s^-1 T^-1.
    pub gamma1: f64,
    pub gamma2: f64,
    /// Static field, T.
    pub b_field: f64,
    /// Interatomic distance, m.
    pub r: f64,
    pub theta_s: f64,
    pub mu0_over_4pi: f64,
}

impl PhysicalSpinParams {
    pub fn new(gamma1: f64, gamma2: f64, b_field: f64, r: f64, theta_s: f64) -> Self {
        Self {
            gamma1,
            gamma2,
            b_field,
            r,
            theta_s,
            mu0_over_4pi: MU0_OVER_4PI,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r > 0.0 && self.r.is_finite()) {
            return Err(invalid("r", format!("must be positive, got {}", self.r)));
        }
        for (name, v) in [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("b_field", self.b_field),
            ("theta_s", self.theta_s),
            ("mu0_over_4pi", self.mu0_over_4pi),
        ] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        Ok(())
    }
}

/// Signed dipole energy in rad/s, reading the moments as `mu_i = gamma_i hbar`:
/// `(mu0/4pi) gamma1 gamma2 hbar (3 cos^2 theta_s - 1) / r^3`.
pub fn dipole_shift(p: &PhysicalSpinParams) -> Result<f64> {
    p.validate()?;
    let angular = 3.0 * p.theta_s.cos().powi(2) - 1.0;
    Ok(p.mu0_over_4pi * p.gamma1 * p.gamma2 * HBAR * angular / p.r.powi(3))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabUnits {
    pub omega1: f64,
    pub omega2: f64,
    /// `|dipole_shift|`.
    pub omega_dd: f64,
    pub dipole_shift: f64,
    pub larmor1_khz_per_gauss: f64,
    pub larmor2_khz_per_gauss: f64,
    pub sanity_ok: bool,
    pub sanity_line: String,
}

fn khz_per_gauss(gamma: f64) -> f64 {
    gamma.abs() * GAUSS / (2.0 * std::f64::consts::PI) / 1e3
}

pub fn lab_units(p: &PhysicalSpinParams) -> Result<LabUnits> {
    let shift = dipole_shift(p)?;
    let k1 = khz_per_gauss(p.gamma1);
    let k2 = khz_per_gauss(p.gamma2);
    let (lo, hi) = LARMOR_SANITY_KHZ_PER_GAUSS;
    let sanity_ok = [k1, k2].iter().all(|k| (lo..=hi).contains(k));
    let sanity_line = format!(
        "Larmor scale {k1:.1} / {k2:.1} kHz per gauss; expected a few hundred kHz per gauss for alkali atoms: {}",
        if sanity_ok { "consistent" } else { "outside 100-1000 kHz/G" }
    );
    Ok(LabUnits {
        omega1: p.gamma1 * p.b_field,
        omega2: p.gamma2 * p.b_field,
        omega_dd: shift.abs(),
        dipole_shift: shift,
        larmor1_khz_per_gauss: k1,
        larmor2_khz_per_gauss: k2,
        sanity_ok,
        sanity_line,
    })
}

/// `gamma` in rad s^-1 T^-1 from a Larmor scale in kHz per gauss.
pub fn gamma_from_khz_per_gauss(khz: f64) -> f64 {
    2.0 * std::f64::consts::PI * khz * 1e3 / GAUSS
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn rb() -> PhysicalSpinParams {
        let g = gamma_from_khz_per_gauss(350.0);
        PhysicalSpinParams::new(g, g, GAUSS, 1e-6, FRAC_PI_2)
    }

    #[test]
    fn magic_angle_cancels() {
        let p = PhysicalSpinParams {
            theta_s: (1.0 / 3f64.sqrt()).acos(),
            ..rb()
        };
        let reference = dipole_shift(&rb()).unwrap().abs();
        assert!(dipole_shift(&p).unwrap().abs() <= 1e-14 * reference);
    }

    #[test]
    fn inverse_cube_distance() {
        let near = dipole_shift(&rb()).unwrap();
        let far = dipole_shift(&PhysicalSpinParams { r: 2e-6, ..rb() }).unwrap();
        assert_eq!(near / far, 8.0);
    }

    #[test]
    fn perpendicular_value() {
        let p = rb();
        let expected = -MU0_OVER_4PI * p.gamma1 * p.gamma2 * HBAR / p.r.powi(3);
        assert_relative_eq!(dipole_shift(&p).unwrap(), expected, max_relative = 1e-15);
        assert!(dipole_shift(&PhysicalSpinParams { r: 0.0, ..p }).is_err());
    }

    #[test]
    fn larmor_scale() {
        let u = lab_units(&rb()).unwrap();
        assert_relative_eq!(u.omega1 / (2.0 * PI), 350e3, max_relative = 1e-12);
        assert!(u.sanity_ok);
        let doubled = lab_units(&PhysicalSpinParams { b_field: 2.0 * GAUSS, ..rb() }).unwrap();
        assert_eq!(doubled.omega1, 2.0 * u.omega1);
        let closer = lab_units(&PhysicalSpinParams { r: 0.5e-6, ..rb() }).unwrap();
        assert_relative_eq!(closer.omega_dd, 8.0 * u.omega_dd, max_relative = 1e-14);
    }
}
