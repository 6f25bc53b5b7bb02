//! Human-readable list of scenario kinds.

use crate::config::Kind;

pub struct KindInfo {
    pub kind: Kind,
    pub section: &'static str,
    pub summary: &'static str,
    /// `(name, default, meaning)`; a default of `required` marks a mandatory key.
    pub params: &'static [(&'static str, &'static str, &'static str)],
    pub note: Option<&'static str>,
}

const DECAY: [(&str, &str, &str); 3] = [
    ("gamma", "1.0", "excited-state decay rate"),
    ("beta", "0.0", "fraction of decays to the sink"),
    ("repump_rate", "0.0", "return rate from the sink"),
];

pub static CATALOG: &[KindInfo] = &[
    KindInfo {
        kind: Kind::Pump,
        section: "The configuration (optical pumping to |g0> and |psi->)",
        summary: "single-beam optical pumping of a qubit basis state to steady state",
        params: &[
            ("which", "required", "0 pumps |g0> with pi light, 1 pumps |psi-> with transverse light"),
            ("pump_rabi", "1.0", "Rabi frequency of the lit beam"),
            DECAY[0],
            DECAY[1],
            DECAY[2],
            ("detuning", "0.0", "laser detuning"),
            ("initial", "mixed", "mixed | random (drawn from seed)"),
            ("max_time", "500", "integration limit in units of 1/gamma"),
            ("settle_tol", "1e-8", "steady-state threshold on |d rho/dt| / gamma"),
            ("snapshot_interval", "0.5", "time-series spacing"),
        ],
        note: None,
    },
    KindInfo {
        kind: Kind::Bloch,
        section: "The configuration (superposition states from both beams)",
        summary: "pumping into the dark superposition with Bloch angles theta, phi",
        params: &[
            ("theta", "required", "polar angle in [0, pi]"),
            ("phi", "0.0", "azimuth, carried by the transverse beam phase"),
            ("total_rabi", "1.0", "overall field strength"),
            DECAY[0],
            DECAY[1],
            DECAY[2],
            ("max_time", "500", "integration limit in units of 1/gamma"),
            ("settle_tol", "1e-8", "steady-state threshold"),
            ("snapshot_interval", "0.5", "time-series spacing"),
        ],
        note: Some("reports the overlap with the displayed three-component state as a diagnostic"),
    },
    KindInfo {
        kind: Kind::Flip,
        section: "Single Qubit Operations",
        summary: "coherent bit flip by rotating the half-wave plate",
        params: &[
            ("total_rabi", "required", "field strength shared by the two beams"),
            ("ramp_time", "-", "ramp length (or give ramp_product)"),
            ("ramp_product", "-", "ramp length times total_rabi"),
            ("profile", "sine_squared", "sine_squared | linear"),
            ("direction", "to_one", "to_one | to_zero"),
            ("phase", "0.0", "transverse beam phase"),
            ("samples", "400", "time-series rows"),
            ("dissipative", "false", "also rerun with decay and report excited-state involvement"),
            DECAY[0],
            DECAY[1],
            DECAY[2],
        ],
        note: None,
    },
    KindInfo {
        kind: Kind::Sweep,
        section: "Single Qubit Operations",
        summary: "flip fidelity against ramp length",
        params: &[
            ("total_rabi", "required", "field strength"),
            ("products", "[1, 10, 100]", "grid of T * total_rabi, at least 3 points"),
            ("profile", "sine_squared", "sine_squared | linear"),
            ("direction", "to_one", "to_one | to_zero"),
            ("dt_scaled", "0.005", "step in units of 1/total_rabi"),
        ],
        note: None,
    },
    KindInfo {
        kind: Kind::Cphase2pi,
        section: "Two Qubit operation (2pi pulse on the shifted line)",
        summary: "2pi RF pulse at omega_L + 2 omega_dd on a homogeneous pair",
        params: &[
            ("omega_l", "1.0", "Larmor frequency"),
            ("omega_dd", "0.05", "dipole coupling"),
            ("rf_rabi", "omega_dd / 20", "RF Rabi frequency"),
            ("samples", "400", "time-series rows"),
        ],
        note: None,
    },
    KindInfo {
        kind: Kind::Cphasehold,
        section: "Two Qubit operation (hold for T = pi hbar / V_dd)",
        summary: "exchange evolution during a hold, constant or ramped coupling",
        params: &[
            ("omega_l", "1.0", "Larmor frequency"),
            ("omega_dd", "0.05", "dipole coupling V_dd"),
            ("hold_time", "pi / omega_dd", "constant-coupling hold"),
            ("profile", "-", "{shape: rectangular|trapezoid|piecewise, ...}"),
            ("total_time", "profile length", "window for profile"),
            ("samples", "400", "time-series rows"),
        ],
        note: None,
    },
    KindInfo {
        kind: Kind::Hetero,
        section: "Heterogeneous atoms",
        summary: "selective RF pulse on one line of a heterogeneous pair",
        params: &[
            ("omega1", "1.0", "Larmor frequency of atom 1"),
            ("omega2", "0.8", "Larmor frequency of atom 2"),
            ("omega_dd", "0.05", "dipole shift of |11>"),
            ("which", "required", "01-11 | 10-11 | 00-01 | 00-10"),
            ("area", "2 pi", "pulse area"),
            ("rf_rabi", "separation / 20", "RF Rabi frequency"),
            ("carrier_detuning", "0.0", "carrier offset from the line"),
            ("samples", "400", "time-series rows"),
        ],
        note: None,
    },
    KindInfo {
        kind: Kind::Cswap,
        section: "Heterogeneous atoms (controlled swap)",
        summary: "|10> -> |11> -> |01> by two selective pi pulses",
        params: &[
            ("omega1", "1.0", "Larmor frequency of atom 1"),
            ("omega2", "0.8", "Larmor frequency of atom 2"),
            ("omega_dd", "0.05", "dipole shift of |11>"),
            ("rf_rabi", "separation / 20", "RF Rabi frequency"),
            ("samples", "400", "time-series rows"),
        ],
        note: None,
    },
    KindInfo {
        kind: Kind::Units,
        section: "Practical considerations",
        summary: "Larmor and dipole frequencies from physical parameters",
        params: &[
            ("larmor1_khz_per_gauss", "350", "gyromagnetic ratio of atom 1 as kHz/G"),
            ("larmor2_khz_per_gauss", "larmor1", "same for atom 2"),
            ("b_gauss", "1.0", "static field"),
            ("r", "1e-6", "interatomic distance in m"),
            ("theta_s", "pi/2", "angle between spin directions"),
        ],
        note: Some("sanity check: Larmor frequencies are typically a few hundred kHz per Gauss for alkali atoms"),
    },
];

pub fn info(kind: Kind) -> &'static KindInfo {
    CATALOG.iter().find(|i| i.kind == kind).expect("every kind is listed")
}

pub fn render() -> String {
    let mut s = String::from("scenario kinds (top-level keys: kind, params, output_dir, dt, seed, reproducible)\n");
    for i in CATALOG {
        s.push_str(&format!("\n{}  [section: {}]\n  {}\n", i.kind.name(), i.section, i.summary));
        for (name, default, meaning) in i.params {
            s.push_str(&format!("    {name:<22} {default:<16} {meaning}\n"));
        }
        if let Some(n) = i.note {
            s.push_str(&format!("  note: {n}\n"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_kind_listed_with_a_section() {
        assert_eq!(CATALOG.len(), 9);
        for k in Kind::ALL {
            assert!(!info(k).section.is_empty());
        }
        assert!(render().contains("few hundred kHz per Gauss"));
    }
}
