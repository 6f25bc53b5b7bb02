//! One function per acceptance claim.

use std::f64::consts::PI;
use std::fs;

use cptq::atom::{mixing_angle, FieldConfig, Level};
use cptq::stateprep::{literal_three_component_state, QubitMap};
use cptq::two_qubit::{
    basis, rf_coupling, singlet, static_hamiltonian, symmetric, FreeEvolution, SpinPairConfig, S00, S01, S10, S11,
};
use cptq::{Ket, C64};
use cptq_cli::{FinalState, Kind, Outcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use crate::record::ClaimRecord;
use crate::Battery;

type Step = Result<(), String>;

fn finish(mut rec: ClaimRecord, body: Step) -> ClaimRecord {
    if let Err(e) = body {
        rec.error = Some(e);
    }
    rec.finish()
}

fn result(o: &Outcome, key: &str) -> Result<f64, String> {
    o.result_f64(key).ok_or_else(|| format!("{}: result `{key}` missing", o.kind.name()))
}

fn complex_result(o: &Outcome, key: &str) -> Result<C64, String> {
    match o.result(key) {
        Some(Value::Array(v)) if v.len() == 2 => match (v[0].as_f64(), v[1].as_f64()) {
            (Some(re), Some(im)) => Ok(C64::new(re, im)),
            _ => Err(format!("result `{key}` is not numeric")),
        },
        _ => Err(format!("{}: result `{key}` missing", o.kind.name())),
    }
}

fn input(o: &Outcome, key: &str) -> Result<f64, String> {
    o.inputs["params"][key].as_f64().ok_or_else(|| format!("{}: input `{key}` missing", o.kind.name()))
}

fn diagnostic(o: &Outcome, key: &str) -> Result<f64, String> {
    o.diagnostics.get(key).and_then(Value::as_f64).ok_or_else(|| format!("{}: diagnostic `{key}` missing", o.kind.name()))
}

fn density(o: &Outcome) -> Result<&cptq::DensityMatrix, String> {
    match &o.final_state {
        FinalState::Density(rho) => Ok(rho),
        _ => Err(format!("{}: no density matrix", o.kind.name())),
    }
}

fn frobenius(a: &cptq::DensityMatrix, b: &cptq::DensityMatrix) -> f64 {
    (a - b).frobenius_norm()
}

fn bool_as(x: bool) -> f64 {
    if x {
        1.0
    } else {
        0.0
    }
}

fn random_fields(rng: &mut ChaCha8Rng) -> FieldConfig {
    let mut amp = || 10f64.powf(rng.gen_range(-1.0..1.0));
    let (p, z) = (amp(), amp());
    let (ap, az) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
    FieldConfig::new(C64::from_polar(p, ap), C64::from_polar(z, az))
}

/// A1: the closed-form dark state is a null vector of the light coupling.
pub fn a1(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A1", "The configuration", "three-component trap state is dark");
    rec.scenario("library: 100 random field configurations");
    let body = (|| -> Step {
        let model = &b.ctx.model;
        let map = QubitMap::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
        let (mut closed, mut forbidden, mut min_overlap, mut bad_dim) = (0.0f64, 0.0f64, 1.0f64, 0usize);
        for k in 0..100 {
            let fields = match k {
                0 => FieldConfig::real(0.0, 1.0),
                1 => FieldConfig::real(1.0, 0.0),
                _ => random_fields(&mut rng),
            };
            let angle = mixing_angle(&fields).map_err(|e| e.to_string())?;
            let psi = map.bloch_state(angle.theta, angle.phi);
            closed = closed.max(model.darkness_residual(&fields, &psi));
            let h = model.interaction_hamiltonian(&fields);
            forbidden = forbidden.max(h[(Level::EZero.index(), Level::GZero.index())].norm());
            match model.dark_states(&fields) {
                Ok(null) if null.len() == 1 => min_overlap = min_overlap.min(null[0].overlap(&psi)),
                _ => bad_dim += 1,
            }
        }
        rec.le("max |H psi_dark| / |H| (closed form)", closed, 1e-12);
        rec.le("max |<e0|H|g0>| (forbidden pi transition)", forbidden, 0.0);
        rec.le("configs whose SVD null space is not 1-dimensional", bad_dim as f64, 0.0);
        rec.ge("min |<null|closed form>|^2", min_overlap, 1.0 - 1e-12);
        rec.note("amplitudes log-uniform in [0.1, 10], phases uniform; two single-beam endpoints included");
        Ok(())
    })();
    finish(rec, body)
}

/// A2: single-beam pumping reaches the two qubit basis states.
pub fn a2(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A2", "The configuration", "optical pumping endpoints");
    let body = (|| -> Step {
        for (name, label) in [("pump_zero.json", "|g0>"), ("pump_one.json", "|psi->")] {
            rec.scenario(name);
            let o = b.run(name, &[])?;
            let gamma = input(&o, "gamma")?;
            rec.le(format!("{name}: |pump_rabi/gamma - 1|"), (input(&o, "pump_rabi")? / gamma - 1.0).abs(), 0.0);
            rec.le(format!("{name}: beta"), input(&o, "beta")?, 0.0);
            rec.ge(format!("{name}: fidelity with {label}"), result(&o, "fidelity")?, 1.0 - 1e-6);
            rec.ge(format!("{name}: converged"), bool_as(o.result("converged") == Some(&Value::Bool(true))), 1.0);
            rec.le(format!("{name}: t_settle * gamma"), result(&o, "t_settle")? * gamma, 500.0);
        }
        Ok(())
    })();
    finish(rec, body)
}

/// A3: the pumped state does not depend on where it started or on the overall
/// field strength.
pub fn a3(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A3", "The configuration", "preparation always ends in the trap state");
    let body = (|| -> Step {
        rec.scenario("pump_one.json");
        let base = b.run("pump_one.json", &[])?;
        let rho0 = density(&base)?.clone();
        let mut spread = 0.0f64;
        for seed in 1..=10u64 {
            let o = b.run("pump_one.json", &["params.initial=random".into(), format!("seed={seed}")])?;
            spread = spread.max(frobenius(density(&o)?, &rho0));
        }
        rec.le("pump_one: max Frobenius distance, 10 random starts", spread, 1e-5);

        let rabi = input(&base, "pump_rabi")?;
        let mut moved = 0.0f64;
        for f in [0.8, 1.2] {
            let o = b.run("pump_one.json", &[format!("params.pump_rabi={}", rabi * f)])?;
            moved = moved.max(frobenius(density(&o)?, &rho0));
        }
        rec.le("pump_one: max Frobenius shift under +-20% Rabi", moved, 1e-4);

        rec.scenario("bloch_equator.json");
        let bloch = b.run("bloch_equator.json", &[])?;
        let rho_b = density(&bloch)?.clone();
        let total = input(&bloch, "total_rabi")?;
        let mut moved = 0.0f64;
        for f in [0.8, 1.2] {
            let o = b.run("bloch_equator.json", &[format!("params.total_rabi={}", total * f)])?;
            moved = moved.max(frobenius(density(&o)?, &rho_b));
        }
        rec.le("bloch_equator: max Frobenius shift under +-20% Rabi", moved, 1e-4);
        Ok(())
    })();
    finish(rec, body)
}

/// A4: the half-wave-plate flip is adiabatic when slow and fails when sudden.
pub fn a4(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A4", "Single Qubit Operations", "adiabatic flip by the half-wave plate");
    let body = (|| -> Step {
        rec.scenario("flip_adiabatic.json");
        let slow = b.run("flip_adiabatic.json", &[])?;
        rec.le("flip_adiabatic: |T * Omega_tot - 200|", (result(&slow, "ramp_product")? - 200.0).abs(), 1e-9);
        rec.ge("flip_adiabatic: flip fidelity", result(&slow, "flip_fidelity")?, 0.999);

        rec.scenario("sweep.json");
        let sweep = b.run("sweep.json", &[])?;
        let rows = sweep.result("rows").and_then(Value::as_array).ok_or("sweep: rows missing")?;
        let at = |product: f64| -> Result<f64, String> {
            rows.iter()
                .find(|r| r["ramp_product"].as_f64() == Some(product))
                .and_then(|r| r["flip_fidelity"].as_f64())
                .ok_or_else(|| format!("sweep: no row at T * Omega_tot = {product}"))
        };
        let (f1, f100) = (at(1.0)?, at(100.0)?);
        rec.gt("sweep: F(100) - F(1)", f100 - f1, 0.0);
        rec.report("sweep: F(1)", f1);
        rec.report("sweep: F(100)", f100);

        let sudden = b.run("flip_adiabatic.json", &["params.ramp_product=0.001".into()])?;
        rec.le("flip_adiabatic at T * Omega_tot = 1e-3: flip fidelity", result(&sudden, "flip_fidelity")?, 0.05);
        Ok(())
    })();
    finish(rec, body)
}

/// A5: a constant-coupling hold of one exchange period.
pub fn a5(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A5", "Two Qubit operation", "hold for one exchange period");
    let body = (|| -> Step {
        rec.scenario("cphasehold.json");
        let full = b.run("cphasehold.json", &[])?;
        let v = input(&full, "omega_dd")?;
        rec.le("cphasehold: |T V_dd - pi|", (result(&full, "hold_time")? * v - PI).abs(), 1e-12);
        let amp10 = complex_result(&full, "amp10")?;
        rec.le("cphasehold: |<10|psi(T)> + 1|", (amp10 + 1.0).norm(), 1e-6);
        let half = b.run("cphasehold.json", &[format!("params.hold_time={}", PI / (2.0 * v))])?;
        rec.le("cphasehold at T/2: |p01 - 1|", (result(&half, "p01")? - 1.0).abs(), 1e-6);
        rec.note("amplitudes in the interaction picture of the diagonal pair energies");
        Ok(())
    })();
    finish(rec, body)
}

/// A6: homogeneous pair spectrum and RF selection rules.
pub fn a6(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A6", "Two Qubit operation", "symmetric line shifted by 2 Omega, singlet RF-dark");
    let body = (|| -> Step {
        rec.scenario("library: parameters of cphase2pi.json");
        let s = b.load("cphase2pi.json", &[])?;
        let params = s.params.to_value();
        let omega_l = params["omega_l"].as_f64().ok_or("omega_l missing")?;
        let omega_dd = params["omega_dd"].as_f64().ok_or("omega_dd missing")?;
        let config = SpinPairConfig::homogeneous(omega_l, omega_dd);
        let h = static_hamiltonian(&config);
        let residual = |psi: &Ket, e: f64| h.mul_vec(psi).sub(&psi.scale_real(e)).norm();
        rec.le("|H sym - (omega_L + 2 Omega) sym|", residual(&symmetric(), omega_l + 2.0 * omega_dd), 1e-12);
        rec.le("|H singlet - omega_L singlet|", residual(&singlet(), omega_l), 1e-12);

        let free = FreeEvolution::new(&config).map_err(|e| e.to_string())?;
        let nearest = |e: f64| free.eigenvalues().iter().map(|l| (l - e).abs()).fold(f64::INFINITY, f64::min);
        rec.le("eigenvalue nearest omega_L + 2 Omega, distance", nearest(omega_l + 2.0 * omega_dd), 1e-12);
        rec.le("eigenvalue nearest omega_L, distance", nearest(omega_l), 1e-12);

        let rf = rf_coupling(1.0, 0.3);
        let st = singlet();
        let element = |k: usize| basis(k).inner(&rf.mul_vec(&st)).norm();
        rec.le("|<00|H_rf|singlet>|", element(S00), 0.0);
        rec.le("|<11|H_rf|singlet>|", element(S11), 0.0);
        rec.gt("|<00|H_rf|sym>| (control)", basis(S00).inner(&rf.mul_vec(&symmetric())).norm(), 0.1);
        Ok(())
    })();
    finish(rec, body)
}

/// A7: 2pi pulse on the shifted line of a homogeneous pair.
pub fn a7(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A7", "Two Qubit operation", "2pi pulse area on the shifted line");
    let body = (|| -> Step {
        rec.scenario("cphase2pi.json");
        let o = b.run("cphase2pi.json", &[])?;
        let ratio = result(&o, "rf_rabi")? / input(&o, "omega_dd")?;
        rec.le("|rf_rabi / omega_dd - 1/20|", (ratio - 0.05).abs(), 1e-12);
        rec.le("symmetric-state phase error vs pi (rad)", result(&o, "sym_phase_error")?, 0.05);
        rec.le("|00> population change", result(&o, "p00_change")?, 1e-4);
        rec.le("singlet population change", result(&o, "singlet_leakage")?, 1e-6);
        rec.report("gate fidelity vs CZ, local phases free", result(&o, "gate_fidelity")?);
        Ok(())
    })();
    finish(rec, body)
}

/// A8: selective 2pi pulse on a heterogeneous pair, and no exchange mixing.
pub fn a8(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A8", "Heterogeneous atoms", "energy shifts without mixing");
    let body = (|| -> Step {
        rec.scenario("hetero_01_11.json");
        let o = b.run("hetero_01_11.json", &[])?;
        let (w1, w2, v) = (input(&o, "omega1")?, input(&o, "omega2")?, input(&o, "omega_dd")?);
        rec.le("01-11 line: |line - (omega1 + Omega)|", (result(&o, "line_frequency")? - (w1 + v)).abs(), 1e-12);
        rec.le("01-11 line: phase on |01> vs pi (rad)", result(&o, "phase_error_vs_pi")?, 0.05);
        rec.le("01-11 line: spectator leakage", result(&o, "spectator_leakage")?, 1e-3);

        let mirror = b.run("hetero_01_11.json", &["params.which=10-11".into()])?;
        rec.le("10-11 line: |line - (omega2 + Omega)|", (result(&mirror, "line_frequency")? - (w2 + v)).abs(), 1e-12);
        rec.le("10-11 line: phase on |10> vs pi (rad)", result(&mirror, "phase_error_vs_pi")?, 0.05);
        rec.le("10-11 line: spectator leakage", result(&mirror, "spectator_leakage")?, 1e-3);
        rec.note("with atom 1 written first, the line at omega2 + Omega is the 10-11 transition");

        let free = FreeEvolution::new(&SpinPairConfig::heterogeneous(w1, w2, v)).map_err(|e| e.to_string())?;
        let mut transfer = 0.0f64;
        for k in 0..=200 {
            let u = free.propagator(k as f64 * 10.0);
            transfer = transfer.max(u[(S10, S01)].norm_sqr()).max(u[(S01, S10)].norm_sqr());
        }
        rec.le("free evolution: max |<10|U(t)|01>|^2, t in [0, 2000]", transfer, 1e-10);
        Ok(())
    })();
    finish(rec, body)
}

/// A9: two selective pi pulses swap |10> into |01>.
pub fn a9(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A9", "Heterogeneous atoms", "controlled swap by two pulses");
    let body = (|| -> Step {
        rec.scenario("cswap.json");
        let o = b.run("cswap.json", &[])?;
        rec.le("|rf_rabi / separation - 1/20|", (result(&o, "rf_rabi")? / result(&o, "separation")? - 0.05).abs(), 1e-12);
        rec.ge("|<01|U|10>|^2", result(&o, "swap_fidelity")?, 0.995);
        rec.report("|00> population change", result(&o, "zero_state_change")?);
        Ok(())
    })();
    finish(rec, body)
}

/// Two runs of one scenario at `dt` and `dt/2` on an identical time horizon.
fn halving_distance(b: &Battery, name: &str, base: &Outcome) -> Result<Option<f64>, String> {
    let (dt, fixed) = match base.kind {
        Kind::Units => return Ok(None),
        Kind::Pump | Kind::Bloch => {
            let horizon = result(base, "t_settle")? * input(base, "gamma")?;
            let fixed = vec![format!("params.max_time={horizon}"), "params.settle_tol=1e-30".to_string()];
            (diagnostic(base, "dt")?, fixed)
        }
        Kind::Sweep => (diagnostic(base, "dt_scaled")? / input(base, "total_rabi")?, Vec::new()),
        _ => (diagnostic(base, "dt")?, Vec::new()),
    };
    let arm = |h: f64| -> Result<FinalState, String> {
        let mut overrides = fixed.clone();
        overrides.push(format!("dt={h}"));
        Ok(b.run(name, &overrides)?.final_state)
    };
    let (coarse, fine) = (arm(dt)?, arm(dt / 2.0)?);
    coarse.distance(&fine).map(Some).ok_or_else(|| format!("{name}: final states differ in shape"))
}

/// A10: trace, positivity and step-halving over every shipped scenario.
pub fn a10(b: &Battery) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A10", "The configuration", "numerical hygiene of every scenario");
    let body = (|| -> Step {
        let mut names: Vec<String> = fs::read_dir(&b.scenarios_dir)
            .map_err(|e| format!("{}: {e}", b.scenarios_dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect();
        names.sort();
        if names.is_empty() {
            return Err("no shipped scenarios found".into());
        }
        let mut errors = Vec::new();
        for name in &names {
            rec.scenario(name.clone());
            let stem = name.trim_end_matches(".json");
            let base = match b.run(name, &[]) {
                Ok(o) => o,
                Err(e) => {
                    errors.push(e);
                    continue;
                }
            };
            rec.le(format!("{stem}: trace drift"), base.hygiene.max_trace_drift, 1e-9);
            rec.ge(format!("{stem}: min density eigenvalue"), base.hygiene.min_eigenvalue, -1e-9);
            match halving_distance(b, name, &base) {
                Ok(Some(d)) => {
                    rec.le(format!("{stem}: dt vs dt/2, max entry difference"), d, 1e-7);
                }
                Ok(None) => rec.note(format!("{stem}: closed form, no time stepping")),
                Err(e) => errors.push(e),
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors.join("; "))
        }
    })();
    finish(rec, body)
}

/// A11 with the A2 verdict already known.
pub fn a11_with(b: &Battery, a2: &ClaimRecord) -> ClaimRecord {
    let mut rec = ClaimRecord::new("A11", "The configuration", "displayed trap state against the null space");
    rec.scenario("library: Omega_p = Omega_z = 1");
    let body = (|| -> Step {
        let model = &b.ctx.model;
        let map = QubitMap::standard();
        let fields = FieldConfig::real(1.0, 1.0);
        let null = model.dark_state(&fields).map_err(|e| e.to_string())?;
        let literal = literal_three_component_state(&fields).map_err(|e| e.to_string())?;
        let overlap = literal.overlap(&null);
        rec.report("|<displayed form|null space>|^2", overlap);
        rec.report("displayed form darkness |H psi| / |H|", model.darkness_residual(&fields, &literal));
        rec.ge("report produced (overlap finite)", bool_as(overlap.is_finite()), 1.0);

        let z_only = model.dark_state(&FieldConfig::real(0.0, 1.0)).map_err(|e| e.to_string())?;
        let p_only = model.dark_state(&FieldConfig::real(1.0, 0.0)).map_err(|e| e.to_string())?;
        rec.ge("E_z-only dark state overlap with |g0>", z_only.overlap(&map.zero), 1.0 - 1e-12);
        rec.ge("E_p-only dark state overlap with |psi->", p_only.overlap(&map.one), 1.0 - 1e-12);
        rec.ge("A2 pumping endpoints pass", bool_as(a2.passed()), 1.0);
        Ok(())
    })();
    finish(rec, body)
}

/// A11 on its own; runs A2 first.
pub fn a11(b: &Battery) -> ClaimRecord {
    a11_with(b, &a2(b))
}

pub type ClaimFn = fn(&Battery) -> ClaimRecord;

/// Claims with no dependencies, in id order.
pub const INDEPENDENT: [(&str, ClaimFn); 10] =
    [("A1", a1), ("A2", a2), ("A3", a3), ("A4", a4), ("A5", a5), ("A6", a6), ("A7", a7), ("A8", a8), ("A9", a9), ("A10", a10)];
