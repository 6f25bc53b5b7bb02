//! Dispatch from a resolved scenario to the physics library.

use std::f64::consts::PI;

use cptq::atom::{mixing_angle, AtomModel, DecayConfig, FieldConfig, Level, NUM_LEVELS};
use cptq::dynamics::{fidelity, mixed_ground_state, SteadyState, SteadyStateOptions};
use cptq::numerics::Stepping;
use cptq::single_qubit::{
    adiabatic_flip, ramp_sweep, verify_with_dissipation, HwpSchedule, RampProfile, SweepSpec,
};
use cptq::stateprep::{literal_three_component_state, prepare_bloch, prepare_qubit_from, Qubit, QubitMap};
use cptq::two_qubit::{
    controlled_swap, cphase_2pi, cphase_hold, hetero_selective_pulse, lab_units, phase_distance, ramped_hold,
    PairIntegration, PairSample, PhysicalSpinParams, SpinPairConfig, Spectrum, Transition, BASIS_LABELS, S01, S10,
};
use cptq::two_qubit::{gamma_from_khz_per_gauss, GAUSS};
use cptq::{DensityMatrix, Ket, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::config::*;
use crate::error::{CliError, CliResult};
use crate::outcome::{FinalState, HygieneSummary, Outcome, Table, ATOM_COLUMNS, PAIR_COLUMNS};

/// Physics model a scenario runs against; tests swap in altered models.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub model: AtomModel,
}

/// Default flip step in units of `1 / total_rabi`.
pub const FLIP_DT_SCALED: f64 = 0.005;
/// Default pumping step in units of `1 / gamma`.
pub const PUMP_DT: f64 = 0.01;

pub fn run_scenario(scenario: &Scenario) -> CliResult<Outcome> {
    run_scenario_with(scenario, &Context::default())
}

pub fn run_scenario_with(scenario: &Scenario, ctx: &Context) -> CliResult<Outcome> {
    let mut out = Outcome {
        kind: scenario.kind,
        inputs: scenario.echo(),
        results: Map::new(),
        diagnostics: Map::new(),
        warnings: Vec::new(),
        tables: Vec::new(),
        final_state: FinalState::Values(Vec::new()),
        hygiene: HygieneSummary::default(),
        failure: None,
        reproducible: scenario.reproducible,
    };
    match &scenario.params {
        Params::Pump(p) => run_pump(ctx, scenario, p, &mut out)?,
        Params::Bloch(p) => run_bloch(ctx, scenario, p, &mut out)?,
        Params::Flip(p) => run_flip(ctx, scenario, p, &mut out)?,
        Params::Sweep(p) => run_sweep(ctx, scenario, p, &mut out)?,
        Params::Cphase2pi(p) => run_cphase2pi(scenario, p, &mut out)?,
        Params::Cphasehold(p) => run_cphasehold(scenario, p, &mut out)?,
        Params::Hetero(p) => run_hetero(scenario, p, &mut out)?,
        Params::Cswap(p) => run_cswap(scenario, p, &mut out)?,
        Params::Units(p) => run_units(p, &mut out)?,
    }
    Ok(out)
}

fn put(map: &mut Map<String, Value>, key: &str, v: impl Into<Value>) {
    map.insert(key.to_string(), v.into());
}

fn decay(gamma: f64, beta: f64, repump: f64) -> CliResult<DecayConfig> {
    let d = DecayConfig::closed(gamma).with_loss(beta, repump);
    d.validate()?;
    Ok(d)
}

fn positive(name: &str, v: f64) -> CliResult<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("params.{name}: must be positive, got {v}")))
    }
}

/// Random density matrix supported on the ground manifold.
pub fn random_ground_mixture(rng: &mut impl Rng) -> DensityMatrix {
    let mut a = DensityMatrix::zeros(NUM_LEVELS);
    for i in 0..3 {
        for j in 0..3 {
            a[(i, j)] = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    let rho = &a * &a.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

fn atom_row(t: f64, populations: &[f64], fid: f64, theta: f64) -> Vec<f64> {
    let mut row = Vec::with_capacity(ATOM_COLUMNS.len());
    row.push(t);
    row.extend_from_slice(populations);
    row.push(fid);
    row.push(theta);
    row
}

fn density_populations(rho: &DensityMatrix) -> Vec<f64> {
    (0..NUM_LEVELS).map(|k| rho[(k, k)].re).collect()
}

fn populations_object(pops: &[f64]) -> Value {
    let mut m = Map::new();
    for (level, p) in Level::ALL.iter().zip(pops) {
        m.insert(level.label().to_string(), json!(p));
    }
    Value::Object(m)
}

fn theta_of(fields: &FieldConfig) -> f64 {
    mixing_angle(fields).map(|m| m.theta).unwrap_or(f64::NAN)
}

fn steady_outcome(steady: &SteadyState, target: &Ket, theta: f64, out: &mut Outcome) {
    let mut table = Table::new("timeseries.csv", &ATOM_COLUMNS);
    for (t, rho) in steady.trajectory.iter() {
        table.push(atom_row(t, &density_populations(rho), fidelity(rho, target), theta));
    }
    out.tables.push(table);
    put(&mut out.results, "converged", steady.converged);
    put(&mut out.results, "t_settle", steady.t_settle);
    put(&mut out.results, "purity", steady.purity);
    put(&mut out.results, "populations", populations_object(&density_populations(&steady.rho)));
    put(&mut out.diagnostics, "residual", steady.residual);
    out.hygiene = HygieneSummary {
        max_trace_drift: steady.hygiene.max_trace_drift,
        min_eigenvalue: steady.hygiene.min_eigenvalue,
    };
    out.final_state = FinalState::Density(steady.rho.clone());
    if !steady.converged {
        out.failure = Some(format!(
            "steady state not reached within max_time; residual {:.3e} at t = {}",
            steady.residual, steady.t_settle
        ));
    }
}

fn steady_options(scenario: &Scenario, max_time: f64, settle_tol: f64, snapshot_interval: f64, gamma: f64) -> SteadyStateOptions {
    SteadyStateOptions {
        max_time,
        settle_tol,
        dt: scenario.dt.unwrap_or(PUMP_DT / gamma),
        snapshot_interval: Some(snapshot_interval),
        ..SteadyStateOptions::default()
    }
}

fn run_pump(ctx: &Context, scenario: &Scenario, p: &PumpParams, out: &mut Outcome) -> CliResult<()> {
    let which = Qubit::from_index(p.which)?;
    positive("pump_rabi", p.pump_rabi)?;
    positive("gamma", p.gamma)?;
    let decay = decay(p.gamma, p.beta, p.repump_rate)?;
    let rho0 = match p.initial {
        InitialState::Mixed => mixed_ground_state(),
        InitialState::Random => random_ground_mixture(&mut ChaCha8Rng::seed_from_u64(scenario.seed)),
    };
    let options = steady_options(scenario, p.max_time, p.settle_tol, p.snapshot_interval, p.gamma);
    let target = QubitMap::standard().state(which).clone();
    let (steady, fields) = if p.detuning == 0.0 {
        let prep = prepare_qubit_from(&ctx.model, which, &decay, p.pump_rabi, &options, &rho0)?;
        (prep.steady, prep.fields)
    } else {
        let fields = match which {
            Qubit::Zero => FieldConfig::real(0.0, p.pump_rabi),
            Qubit::One => FieldConfig::real(p.pump_rabi, 0.0),
        }
        .with_detuning(p.detuning);
        (cptq::dynamics::steady_state(&ctx.model, &rho0, &fields, &decay, &options)?, fields)
    };
    put(&mut out.results, "fidelity", fidelity(&steady.rho, &target));
    put(&mut out.results, "target", if p.which == 0 { "g0" } else { "psi_minus" });
    put(&mut out.diagnostics, "dt", options.dt);
    steady_outcome(&steady, &target, theta_of(&fields), out);
    Ok(())
}

fn run_bloch(ctx: &Context, scenario: &Scenario, p: &BlochParams, out: &mut Outcome) -> CliResult<()> {
    positive("total_rabi", p.total_rabi)?;
    positive("gamma", p.gamma)?;
    let decay = decay(p.gamma, p.beta, p.repump_rate)?;
    let options = steady_options(scenario, p.max_time, p.settle_tol, p.snapshot_interval, p.gamma);
    let prep = prepare_bloch(&ctx.model, p.theta, p.phi, p.total_rabi, &decay, &options)?;
    put(&mut out.results, "fidelity", prep.fidelity);
    put(&mut out.results, "literal_fidelity", prep.literal_fidelity);
    put(&mut out.results, "achieved_theta", prep.achieved_theta);
    put(&mut out.results, "achieved_phi", prep.achieved_phi);
    put(&mut out.results, "omega_p", json!([prep.fields.omega_p.re, prep.fields.omega_p.im]));
    put(&mut out.results, "omega_z", json!([prep.fields.omega_z.re, prep.fields.omega_z.im]));
    if prep.fields.omega_z.norm() > 0.0 {
        let literal = literal_three_component_state(&prep.fields)?;
        put(&mut out.diagnostics, "literal_three_component_overlap", literal.overlap(&prep.target));
    }
    put(&mut out.diagnostics, "dt", options.dt);
    steady_outcome(&prep.steady, &prep.target, p.theta, out);
    Ok(())
}

fn ramp_profile(shape: RampShape) -> RampProfile {
    match shape {
        RampShape::Linear => RampProfile::Linear,
        RampShape::SineSquared => RampProfile::SineSquared,
    }
}

fn run_flip(ctx: &Context, scenario: &Scenario, p: &FlipParams, out: &mut Outcome) -> CliResult<()> {
    positive("total_rabi", p.total_rabi)?;
    let ramp_time = p.ramp_time()?;
    positive("ramp_time", ramp_time)?;
    let mut schedule = match p.direction {
        Direction::ToOne => HwpSchedule::flip_to_one(ramp_profile(p.profile), ramp_time, p.total_rabi),
        Direction::ToZero => HwpSchedule::flip_to_zero(ramp_profile(p.profile), ramp_time, p.total_rabi),
    };
    schedule.phase = p.phase;
    let dt = scenario.dt.unwrap_or(FLIP_DT_SCALED / p.total_rabi);
    let stepping = Stepping::new(dt).with_snapshot_count(ramp_time, p.samples);
    use cptq::dynamics::FieldSchedule;
    let psi0 = ctx.model.dark_state(&schedule.fields_at(0.0))?;
    let r = adiabatic_flip(&ctx.model, &schedule, &psi0, stepping)?;

    let mut table = Table::new("timeseries.csv", &ATOM_COLUMNS);
    for (t, psi) in r.trajectory.iter() {
        let fields = schedule.fields_at(t);
        let dark = ctx.model.dark_state(&fields)?;
        table.push(atom_row(t, &psi.populations(), dark.overlap(psi), schedule.theta(t)));
    }
    out.tables.push(table);
    put(&mut out.results, "flip_fidelity", r.flip_fidelity);
    put(&mut out.results, "min_gap", r.min_gap);
    put(&mut out.results, "max_theta_rate", r.max_theta_rate);
    put(&mut out.results, "min_tracking", r.min_tracking);
    put(&mut out.results, "ramp_time", ramp_time);
    put(&mut out.results, "ramp_product", ramp_time * p.total_rabi);
    put(&mut out.diagnostics, "dt", dt);
    out.hygiene = HygieneSummary::of_ket(&r.psi_final);
    out.final_state = FinalState::Ket(r.psi_final.clone());

    if p.dissipative {
        positive("gamma", p.gamma)?;
        let check = verify_with_dissipation(&ctx.model, &schedule, &psi0, &decay(p.gamma, p.beta, p.repump_rate)?, stepping)?;
        let mut d = Map::new();
        put(&mut d, "excited_population_integral", check.excited_population_integral);
        put(&mut d, "max_excited_population", check.max_excited_population);
        put(&mut d, "final_sink_population", check.final_sink_population);
        put(&mut d, "flip_fidelity", check.flip_fidelity);
        out.results.insert("dissipative".into(), Value::Object(d));
        out.hygiene = out.hygiene.merge(HygieneSummary {
            max_trace_drift: check.hygiene.max_trace_drift,
            min_eigenvalue: check.hygiene.min_eigenvalue,
        });
        let mut dissipative = Table::new("timeseries_dissipative.csv", &ATOM_COLUMNS);
        for (t, rho) in check.trajectory.iter() {
            let dark = ctx.model.dark_state(&schedule.fields_at(t))?;
            dissipative.push(atom_row(t, &density_populations(rho), fidelity(rho, &dark), schedule.theta(t)));
        }
        out.tables.push(dissipative);
    }
    Ok(())
}

fn run_sweep(ctx: &Context, scenario: &Scenario, p: &SweepParams, out: &mut Outcome) -> CliResult<()> {
    positive("total_rabi", p.total_rabi)?;
    let dt_scaled = match scenario.dt {
        Some(dt) => dt * p.total_rabi,
        None => p.dt_scaled.unwrap_or(FLIP_DT_SCALED),
    };
    let spec = SweepSpec {
        products: p.products.clone(),
        total_field_rabi: p.total_rabi,
        profile: ramp_profile(p.profile),
        to_one: p.direction == Direction::ToOne,
        dt_scaled,
    };
    let table = ramp_sweep(&ctx.model, &spec)?;
    let mut csv = Table::new("sweep.csv", &["ramp_product", "ramp_time", "flip_fidelity", "min_gap", "max_theta_rate"]);
    let mut rows = Vec::new();
    for r in &table.rows {
        csv.push(vec![r.product, r.ramp_time, r.flip_fidelity, r.min_gap, r.max_theta_rate]);
        rows.push(json!({
            "ramp_product": r.product,
            "ramp_time": r.ramp_time,
            "flip_fidelity": r.flip_fidelity,
            "min_gap": r.min_gap,
            "max_theta_rate": r.max_theta_rate,
        }));
    }
    out.tables.push(csv);
    put(&mut out.results, "rows", rows);
    put(&mut out.results, "monotone", table.monotone);
    put(&mut out.diagnostics, "dt_scaled", dt_scaled);
    out.hygiene = table.final_states.iter().map(HygieneSummary::of_ket).fold(HygieneSummary::default(), HygieneSummary::merge);
    out.final_state = FinalState::Values(table.rows.iter().map(|r| r.flip_fidelity).collect());
    if !table.monotone {
        out.warnings.push("flip fidelity does not grow with ramp length over this grid".into());
    }
    Ok(())
}

fn integration(scenario: &Scenario, samples: usize) -> PairIntegration {
    PairIntegration { dt: scenario.dt, samples }
}

fn pair_table(samples: &[PairSample]) -> Table {
    let mut table = Table::new("timeseries.csv", &PAIR_COLUMNS);
    for s in samples {
        let mut row = vec![s.t];
        row.extend_from_slice(&s.populations);
        row.extend([s.c01_10.re, s.c01_10.im, s.phase_accum]);
        table.push(row);
    }
    table
}

fn unitary_json(u: &cptq::CMatrix) -> Value {
    let rows: Vec<Value> = (0..u.dim())
        .map(|i| Value::Array((0..u.dim()).map(|j| json!([u[(i, j)].re, u[(i, j)].im])).collect()))
        .collect();
    Value::Array(rows)
}

fn pulse_json(p: &cptq::two_qubit::RfPulse) -> Value {
    json!({
        "carrier": p.carrier,
        "rabi": p.rabi,
        "duration": p.duration,
        "start": p.start,
        "area": p.area(),
    })
}

fn run_cphase2pi(scenario: &Scenario, p: &Cphase2piParams, out: &mut Outcome) -> CliResult<()> {
    let config = SpinPairConfig::homogeneous(p.omega_l, p.omega_dd);
    let rf = p.rf_rabi.unwrap_or(p.omega_dd / 20.0);
    let r = cphase_2pi(&config, rf, &integration(scenario, p.samples))?;
    let mut phases = Map::new();
    for e in &r.table {
        phases.insert(e.label.clone(), json!({"phase": e.phase, "population_change": e.population_change}));
    }
    let sym = r.entry("sym").unwrap();
    put(&mut out.results, "phases", Value::Object(phases));
    put(&mut out.results, "sym_phase", sym.phase);
    put(&mut out.results, "sym_phase_error", phase_distance(sym.phase, PI));
    put(&mut out.results, "p00_change", r.entry("00").unwrap().population_change);
    put(&mut out.results, "singlet_leakage", r.entry("singlet").unwrap().population_change);
    put(&mut out.results, "gate_fidelity", r.gate_fidelity);
    put(&mut out.results, "rf_rabi", rf);
    put(&mut out.results, "pulse", pulse_json(&r.pulse));
    put(&mut out.results, "unitary", unitary_json(&r.unitary));
    put(&mut out.diagnostics, "spectator_leakage", r.spectator_leakage);
    put(&mut out.diagnostics, "unitarity_defect", r.unitary.unitarity_defect());
    out.warnings.extend(r.warnings.iter().cloned());
    out.tables.push(pair_table(&r.samples));
    put(&mut out.diagnostics, "dt", r.dt);
    out.hygiene = HygieneSummary::of_unitary(&r.unitary);
    out.final_state = FinalState::Unitary(r.unitary);
    Ok(())
}

fn run_cphasehold(scenario: &Scenario, p: &CphaseholdParams, out: &mut Outcome) -> CliResult<()> {
    let config = SpinPairConfig::homogeneous(p.omega_l, p.omega_dd);
    let integ = integration(scenario, p.samples);
    let r = match &p.profile {
        None => {
            if p.total_time.is_some() {
                return Err(CliError::Validation("params.total_time: only used together with `profile`".into()));
            }
            let hold = p.hold_time.unwrap_or(PI / p.omega_dd);
            put(&mut out.results, "hold_time", hold);
            cphase_hold(&config, hold, &integ)?
        }
        Some(spec) => {
            if p.hold_time.is_some() {
                return Err(CliError::Validation("params.hold_time: give either `hold_time` or `profile`".into()));
            }
            let profile = spec.build()?;
            let total = p.total_time.unwrap_or(profile.duration());
            put(&mut out.results, "total_time", total);
            ramped_hold(&config, &profile, total, &integ)?
        }
    };
    put(&mut out.results, "phase", r.exchange_phase);
    put(&mut out.results, "coupling_area", r.coupling_area);
    put(&mut out.results, "phase_error", (r.exchange_phase - r.coupling_area).abs());
    put(&mut out.results, "amp10", json!([r.amp10.re, r.amp10.im]));
    put(&mut out.results, "amp01", json!([r.amp01.re, r.amp01.im]));
    put(&mut out.results, "p10", r.populations[S10]);
    put(&mut out.results, "p01", r.populations[S01]);
    put(&mut out.results, "unitary", unitary_json(&r.unitary));
    put(&mut out.diagnostics, "unitarity_defect", r.unitary.unitarity_defect());
    put(&mut out.diagnostics, "frame", "interaction picture of the diagonal part; exchange term only");
    out.tables.push(pair_table(&r.samples));
    put(&mut out.diagnostics, "dt", r.dt);
    out.hygiene = HygieneSummary::of_unitary(&r.unitary);
    out.final_state = FinalState::Unitary(r.unitary);
    Ok(())
}

fn spectator_json(entries: &[cptq::two_qubit::PhaseEntry]) -> Value {
    let mut m = Map::new();
    for e in entries {
        m.insert(e.label.clone(), json!({"phase": e.phase, "population_change": e.population_change}));
    }
    Value::Object(m)
}

fn run_hetero(scenario: &Scenario, p: &HeteroParams, out: &mut Outcome) -> CliResult<()> {
    let config = SpinPairConfig::heterogeneous(p.omega1, p.omega2, p.omega_dd);
    config.validate()?;
    let which = Transition::parse(&p.which)?;
    let spectrum = Spectrum::of(&config)?;
    let rf = p.rf_rabi.unwrap_or(spectrum.separation(which) / 20.0);
    let r = hetero_selective_pulse(&config, which, p.area, rf, p.carrier_detuning, &integration(scenario, p.samples))?;
    put(&mut out.results, "transition", which.label());
    put(&mut out.results, "line_frequency", spectrum.frequency(which));
    put(&mut out.results, "separation", r.separation);
    put(&mut out.results, "rf_rabi", rf);
    put(&mut out.results, "transfer", r.transfer);
    put(&mut out.results, "phase_lower", r.phase_lower);
    put(&mut out.results, "phase_error_vs_pi", phase_distance(r.phase_lower, PI));
    put(&mut out.results, "spectator_leakage", r.spectator_leakage);
    put(&mut out.results, "spectators", spectator_json(&r.spectators));
    put(&mut out.results, "pulse", pulse_json(&r.pulse));
    put(&mut out.results, "unitary", unitary_json(&r.unitary));
    let lines: Map<String, Value> = Transition::ALL.iter().map(|t| (t.label().to_string(), json!(spectrum.frequency(*t)))).collect();
    put(&mut out.diagnostics, "lines", Value::Object(lines));
    put(&mut out.diagnostics, "level_energies", json!(BASIS_LABELS.iter().zip(spectrum.energies).map(|(l, e)| (l.to_string(), json!(e))).collect::<Map<String, Value>>()));
    put(&mut out.diagnostics, "unitarity_defect", r.unitary.unitarity_defect());
    out.warnings.extend(r.warnings.iter().cloned());
    out.tables.push(pair_table(&r.samples));
    put(&mut out.diagnostics, "dt", r.dt);
    out.hygiene = HygieneSummary::of_unitary(&r.unitary);
    out.final_state = FinalState::Unitary(r.unitary);
    Ok(())
}

fn run_cswap(scenario: &Scenario, p: &CswapParams, out: &mut Outcome) -> CliResult<()> {
    let config = SpinPairConfig::heterogeneous(p.omega1, p.omega2, p.omega_dd);
    config.validate()?;
    let spectrum = Spectrum::of(&config)?;
    let sep = spectrum.separation(Transition::T10To11).min(spectrum.separation(Transition::T01To11));
    let rf = p.rf_rabi.unwrap_or(sep / 20.0);
    let r = controlled_swap(&config, rf, &integration(scenario, p.samples))?;
    put(&mut out.results, "swap_fidelity", r.swap_fidelity);
    put(&mut out.results, "block_fidelity", r.block_fidelity);
    put(&mut out.results, "zero_state_change", r.zero_state_change);
    put(&mut out.results, "separation", r.separation);
    put(&mut out.results, "rf_rabi", rf);
    put(&mut out.results, "pulses", json!([pulse_json(&r.pulses[0]), pulse_json(&r.pulses[1])]));
    put(&mut out.results, "unitary", unitary_json(&r.unitary));
    put(&mut out.diagnostics, "unitarity_defect", r.unitary.unitarity_defect());
    out.warnings.extend(r.warnings.iter().cloned());
    out.tables.push(pair_table(&r.samples));
    put(&mut out.diagnostics, "dt", r.dt);
    out.hygiene = HygieneSummary::of_unitary(&r.unitary);
    out.final_state = FinalState::Unitary(r.unitary);
    Ok(())
}

fn run_units(p: &UnitsParams, out: &mut Outcome) -> CliResult<()> {
    let params = PhysicalSpinParams::new(
        gamma_from_khz_per_gauss(p.larmor1_khz_per_gauss),
        gamma_from_khz_per_gauss(p.larmor2_khz_per_gauss.unwrap_or(p.larmor1_khz_per_gauss)),
        p.b_gauss * GAUSS,
        p.r,
        p.theta_s,
    );
    let u = lab_units(&params)?;
    put(&mut out.results, "omega1", u.omega1);
    put(&mut out.results, "omega2", u.omega2);
    put(&mut out.results, "omega_dd", u.omega_dd);
    put(&mut out.results, "dipole_shift", u.dipole_shift);
    put(&mut out.results, "larmor1_khz_per_gauss", u.larmor1_khz_per_gauss);
    put(&mut out.results, "larmor2_khz_per_gauss", u.larmor2_khz_per_gauss);
    put(&mut out.results, "coupling_ratio", u.omega_dd / u.omega1.abs().min(u.omega2.abs()));
    put(&mut out.results, "sanity_ok", u.sanity_ok);
    put(&mut out.results, "sanity_line", u.sanity_line.clone());
    put(&mut out.diagnostics, "gamma1", params.gamma1);
    put(&mut out.diagnostics, "gamma2", params.gamma2);
    out.warnings.push("dipole energy reads the magnetic moments as mu_i = gamma_i hbar".into());
    if !u.sanity_ok {
        out.warnings.push(u.sanity_line.clone());
    }
    out.final_state = FinalState::Values(vec![u.omega1, u.omega2, u.omega_dd]);
    Ok(())
}
