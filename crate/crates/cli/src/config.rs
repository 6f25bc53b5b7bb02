//! Scenario documents: strict JSON schema, `--set` overrides and the
//! resolved echo written back into each summary.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Pump,
    Bloch,
    Flip,
    Sweep,
    Cphase2pi,
    Cphasehold,
    Hetero,
    Cswap,
    Units,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Pump,
        Kind::Bloch,
        Kind::Flip,
        Kind::Sweep,
        Kind::Cphase2pi,
        Kind::Cphasehold,
        Kind::Hetero,
        Kind::Cswap,
        Kind::Units,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Pump => "pump",
            Kind::Bloch => "bloch",
            Kind::Flip => "flip",
            Kind::Sweep => "sweep",
            Kind::Cphase2pi => "cphase2pi",
            Kind::Cphasehold => "cphasehold",
            Kind::Hetero => "hetero",
            Kind::Cswap => "cswap",
            Kind::Units => "units",
        }
    }
}

/// Top-level document as written on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawScenario {
    pub kind: Kind,
    #[serde(default = "empty_object")]
    pub params: Value,
    #[serde(default)]
    pub output_dir: Option<String>,
    #[serde(default)]
    pub dt: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub reproducible: bool,
}

fn empty_object() -> Value {
    Value::Object(Map::new())
}

fn one() -> f64 {
    1.0
}
fn default_max_time() -> f64 {
    500.0
}
fn default_settle_tol() -> f64 {
    1e-8
}
fn default_snapshot_interval() -> f64 {
    0.5
}
fn default_samples() -> usize {
    400
}
fn default_products() -> Vec<f64> {
    vec![1.0, 10.0, 100.0]
}
fn default_omega_dd() -> f64 {
    0.05
}
fn default_omega2() -> f64 {
    0.8
}
fn two_pi() -> f64 {
    2.0 * PI
}
fn default_larmor() -> f64 {
    350.0
}
fn default_r() -> f64 {
    1e-6
}
fn half_pi() -> f64 {
    FRAC_PI_2
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitialState {
    /// Equal mixture of the three ground sublevels.
    #[default]
    Mixed,
    /// Random ground-manifold density matrix drawn from `seed`.
    Random,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RampShape {
    Linear,
    #[default]
    SineSquared,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    #[default]
    ToOne,
    ToZero,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpParams {
    pub which: u8,
    #[serde(default = "one")]
    pub pump_rabi: f64,
    #[serde(default = "one")]
    pub gamma: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub repump_rate: f64,
    #[serde(default)]
    pub detuning: f64,
    #[serde(default)]
    pub initial: InitialState,
    #[serde(default = "default_max_time")]
    pub max_time: f64,
    #[serde(default = "default_settle_tol")]
    pub settle_tol: f64,
    #[serde(default = "default_snapshot_interval")]
    pub snapshot_interval: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlochParams {
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default = "one")]
    pub total_rabi: f64,
    #[serde(default = "one")]
    pub gamma: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub repump_rate: f64,
    #[serde(default = "default_max_time")]
    pub max_time: f64,
    #[serde(default = "default_settle_tol")]
    pub settle_tol: f64,
    #[serde(default = "default_snapshot_interval")]
    pub snapshot_interval: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlipParams {
    pub total_rabi: f64,
    /// Ramp length; exactly one of `ramp_time` and `ramp_product` is given.
    #[serde(default)]
    pub ramp_time: Option<f64>,
    /// Ramp length as `T * total_rabi`.
    #[serde(default)]
    pub ramp_product: Option<f64>,
    #[serde(default)]
    pub profile: RampShape,
    #[serde(default)]
    pub direction: Direction,
    #[serde(default)]
    pub phase: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Rerun with decay to measure excited-state involvement.
    #[serde(default)]
    pub dissipative: bool,
    #[serde(default = "one")]
    pub gamma: f64,
    #[serde(default)]
    pub beta: f64,
    #[serde(default)]
    pub repump_rate: f64,
}

impl FlipParams {
    pub fn ramp_time(&self) -> CliResult<f64> {
        match (self.ramp_time, self.ramp_product) {
            (Some(t), None) => Ok(t),
            (None, Some(p)) => Ok(p / self.total_rabi),
            (None, None) => Err(CliError::Validation("params: missing field `ramp_time` (or `ramp_product`)".into())),
            (Some(_), Some(_)) => Err(CliError::Validation("params: give only one of `ramp_time` and `ramp_product`".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepParams {
    pub total_rabi: f64,
    #[serde(default = "default_products")]
    pub products: Vec<f64>,
    #[serde(default)]
    pub profile: RampShape,
    #[serde(default)]
    pub direction: Direction,
    /// Step in units of `1 / total_rabi`; the top-level `dt` overrides it.
    #[serde(default)]
    pub dt_scaled: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cphase2piParams {
    #[serde(default = "one")]
    pub omega_l: f64,
    #[serde(default = "default_omega_dd")]
    pub omega_dd: f64,
    /// Defaults to `omega_dd / 20`.
    #[serde(default)]
    pub rf_rabi: Option<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum HoldProfile {
    Rectangular { height: f64, length: f64 },
    Trapezoid { height: f64, rise: f64, flat: f64 },
    Piecewise { knots: Vec<[f64; 2]> },
}

impl HoldProfile {
    pub fn build(&self) -> cptq::Result<cptq::two_qubit::CouplingProfile> {
        use cptq::two_qubit::CouplingProfile as P;
        match self {
            HoldProfile::Rectangular { height, length } => P::rectangular(*height, *length),
            HoldProfile::Trapezoid { height, rise, flat } => P::trapezoid(*height, *rise, *flat),
            HoldProfile::Piecewise { knots } => P::piecewise_linear(knots.iter().map(|k| (k[0], k[1])).collect()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CphaseholdParams {
    #[serde(default = "one")]
    pub omega_l: f64,
    #[serde(default = "default_omega_dd")]
    pub omega_dd: f64,
    /// Constant-coupling hold; defaults to `pi / omega_dd`.
    #[serde(default)]
    pub hold_time: Option<f64>,
    /// Time-dependent coupling instead of a constant hold.
    #[serde(default)]
    pub profile: Option<HoldProfile>,
    /// Window for `profile`; defaults to the profile length.
    #[serde(default)]
    pub total_time: Option<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeteroParams {
    #[serde(default = "one")]
    pub omega1: f64,
    #[serde(default = "default_omega2")]
    pub omega2: f64,
    #[serde(default = "default_omega_dd")]
    pub omega_dd: f64,
    pub which: String,
    #[serde(default = "two_pi")]
    pub area: f64,
    /// Defaults to a twentieth of the line separation.
    #[serde(default)]
    pub rf_rabi: Option<f64>,
    #[serde(default)]
    pub carrier_detuning: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CswapParams {
    #[serde(default = "one")]
    pub omega1: f64,
    #[serde(default = "default_omega2")]
    pub omega2: f64,
    #[serde(default = "default_omega_dd")]
    pub omega_dd: f64,
    #[serde(default)]
    pub rf_rabi: Option<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsParams {
    #[serde(default = "default_larmor")]
    pub larmor1_khz_per_gauss: f64,
    /// Defaults to `larmor1_khz_per_gauss`.
    #[serde(default)]
    pub larmor2_khz_per_gauss: Option<f64>,
    #[serde(default = "one")]
    pub b_gauss: f64,
    /// Interatomic distance in metres.
    #[serde(default = "default_r")]
    pub r: f64,
    #[serde(default = "half_pi")]
    pub theta_s: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    Pump(PumpParams),
    Bloch(BlochParams),
    Flip(FlipParams),
    Sweep(SweepParams),
    Cphase2pi(Cphase2piParams),
    Cphasehold(CphaseholdParams),
    Hetero(HeteroParams),
    Cswap(CswapParams),
    Units(UnitsParams),
}

fn typed<T: for<'de> Deserialize<'de>>(v: &Value) -> CliResult<T> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Validation(format!("params: {e}")))
}

impl Params {
    pub fn parse(kind: Kind, v: &Value) -> CliResult<Self> {
        Ok(match kind {
            Kind::Pump => Params::Pump(typed(v)?),
            Kind::Bloch => Params::Bloch(typed(v)?),
            Kind::Flip => Params::Flip(typed(v)?),
            Kind::Sweep => Params::Sweep(typed(v)?),
            Kind::Cphase2pi => Params::Cphase2pi(typed(v)?),
            Kind::Cphasehold => Params::Cphasehold(typed(v)?),
            Kind::Hetero => Params::Hetero(typed(v)?),
            Kind::Cswap => Params::Cswap(typed(v)?),
            Kind::Units => Params::Units(typed(v)?),
        })
    }

    pub fn to_value(&self) -> Value {
        let v = match self {
            Params::Pump(p) => serde_json::to_value(p),
            Params::Bloch(p) => serde_json::to_value(p),
            Params::Flip(p) => serde_json::to_value(p),
            Params::Sweep(p) => serde_json::to_value(p),
            Params::Cphase2pi(p) => serde_json::to_value(p),
            Params::Cphasehold(p) => serde_json::to_value(p),
            Params::Hetero(p) => serde_json::to_value(p),
            Params::Cswap(p) => serde_json::to_value(p),
            Params::Units(p) => serde_json::to_value(p),
        };
        v.expect("params serialize")
    }
}

/// Fully resolved scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub kind: Kind,
    pub params: Params,
    pub output_dir: Option<String>,
    pub dt: Option<f64>,
    pub seed: u64,
    pub reproducible: bool,
}

impl Scenario {
    pub fn from_value(v: Value) -> CliResult<Self> {
        let raw: RawScenario = serde_json::from_value(v).map_err(|e| CliError::Validation(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn from_raw(raw: RawScenario) -> CliResult<Self> {
        if let Some(dt) = raw.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return Err(CliError::Validation(format!("dt: must be positive, got {dt}")));
            }
        }
        Ok(Self {
            kind: raw.kind,
            params: Params::parse(raw.kind, &raw.params)?,
            output_dir: raw.output_dir,
            dt: raw.dt,
            seed: raw.seed.unwrap_or(0),
            reproducible: raw.reproducible,
        })
    }

    pub fn from_json_str(text: &str, overrides: &[String]) -> CliResult<Self> {
        let mut v: Value = serde_json::from_str(text).map_err(|e| CliError::Validation(format!("config is not valid JSON: {e}")))?;
        for o in overrides {
            apply_override(&mut v, o)?;
        }
        Self::from_value(v)
    }

    pub fn load(path: &Path, overrides: &[String]) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text, overrides)
    }

    /// The resolved document with every default filled in; parsing it again
    /// gives back the same scenario.
    pub fn echo(&self) -> Value {
        serde_json::to_value(RawScenario {
            kind: self.kind,
            params: self.params.to_value(),
            output_dir: self.output_dir.clone(),
            dt: self.dt,
            seed: Some(self.seed),
            reproducible: self.reproducible,
        })
        .expect("scenario serializes")
    }
}

/// Applies `key.path=value`; the value is read as JSON when it parses and
/// as a plain string otherwise.
pub fn apply_override(doc: &mut Value, spec: &str) -> CliResult<()> {
    let (path, raw) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Validation(format!("--set expects key=value, got {spec:?}")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Validation(format!("--set: malformed key path {path:?}")));
    }
    let mut node = doc;
    for key in &keys[..keys.len() - 1] {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| CliError::Validation(format!("--set: {path:?} descends into a non-object")))?;
        node = obj.entry(key.to_string()).or_insert_with(empty_object);
    }
    node.as_object_mut()
        .ok_or_else(|| CliError::Validation(format!("--set: {path:?} descends into a non-object")))?
        .insert(keys[keys.len() - 1].to_string(), value);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn missing_key_is_named() {
        let err = Scenario::from_value(json!({"kind": "flip", "params": {"ramp_time": 1.0}})).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        assert!(err.to_string().contains("total_rabi"), "{err}");
    }

    #[test]
    fn unknown_keys_rejected() {
        let top = Scenario::from_value(json!({"kind": "pump", "params": {"which": 0}, "colour": 1})).unwrap_err();
        assert!(top.to_string().contains("colour"));
        let inner = Scenario::from_value(json!({"kind": "pump", "params": {"which": 0, "rabi": 2}})).unwrap_err();
        assert!(inner.to_string().contains("rabi"));
        assert!(Scenario::from_value(json!({"kind": "teleport"})).is_err());
    }

    #[test]
    fn overrides_follow_dot_paths() {
        let s = Scenario::from_json_str(
            r#"{"kind": "pump", "params": {"which": 0}}"#,
            &["params.which=1".into(), "dt=0.02".into(), "params.initial=random".into()],
        )
        .unwrap();
        match s.params {
            Params::Pump(p) => {
                assert_eq!(p.which, 1);
                assert_eq!(p.initial, InitialState::Random);
            }
            _ => unreachable!(),
        }
        assert_eq!(s.dt, Some(0.02));
        assert!(Scenario::from_json_str(r#"{"kind": "pump"}"#, &["params".into()]).is_err());
    }

    #[test]
    fn echo_round_trips() {
        let s = Scenario::from_value(json!({
            "kind": "cphasehold",
            "params": {"profile": {"shape": "trapezoid", "height": 0.05, "rise": 5.0, "flat": 10.0}},
            "seed": 3
        }))
        .unwrap();
        let again = Scenario::from_value(s.echo()).unwrap();
        assert_eq!(s, again);
        assert_eq!(s.echo(), again.echo());
    }

    #[test]
    fn flip_needs_one_ramp_length() {
        let p: FlipParams = serde_json::from_value(json!({"total_rabi": 10.0})).unwrap();
        assert!(p.ramp_time().is_err());
        let p: FlipParams = serde_json::from_value(json!({"total_rabi": 10.0, "ramp_product": 200.0})).unwrap();
        assert_eq!(p.ramp_time().unwrap(), 20.0);
    }
}
