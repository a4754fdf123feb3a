//! JSON scenario files.
//!
//! ```json
//! {
//!   "dimension": 3,
//!   "hbar": 1.0,
//!   "state": {"preset": "spin1-theta", "theta": 0.3927},
//!   "operator_a": {"preset": "spin", "j": 1, "component": "x"},
//!   "operator_b": {"preset": "spin", "j": 1, "component": "y"},
//!   "perp": {"preset": "spin-basis", "j": 1, "m": 0},
//!   "bounds": ["mp-plus", "mp-minus", "gen-sum-hrs"]
//! }
//! ```
//!
//! Complex numbers are `[re, im]` pairs, vectors are arrays of pairs and
//! matrices are arrays of rows. `perp` is `"none"`, a vector literal, a state
//! preset, or `{"optimize": {"objective": ..., "restarts": ..., ...}}`.
//! Preset operators without their own `hbar` inherit the scenario's.

use serde_json::{json, Map, Value};
use thiserror::Error;

use uncertainty::bounds::Family;
use uncertainty::hilbert::{inner, HermitianOperator, StateVector, C64};
use uncertainty::operators::{
    oscillator_operator, spin1_theta_state, spin_basis_state, spin_operator, Axis,
    OscillatorLabel, Quadrature, SpinLabel,
};
use uncertainty::tol;
use uncertainty::OptimizeConfig;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: &str, message: impl ToString) -> ScenarioError {
    ScenarioError::Field {
        field: field.to_string(),
        message: message.to_string(),
    }
}

type Result<T> = std::result::Result<T, ScenarioError>;

#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    Literal(Vec<C64>),
    SpinBasis { j: f64, m: f64 },
    Spin1Theta { theta: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum OperatorSpec {
    Literal(Vec<Vec<C64>>),
    Spin {
        j: f64,
        component: Axis,
        hbar: Option<f64>,
    },
    Oscillator {
        dim: usize,
        component: Quadrature,
        hbar: Option<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeSpec {
    pub objective: Family,
    pub restarts: Option<usize>,
    pub initial_step: Option<f64>,
    pub shrink_factor: Option<f64>,
    pub step_floor: Option<f64>,
    pub seed: Option<u64>,
}

impl OptimizeSpec {
    pub fn config(&self) -> OptimizeConfig {
        let mut config = OptimizeConfig::new(self.objective);
        if let Some(v) = self.restarts {
            config.restarts = v;
        }
        if let Some(v) = self.initial_step {
            config.initial_step = v;
        }
        if let Some(v) = self.shrink_factor {
            config.shrink_factor = v;
        }
        if let Some(v) = self.step_floor {
            config.step_floor = v;
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        config
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PerpSpec {
    None,
    State(StateSpec),
    Optimize(OptimizeSpec),
}

/// The document as written, before preset resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDoc {
    pub dimension: usize,
    pub hbar: f64,
    pub state: StateSpec,
    pub operator_a: OperatorSpec,
    pub operator_b: OperatorSpec,
    pub perp: PerpSpec,
    pub bounds: Vec<Family>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Perp {
    None,
    State(StateVector),
    Optimize(OptimizeConfig),
}

/// A validated scenario with presets resolved.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub doc: ScenarioDoc,
    pub psi: StateVector,
    pub a: HermitianOperator,
    pub b: HermitianOperator,
    pub perp: Perp,
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let value: Value = serde_json::from_str(text)?;
    let doc = decode_doc(&value)?;
    resolve(doc)
}

/// Pretty-printed JSON document that [`parse_scenario`] reads back unchanged.
pub fn print_scenario(doc: &ScenarioDoc) -> String {
    let perp = match &doc.perp {
        PerpSpec::None => json!("none"),
        PerpSpec::State(s) => encode_state(s),
        PerpSpec::Optimize(o) => {
            let mut m = Map::new();
            m.insert("objective".into(), json!(o.objective.name()));
            if let Some(v) = o.restarts {
                m.insert("restarts".into(), json!(v));
            }
            if let Some(v) = o.initial_step {
                m.insert("initial_step".into(), json!(v));
            }
            if let Some(v) = o.shrink_factor {
                m.insert("shrink_factor".into(), json!(v));
            }
            if let Some(v) = o.step_floor {
                m.insert("step_floor".into(), json!(v));
            }
            if let Some(v) = o.seed {
                m.insert("seed".into(), json!(v));
            }
            json!({ "optimize": m })
        }
    };
    let value = json!({
        "dimension": doc.dimension,
        "hbar": doc.hbar,
        "state": encode_state(&doc.state),
        "operator_a": encode_operator(&doc.operator_a),
        "operator_b": encode_operator(&doc.operator_b),
        "perp": perp,
        "bounds": doc.bounds.iter().map(|f| f.name()).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&value).expect("JSON values always serialize")
}

fn encode_complex(z: &C64) -> Value {
    json!([z.re, z.im])
}

fn encode_state(spec: &StateSpec) -> Value {
    match spec {
        StateSpec::Literal(v) => Value::Array(v.iter().map(encode_complex).collect()),
        StateSpec::SpinBasis { j, m } => json!({"preset": "spin-basis", "j": j, "m": m}),
        StateSpec::Spin1Theta { theta } => json!({"preset": "spin1-theta", "theta": theta}),
    }
}

fn encode_operator(spec: &OperatorSpec) -> Value {
    let with_hbar = |mut v: Value, hbar: &Option<f64>| {
        if let Some(h) = hbar {
            v["hbar"] = json!(h);
        }
        v
    };
    match spec {
        OperatorSpec::Literal(rows) => Value::Array(
            rows.iter()
                .map(|r| Value::Array(r.iter().map(encode_complex).collect()))
                .collect(),
        ),
        OperatorSpec::Spin { j, component, hbar } => with_hbar(
            json!({"preset": "spin", "j": j, "component": component.to_string()}),
            hbar,
        ),
        OperatorSpec::Oscillator {
            dim,
            component,
            hbar,
        } => {
            let c = match component {
                Quadrature::Position => "x",
                Quadrature::Momentum => "p",
            };
            with_hbar(json!({"preset": "oscillator", "dim": dim, "component": c}), hbar)
        }
    }
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str, field: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| field_err(field, format!("missing `{key}`")))
}

fn as_f64(value: &Value, field: &str) -> Result<f64> {
    value
        .as_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| field_err(field, "expected a finite number"))
}

fn as_usize(value: &Value, field: &str) -> Result<usize> {
    value
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| field_err(field, "expected a nonnegative integer"))
}

fn as_str<'a>(value: &'a Value, field: &str) -> Result<&'a str> {
    value
        .as_str()
        .ok_or_else(|| field_err(field, "expected a string"))
}

fn decode_complex(value: &Value, field: &str) -> Result<C64> {
    match value.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(C64::new(as_f64(re, field)?, as_f64(im, field)?)),
        _ => Err(field_err(field, "expected a [re, im] pair")),
    }
}

fn decode_vector(items: &[Value], field: &str) -> Result<Vec<C64>> {
    items
        .iter()
        .enumerate()
        .map(|(i, v)| decode_complex(v, &format!("{field}[{i}]")))
        .collect()
}

fn preset_object<'a>(value: &'a Value, field: &str) -> Result<(&'a str, &'a Map<String, Value>)> {
    let obj = value
        .as_object()
        .ok_or_else(|| field_err(field, "expected an array literal or a preset object"))?;
    let name = as_str(get(obj, "preset", field)?, &format!("{field}.preset"))?;
    Ok((name, obj))
}

fn decode_state(value: &Value, field: &str) -> Result<StateSpec> {
    if let Some(items) = value.as_array() {
        return Ok(StateSpec::Literal(decode_vector(items, field)?));
    }
    let (name, obj) = preset_object(value, field)?;
    let num = |key: &str| as_f64(get(obj, key, field)?, &format!("{field}.{key}"));
    match name {
        "spin-basis" => Ok(StateSpec::SpinBasis {
            j: num("j")?,
            m: num("m")?,
        }),
        "spin1-theta" => Ok(StateSpec::Spin1Theta {
            theta: num("theta")?,
        }),
        other => Err(field_err(
            &format!("{field}.preset"),
            format!("unknown state preset `{other}` (expected spin-basis or spin1-theta)"),
        )),
    }
}

fn decode_operator(value: &Value, field: &str) -> Result<OperatorSpec> {
    if let Some(rows) = value.as_array() {
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let row_field = format!("{field}[{i}]");
                let items = row
                    .as_array()
                    .ok_or_else(|| field_err(&row_field, "expected a row of [re, im] pairs"))?;
                decode_vector(items, &row_field)
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(OperatorSpec::Literal(rows));
    }
    let (name, obj) = preset_object(value, field)?;
    let hbar = obj
        .get("hbar")
        .map(|v| as_f64(v, &format!("{field}.hbar")))
        .transpose()?;
    let component_field = format!("{field}.component");
    let component = as_str(get(obj, "component", field)?, &component_field)?;
    match name {
        "spin" => Ok(OperatorSpec::Spin {
            j: as_f64(get(obj, "j", field)?, &format!("{field}.j"))?,
            component: component
                .parse()
                .map_err(|e: uncertainty::Error| field_err(&component_field, e))?,
            hbar,
        }),
        "oscillator" => Ok(OperatorSpec::Oscillator {
            dim: as_usize(get(obj, "dim", field)?, &format!("{field}.dim"))?,
            component: component
                .parse()
                .map_err(|e: uncertainty::Error| field_err(&component_field, e))?,
            hbar,
        }),
        other => Err(field_err(
            &format!("{field}.preset"),
            format!("unknown operator preset `{other}` (expected spin or oscillator)"),
        )),
    }
}

fn decode_perp(value: &Value) -> Result<PerpSpec> {
    let field = "perp";
    if value.as_str() == Some("none") {
        return Ok(PerpSpec::None);
    }
    if let Some(obj) = value.as_object() {
        if let Some(opt) = obj.get("optimize") {
            let f = "perp.optimize";
            let opt = opt
                .as_object()
                .ok_or_else(|| field_err(f, "expected an object"))?;
            let objective_field = format!("{f}.objective");
            let objective: Family = as_str(get(opt, "objective", f)?, &objective_field)?
                .parse()
                .map_err(|e: uncertainty::Error| field_err(&objective_field, e))?;
            let num = |key: &str| {
                opt.get(key)
                    .map(|v| as_f64(v, &format!("{f}.{key}")))
                    .transpose()
            };
            let int = |key: &str| {
                opt.get(key)
                    .map(|v| as_usize(v, &format!("{f}.{key}")))
                    .transpose()
            };
            return Ok(PerpSpec::Optimize(OptimizeSpec {
                objective,
                restarts: int("restarts")?,
                initial_step: num("initial_step")?,
                shrink_factor: num("shrink_factor")?,
                step_floor: num("step_floor")?,
                seed: opt
                    .get("seed")
                    .map(|v| {
                        v.as_u64()
                            .ok_or_else(|| field_err(&format!("{f}.seed"), "expected an unsigned integer"))
                    })
                    .transpose()?,
            }));
        }
    }
    if value.is_string() {
        return Err(field_err(field, "expected \"none\", a state, or {\"optimize\": {...}}"));
    }
    Ok(PerpSpec::State(decode_state(value, field)?))
}

const FIELDS: [&str; 7] = [
    "dimension",
    "hbar",
    "state",
    "operator_a",
    "operator_b",
    "perp",
    "bounds",
];

fn decode_doc(value: &Value) -> Result<ScenarioDoc> {
    let obj = value
        .as_object()
        .ok_or_else(|| field_err("<root>", "expected a JSON object"))?;
    if let Some(unknown) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
        return Err(field_err(unknown, "unknown field"));
    }
    let missing = |key: &str| field_err(key, "missing required field");
    let dimension = as_usize(obj.get("dimension").ok_or_else(|| missing("dimension"))?, "dimension")?;
    let hbar = match obj.get("hbar") {
        Some(v) => as_f64(v, "hbar")?,
        None => 1.0,
    };
    if hbar <= 0.0 {
        return Err(field_err("hbar", "must be positive"));
    }
    let bounds_value = obj.get("bounds").ok_or_else(|| missing("bounds"))?;
    let bounds = bounds_value
        .as_array()
        .ok_or_else(|| field_err("bounds", "expected an array of family names"))?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let f = format!("bounds[{i}]");
            as_str(v, &f)?
                .parse::<Family>()
                .map_err(|e| field_err(&f, e))
        })
        .collect::<Result<Vec<_>>>()?;
    if bounds.is_empty() {
        return Err(field_err("bounds", "at least one family is required"));
    }
    Ok(ScenarioDoc {
        dimension,
        hbar,
        state: decode_state(obj.get("state").ok_or_else(|| missing("state"))?, "state")?,
        operator_a: decode_operator(
            obj.get("operator_a").ok_or_else(|| missing("operator_a"))?,
            "operator_a",
        )?,
        operator_b: decode_operator(
            obj.get("operator_b").ok_or_else(|| missing("operator_b"))?,
            "operator_b",
        )?,
        perp: decode_perp(obj.get("perp").ok_or_else(|| missing("perp"))?)?,
        bounds,
    })
}

fn check_dim(field: &str, found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(field_err(
            field,
            format!("dimension mismatch: scenario dimension is {expected}, got {found}"),
        ));
    }
    Ok(())
}

fn resolve_state(spec: &StateSpec, field: &str, dimension: usize) -> Result<StateVector> {
    let state = match spec {
        StateSpec::Literal(amps) => {
            check_dim(field, amps.len(), dimension)?;
            StateVector::from_amplitudes(amps.clone()).map_err(|e| field_err(field, e))?
        }
        StateSpec::SpinBasis { j, m } => spin_basis_state(*j, *m).map_err(|e| field_err(field, e))?,
        StateSpec::Spin1Theta { theta } => spin1_theta_state(*theta),
    };
    check_dim(field, state.dim(), dimension)?;
    Ok(state)
}

fn resolve_operator(
    spec: &OperatorSpec,
    field: &str,
    dimension: usize,
    default_hbar: f64,
) -> Result<HermitianOperator> {
    let op = match spec {
        OperatorSpec::Literal(rows) => {
            check_dim(field, rows.len(), dimension)?;
            for (i, row) in rows.iter().enumerate() {
                check_dim(&format!("{field}[{i}]"), row.len(), dimension)?;
            }
            HermitianOperator::from_rows(rows.clone()).map_err(|e| field_err(field, e))?
        }
        OperatorSpec::Spin { j, component, hbar } => spin_operator(
            SpinLabel::new(*j, *component, hbar.unwrap_or(default_hbar))
                .map_err(|e| field_err(field, e))?,
        ),
        OperatorSpec::Oscillator {
            dim,
            component,
            hbar,
        } => oscillator_operator(
            OscillatorLabel::new(*dim, *component, hbar.unwrap_or(default_hbar))
                .map_err(|e| field_err(field, e))?,
        ),
    };
    check_dim(field, op.dim(), dimension)?;
    Ok(op)
}

fn resolve(doc: ScenarioDoc) -> Result<Scenario> {
    if doc.dimension == 0 {
        return Err(field_err("dimension", "must be positive"));
    }
    let psi = resolve_state(&doc.state, "state", doc.dimension)?;
    let a = resolve_operator(&doc.operator_a, "operator_a", doc.dimension, doc.hbar)?;
    let b = resolve_operator(&doc.operator_b, "operator_b", doc.dimension, doc.hbar)?;
    let perp = match &doc.perp {
        PerpSpec::None => {
            if let Some(f) = doc.bounds.iter().find(|f| !f.allows_null_perp()) {
                return Err(field_err(
                    "bounds",
                    format!("family `{f}` needs a perp state but perp is \"none\""),
                ));
            }
            Perp::None
        }
        PerpSpec::State(spec) => {
            let perp = resolve_state(spec, "perp", doc.dimension)?;
            let overlap = inner(perp.ket(), psi.ket())
                .map_err(|e| field_err("perp", e))?
                .norm();
            if overlap > tol::ORTHOGONALITY {
                return Err(field_err(
                    "perp",
                    format!("not orthogonal to state: |⟨ψ⊥|ψ⟩| = {overlap:e}"),
                ));
            }
            Perp::State(perp)
        }
        PerpSpec::Optimize(spec) => {
            let config = spec.config();
            config
                .validate()
                .map_err(|e| field_err("perp.optimize", e))?;
            Perp::Optimize(config)
        }
    };
    Ok(Scenario {
        doc,
        psi,
        a,
        b,
        perp,
    })
}
