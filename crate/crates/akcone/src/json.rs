//! JSON forms of models, classes, curve specs and certificates.
//!
//! Coefficients follow `(a; b1..bk)` for `aH - sum bi Ei` on blow-ups and `(a, b)` for
//! `aH1 + bH2` on `S^2 x S^2`. Integers may be given as numbers or decimal strings, rationals
//! as `"p/q"` strings.

use std::path::Path;
use std::str::FromStr;

use akcone_core::cones::{Certificate, Cone, Evidence, Verdict};
use akcone_core::configs::{BundleCase, CurveConeSpec, SpecFlags};
use akcone_core::{IntClass, Model, RayClass};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> InputError {
    InputError::Invalid(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelJson {
    Blowup {
        k: u32,
    },
    #[serde(rename = "s2xs2", alias = "sphere_bundle")]
    SphereBundle,
}

impl From<Model> for ModelJson {
    fn from(m: Model) -> Self {
        match m {
            Model::Blowup(k) => Self::Blowup { k },
            Model::SphereBundle => Self::SphereBundle,
        }
    }
}

impl From<ModelJson> for Model {
    fn from(m: ModelJson) -> Self {
        match m {
            ModelJson::Blowup { k } => Model::Blowup(k),
            ModelJson::SphereBundle => Model::SphereBundle,
        }
    }
}

pub fn model_json(m: Model) -> Value {
    serde_json::to_value(ModelJson::from(m)).expect("model serializes")
}

/// Parse the `--model` flag: `blowup:K`, `bK`, `cp2`, `s2xs2`, or a JSON model object.
pub fn parse_model(s: &str) -> Result<Model, String> {
    let t = s.trim();
    if t.starts_with('{') {
        return serde_json::from_str::<ModelJson>(t).map(Model::from).map_err(|e| e.to_string());
    }
    let lower = t.to_ascii_lowercase();
    let k = match lower.as_str() {
        "s2xs2" | "sphere_bundle" => return Ok(Model::SphereBundle),
        "cp2" => Some("0"),
        _ => lower.strip_prefix("blowup:").or_else(|| lower.strip_prefix('b')),
    };
    k.and_then(|k| k.parse::<u32>().ok())
        .map(Model::Blowup)
        .ok_or_else(|| format!("unknown model '{s}' (expected blowup:K, bK, cp2 or s2xs2)"))
}

/// A coefficient as written in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn to_rational(&self) -> Result<BigRational, InputError> {
        match self {
            Coeff::Int(n) => Ok(BigRational::from_integer(BigInt::from(*n))),
            Coeff::Text(s) => {
                BigRational::from_str(s.trim()).map_err(|_| invalid(format!("'{s}' is not a rational number")))
            }
        }
    }

    pub fn to_integer(&self) -> Result<BigInt, InputError> {
        let q = self.to_rational()?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(invalid(format!("{q} is not an integer")))
        }
    }
}

pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

pub fn rat_json(q: &BigRational) -> Value {
    if q.is_integer() {
        int_json(&q.to_integer())
    } else {
        json!(format!("{}/{}", q.numer(), q.denom()))
    }
}

pub fn coeffs_json(c: &IntClass) -> Value {
    Value::Array(c.coeffs().iter().map(int_json).collect())
}

pub fn ray_json(c: &RayClass) -> Value {
    Value::Array(c.coeffs().iter().map(rat_json).collect())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassLiteral {
    model: ModelJson,
    coeffs: Vec<Coeff>,
}

/// Read an argument as inline JSON, or else as the path of a JSON file.
pub fn load_value(arg: &str) -> Result<Value, InputError> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(serde_json::from_str(t)?);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io { path: arg.to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// A bare comma-separated coefficient list such as `2,1,1,0` or `5,3/2`.
fn bare_list(arg: &str) -> Option<Vec<Coeff>> {
    let t = arg.trim();
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit() || matches!(c, ',' | '/' | '-' | '+' | ' ')) {
        return None;
    }
    Some(t.split(',').map(|s| Coeff::Text(s.trim().to_string())).collect())
}

fn ray_from(model: Model, coeffs: &[Coeff]) -> Result<RayClass, InputError> {
    let v = coeffs.iter().map(Coeff::to_rational).collect::<Result<Vec<_>, _>>()?;
    RayClass::new(model, v).map_err(|e| invalid(e.to_string()))
}

/// A class literal `{"model", "coeffs"}`, or a coefficient array when the model is known.
pub fn ray_from_value(v: &Value, model: Option<Model>) -> Result<RayClass, InputError> {
    match v {
        Value::Object(_) => {
            let lit: ClassLiteral = serde_json::from_value(v.clone())?;
            let m = Model::from(lit.model);
            if let Some(flag) = model {
                if flag != m {
                    return Err(invalid(format!("class is on {m} but --model says {flag}")));
                }
            }
            ray_from(m, &lit.coeffs)
        }
        Value::Array(_) => {
            let m = model.ok_or_else(|| invalid("a bare coefficient array needs --model"))?;
            let coeffs: Vec<Coeff> = serde_json::from_value(v.clone())?;
            ray_from(m, &coeffs)
        }
        _ => Err(invalid("expected a class literal or coefficient array")),
    }
}

pub fn int_from_value(v: &Value, model: Option<Model>) -> Result<IntClass, InputError> {
    let r = ray_from_value(v, model)?;
    r.to_int().ok_or_else(|| invalid(format!("{r} is not an integral class")))
}

/// Read a class argument: inline JSON, a JSON file, or a bare list with `--model`.
pub fn load_ray(arg: &str, model: Option<Model>) -> Result<RayClass, InputError> {
    if let (Some(m), Some(list)) = (model, bare_list(arg)) {
        if !Path::new(arg).exists() {
            return ray_from(m, &list);
        }
    }
    ray_from_value(&load_value(arg)?, model)
}

pub fn load_int(arg: &str, model: Option<Model>) -> Result<IntClass, InputError> {
    let r = load_ray(arg, model)?;
    r.to_int().ok_or_else(|| invalid(format!("{r} is not an integral class")))
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disjoint_minus_ones: Option<u32>,
    #[serde(default)]
    pub top_stratum: bool,
    #[serde(default)]
    pub good: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sphere_bundle_case: Option<BundleJson>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize)]
#[serde(tag = "case", rename_all = "lowercase", deny_unknown_fields)]
pub enum BundleJson {
    I,
    Ii { p: i64 },
    Iii { p: i64 },
    Twisted { s: i64 },
}

impl From<BundleJson> for BundleCase {
    fn from(b: BundleJson) -> Self {
        match b {
            BundleJson::I => BundleCase::I,
            BundleJson::Ii { p } => BundleCase::II { p },
            BundleJson::Iii { p } => BundleCase::III { p },
            BundleJson::Twisted { s } => BundleCase::Twisted { s },
        }
    }
}

impl From<BundleCase> for BundleJson {
    fn from(b: BundleCase) -> Self {
        match b {
            BundleCase::I => BundleJson::I,
            BundleCase::II { p } => BundleJson::Ii { p },
            BundleCase::III { p } => BundleJson::Iii { p },
            BundleCase::Twisted { s } => BundleJson::Twisted { s },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecJson {
    #[serde(default)]
    model: Option<ModelJson>,
    #[serde(default)]
    negative_classes: Vec<Vec<Coeff>>,
    #[serde(default)]
    flags: FlagsJson,
}

/// Parse a curve spec. Its model is the explicit one, else the one implied by the flags,
/// else `fallback` (normally the query class's model).
pub fn spec_from_value(v: &Value, fallback: Option<Model>) -> Result<CurveConeSpec, InputError> {
    let s: SpecJson = serde_json::from_value(v.clone())?;
    let implied = s.flags.disjoint_minus_ones.map(Model::Blowup).or(match s.flags.sphere_bundle_case {
        Some(BundleJson::Twisted { .. }) => Some(Model::Blowup(1)),
        Some(_) => Some(Model::SphereBundle),
        None => None,
    });
    let model = s
        .model
        .map(Model::from)
        .or(implied)
        .or(fallback)
        .ok_or_else(|| invalid("the curve spec does not determine a model"))?;
    let negative_classes = s
        .negative_classes
        .iter()
        .map(|c| {
            let r = ray_from(model, c)?;
            r.to_int().ok_or_else(|| invalid(format!("negative class {r} is not integral")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let flags = SpecFlags {
        disjoint_minus_ones: s.flags.disjoint_minus_ones,
        top_stratum: s.flags.top_stratum,
        good: s.flags.good,
        sphere_bundle_case: s.flags.sphere_bundle_case.map(BundleCase::from),
    };
    Ok(CurveConeSpec { model, negative_classes, flags })
}

pub fn spec_json(s: &CurveConeSpec) -> Value {
    let flags = FlagsJson {
        disjoint_minus_ones: s.flags.disjoint_minus_ones,
        top_stratum: s.flags.top_stratum,
        good: s.flags.good,
        sphere_bundle_case: s.flags.sphere_bundle_case.map(BundleJson::from),
    };
    json!({
        "model": model_json(s.model),
        "negative_classes": s.negative_classes.iter().map(coeffs_json).collect::<Vec<_>>(),
        "flags": flags,
    })
}

pub fn cone_name(c: Cone) -> &'static str {
    match c {
        Cone::Positive => "P",
        Cone::Ck => "CK",
        Cone::Pk => "PK",
        Cone::SkPlus => "SK+",
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::In => "in",
        Verdict::Out => "out",
        Verdict::Boundary => "boundary",
    }
}

pub fn certificate_json(c: &Certificate) -> Value {
    let evidence = match &c.evidence {
        Evidence::PositiveCone { square, orientation, orientation_pairing } => json!({
            "kind": "positive_cone",
            "square": rat_json(square),
            "orientation": coeffs_json(orientation),
            "orientation_pairing": rat_json(orientation_pairing),
        }),
        Evidence::Violation { class, pairing } => json!({
            "kind": "violation",
            "class": coeffs_json(class),
            "pairing": rat_json(pairing),
        }),
        Evidence::Decomposition(parts) => json!({
            "kind": "decomposition",
            "parts": parts
                .iter()
                .map(|(c, w)| json!({"class": coeffs_json(c), "weight": rat_json(w)}))
                .collect::<Vec<_>>(),
        }),
        Evidence::FiniteCheck { word, reduced, checked } => json!({
            "kind": "finite_check",
            "word": word.iter().map(|r| coeffs_json(r.class())).collect::<Vec<_>>(),
            "reduced": ray_json(reduced),
            "checked": checked
                .iter()
                .map(|(c, p)| json!({"class": coeffs_json(c), "pairing": rat_json(p)}))
                .collect::<Vec<_>>(),
        }),
    };
    json!({
        "cone": cone_name(c.cone),
        "query": ray_json(&c.query),
        "verdict": verdict_name(c.verdict),
        "evidence": evidence,
    })
}
