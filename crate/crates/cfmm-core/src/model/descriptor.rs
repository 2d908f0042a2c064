//! Model descriptors: building an [`AmmModel`] from a kind string plus
//! named numeric parameters, or from the JSON document form
//!
//! ```text
//! { "kind": "balancer", "params": { "w": 0.75 } }
//! ```
//!
//! Both entry points share one table of kinds and parameter names, so the
//! command-line `--model kind --param k=v` path and the JSON file path
//! accept exactly the same inputs and produce exactly the same errors.

use serde_json::Value;

use super::AmmModel;
use crate::error::AmmError;

/// Parameter table entry: name, required flag, default when optional.
struct ParamSpec {
    name: &'static str,
    required: bool,
    default: f64,
}

const fn required(name: &'static str) -> ParamSpec {
    ParamSpec { name, required: true, default: f64::NAN }
}

const fn optional(name: &'static str, default: f64) -> ParamSpec {
    ParamSpec { name, required: false, default }
}

/// All descriptor kinds with their parameter lists.
const KINDS: &[(&str, &[ParamSpec])] = &[
    ("uniswap-v2", &[]),
    ("balancer", &[required("w")]),
    ("uniswap-v3", &[required("alpha"), required("beta")]),
    ("mstable", &[]),
    ("stableswap", &[required("c")]),
    ("lstableswap", &[required("c")]),
    ("curve", &[required("c")]),
    ("dodo", &[required("p_ext"), required("c")]),
    ("sdamm-sinh", &[required("q"), optional("c", 1.0)]),
];

fn kind_list() -> String {
    KINDS.iter().map(|(k, _)| *k).collect::<Vec<_>>().join(", ")
}

/// Builds a model from a kind string and `(name, value)` parameter pairs.
///
/// Unknown kinds, unknown or duplicated parameter names, and missing
/// required parameters are all rejected with messages naming the offender;
/// range violations surface as the usual parameter errors from
/// [`AmmModel::validate`].
///
/// # Errors
/// [`AmmError::Descriptor`] for structural problems,
/// [`AmmError::InvalidParameter`] for out-of-range values.
pub fn model_from_parts(kind: &str, params: &[(String, f64)]) -> Result<AmmModel, AmmError> {
    let Some((_, specs)) = KINDS.iter().find(|(k, _)| *k == kind) else {
        return Err(AmmError::Descriptor(format!(
            "unknown model kind `{kind}` (expected one of: {})",
            kind_list()
        )));
    };

    for (i, (name, _)) in params.iter().enumerate() {
        if !specs.iter().any(|s| s.name == name) {
            let expected = if specs.is_empty() {
                "none".to_string()
            } else {
                specs.iter().map(|s| s.name).collect::<Vec<_>>().join(", ")
            };
            return Err(AmmError::Descriptor(format!(
                "unknown parameter `{name}` for kind `{kind}` (expected: {expected})"
            )));
        }
        if params[..i].iter().any(|(prev, _)| prev == name) {
            return Err(AmmError::Descriptor(format!("duplicate parameter `{name}`")));
        }
    }

    let get = |spec: &ParamSpec| -> Result<f64, AmmError> {
        match params.iter().find(|(name, _)| name == spec.name) {
            Some((_, v)) => Ok(*v),
            None if spec.required => Err(AmmError::Descriptor(format!(
                "missing required parameter `{}` for kind `{kind}`",
                spec.name
            ))),
            None => Ok(spec.default),
        }
    };

    let model = match kind {
        "uniswap-v2" => AmmModel::UniswapV2,
        "balancer" => AmmModel::Balancer { w: get(&specs[0])? },
        "uniswap-v3" => AmmModel::UniswapV3 { alpha: get(&specs[0])?, beta: get(&specs[1])? },
        "mstable" => AmmModel::MStable,
        "stableswap" => AmmModel::StableSwap { c: get(&specs[0])? },
        "lstableswap" => AmmModel::LStableSwap { c: get(&specs[0])? },
        "curve" => AmmModel::Curve { c: get(&specs[0])? },
        "dodo" => AmmModel::Dodo { p_ext: get(&specs[0])?, c: get(&specs[1])? },
        "sdamm-sinh" => {
            let q = get(&specs[0])?;
            let c = get(&specs[1])?;
            AmmModel::Sdamm(super::SdammUtility::Sinh { c, q })
        }
        _ => unreachable!("kind membership checked above"),
    };
    model.validate()?;
    Ok(model)
}

/// Parses the JSON document form of a descriptor.
///
/// The document must be an object with a string `kind` and an optional
/// `params` object mapping names to numbers; any other key is rejected.
///
/// # Errors
/// [`AmmError::Descriptor`] naming the structural problem, or the errors
/// of [`model_from_parts`].
pub fn model_from_descriptor(json: &str) -> Result<AmmModel, AmmError> {
    let doc: Value = serde_json::from_str(json)
        .map_err(|e| AmmError::Descriptor(format!("invalid JSON: {e}")))?;
    let Value::Object(map) = doc else {
        return Err(AmmError::Descriptor("descriptor must be a JSON object".into()));
    };

    for key in map.keys() {
        if key != "kind" && key != "params" {
            return Err(AmmError::Descriptor(format!(
                "unknown descriptor key `{key}` (expected: kind, params)"
            )));
        }
    }

    let kind = match map.get("kind") {
        Some(Value::String(s)) => s.clone(),
        Some(other) => {
            return Err(AmmError::Descriptor(format!(
                "`kind` must be a string, got {other}"
            )))
        }
        None => return Err(AmmError::Descriptor("missing `kind`".into())),
    };

    let mut params: Vec<(String, f64)> = Vec::new();
    match map.get("params") {
        None => {}
        Some(Value::Object(p)) => {
            for (name, value) in p {
                let Some(v) = value.as_f64() else {
                    return Err(AmmError::Descriptor(format!(
                        "parameter `{name}` must be a number, got {value}"
                    )));
                };
                params.push((name.clone(), v));
            }
        }
        Some(other) => {
            return Err(AmmError::Descriptor(format!(
                "`params` must be an object, got {other}"
            )))
        }
    }

    model_from_parts(&kind, &params)
}
