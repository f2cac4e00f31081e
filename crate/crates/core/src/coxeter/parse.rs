//! JSON front end for Coxeter systems.
//!
//! ```json
//! {
//!   "generators": ["a", "b", "c"],
//!   "labels": [
//!     {"pair": ["a", "b"], "m": 3},
//!     {"pair": ["b", "c"], "m": "inf"}
//!   ],
//!   "default_m": 2
//! }
//! ```
//!
//! `m` is an integer of at least 2 or the string `"inf"`. Pairs not
//! listed get `default_m`, which itself defaults to `"inf"`.

use super::{CoxeterError, CoxeterSystem, Label};
use serde_json::Value;

pub fn parse_coxeter(input: &str) -> Result<CoxeterSystem, CoxeterError> {
    let root: Value =
        serde_json::from_str(input).map_err(|e| CoxeterError::Json(e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| CoxeterError::Field {
        field: "<root>".into(),
        message: "expected a JSON object".into(),
    })?;

    for key in obj.keys() {
        if !matches!(key.as_str(), "generators" | "labels" | "default_m") {
            return Err(CoxeterError::Field {
                field: key.clone(),
                message: "unknown field (expected generators, labels, default_m)".into(),
            });
        }
    }

    let generators = parse_generators(obj.get("generators"))?;
    let default = match obj.get("default_m") {
        None => Label::Infinite,
        Some(v) => parse_label(v, "default_m")?,
    };

    let mut pairs = Vec::new();
    if let Some(labels_val) = obj.get("labels") {
        let arr = labels_val.as_array().ok_or_else(|| CoxeterError::Field {
            field: "labels".into(),
            message: "expected an array of {pair, m} objects".into(),
        })?;
        for (k, entry) in arr.iter().enumerate() {
            let field = format!("labels[{k}]");
            let entry = entry.as_object().ok_or_else(|| CoxeterError::Field {
                field: field.clone(),
                message: "expected an object with fields pair and m".into(),
            })?;
            for key in entry.keys() {
                if !matches!(key.as_str(), "pair" | "m") {
                    return Err(CoxeterError::Field {
                        field: format!("{field}.{key}"),
                        message: "unknown field (expected pair, m)".into(),
                    });
                }
            }
            let pair = entry.get("pair").ok_or_else(|| CoxeterError::Field {
                field: format!("{field}.pair"),
                message: "missing".into(),
            })?;
            let pair = pair.as_array().ok_or_else(|| CoxeterError::Field {
                field: format!("{field}.pair"),
                message: "expected an array of two generator names".into(),
            })?;
            if pair.len() != 2 {
                return Err(CoxeterError::Field {
                    field: format!("{field}.pair"),
                    message: format!("expected two generator names, got {}", pair.len()),
                });
            }
            let mut idx = [0usize; 2];
            for (slot, name_val) in pair.iter().enumerate() {
                let name = name_val.as_str().ok_or_else(|| CoxeterError::Field {
                    field: format!("{field}.pair[{slot}]"),
                    message: "expected a string".into(),
                })?;
                idx[slot] = generators
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| CoxeterError::UnknownGenerator(name.to_string()))?;
            }
            let m_val = entry.get("m").ok_or_else(|| CoxeterError::Field {
                field: format!("{field}.m"),
                message: "missing".into(),
            })?;
            let m = parse_label(m_val, &format!("{field}.m"))?;
            pairs.push((idx[0], idx[1], m));
        }
    }

    CoxeterSystem::new(generators, &pairs, default)
}

fn parse_generators(val: Option<&Value>) -> Result<Vec<String>, CoxeterError> {
    let val = val.ok_or_else(|| CoxeterError::Field {
        field: "generators".into(),
        message: "missing".into(),
    })?;
    let arr = val.as_array().ok_or_else(|| CoxeterError::Field {
        field: "generators".into(),
        message: "expected an array of strings".into(),
    })?;
    let mut out = Vec::with_capacity(arr.len());
    for (k, g) in arr.iter().enumerate() {
        let name = g.as_str().ok_or_else(|| CoxeterError::Field {
            field: format!("generators[{k}]"),
            message: "expected a string".into(),
        })?;
        if name.is_empty() {
            return Err(CoxeterError::Field {
                field: format!("generators[{k}]"),
                message: "empty name".into(),
            });
        }
        out.push(name.to_string());
    }
    Ok(out)
}

fn parse_label(val: &Value, field: &str) -> Result<Label, CoxeterError> {
    match val {
        Value::String(s) if s == "inf" => Ok(Label::Infinite),
        Value::String(s) => Err(CoxeterError::Field {
            field: field.into(),
            message: format!("expected an integer or \"inf\", got \"{s}\""),
        }),
        Value::Number(n) => {
            let m = n.as_u64().ok_or_else(|| CoxeterError::Field {
                field: field.into(),
                message: format!("expected a nonnegative integer, got {n}"),
            })?;
            if m < 2 {
                return Err(CoxeterError::Field {
                    field: field.into(),
                    message: format!("label {m} is below 2"),
                });
            }
            if m > u32::MAX as u64 {
                return Err(CoxeterError::Field {
                    field: field.into(),
                    message: format!("label {m} is out of range"),
                });
            }
            Ok(Label::Finite(m as u32))
        }
        other => Err(CoxeterError::Field {
            field: field.into(),
            message: format!("expected an integer or \"inf\", got {other}"),
        }),
    }
}
