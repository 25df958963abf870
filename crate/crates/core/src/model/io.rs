//! Instance file format:
//!
//! ```json
//! {"n":2,"vertices":["00","11"],"c":["1","3"],"start":0}
//! ```
//!
//! Bitstrings carry coordinate 1 first. Objective entries are decimal strings
//! because they overflow fixed-width integers on the geometric instances.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{parse_int, BitVertex, ExactInt, Instance, ModelError, Polytope};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    n: usize,
    vertices: Vec<String>,
    c: Vec<Value>,
    start: usize,
}

#[derive(Serialize)]
struct WireInstance {
    n: usize,
    vertices: Vec<String>,
    c: Vec<String>,
    start: usize,
}

pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    if raw.n == 0 {
        return Err(ModelError::ZeroDimension);
    }
    let mut vertices = Vec::with_capacity(raw.vertices.len());
    for (index, s) in raw.vertices.iter().enumerate() {
        let v: BitVertex = s.parse()?;
        if v.dim() != raw.n {
            return Err(ModelError::WrongLength { index, expected: raw.n, found: v.dim() });
        }
        vertices.push(v);
    }
    let polytope = Polytope::new(raw.n, vertices)?;
    let c = raw
        .c
        .iter()
        .enumerate()
        .map(|(index, entry)| objective_entry(index, entry))
        .collect::<Result<Vec<_>, _>>()?;
    Instance::new(polytope, c, raw.start)
}

fn objective_entry(index: usize, entry: &Value) -> Result<ExactInt, ModelError> {
    let parsed = match entry {
        Value::String(s) => parse_int(s),
        Value::Number(num) if num.is_i64() || num.is_u64() => parse_int(&num.to_string()),
        _ => None,
    };
    parsed.ok_or_else(|| ModelError::NonInteger {
        index,
        value: match entry {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        },
    })
}

/// Compact single-line JSON, fields in the order `n, vertices, c, start`.
pub fn write_instance(instance: &Instance) -> String {
    let wire = WireInstance {
        n: instance.dim(),
        vertices: instance.polytope().vertices().iter().map(|v| v.to_string()).collect(),
        c: instance.objective().iter().map(|x| x.to_string()).collect(),
        start: instance.start(),
    };
    serde_json::to_string(&wire).expect("instance serialization cannot fail")
}
