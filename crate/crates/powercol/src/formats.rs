//! JSON encodings of library objects. Rationals are always `"p/q"`.

use serde::Serialize;
use serde_json::{json, Value};

use powercol_core::density::WeakOrientation;
use powercol_core::rational_string;

/// `[{u, v, wuv, wvu}, ...]` in edge order.
pub fn weak_orientation_json(w: &WeakOrientation) -> Value {
    Value::Array(
        w.iter()
            .map(|(u, v, a, b)| json!({ "u": u, "v": v, "wuv": rational_string(&a), "wvu": rational_string(&b) }))
            .collect(),
    )
}

/// One compact JSON document per line.
pub fn json_lines<T: Serialize>(items: &[T]) -> serde_json::Result<String> {
    let mut out = String::new();
    for item in items {
        out.push_str(&serde_json::to_string(item)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}
