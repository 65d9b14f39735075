//! Small shared helpers for the JSON wire formats.

use num_complex::Complex;
use serde_json::{json, Map, Value};

use crate::scalar::Real;

pub(crate) fn complex_to_json<T: Real>(z: Complex<T>) -> Value {
    json!({
        "re": z.re.to_f64().unwrap_or(f64::NAN),
        "im": z.im.to_f64().unwrap_or(f64::NAN),
    })
}

pub(crate) fn complex_from_json<T: Real>(value: &Value) -> Result<Complex<T>, String> {
    let obj = value
        .as_object()
        .ok_or_else(|| format!("expected {{\"re\",\"im\"}} object, got {value}"))?;
    let field = |name: &str| -> Result<T, String> {
        obj.get(name)
            .and_then(Value::as_f64)
            .map(T::of)
            .ok_or_else(|| format!("missing or non-numeric `{name}` field"))
    };
    Ok(Complex::new(field("re")?, field("im")?))
}

pub(crate) fn get_object<'a>(value: &'a Value, what: &str) -> Result<&'a Map<String, Value>, String> {
    value.as_object().ok_or_else(|| format!("{what}: expected JSON object"))
}

pub(crate) fn get_array<'a>(value: &'a Value, field: &str) -> Result<&'a Vec<Value>, String> {
    value
        .get(field)
        .and_then(Value::as_array)
        .ok_or_else(|| format!("missing array field `{field}`"))
}

pub(crate) fn get_f64(value: &Value, field: &str) -> Result<f64, String> {
    value
        .get(field)
        .and_then(Value::as_f64)
        .ok_or_else(|| format!("missing or non-numeric field `{field}`"))
}

pub(crate) fn get_str<'a>(value: &'a Value, field: &str) -> Result<&'a str, String> {
    value
        .get(field)
        .and_then(Value::as_str)
        .ok_or_else(|| format!("missing string field `{field}`"))
}
