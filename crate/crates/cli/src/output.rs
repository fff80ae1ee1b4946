use clap::ValueEnum;
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Round to 12 significant digits; `-0.0` becomes `0.0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn complex_json(z: Complex64) -> Value {
    json!({"re": round12(z.re), "im": round12(z.im)})
}

fn num_str(x: f64) -> String {
    let r = round12(x);
    if r != 0.0 && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    if round12(z.im) < 0.0 {
        format!("{} - {}i", num_str(z.re), num_str(-z.im))
    } else {
        format!("{} + {}i", num_str(z.re), num_str(z.im))
    }
}

/// Apply [`round12`] to every float in a JSON tree.
pub fn rounded(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(round12(n.as_f64().unwrap_or(0.0))),
        Value::Array(a) => Value::Array(a.into_iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, rounded(v))).collect()),
        other => other,
    }
}

pub fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn weight_str(w: &[i64]) -> String {
    let parts: Vec<String> = w.iter().map(|c| c.to_string()).collect();
    format!("\"{}\"", parts.join(","))
}

pub fn csv_line(fields: &[String]) -> String {
    let mut s = fields.join(",");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(0.123456789012345), 0.123456789012);
        assert_eq!(round12(-0.0), 0.0);
        assert!(round12(-1e-300).is_sign_negative());
        assert_eq!(round12(2.0), 2.0);
    }
}
