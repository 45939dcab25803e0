//! Byte-stable JSON rendering: sorted keys, two-space indentation, and every
//! float printed with 17 significant digits.

use serde_json::{Map, Number, Value};

pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return "null".into();
    }
    if x == 0.0 {
        return "0.0".into();
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci.split_once('e').map_or(0, |(_, e)| e.parse().unwrap_or(0));
    if (-5..17).contains(&exp) {
        let digits = (16 - exp) as usize;
        format!("{x:.digits$}")
    } else {
        sci
    }
}

fn number(n: &Number, out: &mut String) {
    match (n.as_i64(), n.as_u64()) {
        (Some(i), _) => out.push_str(&i.to_string()),
        (None, Some(u)) => out.push_str(&u.to_string()),
        _ => out.push_str(&format_float(n.as_f64().unwrap_or(f64::NAN))),
    }
}

fn indent(depth: usize, out: &mut String) {
    out.push('\n');
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write(v: &Value, depth: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => number(n, out),
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            // short rows of scalars stay on one line
            if items.len() <= 7 && items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (k, x) in items.iter().enumerate() {
                    if k > 0 {
                        out.push_str(", ");
                    }
                    write(x, depth, out);
                }
                out.push(']');
                return;
            }
            out.push('[');
            for (k, x) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                indent(depth + 1, out);
                write(x, depth + 1, out);
            }
            indent(depth, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (k, key) in keys.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                indent(depth + 1, out);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write(&map[*key], depth + 1, out);
            }
            indent(depth, out);
            out.push('}');
        }
    }
}

pub fn render(v: &Value) -> String {
    let mut out = String::new();
    write(v, 0, &mut out);
    out.push('\n');
    out
}

/// A finite float, or `null`.
pub fn num(x: f64) -> Value {
    Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| num(*x)).collect())
}

/// Values keyed by the given names.
pub fn keyed(names: &[&str], xs: &[f64]) -> Value {
    let mut m = Map::new();
    for (name, x) in names.iter().zip(xs) {
        m.insert((*name).to_string(), num(*x));
    }
    Value::Object(m)
}

/// Placeholder for a section that cannot be derived from the input.
pub fn underivable(reason: &str, detail: impl Into<String>) -> Value {
    serde_json::json!({ "underivable": { "reason": reason, "detail": detail.into() } })
}
