//! Report assembly and rendering: one JSON document per run, CSV for
//! tabular reports, and an indented text view.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Serialize)]
pub struct Meta {
    pub version: &'static str,
    pub timestamp_unix_ms: u128,
    pub wall_time_ms: u128,
}

/// The single output document: {command, params, results, meta}.
#[derive(Debug, Serialize)]
pub struct Document {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

/// Rewrites every fractional number in place to scientific notation with 17
/// significant digits; integers stay exact and untouched.
pub fn widen_reals(v: &mut Value) {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            if s.contains(['.', 'e', 'E']) {
                if let Some(f) = n.as_f64() {
                    if let Ok(wide) = format!("{f:.16e}").parse() {
                        *n = wide;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(widen_reals),
        Value::Object(fields) => fields.values_mut().for_each(widen_reals),
        _ => {}
    }
}

pub fn to_json(doc: &Document) -> String {
    let mut v = serde_json::to_value(doc).expect("report types serialize infallibly");
    widen_reals(&mut v);
    let mut out = v.to_string();
    out.push('\n');
    out
}

/// Human-oriented rendering: indented key/value lines, scalars inline.
pub fn to_text(doc: &Document) -> String {
    let v = serde_json::to_value(doc).expect("report types serialize infallibly");
    let mut out = String::new();
    render(&v, 0, &mut out);
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(fields) => {
            for (key, val) in fields {
                if is_scalar(val) {
                    out.push_str(&format!("{pad}{key}: {}\n", scalar(val)));
                } else if val.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let inline: Vec<String> =
                        val.as_array().unwrap().iter().map(scalar).collect();
                    out.push_str(&format!("{pad}{key}: [{}]\n", inline.join(", ")));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    render(val, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                } else if item.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let inline: Vec<String> =
                        item.as_array().unwrap().iter().map(scalar).collect();
                    out.push_str(&format!("{pad}- [{}]\n", inline.join(", ")));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

/// RFC-4180-style field quoting: quote only when the field needs it.
fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

pub fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
    quoted.join(",")
}

pub fn csv_real(x: f64) -> String {
    format!("{x:.16e}")
}
