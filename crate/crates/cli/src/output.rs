//! Byte-stable text output: JSON with sorted keys and 17 significant digits,
//! CSV with LF line endings.

use std::fmt::Write;

use pedal_core::reuleaux::SweepReport;
use serde_json::Value;

/// 17 significant digits in scientific notation; non-finite values become
/// `null`.
pub fn format_float(v: f64) -> Option<String> {
    if !v.is_finite() {
        return None;
    }
    // -0.0 and 0.0 print the same
    let v = if v == 0.0 { 0.0 } else { v };
    Some(format!("{v:.16e}"))
}

/// Pretty-printed JSON, two-space indent, keys sorted, trailing newline.
pub fn to_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &Value, depth: usize) {
    let pad = |out: &mut String, d: usize| out.extend(std::iter::repeat_n("  ", d));
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&n.as_f64().and_then(format_float).unwrap_or_else(|| "null".into()));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(out, depth + 1);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(out, depth + 1);
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*k], depth + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, depth);
            out.push('}');
        }
    }
}

pub const CSV_HEADER: &str =
    "t,fafb,focus_dev,class,discriminant,collinearity,perpendicularity,tangency,polar_tangency,intersections,error";

fn cell(v: f64) -> String {
    format_float(v).unwrap_or_default()
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

/// One row per sample plus a closing `summary` row: `fafb` holds the spread
/// `max − min`, the residual columns hold their maxima and `intersections`
/// the number of failed samples.
pub fn sweep_csv(report: &SweepReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in &report.samples {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            cell(s.t),
            cell(s.fafb),
            cell(s.focus_deviation),
            s.class.map(|c| c.to_string()).unwrap_or_default(),
            cell(s.discriminant),
            cell(s.collinearity),
            cell(s.perpendicularity),
            cell(s.tangency),
            s.polar_tangency.map(cell).unwrap_or_default(),
            s.intersections,
            quote(s.error.as_deref().unwrap_or("")),
        );
    }
    let m = &report.summary;
    let _ = writeln!(
        out,
        "summary,{},{},,,{},{},{},{},{},",
        cell(m.fafb_spread()),
        cell(m.max_focus_deviation),
        cell(m.max_collinearity),
        cell(m.max_perpendicularity),
        cell(m.max_tangency),
        m.max_polar_tangency.map(cell).unwrap_or_default(),
        m.failed_samples,
    );
    out
}
