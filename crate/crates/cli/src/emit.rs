//! JSON envelopes and CSV tables with reals fixed at 12 significant digits.

use std::fs;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Map, Number, Value};

use crate::config::{Format, RunConfig};
use crate::Failure;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Round to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap()
}

/// Plain decimal, never exponent notation.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{}", round12(x))
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().unwrap());
            *v = Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(a) => a.iter_mut().for_each(round_value),
        Value::Object(o) => o.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Split a serialized report into its row array and the remaining summary fields.
pub fn split_rows(report: Value, key: &str) -> (Vec<Value>, Value) {
    let Value::Object(mut map) = report else {
        return (Vec::new(), report);
    };
    let rows = match map.shift_remove(key) {
        Some(Value::Array(a)) => a,
        _ => Vec::new(),
    };
    (rows, Value::Object(map))
}

/// One output file.
pub struct Table {
    pub kind: String,
    pub rows: Vec<Value>,
    pub summary: Value,
}

impl Table {
    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Json => {
                let mut env = json!({
                    "tool_version": TOOL_VERSION,
                    "config": cfg,
                    "kind": self.kind,
                    "rows": self.rows,
                    "summary": self.summary,
                });
                round_value(&mut env);
                let mut s = serde_json::to_string_pretty(&env).unwrap();
                s.push('\n');
                s
            }
            Format::Csv => csv(&self.rows),
        }
    }

    pub fn write(&self, cfg: &RunConfig) -> Result<PathBuf, Failure> {
        let dir = &cfg.report_dir;
        fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
        let path = dir.join(format!("{}.{}", self.kind, cfg.format.extension()));
        fs::write(&path, self.render(cfg))
            .map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}_{k}")
                };
                flatten(&key, x, out);
            }
        }
        _ => out.push((prefix.to_string(), cell(v))),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => (if *b { "1" } else { "0" }).into(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => fmt_real(x),
            _ => n.to_string(),
        },
        Value::String(s) => quote(s),
        Value::Array(a) => quote(&a.iter().map(cell).collect::<Vec<_>>().join(";")),
        Value::Object(_) => unreachable!("flattened"),
    }
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header from the first row; every row of a report has the same shape.
pub fn csv(rows: &[Value]) -> String {
    let mut out = String::new();
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut cells = Vec::new();
            flatten("", r, &mut cells);
            cells
        })
        .collect();
    if let Some(first) = flat.first() {
        let header: Vec<&str> = first.iter().map(|(k, _)| k.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
    }
    for row in &flat {
        let cells: Vec<&str> = row.iter().map(|(_, c)| c.as_str()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Object from key/value pairs, keeping their order.
pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_real(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_real(2.0 / 3.0 * 1e-7), "0.0000000666666666667");
        assert_eq!(fmt_real(123456789.1234567), "123456789.123");
        assert_eq!(fmt_real(0.0), "0");
        assert_eq!(fmt_real(-1.5), "-1.5");
    }

    #[test]
    fn csv_flattens_nested_fields() {
        let rows = vec![
            json!({"n": 5, "lpf": {"value": "691", "exact": true}, "t": 0.1, "root": null}),
            json!({"n": 7, "lpf": {"value": "13", "exact": false}, "t": 2.5, "root": 3}),
        ];
        assert_eq!(
            csv(&rows),
            "n,lpf_value,lpf_exact,t,root\n5,691,1,0.1,\n7,13,0,2.5,3\n"
        );
    }

    #[test]
    fn rows_split_from_summary() {
        let (rows, summary) = split_rows(json!({"a": 1, "rows": [1, 2]}), "rows");
        assert_eq!(rows.len(), 2);
        assert_eq!(summary, json!({"a": 1}));
    }
}
