//! Deterministic report structures and their renderings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use skewbrace::{FiniteGroup, GcRatio, SubgroupSet};

use crate::args::{Format, RunConfig};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    pub order_cap: u64,
    pub aut_cap: u64,
    pub subspace_budget: u64,
    pub seed: u64,
}

impl Caps {
    pub fn from_config(config: &RunConfig) -> Self {
        Caps {
            order_cap: config.order_cap,
            aut_cap: config.aut_cap,
            subspace_budget: config.subspace_budget,
            seed: config.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub args: Value,
    pub input_digest: String,
    pub caps: Caps,
    pub result: Value,
    /// Provenance and cap notes, sorted.
    pub flags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> CliResult<Report> {
        serde_json::from_str(s).map_err(|e| CliError::parse("report", e.to_string()))
    }
}

/// A rectangular table for CSV output.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

/// Everything a command produces. `exit` is 0 or 1; errors that stop a
/// command are returned as `CliError` instead.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub table: Option<Table>,
    pub exit: i32,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.report.to_json(),
            Format::Text => self.text.clone(),
            Format::Csv => match &self.table {
                Some(t) => t.to_csv(),
                None => flat_table(&self.report.result).to_csv(),
            },
        }
    }
}

/// `field,value` rows for the scalar leaves of a JSON value.
fn flat_table(value: &Value) -> Table {
    fn walk(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, x, rows);
                }
            }
            Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
                for (i, x) in items.iter().enumerate() {
                    walk(&format!("{prefix}.{i}"), x, rows);
                }
            }
            Value::String(s) => rows.push(vec![prefix.to_string(), s.clone()]),
            other => rows.push(vec![prefix.to_string(), other.to_string()]),
        }
    }
    let mut rows = Vec::new();
    walk("", value, &mut rows);
    Table {
        columns: vec!["field".into(), "value".into()],
        rows,
    }
}

pub fn ratio_json(num: u64, den: u64) -> Value {
    let g = gcd(num, den).max(1);
    json!({
        "numerator": num,
        "denominator": den,
        "reduced": [num / g, den / g],
        "value": if den == 0 { Value::Null } else { json!(num as f64 / den as f64) },
    })
}

pub fn gc_ratio_json(r: &GcRatio) -> Value {
    ratio_json(r.numerator as u64, r.denominator as u64)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sorted element indices, plus labels when the group carries them.
pub fn subgroup_json(g: &FiniteGroup, h: &SubgroupSet) -> Value {
    let elements = h.elements();
    match g.labels() {
        Some(_) => json!({
            "order": h.size(),
            "elements": elements,
            "labels": elements.iter().map(|&x| g.label(x)).collect::<Vec<_>>(),
        }),
        None => json!({"order": h.size(), "elements": elements}),
    }
}

pub fn subgroup_text(g: &FiniteGroup, h: &SubgroupSet) -> String {
    let body: Vec<String> = match g.labels() {
        Some(_) => h.iter().map(|x| g.label(x)).collect(),
        None => h.iter().map(|x| x.to_string()).collect(),
    };
    format!("order {:>4}: {{{}}}", h.size(), body.join(", "))
}

pub fn ratio_text(num: u64, den: u64) -> String {
    let g = gcd(num, den).max(1);
    if den == 0 {
        return format!("{num}/{den}");
    }
    format!(
        "{num}/{den} (reduced {}/{}, value {:.6})",
        num / g,
        den / g,
        num as f64 / den as f64
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let r = Report {
            command: "ratio".into(),
            args: json!({"m": 9, "x": [1, 2]}),
            input_digest: "00".into(),
            caps: Caps::from_config(&RunConfig::default()),
            result: json!({"ratio": ratio_json(23, 104), "z": 0.1}),
            flags: vec![],
            timing_ms: None,
        };
        let s = r.to_json();
        let back = Report::from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), s);
    }

    #[test]
    fn ratio_fields() {
        let v = ratio_json(12, 36);
        assert_eq!(v["reduced"], json!([1, 3]));
        assert_eq!(v["numerator"], json!(12));
    }

    #[test]
    fn flat_table_rows() {
        let t = flat_table(&json!({"a": 1, "b": {"c": "x"}, "d": [1, 2]}));
        assert_eq!(
            t.rows,
            vec![
                vec!["a".to_string(), "1".into()],
                vec!["b.c".into(), "x".into()],
                vec!["d".into(), "[1,2]".into()],
            ]
        );
    }
}
