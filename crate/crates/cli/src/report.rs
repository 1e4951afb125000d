//! Run reports and their json / table / csv renderings.

use clap::ValueEnum;
use fockop_core::arith::rational_to_pq;
use fockop_core::{BasisExpansion, BigRational, GaussianRational, MultiIndex, RadicalCoefficient, SpaceParams};
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// Plain rows for the csv rendering of sample-like outputs.
#[derive(Debug, Clone)]
pub struct Rows {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    space: Option<SpaceParams>,
    inputs: Map<String, Value>,
    outputs: Map<String, Value>,
    rows: Option<Rows>,
    failed: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, space: Option<SpaceParams>) -> Self {
        Report {
            command: command.into(),
            space,
            inputs: Map::new(),
            outputs: Map::new(),
            rows: None,
            failed: false,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.outputs.insert(key.into(), value.into());
        self
    }

    pub fn rows(mut self, rows: Rows) -> Self {
        self.rows = Some(rows);
        self
    }

    /// Marks a completed run whose check did not pass (exit status 1).
    pub fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn exit_code(&self) -> u8 {
        u8::from(self.failed)
    }

    pub fn to_value(&self) -> Value {
        let space = self.space.map_or(Value::Null, |s| json!({ "n": s.n, "m": s.m }));
        sorted(json!({
            "command": self.command,
            "space": space,
            "inputs": Value::Object(self.inputs.clone()),
            "outputs": Value::Object(self.outputs.clone()),
        }))
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_value())
                .map(|s| s + "\n")
                .map_err(|e| e.to_string()),
            Format::Table => Ok(self.table()),
            Format::Csv => self.csv(),
        }
    }

    fn table(&self) -> String {
        let mut scalars = Vec::new();
        let mut tables = Vec::new();
        flatten("", &self.to_value(), &mut scalars, &mut tables);
        let width = scalars.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &scalars {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        for (name, header, rows) in tables {
            out.push_str(&format!("\n{name}\n"));
            let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
            for r in &rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            out.push_str(&line(&header));
            for r in &rows {
                out.push_str(&line(r));
            }
        }
        out
    }

    fn csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| e.to_string();
        match &self.rows {
            Some(rows) => {
                w.write_record(&rows.header).map_err(err)?;
                for r in &rows.rows {
                    w.write_record(r).map_err(err)?;
                }
            }
            None => {
                let mut scalars = Vec::new();
                let mut tables = Vec::new();
                flatten("", &self.to_value(), &mut scalars, &mut tables);
                for (name, header, rows) in tables {
                    for (i, r) in rows.iter().enumerate() {
                        for (h, c) in header.iter().zip(r) {
                            scalars.push((format!("{name}[{i}].{h}"), c.clone()));
                        }
                    }
                }
                w.write_record(["key", "value"]).map_err(err)?;
                for (k, v) in scalars {
                    w.write_record([k, v]).map_err(err)?;
                }
            }
        }
        String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    }
}

type SubTable = (String, Vec<String>, Vec<Vec<String>>);

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
    }
}

/// Dotted-path scalars; arrays of objects become sub-tables.
fn flatten(prefix: &str, v: &Value, scalars: &mut Vec<(String, String)>, tables: &mut Vec<SubTable>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, scalars, tables);
            }
        }
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
            let mut leaf_rows: Vec<Vec<(String, String)>> = Vec::new();
            for item in items {
                let mut cells = Vec::new();
                let mut nested = Vec::new();
                flatten("", item, &mut cells, &mut nested);
                leaf_rows.push(cells);
            }
            let header: Vec<String> = leaf_rows[0].iter().map(|(k, _)| k.clone()).collect();
            let uniform = leaf_rows.iter().all(|r| r.iter().map(|(k, _)| k).eq(header.iter()));
            if uniform {
                let rows = leaf_rows.into_iter().map(|r| r.into_iter().map(|(_, v)| v).collect()).collect();
                tables.push((prefix.to_string(), header, rows));
            } else {
                for (i, r) in leaf_rows.into_iter().enumerate() {
                    for (k, v) in r {
                        scalars.push((format!("{prefix}[{i}].{k}"), v));
                    }
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                scalars.push((prefix.to_string(), "[]".into()));
            }
            for (i, item) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), item, scalars, tables);
            }
        }
        leaf => scalars.push((prefix.to_string(), scalar(leaf).expect("leaf"))),
    }
}

/// Rebuilds every object with its keys in sorted order.
fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

pub fn rational(r: &BigRational) -> Value {
    Value::String(rational_to_pq(r))
}

pub fn gaussian(c: &GaussianRational) -> Value {
    json!({ "re": rational_to_pq(&c.re), "im": rational_to_pq(&c.im) })
}

/// `{rational: {re, im}, radicand: "u/1"}`
pub fn radical(c: &RadicalCoefficient) -> Value {
    json!({
        "rational": gaussian(c.rational_part()),
        "radicand": rational_to_pq(&c.radicand_rational()),
    })
}

pub fn index(a: &MultiIndex) -> Value {
    Value::String(a.to_string())
}

pub fn expansion(v: &BasisExpansion) -> Value {
    Value::Array(
        v.iter()
            .map(|(a, c)| json!({ "index": a.to_string(), "coefficient": radical(c) }))
            .collect(),
    )
}

/// A float, or null when it is not finite.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}
