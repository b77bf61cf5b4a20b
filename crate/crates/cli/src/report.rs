//! Report records and their text, JSON and CSV renderings.

use std::fmt;
use std::io::Write;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::args::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// Inequality failed although its hypothesis was not refuted.
    Violation,
    /// Inequality failed but its hypothesis was refuted, so nothing is claimed.
    NotApplicable,
    /// An as-printed statement failed; reported, not fatal.
    Finding,
    /// Bound evaluated without a hypothesis check and smaller than the gap.
    Exceeds,
    Falsified,
    NotFalsified,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violation => "violation",
            Verdict::NotApplicable => "not_applicable",
            Verdict::Finding => "finding",
            Verdict::Exceeds => "exceeds",
            Verdict::Falsified => "falsified",
            Verdict::NotFalsified => "not_falsified",
        }
    }

    /// Whether this verdict makes the process exit with status 1.
    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Violation | Verdict::Falsified)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Auxiliary result attached to a record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

/// One checked inequality `lhs ≤ rhs`, with `margin = rhs - lhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRecord {
    pub kind: String,
    pub inputs: Vec<(String, String)>,
    pub outputs: Vec<(String, Value)>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
    pub elapsed_ms: f64,
}

impl ReportRecord {
    pub fn new(kind: impl Into<String>, lhs: f64, rhs: f64, verdict: Verdict) -> Self {
        Self {
            kind: kind.into(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            lhs,
            rhs,
            margin: rhs - lhs,
            verdict,
            elapsed_ms: 0.0,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn output(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.outputs.push((key.to_string(), value.into()));
        self
    }

    pub fn inputs_joined(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn outputs_joined(&self) -> String {
        self.outputs
            .iter()
            .map(|(k, v)| format!("{k}={}", full(*v)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// 17 significant digits, the round-trip precision of `f64`.
pub fn float17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn full(v: Value) -> String {
    match v {
        Value::Float(x) => float17(x),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
    }
}

fn short(v: Value) -> String {
    match v {
        Value::Float(x) => format!("{x:.6}"),
        Value::Int(i) => i.to_string(),
        Value::Bool(b) => b.to_string(),
    }
}

struct Number(f64);

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(float17(self.0)).map_err(serde::ser::Error::custom)?;
            raw.serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match *self {
            Value::Float(x) => Number(x).serialize(s),
            Value::Int(i) => s.serialize_i64(i),
            Value::Bool(b) => s.serialize_bool(b),
        }
    }
}

/// Serializes a list of pairs as a map, keeping its order.
struct Ordered<'a, V>(&'a [(String, V)]);

impl<V: Serialize> Serialize for Ordered<'_, V> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Serialize for ReportRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ReportRecord", 8)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("inputs", &Ordered(&self.inputs))?;
        st.serialize_field("lhs", &Number(self.lhs))?;
        st.serialize_field("rhs", &Number(self.rhs))?;
        st.serialize_field("margin", &Number(self.margin))?;
        st.serialize_field("verdict", self.verdict.as_str())?;
        st.serialize_field("outputs", &Ordered(&self.outputs))?;
        st.serialize_field("elapsed_ms", &Number(self.elapsed_ms))?;
        st.end()
    }
}

/// Text line, e.g. `T1 holds, lhs=0.166667 rhs=0.250000 margin=0.083333`.
pub fn text_line(r: &ReportRecord, with_inputs: bool) -> String {
    let mut line = format!(
        "{} {}, lhs={:.6} rhs={:.6} margin={:.6}",
        r.kind, r.verdict, r.lhs, r.rhs, r.margin
    );
    for (k, v) in &r.outputs {
        line.push_str(&format!(" {k}={}", short(*v)));
    }
    if with_inputs && !r.inputs.is_empty() {
        let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        line.push_str(&format!(" [{}]", inputs.join(" ")));
    }
    line
}

pub const CSV_HEADER: [&str; 8] =
    ["kind", "lhs", "rhs", "margin", "verdict", "inputs", "elapsed_ms", "outputs"];

pub fn render(
    out: &mut dyn Write,
    records: &[ReportRecord],
    format: Format,
    with_inputs: bool,
) -> anyhow::Result<()> {
    match format {
        Format::Text => {
            for r in records {
                writeln!(out, "{}", text_line(r, with_inputs))?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, records)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(CSV_HEADER)?;
            for r in records {
                w.write_record([
                    r.kind.clone(),
                    float17(r.lhs),
                    float17(r.rhs),
                    float17(r.margin),
                    r.verdict.to_string(),
                    r.inputs_joined(),
                    float17(r.elapsed_ms),
                    r.outputs_joined(),
                ])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
