//! Tabular reports and their CSV / JSON encodings.

use serde_json::{Map, Number, Value};
use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// Shortest representation that parses back to the same `f64`.
/// Plain decimal in `[1e-5, 1e16)`, scientific outside.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

impl Cell {
    fn to_csv(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Float(x) => Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub meta: Map<String, Value>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report { columns: columns.iter().map(|c| c.to_string()).collect(), ..Default::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width must match header");
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn summarize_f64(&mut self, key: &str, value: f64) {
        self.summary.insert(key.to_string(), Cell::Float(value).to_json());
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_csv))?;
        }
        w.flush()
    }

    pub fn to_json_value(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::to_json)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(self.meta.clone()));
        top.insert("rows".into(), Value::Array(rows));
        top.insert("summary".into(), Value::Object(self.summary.clone()));
        Value::Object(top)
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut out, &self.to_json_value())?;
        out.write_all(b"\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sample() -> Report {
        let mut r = Report::new(&["x", "n", "ok", "tag"]);
        r.push(vec![0.1.into(), 3u64.into(), true.into(), "EulerMaclaurin".into()]);
        r.push(vec![1e-300.into(), 0u64.into(), false.into(), "a,b".into()]);
        r.meta.insert("seed".into(), Value::from(7u64));
        r.summarize_f64("max", 2.5);
        r
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x,n,ok,tag\n0.1,3,true,EulerMaclaurin\n1e-300,0,false,\"a,b\"\n");
    }

    #[test]
    fn header_only_when_empty() {
        let mut buf = Vec::new();
        Report::new(&["C", "threshold"]).write_csv(&mut buf).unwrap();
        assert_eq!(buf, b"C,threshold\n");
    }

    #[test]
    fn json_has_three_keys_and_round_trips() {
        let r = sample();
        let mut buf = Vec::new();
        r.write_json(&mut buf).unwrap();
        let parsed: Value = serde_json::from_slice(&buf).unwrap();
        let keys: Vec<&String> = parsed.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["meta", "rows", "summary"]);
        let mut again = Vec::new();
        serde_json::to_writer_pretty(&mut again, &parsed).unwrap();
        again.push(b'\n');
        assert_eq!(buf, again);
    }

    proptest! {
        #[test]
        fn csv_floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
            prop_assert_eq!(format_float(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }

        #[test]
        fn json_floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
            let mut r = Report::new(&["x"]);
            r.push(vec![x.into()]);
            let text = serde_json::to_string(&r.to_json_value()).unwrap();
            let back: Value = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
            prop_assert_eq!(back["rows"][0]["x"].as_f64().unwrap().to_bits(), x.to_bits());
        }
    }
}
