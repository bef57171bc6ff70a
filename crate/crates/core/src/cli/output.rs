use std::io::{self, Write};

use serde_json::{Map, Value};

/// Output encoding for tabular results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell. Infinite lengths are written as the literal `inf`.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Inf,
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Inf => "inf".to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_infinite() && *v > 0.0 => Value::from("inf"),
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Inf => Value::from("inf"),
            Cell::Missing => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<crate::metrics::Extent> for Cell {
    fn from(v: crate::metrics::Extent) -> Self {
        match v {
            crate::metrics::Extent::Finite(x) => Cell::Num(x),
            crate::metrics::Extent::Infinite => Cell::Inf,
        }
    }
}

/// Ordered metadata, a header and rows; written as `#`-prefixed metadata
/// lines plus CSV, or as `{"metadata": {...}, "rows": [{...}]}`.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub metadata: Vec<(String, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            metadata: Vec::new(),
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<Cell>) -> &mut Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (key, value) in &self.metadata {
            writeln!(out, "# {key} = {}", value.csv())?;
        }
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        Ok(())
    }

    fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let metadata: Map<String, Value> = self.metadata.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.json()))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("metadata".into(), Value::Object(metadata));
        doc.insert("rows".into(), Value::Array(rows));
        serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["d_m", "bd_m"]);
        t.meta("lambda_m", 1.0);
        t.push(vec![Cell::Num(10.0), Cell::Num(0.25)]);
        t.push(vec![Cell::Num(900.0), Cell::Inf]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "# lambda_m = 1\nd_m,bd_m\n10,0.25\n900,inf\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["metadata"]["lambda_m"], 1.0);
        assert_eq!(v["rows"][1]["bd_m"], "inf");
        assert_eq!(v["rows"][0]["d_m"], 10.0);
    }
}
