//! Tables and their JSON, CSV and text renderings.
//!
//! JSON floats use the shortest representation that round-trips; text uses
//! 12 significant digits. Nothing depends on the clock or the environment,
//! so equal inputs give byte-identical output.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Null,
    /// Shown in JSON only.
    Json(Value),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<i32> for Cell {
    fn from(x: i32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Str(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Str(x)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map(Into::into).unwrap_or(Cell::Null)
    }
}

#[derive(Clone, Debug)]
pub struct Column {
    pub name: &'static str,
    pub json_only: bool,
}

/// A report: metadata plus rows.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub meta: Map<String, Value>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.iter().map(|&name| Column { name, json_only: false }).collect(),
            ..Default::default()
        }
    }

    pub fn json_column(mut self, name: &'static str) -> Self {
        self.columns.push(Column { name, json_only: true });
        self
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.meta.insert(key.to_string(), value.into());
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn visible(&self) -> impl Iterator<Item = (usize, &Column)> {
        self.columns.iter().enumerate().filter(|(_, c)| !c.json_only)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| (c.name.to_string(), json_cell(cell)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("meta".into(), Value::Object(self.meta.clone()));
        top.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("tables serialize");
        s.push('\n');
        s
    }

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.visible().map(|(_, c)| c.name)).expect("in-memory write");
        for row in &self.rows {
            w.write_record(self.visible().map(|(i, _)| csv_cell(&row[i]))).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {}\n", text_value(v)));
        }
        let names: Vec<&str> = self.visible().map(|(_, c)| c.name).collect();
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| self.visible().map(|(i, _)| text_cell(&row[i])).collect())
            .collect();
        if cells.len() == 1 {
            let width = names.iter().map(|n| n.len()).max().unwrap_or(0);
            for (name, val) in names.iter().zip(&cells[0]) {
                out.push_str(&format!("{name:<width$}  {val}\n"));
            }
            return out;
        }
        let widths: Vec<usize> = (0..names.len())
            .map(|j| cells.iter().map(|r| r[j].len()).chain([names[j].len()]).max().unwrap_or(0))
            .collect();
        let line = |vals: Vec<&str>| {
            let parts: Vec<String> = vals.iter().zip(&widths).map(|(v, w)| format!("{v:>w$}")).collect();
            parts.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(names.clone()));
        for row in &cells {
            out.push_str(&line(row.iter().map(String::as_str).collect()));
        }
        out
    }
}

fn json_cell(cell: &Cell) -> Value {
    match cell {
        Cell::Int(i) => Value::from(*i),
        Cell::Float(x) => json_float(*x),
        Cell::Str(s) => Value::from(s.as_str()),
        Cell::Null => Value::Null,
        Cell::Json(v) => v.clone(),
    }
}

/// Non-finite values become `null`.
pub fn json_float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Float(x) => shortest(*x),
        Cell::Str(s) => s.clone(),
        Cell::Null | Cell::Json(_) => String::new(),
    }
}

fn text_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Float(x) => fmt_g(*x, 12),
        Cell::Str(s) => s.clone(),
        Cell::Null | Cell::Json(_) => "-".into(),
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::Number(n) if n.is_f64() => fmt_g(n.as_f64().unwrap(), 12),
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// Shortest round-trip decimal, same spelling as the JSON output.
pub fn shortest(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).expect("finite floats serialize")
    } else {
        x.to_string()
    }
}

/// `%g`-style formatting with `sig` significant digits.
pub fn fmt_g(x: f64, sig: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mant = trim_zeros(mant);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mant}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
