//! Result rows and their csv, json and plain renderings.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Plain,
}

/// How far a printed value can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// Computed in exact arithmetic (possibly rounded for display).
    Exact,
    /// Agreed with a rerun at doubled precision.
    Verified,
    /// Single run at working precision.
    Unverified,
    /// Not computed (slow cell without `--slow`).
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub text: String,
    pub status: Status,
}

impl Cell {
    pub fn exact(text: impl Into<String>) -> Self {
        Self { text: text.into(), status: Status::Exact }
    }

    pub fn float(text: impl Into<String>, verified: bool) -> Self {
        let status = if verified { Status::Verified } else { Status::Unverified };
        Self { text: text.into(), status }
    }

    pub fn skipped() -> Self {
        Self { text: String::new(), status: Status::Skipped }
    }

    fn plain(&self) -> String {
        match self.status {
            Status::Unverified => format!("~{}", self.text),
            Status::Skipped => "(slow)".to_string(),
            _ => self.text.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResultRow {
    pub labels: Vec<String>,
    pub values: Vec<Cell>,
}

impl ResultRow {
    fn precision(&self) -> &'static str {
        let floats: Vec<Status> = self
            .values
            .iter()
            .map(|c| c.status)
            .filter(|s| matches!(s, Status::Verified | Status::Unverified))
            .collect();
        if floats.is_empty() {
            "exact"
        } else if floats.iter().all(|s| *s == Status::Verified) {
            "verified"
        } else {
            "unverified"
        }
    }
}

/// Named label and value columns plus the rows, in output order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub caption: Option<String>,
    /// First line of plain output, such as a pass/fail verdict.
    pub headline: Option<String>,
    pub label_names: Vec<String>,
    pub value_names: Vec<String>,
    pub rows: Vec<ResultRow>,
}

impl Report {
    pub fn new(label_names: &[&str], value_names: &[&str]) -> Self {
        Self {
            caption: None,
            headline: None,
            label_names: label_names.iter().map(|s| s.to_string()).collect(),
            value_names: value_names.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn single(name: &str, cell: Cell) -> Self {
        let mut r = Self::new(&[], &[name]);
        r.push(Vec::new(), vec![cell]);
        r
    }

    pub fn with_caption(mut self, caption: &str) -> Self {
        self.caption = Some(caption.to_string());
        self
    }

    pub fn push(&mut self, labels: Vec<String>, values: Vec<Cell>) {
        debug_assert_eq!(labels.len(), self.label_names.len());
        debug_assert_eq!(values.len(), self.value_names.len());
        self.rows.push(ResultRow { labels, values });
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => self.json(),
            Format::Plain => self.plain(),
        }
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = self.label_names.iter().map(String::as_str).collect();
        header.extend(self.value_names.iter().map(String::as_str));
        header.push("precision");
        w.write_record(&header).expect("in-memory csv");
        for row in &self.rows {
            let mut rec: Vec<&str> = row.labels.iter().map(String::as_str).collect();
            rec.extend(row.values.iter().map(|c| c.text.as_str()));
            rec.push(row.precision());
            w.write_record(&rec).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }

    fn json(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let mut obj = Map::new();
            for (k, v) in self.label_names.iter().zip(&row.labels) {
                obj.insert(k.clone(), Value::String(v.clone()));
            }
            for (k, c) in self.value_names.iter().zip(&row.values) {
                let v = match c.status {
                    Status::Skipped => Value::Null,
                    _ => Value::String(c.text.clone()),
                };
                obj.insert(k.clone(), v);
            }
            obj.insert("precision".into(), Value::String(row.precision().into()));
            out.push_str(&Value::Object(obj).to_string());
            out.push('\n');
        }
        out
    }

    fn plain(&self) -> String {
        let mut out = String::new();
        if let Some(c) = &self.caption {
            let _ = writeln!(out, "# {c}");
        }
        if let Some(h) = &self.headline {
            let _ = writeln!(out, "{h}");
        }
        if self.rows.len() == 1 && self.label_names.is_empty() {
            let row = &self.rows[0];
            if row.values.len() == 1 {
                let _ = writeln!(out, "{}", row.values[0].plain());
            } else {
                let width = self.value_names.iter().map(|s| s.chars().count()).max().unwrap_or(0);
                for (k, c) in self.value_names.iter().zip(&row.values) {
                    let _ = writeln!(out, "{k:<width$} = {}", c.plain());
                }
            }
            return out;
        }
        let mut grid: Vec<Vec<String>> = Vec::with_capacity(self.rows.len() + 1);
        grid.push(self.label_names.iter().chain(&self.value_names).cloned().collect());
        for row in &self.rows {
            grid.push(row.labels.iter().cloned().chain(row.values.iter().map(Cell::plain)).collect());
        }
        let cols = grid[0].len();
        let widths: Vec<usize> = (0..cols)
            .map(|j| grid.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
            .collect();
        for r in &grid {
            let line: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}
