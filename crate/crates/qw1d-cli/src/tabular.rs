//! Deterministic comma-separated output with a `#` header block carrying the
//! resolved config. Files are written to a temp path and renamed into place
//! so failures leave nothing behind.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Cell {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Float(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_string())
    }
}

pub fn fmt_float(v: f64) -> String {
    format!("{v:.17e}")
}

pub struct Table {
    header: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            header: vec![("version".into(), env!("CARGO_PKG_VERSION").into())],
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn kv(&mut self, key: &str, value: impl Into<Cell>) {
        let v = match value.into() {
            Cell::Int(i) => i.to_string(),
            Cell::Float(f) => fmt_float(f),
            Cell::Text(t) => t,
        };
        self.header.push((key.to_string(), v));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.header {
            writeln!(out, "# {k} = {v}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Float(f) => fmt_float(*f),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }
}

/// Writes text to path atomically: temp file in the same directory, then
/// rename; the temp file is removed if anything fails.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    let result = (|| {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

pub fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(path) => write_atomic(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
