//! Deterministic tabular output. CSV and JSON carry identical content:
//! JSON is an array of objects, one per CSV row, keys in column order.
//! Floats print in shortest-roundtrip decimal form in both formats, so
//! reparsing emitted output reproduces the values exactly.

use std::fmt::Write as _;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Num(f64),
    Int(u64),
    Flag(bool),
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Flag(v)
    }
}

/// Shortest-roundtrip decimal for CSV cells: plain notation inside a
/// readable magnitude window, exponent notation outside it. Both parse
/// back to the identical bits.
fn format_f64(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0" } else { "0" }.to_string();
    }
    let magnitude = v.abs();
    if (1e-4..1e16).contains(&magnitude) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A rectangular result table with a fixed, documented column order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Scale `*_bps` columns to Mbit/s, renaming them `*_mbps`.
    pub fn to_megabit(mut self) -> Self {
        let scaled: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.ends_with("_bps"))
            .map(|(i, _)| i)
            .collect();
        for idx in &scaled {
            let name = &mut self.columns[*idx];
            *name = format!("{}_mbps", name.trim_end_matches("_bps"));
        }
        for row in &mut self.rows {
            for idx in &scaled {
                if let Cell::Num(v) = &mut row[*idx] {
                    *v /= 1e6;
                }
            }
        }
        self
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let mut first = true;
            for cell in row {
                if !first {
                    out.push(',');
                }
                first = false;
                match cell {
                    Cell::Text(s) => out.push_str(s),
                    Cell::Num(v) => out.push_str(&format_f64(*v)),
                    Cell::Int(v) => {
                        let _ = write!(out, "{v}");
                    }
                    Cell::Flag(v) => {
                        let _ = write!(out, "{v}");
                    }
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Text(s) => serde_json::Value::String(s.clone()),
                        Cell::Num(v) => serde_json::Number::from_f64(*v)
                            .map(serde_json::Value::Number)
                            .unwrap_or(serde_json::Value::Null),
                        Cell::Int(v) => serde_json::Value::from(*v),
                        Cell::Flag(v) => serde_json::Value::from(*v),
                    };
                    object.insert(name.clone(), value);
                }
                serde_json::Value::Object(object)
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&rows).expect("tables are serializable");
        out.push('\n');
        out
    }
}
