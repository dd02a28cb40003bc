//! Record tables and the CSV/JSON writers.
//!
//! Scalars print through Rust's shortest round-trip `Display` for `f64`, so
//! emitted files are byte-stable across runs and parse back to the exact
//! values. Phases are unit complex numbers that may be undefined; CSV
//! expands them into `<name>_re`, `<name>_im`, `<name>_defined` triples
//! while JSON uses two-element `[re, im]` arrays or `null`.

use std::io::{self, Write};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColKind {
    Scalar,
    Phase,
}

#[derive(Debug, Clone)]
pub struct Column {
    pub name: &'static str,
    pub kind: ColKind,
}

impl Column {
    pub fn scalar(name: &'static str) -> Self {
        Column {
            name,
            kind: ColKind::Scalar,
        }
    }

    pub fn phase(name: &'static str) -> Self {
        Column {
            name,
            kind: ColKind::Phase,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Num(f64),
    Phase(Option<(f64, f64)>),
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let mut header = Vec::new();
        for col in &self.columns {
            match col.kind {
                ColKind::Scalar => header.push(col.name.to_string()),
                ColKind::Phase => {
                    header.push(format!("{}_re", col.name));
                    header.push(format!("{}_im", col.name));
                    header.push(format!("{}_defined", col.name));
                }
            }
        }
        writeln!(out, "{}", header.join(","))?;
        for row in &self.rows {
            let mut fields = Vec::new();
            for cell in row {
                match cell {
                    Cell::Num(v) => fields.push(format!("{v}")),
                    Cell::Phase(Some((re, im))) => {
                        fields.push(format!("{re}"));
                        fields.push(format!("{im}"));
                        fields.push("1".to_string());
                    }
                    Cell::Phase(None) => {
                        fields.push("0".to_string());
                        fields.push("0".to_string());
                        fields.push("0".to_string());
                    }
                }
            }
            writeln!(out, "{}", fields.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let mut records = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            for (col, cell) in self.columns.iter().zip(row) {
                let value = match cell {
                    Cell::Num(v) => serde_json::json!(v),
                    Cell::Phase(Some((re, im))) => serde_json::json!([re, im]),
                    Cell::Phase(None) => serde_json::Value::Null,
                };
                obj.insert(col.name.to_string(), value);
            }
            records.push(serde_json::Value::Object(obj));
        }
        let doc = serde_json::Value::Array(records);
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
    }
}
