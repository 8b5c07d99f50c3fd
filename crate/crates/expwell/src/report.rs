//! Run reports and their three renderings.

use crate::num::Num;
use serde::Serialize;
use serde_json::Value;

/// Version tag of the JSON layout. Bump on any incompatible change.
pub const SCHEMA: &str = "expwell.run/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Rows for the table and CSV renderings. Cells are preformatted.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: &[&str]) -> Self {
        Table {
            title: title.into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }
}

/// What a command produced: the structured payload, its tabular view, and
/// the exit code to finish with.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub results: Value,
    pub tables: Vec<Table>,
    pub exit_code: i32,
    /// Printed on stderr after the report.
    pub message: Option<String>,
}

impl Outcome {
    pub fn ok(results: Value, tables: Vec<Table>) -> Self {
        Outcome {
            results,
            tables,
            exit_code: crate::error::exit::OK,
            message: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Envelope {
    pub g_max: Num,
    pub k_floor: Num,
    pub min_tolerance: Num,
    pub bessel_order_max: Num,
    pub bessel_argument_max: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct Versions {
    pub tool: String,
    pub core: String,
    pub envelope: Envelope,
}

impl Versions {
    pub fn current() -> Self {
        use expwell_core::{solver, specfun};
        Versions {
            tool: concat!("expwell ", env!("CARGO_PKG_VERSION")).to_string(),
            core: expwell_core::VERSION.to_string(),
            envelope: Envelope {
                g_max: Num(solver::MAX_COUPLING),
                k_floor: Num(solver::K_FLOOR),
                min_tolerance: Num(solver::MIN_TOLERANCE),
                bessel_order_max: Num(specfun::MAX_ORDER),
                bessel_argument_max: Num(specfun::MAX_ARGUMENT),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub versions: Versions,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, results: Value, wall_time_ms: u64) -> Self {
        RunReport {
            schema: SCHEMA,
            command: command.to_string(),
            inputs,
            results,
            versions: Versions::current(),
            wall_time_ms,
        }
    }
}

pub fn render_table(tables: &[Table]) -> String {
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if !t.title.is_empty() {
            out.push_str(&t.title);
            out.push('\n');
        }
        let mut width: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
        for row in &t.rows {
            for (w, cell) in width.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&width)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        out.push_str(&line(&t.headers));
        out.push('\n');
        for row in &t.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
    }
    out
}

pub fn write_csv<W: std::io::Write>(tables: &[Table], w: W) -> csv::Result<()> {
    let mut wr = csv::WriterBuilder::new().flexible(true).from_writer(w);
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            wr.write_record(None::<&[u8]>)?;
        }
        wr.write_record(&t.headers)?;
        for row in &t.rows {
            wr.write_record(row)?;
        }
    }
    wr.flush()?;
    Ok(())
}

pub fn render_csv(tables: &[Table]) -> String {
    let mut buf = Vec::new();
    write_csv(tables, &mut buf).expect("in-memory CSV");
    String::from_utf8(buf).expect("CSV is UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("levels", &["n", "energy"]);
        t.push(vec!["0".into(), "-0.817208763722".into()]);
        t.push(vec!["1".into(), "-0.0199406336".into()]);
        t
    }

    #[test]
    fn table_columns_align() {
        let s = render_table(&[sample()]);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "levels");
        assert_eq!(lines[1].len(), lines[2].len());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let s = render_csv(&[sample()]);
        assert_eq!(s.lines().next(), Some("n,energy"));
        assert_eq!(s.lines().count(), 3);
    }

    #[test]
    fn report_carries_schema() {
        let r = RunReport::new("solve", Value::Null, Value::Null, 3);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["wall_time_ms"], 3);
    }
}
