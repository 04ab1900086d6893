//! Versioned CSV tables and atomic file writes.

use std::io::Write;
use std::path::Path;

use crate::phase_space::PhasePlaneMap;
use crate::tomography::{TomogramGrid, TwoModeSlice};

/// Written as `# schema=1` on the first line of every CSV.
pub const SCHEMA_VERSION: u32 = 1;

/// 17 significant digits in scientific notation.
pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

/// Header plus numeric rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = format!("# schema={SCHEMA_VERSION}\n").into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&self.header).expect("in-memory write");
            for r in &self.rows {
                w.write_record(r.iter().map(|v| format_number(*v)))
                    .expect("in-memory write");
            }
            w.flush().expect("in-memory write");
        }
        buf
    }

    /// Parses a table written by [`CsvTable::to_bytes`].
    pub fn parse(text: &str) -> Option<Self> {
        let body = text.strip_prefix(&format!("# schema={SCHEMA_VERSION}\n"))?;
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let header = r.headers().ok()?.iter().map(str::to_string).collect();
        let rows = r
            .records()
            .map(|rec| {
                rec.ok()?
                    .iter()
                    .map(|f| f.parse::<f64>().ok())
                    .collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Self { header, rows })
    }
}

/// theta,x,omega rows.
pub fn tomogram_table(t: &TomogramGrid) -> CsvTable {
    let mut table = CsvTable::new(&["theta", "x", "omega"]);
    let g = t.grid();
    for (i, &theta) in g.theta().iter().enumerate() {
        for (j, &x) in g.x().iter().enumerate() {
            table.push(vec![theta, x, t.value(i, j)]);
        }
    }
    table
}

/// theta1,x1,theta2,x2,omega rows.
pub fn two_mode_table(slices: &[TwoModeSlice]) -> CsvTable {
    let mut table = CsvTable::new(&["theta1", "x1", "theta2", "x2", "omega"]);
    for s in slices {
        for (i, &x1) in s.x1.iter().enumerate() {
            for (j, &x2) in s.x2.iter().enumerate() {
                table.push(vec![s.theta1, x1, s.theta2, x2, s.value(i, j)]);
            }
        }
    }
    table
}

/// x,p,value rows.
pub fn phase_plane_table(m: &PhasePlaneMap) -> CsvTable {
    let mut table = CsvTable::new(&["x", "p", "value"]);
    let g = m.grid();
    for (i, &x) in g.x().iter().enumerate() {
        for (j, &p) in g.p().iter().enumerate() {
            table.push(vec![x, p, m.value(i, j)]);
        }
    }
    table
}

/// Two-column series.
pub fn series_table(time_column: &str, value_column: &str, t: &[f64], v: &[f64]) -> CsvTable {
    let mut table = CsvTable::new(&[time_column, value_column]);
    for (a, b) in t.iter().zip(v) {
        table.push(vec![*a, *b]);
    }
    table
}

/// Writes via a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
