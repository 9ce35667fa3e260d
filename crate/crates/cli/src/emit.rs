//! Tabular output: CSV with a `# key=value` metadata line, or a JSON mirror
//! of the same fields. Files are written to a temporary sibling and renamed.

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use serde_json::{json, Map, Value};
use std::io::Write;
use std::path::Path;
use zpf_core::spectra::SpectralCurve;
use zpf_core::zpf_unruh::SpectrumEstimate;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

impl From<&SpectralCurve> for Table {
    fn from(curve: &SpectralCurve) -> Self {
        let mut t = Table::new(vec!["omega", "value", "kind", "temperature"]);
        for (w, v) in curve.points() {
            t.push(vec![w.into(), v.into(), curve.kind().as_str().into(), curve.temperature().into()]);
        }
        t
    }
}

impl From<&SpectrumEstimate> for Table {
    fn from(est: &SpectrumEstimate) -> Self {
        let mut t = Table::new(vec![
            "omega_out",
            "expected",
            "mc_mean",
            "mc_stderr",
            "theory_convolved",
            "theory_raw",
        ]);
        for (w, e, m, s, tc, tr) in est.rows() {
            t.push(vec![w.into(), e.into(), m.into(), s.into(), tc.into(), tr.into()]);
        }
        t
    }
}

/// Metadata echoed into every output file. Only run inputs go here, so
/// reruns produce identical bytes.
#[derive(Debug, Clone, PartialEq)]
pub struct Metadata {
    pub seed: u64,
    pub units: &'static str,
    pub command: &'static str,
    pub version: &'static str,
}

impl Metadata {
    pub fn for_config(cfg: &RunConfig) -> Self {
        Self {
            seed: cfg.seed,
            units: cfg.unit_system.as_str(),
            command: cfg.command.as_str(),
            version: VERSION,
        }
    }

    fn line(&self) -> String {
        format!(
            "# seed={} units={} command={} version={}\n",
            self.seed, self.units, self.command, self.version
        )
    }

    fn json(&self) -> Value {
        json!({
            "seed": self.seed,
            "units": self.units,
            "command": self.command,
            "version": self.version,
        })
    }
}

pub fn render_csv(meta: &Metadata, table: &Table) -> Result<Vec<u8>> {
    let mut out = meta.line().into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        let ser = |e: csv::Error| CliError::Serialize(e.to_string());
        w.write_record(&table.columns).map_err(ser)?;
        for row in &table.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(ser)?;
        }
        w.flush().map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    Ok(out)
}

pub fn render_json(meta: &Metadata, table: &Table) -> Result<Vec<u8>> {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> =
                table.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
            Value::Object(obj)
        })
        .collect();
    let doc = json!({
        "metadata": meta.json(),
        "columns": table.columns,
        "rows": rows,
    });
    let mut bytes = serde_json::to_vec_pretty(&doc).map_err(|e| CliError::Serialize(e.to_string()))?;
    bytes.push(b'\n');
    Ok(bytes)
}

pub fn render(meta: &Metadata, table: &Table, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => render_csv(meta, table),
        Format::Json => render_json(meta, table),
    }
}

/// Writes `bytes` to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Renders `table` and writes it to `path`, or to standard output when `None`.
pub fn emit(meta: &Metadata, table: &Table, format: Format, path: Option<&Path>) -> Result<()> {
    let bytes = render(meta, table, format)?;
    match path {
        Some(p) => write_atomic(p, &bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io("<stdout>", e))
        }
    }
}
