//! Atomic CSV writing with a fixed number format.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// 17 significant digits, `.` as decimal separator regardless of locale.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// A CSV table held in memory until it is written in one piece.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(&self.header).map_err(io_err)?;
        for row in &self.rows {
            w.write_record(row).map_err(io_err)?;
        }
        w.into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))
    }
}

/// A temp file in the destination directory, renamed into place on `commit`.
pub struct PendingFile {
    tmp: tempfile::NamedTempFile,
    dest: std::path::PathBuf,
}

impl PendingFile {
    pub fn stage(dest: &Path, bytes: &[u8]) -> Result<Self> {
        let dir = match dest.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        Ok(Self {
            tmp,
            dest: dest.to_path_buf(),
        })
    }

    pub fn commit(self) -> Result<()> {
        self.tmp
            .persist(&self.dest)
            .map_err(|e| Error::Io(e.error))?;
        Ok(())
    }
}

pub fn write_atomic(dest: &Path, table: &CsvTable) -> Result<()> {
    PendingFile::stage(dest, &table.to_bytes()?)?.commit()
}
