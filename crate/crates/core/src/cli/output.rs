//! CSV emission: comma separated, LF line endings, 9 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use super::CliError;

/// Formats `x` with 9 significant digits. `-0` prints as `0`, infinities as
/// `inf`/`-inf`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else if x == 0.0 {
        "0".into()
    } else {
        format!("{x:.8e}")
    }
}

/// Table of strings with a fixed header, written in row order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Table {
            header: header.iter().map(|h| h.as_ref().to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Row of a label followed by numbers.
    pub fn push_labelled(&mut self, label: &str, values: &[f64]) {
        let mut row = vec![label.to_owned()];
        row.extend(values.iter().map(|&v| fmt_num(v)));
        self.push(row);
    }

    pub fn push_numbers(&mut self, values: &[f64]) {
        self.push(values.iter().map(|&v| fmt_num(v)).collect());
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CliError> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

pub fn write_table(dir: &Path, name: &str, table: &Table) -> Result<PathBuf, CliError> {
    write_file(dir, name, &table.to_csv()?)
}
