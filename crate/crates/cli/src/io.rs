//! Artifact files: comma-separated, dot decimal, header row, LF endings;
//! floats carry 17 significant digits.

use std::fs;
use std::path::{Path, PathBuf};

use kickwalk::ndarray::Array2;
use kickwalk::{History, MomentumLattice};
use serde::Serialize;

use crate::error::{CliError, CliResult};

pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn output_error(path: &Path, source: impl Into<std::io::Error>) -> CliError {
    CliError::Output {
        path: path.to_path_buf(),
        source: source.into(),
    }
}

fn input_error(path: &Path, reason: impl ToString) -> CliError {
    CliError::Input {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    }
}

pub fn create_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path).map_err(|e| output_error(path, e))
}

/// Writes `header` and `rows` as CSV.
pub fn write_csv<I, R>(path: &Path, header: &[String], rows: I) -> CliResult<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(|e| output_error(path, e))?;
    w.write_record(header).map_err(|e| output_error(path, e))?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())
            .map_err(|e| output_error(path, e))?;
    }
    w.flush().map_err(|e| output_error(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("artifact records serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| output_error(path, e))
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| output_error(path, e))
}

/// `n, j0, j1, ...`: one row per momentum, one column per step.
pub fn write_distribution_csv(path: &Path, lattice: &MomentumLattice, per_step: &[&[f64]]) -> CliResult<()> {
    let mut header = vec!["n".to_string()];
    header.extend((0..per_step.len()).map(|j| format!("j{j}")));
    let rows = lattice.momenta().enumerate().map(|(i, n)| {
        std::iter::once(n.to_string()).chain(per_step.iter().map(move |p| float(p[i])))
    });
    write_csv(path, &header, rows)
}

pub fn write_history(dir: &Path, history: &History) -> CliResult<Vec<PathBuf>> {
    let steps = 0..=history.steps();
    let parts: [(&str, Vec<&[f64]>); 3] = [
        ("history.csv", steps.clone().map(|j| history.total(j)).collect()),
        ("history_spin2.csv", steps.clone().map(|j| history.spin2(j)).collect()),
        ("history_spin1.csv", steps.map(|j| history.spin1(j)).collect()),
    ];
    let mut written = Vec::new();
    for (name, columns) in parts {
        let path = dir.join(name);
        write_distribution_csv(&path, history.lattice(), &columns)?;
        written.push(path);
    }
    Ok(written)
}

/// A labelled matrix read from CSV: first column holds row labels, the
/// header names the remaining columns.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelledMatrix {
    pub corner: String,
    pub row_labels: Vec<String>,
    pub column_labels: Vec<String>,
    pub values: Array2<f64>,
}

impl LabelledMatrix {
    pub fn write(&self, path: &Path) -> CliResult<()> {
        let mut header = vec![self.corner.clone()];
        header.extend(self.column_labels.iter().cloned());
        let rows = self
            .row_labels
            .iter()
            .zip(self.values.rows())
            .map(|(label, row)| std::iter::once(label.clone()).chain(row.iter().map(|&v| float(v))).collect::<Vec<_>>());
        write_csv(path, &header, rows)
    }
}

pub fn read_matrix(path: &Path) -> CliResult<LabelledMatrix> {
    let mut r = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| input_error(path, e))?;
    let header = r.headers().map_err(|e| input_error(path, e))?.clone();
    if header.len() < 2 {
        return Err(input_error(path, "need a label column and at least one value column"));
    }
    let columns = header.len() - 1;
    let mut row_labels = Vec::new();
    let mut flat = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(|e| input_error(path, e))?;
        row_labels.push(record[0].to_string());
        for field in record.iter().skip(1) {
            let v: f64 = field
                .trim()
                .parse()
                .map_err(|e| input_error(path, format!("row {}: `{field}`: {e}", line + 2)))?;
            flat.push(v);
        }
    }
    let values = Array2::from_shape_vec((row_labels.len(), columns), flat).map_err(|e| input_error(path, e))?;
    Ok(LabelledMatrix {
        corner: header[0].to_string(),
        row_labels,
        column_labels: header.iter().skip(1).map(str::to_string).collect(),
        values,
    })
}

/// A history CSV back as a lattice and per-step totals.
pub fn read_history(path: &Path) -> CliResult<(MomentumLattice, Vec<Vec<f64>>)> {
    let m = read_matrix(path)?;
    let momenta: Vec<i64> = m
        .row_labels
        .iter()
        .map(|s| s.trim().parse::<i64>().map_err(|e| input_error(path, format!("momentum label `{s}`: {e}"))))
        .collect::<CliResult<_>>()?;
    let (Some(&n_min), Some(&n_max)) = (momenta.first(), momenta.last()) else {
        return Err(input_error(path, "no momentum rows"));
    };
    let contiguous = momenta.iter().zip(n_min..).all(|(&a, b)| a == b);
    let lattice = MomentumLattice::new(n_min, n_max).ok().filter(|_| contiguous);
    let lattice = lattice.ok_or_else(|| input_error(path, "momentum rows must run contiguously across 0"))?;
    let totals = m.values.columns().into_iter().map(|c| c.to_vec()).collect();
    Ok((lattice, totals))
}

/// Plot-ready blocks separated by blank lines: `# title`, a tab-separated
/// header, then rows.
#[derive(Debug, Default)]
pub struct PlotTsv {
    text: String,
}

impl PlotTsv {
    pub fn block<I, R>(&mut self, title: &str, header: &[&str], rows: I)
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = String>,
    {
        if !self.text.is_empty() {
            self.text.push('\n');
        }
        self.text.push_str(&format!("# {title}\n{}\n", header.join("\t")));
        for row in rows {
            self.text.push_str(&row.into_iter().collect::<Vec<_>>().join("\t"));
            self.text.push('\n');
        }
    }

    pub fn into_string(self) -> String {
        self.text
    }
}
