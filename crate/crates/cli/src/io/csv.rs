//! Plain CSV tables. Numbers use Rust's shortest round-trip scientific
//! notation, so every exported value parses back exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use mmv2v_core::channel::{AxisKind, MetricSeries, Quantity};

use super::IoError;

/// Axis column name and the factor from SI units to the exported unit.
pub fn axis_column(kind: AxisKind) -> (&'static str, f64) {
    match kind {
        AxisKind::Time => ("time_s", 1.0),
        AxisKind::Delay => ("delay_ns", 1e9),
    }
}

/// Column name of a series and the factor from SI units to the exported unit:
/// delay spreads in ns, Doppler spreads in kHz, durations in s.
pub fn value_column(series: &MetricSeries) -> (String, f64) {
    let (suffix, scale) = match series.quantity() {
        Quantity::DelaySpread => ("_ns", 1e9),
        Quantity::DopplerSpread => ("_khz", 1e-3),
        Quantity::Duration => ("_s", 1.0),
        Quantity::Dimensionless => ("", 1.0),
    };
    (format!("{}{suffix}", series.name()), scale)
}

fn create(path: &Path) -> Result<BufWriter<File>, IoError> {
    Ok(BufWriter::new(File::create(path).map_err(|e| IoError::io(path, e))?))
}

/// Writes series that share one axis as columns of a CSV file.
///
/// The first column is the axis; each series adds one column. Two trailing
/// comment lines give the mean and population std of every series, in the
/// exported units.
pub fn export_metrics(series: &[&MetricSeries], path: &Path) -> Result<(), IoError> {
    let first = *series
        .first()
        .ok_or_else(|| IoError::Export("no series to export".into()))?;
    for s in &series[1..] {
        if s.axis_kind() != first.axis_kind() || s.axis() != first.axis() {
            return Err(IoError::Export(format!(
                "series {} and {} do not share an axis",
                first.name(),
                s.name()
            )));
        }
    }
    let (axis_name, axis_scale) = axis_column(first.axis_kind());
    let columns: Vec<(String, f64)> = series.iter().map(|s| value_column(s)).collect();

    let io = |e| IoError::io(path, e);
    let mut out = create(path)?;
    let mut header = String::from(axis_name);
    for (name, _) in &columns {
        header.push(',');
        header.push_str(name);
    }
    writeln!(out, "{header}").map_err(io)?;
    let mut line = String::new();
    for (i, &x) in first.axis().iter().enumerate() {
        line.clear();
        line.push_str(&format!("{:e}", x * axis_scale));
        for (s, (_, scale)) in series.iter().zip(&columns) {
            line.push_str(&format!(",{:e}", s.values()[i] * scale));
        }
        writeln!(out, "{line}").map_err(io)?;
    }
    for (label, stat) in [("mean", MetricSeries::mean as fn(&MetricSeries) -> f64), ("std", MetricSeries::std)] {
        line.clear();
        line.push_str("# ");
        line.push_str(label);
        for (s, (_, scale)) in series.iter().zip(&columns) {
            line.push_str(&format!(",{:e}", stat(s) * scale));
        }
        writeln!(out, "{line}").map_err(io)?;
    }
    out.flush().map_err(io)
}

/// Writes a matrix with labelled row and column axes.
///
/// The header is `corner,c0,c1,...`; every following line is `r_i,v_i0,v_i1,...`.
pub fn export_grid(
    path: &Path,
    corner: &str,
    row_axis: &[f64],
    col_axis: &[f64],
    values: &[f64],
) -> Result<(), IoError> {
    if values.len() != row_axis.len() * col_axis.len() {
        return Err(IoError::Export(format!(
            "grid of {} values does not match {} x {} axes",
            values.len(),
            row_axis.len(),
            col_axis.len()
        )));
    }
    let io = |e| IoError::io(path, e);
    let mut out = create(path)?;
    let mut line = String::from(corner);
    for c in col_axis {
        line.push_str(&format!(",{c:e}"));
    }
    writeln!(out, "{line}").map_err(io)?;
    if !col_axis.is_empty() {
        for (r, row) in row_axis.iter().zip(values.chunks_exact(col_axis.len())) {
            line.clear();
            line.push_str(&format!("{r:e}"));
            for v in row {
                line.push_str(&format!(",{v:e}"));
            }
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    out.flush().map_err(io)
}

/// A parsed CSV table: header names, numeric rows, and the `#` comment lines.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub comments: Vec<String>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// Reads a table written by [`export_metrics`] or [`export_grid`].
pub fn read_table(path: &Path) -> Result<Table, IoError> {
    let file = File::open(path).map_err(|e| IoError::io(path, e))?;
    let parse_err = |line: usize, reason: String| IoError::Parse {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut columns = None;
    let mut rows = Vec::new();
    let mut comments = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| IoError::io(path, e))?;
        let lineno = i + 1;
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        match &columns {
            None => columns = Some(line.split(',').map(str::to_string).collect::<Vec<_>>()),
            Some(cols) => {
                let row = line
                    .split(',')
                    .map(|f| f.trim().parse::<f64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                if row.len() != cols.len() {
                    return Err(parse_err(
                        lineno,
                        format!("{} fields, header has {}", row.len(), cols.len()),
                    ));
                }
                rows.push(row);
            }
        }
    }
    Ok(Table {
        columns: columns.ok_or_else(|| parse_err(0, "missing header line".into()))?,
        rows,
        comments,
    })
}
