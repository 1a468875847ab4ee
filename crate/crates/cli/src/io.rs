//! Delimited-table ingestion and result serialization.
//!
//! The input format is a plain numeric table: one header row of unique
//! column names, then rows of numbers, comma- or tab-separated, no quoting.
//! Output numbers carry 17 significant digits so every `f64` survives a
//! round trip through its file representation.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rdc_core::eval::MetricsSummary;
use rdc_core::screen::ScreeningResult;
use rdc_core::DataMatrix;

use crate::error::{CliError, CliResult};

/// A parsed numeric table.
#[derive(Debug, Clone)]
pub struct Table {
    pub header: Vec<String>,
    /// Row-major values, `rows x header.len()`.
    pub values: Vec<f64>,
    pub rows: usize,
}

impl Table {
    pub fn column(&self, index: usize) -> Vec<f64> {
        let width = self.header.len();
        (0..self.rows).map(|i| self.values[i * width + index]).collect()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}

/// How the response block is specified.
pub enum ResponseSpec {
    /// Named columns of the main input.
    Columns(Vec<String>),
    /// Every column of a separate file.
    File(std::path::PathBuf),
}

pub fn read_table(path: &Path, delim: char) -> CliResult<Table> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let (_, header_line) = lines
        .next()
        .ok_or_else(|| CliError::Data(format!("{}: empty file", path.display())))?;
    let header: Vec<String> = header_line
        .split(delim)
        .map(|h| h.trim().to_string())
        .collect();
    if header.iter().any(|h| h.is_empty()) {
        return Err(CliError::Data(format!(
            "{}: header contains an empty column name",
            path.display()
        )));
    }
    for (i, name) in header.iter().enumerate() {
        if header[..i].contains(name) {
            return Err(CliError::Data(format!(
                "{}: duplicate column name {name:?}",
                path.display()
            )));
        }
    }

    let width = header.len();
    let mut values = Vec::new();
    let mut rows = 0usize;
    let mut bad_cells: Vec<String> = Vec::new();
    for (line_idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = line_idx + 1; // 1-based, header is line 1
        let fields: Vec<&str> = line.split(delim).collect();
        if fields.len() != width {
            return Err(CliError::Data(format!(
                "{}: line {line_no}: expected {width} fields, got {}",
                path.display(),
                fields.len()
            )));
        }
        for (col, field) in fields.iter().enumerate() {
            let parsed: f64 = field.trim().parse().map_err(|_| {
                CliError::Data(format!(
                    "{}: line {line_no}, column {:?}: cannot parse {:?} as a number",
                    path.display(),
                    header[col],
                    field.trim()
                ))
            })?;
            if !parsed.is_finite() && bad_cells.len() < 8 {
                bad_cells.push(format!("line {line_no} column {:?}", header[col]));
            }
            values.push(parsed);
        }
        rows += 1;
    }
    if !bad_cells.is_empty() {
        return Err(CliError::Data(format!(
            "{}: non-finite cells at {}",
            path.display(),
            bad_cells.join(", ")
        )));
    }
    if rows == 0 {
        return Err(CliError::Data(format!("{}: no data rows", path.display())));
    }
    Ok(Table {
        header,
        values,
        rows,
    })
}

/// Load a dataset, splitting predictors from the response per `spec`.
pub fn load_csv(path: &Path, delim: char, spec: &ResponseSpec) -> CliResult<DataMatrix> {
    let table = read_table(path, delim)?;
    match spec {
        ResponseSpec::Columns(names) => {
            if names.is_empty() {
                return Err(CliError::Usage("no response column named".into()));
            }
            let mut response_idx = Vec::with_capacity(names.len());
            for name in names {
                match table.column_index(name) {
                    Some(i) => response_idx.push(i),
                    None => {
                        return Err(CliError::Data(format!(
                            "response column {name:?} not found; available columns: {}",
                            table.header.join(", ")
                        )))
                    }
                }
            }
            assemble(&table, &response_idx)
        }
        ResponseSpec::File(resp_path) => {
            let resp = read_table(resp_path, delim)?;
            if resp.rows != table.rows {
                return Err(CliError::Data(format!(
                    "response file has {} rows but predictors have {}",
                    resp.rows, table.rows
                )));
            }
            let n = table.rows;
            let p = table.header.len();
            let mut predictors = vec![0.0; n * p];
            for j in 0..p {
                for i in 0..n {
                    predictors[j * n + i] = table.values[i * p + j];
                }
            }
            let response = resp.values.clone();
            DataMatrix::new(
                n,
                predictors,
                response,
                table.header.clone(),
                resp.header.clone(),
            )
            .map_err(CliError::from)
        }
    }
}

fn assemble(table: &Table, response_idx: &[usize]) -> CliResult<DataMatrix> {
    let n = table.rows;
    let width = table.header.len();
    let predictor_idx: Vec<usize> = (0..width).filter(|i| !response_idx.contains(i)).collect();
    if predictor_idx.is_empty() {
        return Err(CliError::Data(
            "every column was claimed by the response; no predictors left".into(),
        ));
    }
    let p = predictor_idx.len();
    let q = response_idx.len();
    let mut predictors = vec![0.0; n * p];
    for (j, &src) in predictor_idx.iter().enumerate() {
        for i in 0..n {
            predictors[j * n + i] = table.values[i * width + src];
        }
    }
    let mut response = vec![0.0; n * q];
    for i in 0..n {
        for (k, &src) in response_idx.iter().enumerate() {
            response[i * q + k] = table.values[i * width + src];
        }
    }
    let feature_names = predictor_idx
        .iter()
        .map(|&i| table.header[i].clone())
        .collect();
    let response_names = response_idx
        .iter()
        .map(|&i| table.header[i].clone())
        .collect();
    DataMatrix::new(n, predictors, response, feature_names, response_names)
        .map_err(CliError::from)
}

/// 17 significant digits: exact `f64` round trip.
pub fn g17(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    fs::write(path, contents)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

/// `ranking.csv`: one row per feature in rank order.
pub fn write_ranking(path: &Path, result: &ScreeningResult, names: &[String]) -> CliResult<()> {
    let mut out = String::from("feature_name,feature_index,utility,rank,tau,retained\n");
    for (pos, &j) in result.ranking.iter().enumerate() {
        let tau = result
            .taus
            .as_ref()
            .and_then(|taus| taus[j])
            .map(g17)
            .unwrap_or_default();
        let retained = usize::from(pos < result.d);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            names[j],
            j + 1,
            g17(result.utilities[j]),
            pos + 1,
            tau,
            retained
        );
    }
    write_file(path, &out)
}

/// Top-d dataset export: the retained feature columns in rank order plus
/// the response block, ready for second-stage selection tools.
pub fn write_retained(
    path: &Path,
    data: &DataMatrix,
    result: &ScreeningResult,
) -> CliResult<()> {
    let mut out = String::new();
    let header: Vec<&str> = result
        .retained
        .iter()
        .map(|&j| data.feature_names()[j].as_str())
        .chain(data.response_names().iter().map(|s| s.as_str()))
        .collect();
    let _ = writeln!(out, "{}", header.join(","));
    for i in 0..data.n() {
        let mut fields: Vec<String> = Vec::with_capacity(result.retained.len() + data.q());
        for &j in &result.retained {
            fields.push(g17(data.feature_column(j)[i]));
        }
        for v in data.response_row(i) {
            fields.push(g17(*v));
        }
        let _ = writeln!(out, "{}", fields.join(","));
    }
    write_file(path, &out)
}

/// Key-value manifest, one `key = value` per line.
pub fn write_manifest(path: &Path, entries: &[(String, String)]) -> CliResult<()> {
    let mut out = String::new();
    for (k, v) in entries {
        let _ = writeln!(out, "{k} = {v}");
    }
    write_file(path, &out)
}

/// `metrics.csv`: one summary row per method.
pub fn write_metrics(path: &Path, summary: &MetricsSummary) -> CliResult<()> {
    let mut out = String::from("method,mms_median,p1,pa,tp_d1,tp_d2\n");
    for s in &summary.summaries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            s.method,
            g17(s.mms_median),
            g17(s.p1),
            g17(s.pa),
            g17(s.tp_d1),
            g17(s.tp_d2)
        );
    }
    write_file(path, &out)
}

/// `records.csv`: raw per-replicate outcomes.
pub fn write_records(path: &Path, summary: &MetricsSummary) -> CliResult<()> {
    let mut out = String::from("replicate,method,mms,hits_d,hits_d1,hits_d2\n");
    for r in &summary.records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.replicate, r.method, r.mms, r.hits_d, r.hits_d1, r.hits_d2
        );
    }
    write_file(path, &out)
}

/// `plot.csv`: long-format method x metric table.
pub fn write_plot(path: &Path, summary: &MetricsSummary) -> CliResult<()> {
    let mut out = String::from("method,metric,value\n");
    for s in &summary.summaries {
        for (metric, value) in [
            ("mms_median", s.mms_median),
            ("p1", s.p1),
            ("pa", s.pa),
            ("tp_d1", s.tp_d1),
            ("tp_d2", s.tp_d2),
        ] {
            let _ = writeln!(out, "{},{},{}", s.method, metric, g17(value));
        }
    }
    write_file(path, &out)
}

/// Dump a dataset as a delimited table: predictor columns then response
/// columns, 17 significant digits per cell.
pub fn write_dataset(path: &Path, data: &DataMatrix, delim: char) -> CliResult<()> {
    let mut out = String::new();
    let header: Vec<&str> = data
        .feature_names()
        .iter()
        .chain(data.response_names().iter())
        .map(|s| s.as_str())
        .collect();
    let _ = writeln!(out, "{}", header.join(&delim.to_string()));
    for i in 0..data.n() {
        let mut fields: Vec<String> = Vec::with_capacity(data.p() + data.q());
        for j in 0..data.p() {
            fields.push(g17(data.feature_column(j)[i]));
        }
        for v in data.response_row(i) {
            fields.push(g17(*v));
        }
        let _ = writeln!(out, "{}", fields.join(&delim.to_string()));
    }
    write_file(path, &out)
}
