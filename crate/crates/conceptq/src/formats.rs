//! Input and output file formats.
//!
//! * count table CSV, header `label,count`
//! * disjunction CSV, header `label,muA,muB,muAB`
//! * coincidence set JSON, `{"AB":{"11":..,"12":..,"21":..,"22":..},"ApB":..,"ABp":..,"ApBp":..}`
//!   where cell `ij` is outcome `i` of the left experiment with outcome `j`
//!   of the right one
//! * model JSON
//! * placement report CSV, header `label,x,y,exact,residual`

use std::fs;
use std::path::Path;

use conceptq_core::counts::{CoincidenceCounts, CoincidenceSet, CountTable};
use conceptq_core::hilbert::{DisjunctionData, DisjunctionModel, Sign};
use conceptq_core::landscape::PlacementSet;
use conceptq_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Significant digits of numbers in data files.
pub const DATA_DIGITS: usize = 12;

/// `v` rounded to `digits` significant digits.
pub fn round_sig(v: f64, digits: usize) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", digits.max(1) - 1, v).parse().unwrap_or(v)
}

/// Shortest text that parses back to `round_sig(v, digits)`.
pub fn format_sig(v: f64, digits: usize) -> String {
    format!("{:?}", round_sig(v, digits))
}

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// Rows of a headed CSV file as `(row number, fields)`.
fn csv_rows(path: &Path, header: &[&str]) -> Result<Vec<(u64, Vec<String>)>> {
    let text = read_to_string(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let found = reader
        .headers()
        .map_err(|e| Error::format(path, e.to_string()))?
        .clone();
    if found.iter().ne(header.iter().copied()) {
        return Err(Error::Row {
            path: path.into(),
            row: 1,
            message: format!(
                "expected header `{}`, found `{}`",
                header.join(","),
                found.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let fallback = i as u64 + 2;
        let record = record.map_err(|e| Error::Row {
            path: path.into(),
            row: e.position().map_or(fallback, |p| p.line()),
            message: e.to_string(),
        })?;
        let row = record.position().map_or(fallback, |p| p.line());
        if record.len() != header.len() {
            return Err(Error::Row {
                path: path.into(),
                row,
                message: format!("expected {} fields, found {}", header.len(), record.len()),
            });
        }
        rows.push((row, record.iter().map(str::to_owned).collect()));
    }
    Ok(rows)
}

fn parse_count(path: &Path, row: u64, field: &str) -> Result<u64> {
    field.parse().map_err(|_| Error::Row {
        path: path.into(),
        row,
        message: if field.starts_with('-') && field[1..].parse::<u64>().is_ok() {
            format!("negative count {field}")
        } else {
            format!("invalid count {field:?}")
        },
    })
}

pub fn load_count_table(path: &Path) -> Result<CountTable> {
    let mut table = CountTable::new();
    for (row, fields) in csv_rows(path, &["label", "count"])? {
        let count = parse_count(path, row, &fields[1])?;
        table
            .push(fields[0].clone(), count)
            .map_err(|e| Error::Row {
                path: path.into(),
                row,
                message: e.to_string(),
            })?;
    }
    Ok(table)
}

pub fn write_count_table(table: &CountTable) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::format("<count table>", e.to_string());
    w.write_record(["label", "count"]).map_err(csv_err)?;
    for (label, count) in table.entries() {
        w.write_record([label.as_str(), &count.to_string()])
            .map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::format("<count table>", e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub fn load_disjunction(path: &Path) -> Result<DisjunctionData> {
    let rows = csv_rows(path, &["label", "muA", "muB", "muAB"])?;
    let mut labels = Vec::with_capacity(rows.len());
    let mut cols = [Vec::new(), Vec::new(), Vec::new()];
    for (row, fields) in rows {
        labels.push(fields[0].clone());
        for (col, text) in cols.iter_mut().zip(&fields[1..]) {
            let v: f64 = text.parse().map_err(|_| Error::Row {
                path: path.into(),
                row,
                message: format!("invalid probability {text:?}"),
            })?;
            col.push(v);
        }
    }
    let [mu_a, mu_b, mu_ab] = cols;
    Ok(DisjunctionData::new(labels, mu_a, mu_b, mu_ab)?)
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellsFile {
    #[serde(rename = "11")]
    n11: u64,
    #[serde(rename = "12")]
    n12: u64,
    #[serde(rename = "21")]
    n21: u64,
    #[serde(rename = "22")]
    n22: u64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetFile {
    #[serde(rename = "AB")]
    ab: CellsFile,
    #[serde(rename = "ApB")]
    apb: CellsFile,
    #[serde(rename = "ABp")]
    abp: CellsFile,
    #[serde(rename = "ApBp")]
    apbp: CellsFile,
}

pub fn load_coincidence_set(path: &Path) -> Result<CoincidenceSet> {
    let text = read_to_string(path)?;
    let file: SetFile =
        serde_json::from_str(&text).map_err(|e| Error::format(path, e.to_string()))?;
    let cells = |c: CellsFile, name: &str| {
        CoincidenceCounts::new(c.n11, c.n12, c.n21, c.n22)
            .map_err(|e| Error::format(path, format!("{name}: {e}")))
    };
    Ok(CoincidenceSet {
        ab: cells(file.ab, "AB")?,
        apb: cells(file.apb, "ApB")?,
        abp: cells(file.abp, "ABp")?,
        apbp: cells(file.apbp, "ApBp")?,
    })
}

pub fn coincidence_set_json(set: &CoincidenceSet) -> String {
    let cells = |c: &CoincidenceCounts| CellsFile {
        n11: c.n11,
        n12: c.n12,
        n21: c.n21,
        n22: c.n22,
    };
    let file = SetFile {
        ab: cells(&set.ab),
        apb: cells(&set.apb),
        abp: cells(&set.abp),
        apbp: cells(&set.apbp),
    };
    serde_json::to_string_pretty(&file).expect("plain data serialises")
}

/// On-disk form of a [`DisjunctionModel`]. `m` is 1-based; vector entries
/// are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub labels: Vec<String>,
    pub lambda: Vec<f64>,
    pub sign: Vec<String>,
    pub beta_deg: Vec<f64>,
    pub c_m: f64,
    pub m: usize,
    #[serde(rename = "vecA")]
    pub vec_a: Vec<[f64; 2]>,
    #[serde(rename = "vecB")]
    pub vec_b: Vec<[f64; 2]>,
}

impl ModelFile {
    /// Copies the model with every number rounded to [`DATA_DIGITS`].
    pub fn from_model(model: &DisjunctionModel) -> Self {
        let r = |v: f64| round_sig(v, DATA_DIGITS);
        let pairs = |v: &[Complex64]| v.iter().map(|z| [r(z.re), r(z.im)]).collect();
        Self {
            labels: model.labels().to_vec(),
            lambda: model.lambda().iter().copied().map(r).collect(),
            sign: model
                .signs()
                .iter()
                .map(|s| s.symbol().to_string())
                .collect(),
            beta_deg: model.beta_deg().iter().copied().map(r).collect(),
            c_m: r(model.c_m()),
            m: model.dominant() + 1,
            vec_a: pairs(model.vec_a()),
            vec_b: pairs(model.vec_b()),
        }
    }

    pub fn into_model(self) -> conceptq_core::Result<DisjunctionModel> {
        let signs = self
            .sign
            .iter()
            .map(|s| match s.as_str() {
                "+" => Ok(Sign::Plus),
                "-" => Ok(Sign::Minus),
                other => Err(conceptq_core::Error::Data(format!(
                    "invalid sign {other:?}"
                ))),
            })
            .collect::<conceptq_core::Result<Vec<_>>>()?;
        if self.m == 0 {
            return Err(conceptq_core::Error::Data("m is 1-based".into()));
        }
        let complex = |v: Vec<[f64; 2]>| {
            v.into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect()
        };
        DisjunctionModel::from_parts(
            self.labels,
            self.m - 1,
            self.lambda,
            signs,
            self.c_m,
            self.beta_deg,
            complex(self.vec_a),
            complex(self.vec_b),
        )
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serialises");
        s.push('\n');
        s
    }
}

pub fn load_model(path: &Path) -> Result<DisjunctionModel> {
    let text = read_to_string(path)?;
    let file: ModelFile =
        serde_json::from_str(&text).map_err(|e| Error::format(path, e.to_string()))?;
    file.into_model()
        .map_err(|e| Error::format(path, e.to_string()))
}

pub fn placements_csv(labels: &[String], placements: &PlacementSet) -> String {
    let mut out = String::from("label,x,y,exact,residual\n");
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for (label, p) in labels.iter().zip(placements.as_slice()) {
        w.write_record([
            label.as_str(),
            &format_sig(p.position.x, DATA_DIGITS),
            &format_sig(p.position.y, DATA_DIGITS),
            if p.exact { "true" } else { "false" },
            &format_sig(p.residual, DATA_DIGITS),
        ])
        .expect("writing to memory");
    }
    let bytes = w.into_inner().expect("writing to memory");
    out.push_str(std::str::from_utf8(&bytes).expect("csv output is UTF-8"));
    out
}

/// Writes `contents` to `path` in one go, creating nothing on failure to
/// serialise beforehand.
pub fn write_file(path: &Path, contents: impl AsRef<[u8]>) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}
