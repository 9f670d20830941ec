//! Report emission: deterministic text (numbers at up to six significant
//! digits, optional suppressible header), machine JSON at full precision,
//! and plot-ready `series,label,value` CSV.

use serde::Serialize;

use fuzzy_models::matrix::Matrix;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    #[value(name = "series-csv")]
    SeriesCsv,
}

/// Up to six significant digits, trailing zeros trimmed.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).clamp(0, 17) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn join_sig6(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| sig6(*v))
        .collect::<Vec<_>>()
        .join(" ")
}

/// One `series,label,value` row.
pub fn series_row(out: &mut String, series: &str, label: &str, value: f64) {
    out.push_str(series);
    out.push(',');
    out.push_str(label);
    out.push(',');
    out.push_str(&crate::csvio::format_number(value));
    out.push('\n');
}

/// A command report that can be rendered in all three formats.
pub trait Report: Serialize {
    /// Command name echoed in the header.
    fn command(&self) -> &'static str;

    /// Human-readable body (without the header line).
    fn text_body(&self) -> String;

    /// Plot-ready series rows.
    fn series_body(&self) -> String;
}

pub fn emit<R: Report>(report: &R, format: Format, no_header: bool) -> CliResult<String> {
    match format {
        Format::Text => {
            let mut out = String::new();
            if !no_header {
                out.push_str(&format!("# fuzzy-models {} report\n", report.command()));
            }
            out.push_str(&report.text_body());
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Envelope<'a, T: Serialize> {
                command: &'static str,
                #[serde(flatten)]
                report: &'a T,
            }
            let doc = Envelope {
                command: report.command(),
                report,
            };
            let mut json = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::model(format!("serialisation failed: {e}")))?;
            json.push('\n');
            Ok(json)
        }
        Format::SeriesCsv => {
            let mut out = String::from("series,label,value\n");
            out.push_str(&report.series_body());
            Ok(out)
        }
    }
}

/// Serializable stand-in for a matrix: shape plus row-major rows.
#[derive(Serialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_labels: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub col_labels: Option<Vec<String>>,
    pub data: Vec<Vec<f64>>,
}

impl From<&Matrix> for MatrixDoc {
    fn from(m: &Matrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            cols: m.cols(),
            row_labels: m.row_labels().map(|l| l.to_vec()),
            col_labels: m.col_labels().map(|l| l.to_vec()),
            data: (0..m.rows()).map(|i| m.row(i).to_vec()).collect(),
        }
    }
}
