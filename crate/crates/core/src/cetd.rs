//! The five-stage statistical fuzzification pipeline: raw counts are made
//! uniform per group (ATD), classified per column against a mean/deviation
//! band into {-1, 0, 1} (RTD), accumulated over several band widths (CETD)
//! and summarised by row sums.

use crate::error::{Error, Result};
use crate::matrix::{Axis, Matrix};

/// Counts per (group, attribute) plus per-group interval lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataTable {
    pub group_labels: Vec<String>,
    pub interval_lengths: Vec<f64>,
    pub attribute_labels: Vec<String>,
    pub counts: Matrix,
}

impl RawDataTable {
    pub fn new(
        group_labels: Vec<String>,
        interval_lengths: Vec<f64>,
        attribute_labels: Vec<String>,
        counts: Matrix,
    ) -> Result<Self> {
        if interval_lengths.len() != counts.rows() {
            return Err(Error::LengthMismatch {
                expected: counts.rows(),
                found: interval_lengths.len(),
            });
        }
        if group_labels.len() != counts.rows() {
            return Err(Error::LengthMismatch {
                expected: counts.rows(),
                found: group_labels.len(),
            });
        }
        if attribute_labels.len() != counts.cols() {
            return Err(Error::LengthMismatch {
                expected: counts.cols(),
                found: attribute_labels.len(),
            });
        }
        if let Some(&bad) = interval_lengths.iter().find(|&&l| l <= 0.0 || l.is_nan()) {
            return Err(Error::InvalidModel(format!(
                "interval length {bad} must be positive"
            )));
        }
        if let Some(&bad) = counts.data().iter().find(|&&c| c < 0.0) {
            return Err(Error::InvalidModel(format!("count {bad} is negative")));
        }
        Ok(RawDataTable {
            group_labels,
            interval_lengths,
            attribute_labels,
            counts,
        })
    }

    /// Convenience constructor with generated labels.
    pub fn from_counts(counts: Matrix, interval_lengths: Vec<f64>) -> Result<Self> {
        let groups = (1..=counts.rows()).map(|i| format!("G{i}")).collect();
        let attrs = (1..=counts.cols()).map(|j| format!("S{j}")).collect();
        RawDataTable::new(groups, interval_lengths, attrs, counts)
    }
}

/// How the per-column deviation is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SdMode {
    /// sqrt(sum (x - mean)^2 / (n - 1))
    #[default]
    SampleNMinus1,
    /// With d = |x - mean|: sqrt(mean(d^2) - mean(d)^2)
    AbsDeviation,
}

/// Per-column means and deviations.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnStats {
    pub means: Vec<f64>,
    pub sds: Vec<f64>,
    pub mode: SdMode,
}

impl ColumnStats {
    /// Stats supplied directly rather than computed, e.g. to reproduce a
    /// published table. Deviations must be non-negative.
    pub fn from_values(means: Vec<f64>, sds: Vec<f64>, mode: SdMode) -> Result<Self> {
        if means.len() != sds.len() {
            return Err(Error::LengthMismatch {
                expected: means.len(),
                found: sds.len(),
            });
        }
        if let Some(&bad) = sds.iter().find(|&&s| s < 0.0) {
            return Err(Error::InvalidModel(format!("deviation {bad} is negative")));
        }
        Ok(ColumnStats { means, sds, mode })
    }
}

/// One RTD stage of the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct RtdStage {
    pub alpha: f64,
    pub matrix: Matrix,
    pub row_sums: Vec<f64>,
}

/// All intermediate artifacts of a pipeline run.
#[derive(Debug, Clone, PartialEq)]
pub struct CetdReport {
    pub atd: Matrix,
    pub stats: ColumnStats,
    pub rtds: Vec<RtdStage>,
    pub cetd: Matrix,
    pub cetd_row_sums: Vec<f64>,
}

/// `atd[i][j] = counts[i][j] / interval_lengths[i]`.
pub fn atd(raw: &RawDataTable) -> Matrix {
    let mut data = Vec::with_capacity(raw.counts.rows() * raw.counts.cols());
    for i in 0..raw.counts.rows() {
        let len = raw.interval_lengths[i];
        for j in 0..raw.counts.cols() {
            data.push(raw.counts.get(i, j) / len);
        }
    }
    Matrix::from_vec(raw.counts.rows(), raw.counts.cols(), data)
        .expect("shape preserved")
        .with_labels(
            Some(raw.group_labels.clone()),
            Some(raw.attribute_labels.clone()),
        )
        .expect("labels validated on construction")
}

/// Per-column mean and deviation in the requested mode.
pub fn column_stats(m: &Matrix, mode: SdMode) -> Result<ColumnStats> {
    if matches!(mode, SdMode::SampleNMinus1) && m.rows() < 2 {
        return Err(Error::SingleRowSample);
    }
    let n = m.rows() as f64;
    let mut means = Vec::with_capacity(m.cols());
    let mut sds = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let col: Vec<f64> = (0..m.rows()).map(|i| m.get(i, j)).collect();
        let mean = col.iter().sum::<f64>() / n;
        let sd = match mode {
            SdMode::SampleNMinus1 => {
                let ss: f64 = col.iter().map(|x| (x - mean).powi(2)).sum();
                (ss / (n - 1.0)).sqrt()
            }
            SdMode::AbsDeviation => {
                let d: Vec<f64> = col.iter().map(|x| (x - mean).abs()).collect();
                let d_mean = d.iter().sum::<f64>() / n;
                let d2_mean = d.iter().map(|x| x * x).sum::<f64>() / n;
                (d2_mean - d_mean * d_mean).max(0.0).sqrt()
            }
        };
        means.push(mean);
        sds.push(sd);
    }
    Ok(ColumnStats { means, sds, mode })
}

/// Classify each ATD entry against the band mean +- alpha * sd. The -1
/// branch is tested first, then +1, then 0, which keeps the map total when
/// the band degenerates.
pub fn rtd(atd: &Matrix, stats: &ColumnStats, alpha: f64) -> Result<Matrix> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if stats.means.len() != atd.cols() {
        return Err(Error::LengthMismatch {
            expected: atd.cols(),
            found: stats.means.len(),
        });
    }
    let mut data = Vec::with_capacity(atd.rows() * atd.cols());
    for i in 0..atd.rows() {
        for j in 0..atd.cols() {
            let a = atd.get(i, j);
            let lo = stats.means[j] - alpha * stats.sds[j];
            let hi = stats.means[j] + alpha * stats.sds[j];
            let e = if a <= lo {
                -1.0
            } else if a >= hi {
                1.0
            } else {
                0.0
            };
            data.push(e);
        }
    }
    Matrix::from_vec(atd.rows(), atd.cols(), data)
}

/// Entrywise sum of RTD matrices plus its row sums.
pub fn cetd(rtds: &[Matrix]) -> Result<(Matrix, Vec<f64>)> {
    let first = rtds.first().ok_or(Error::EmptyInput("no RTD matrices"))?;
    let mut acc = first.clone();
    for m in &rtds[1..] {
        acc = acc.add(m)?;
    }
    let sums = acc.margins(Axis::Row);
    Ok((acc, sums))
}

/// The full pipeline. Alphas are processed in ascending order.
pub fn cetd_pipeline(raw: &RawDataTable, alphas: &[f64], mode: SdMode) -> Result<CetdReport> {
    if alphas.is_empty() {
        return Err(Error::EmptyInput("no alpha values"));
    }
    let atd = atd(raw);
    let stats = column_stats(&atd, mode)?;
    let mut sorted = alphas.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut stages = Vec::with_capacity(sorted.len());
    for &alpha in &sorted {
        let m = rtd(&atd, &stats, alpha)?;
        let row_sums = m.margins(Axis::Row);
        stages.push(RtdStage {
            alpha,
            matrix: m,
            row_sums,
        });
    }
    let (cetd_m, cetd_row_sums) =
        cetd(&stages.iter().map(|s| s.matrix.clone()).collect::<Vec<_>>())?;
    Ok(CetdReport {
        atd,
        stats,
        rtds: stages,
        cetd: cetd_m,
        cetd_row_sums,
    })
}
