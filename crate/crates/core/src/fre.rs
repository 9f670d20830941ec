//! Fuzzy relational equations: solvability of p o Q = r under max-min,
//! the sigma-formula maximal solution with a verification residual, and
//! the partitioned max-product fit used for peak extraction.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Equality tolerance for "composes exactly"; min/max arithmetic over the
/// input literals is exact, only products can perturb.
pub const SOLVE_TOLERANCE: f64 = 1e-12;

/// Composition operator for verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Composition {
    MaxMin,
    MaxProduct,
}

/// The clip-to-unit-interval identity.
pub fn linear_activation(a: f64) -> f64 {
    a.clamp(0.0, 1.0)
}

/// Maximal solution candidate with its verification residual.
#[derive(Debug, Clone, PartialEq)]
pub struct FreSolution {
    pub p_hat: Vec<f64>,
    pub solvable: bool,
    pub residual: f64,
}

fn require_system(q: &Matrix, r: &[f64]) -> Result<()> {
    q.require_fuzzy()?;
    if r.len() != q.cols() {
        return Err(Error::LengthMismatch {
            expected: q.cols(),
            found: r.len(),
        });
    }
    if let Some((k, &bad)) = r
        .iter()
        .enumerate()
        .find(|(_, &x)| !(0.0..=1.0).contains(&x))
    {
        return Err(Error::NotFuzzy {
            row: 0,
            col: k,
            value: bad,
        });
    }
    Ok(())
}

/// False when some column maximum of Q falls below the target there, in
/// which case no solution can exist. True is necessary, not sufficient.
pub fn fre_necessary_check(q: &Matrix, r: &[f64]) -> Result<bool> {
    require_system(q, r)?;
    for (k, &target) in r.iter().enumerate() {
        let col_max = (0..q.rows()).map(|j| q.get(j, k)).fold(0.0, f64::max);
        if col_max < target {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greatest candidate solution of p o Q = r under max-min:
/// p_j = min over k of sigma(q_jk, r_k), with sigma = r_k where q_jk
/// exceeds r_k and 1 otherwise. The candidate is verified by composition;
/// when it fails, the system has no solution at all and the candidate is
/// returned with its residual.
pub fn fre_max_solution(q: &Matrix, r: &[f64]) -> Result<FreSolution> {
    require_system(q, r)?;
    let p_hat: Vec<f64> = (0..q.rows())
        .map(|j| {
            (0..q.cols())
                .map(|k| if q.get(j, k) > r[k] { r[k] } else { 1.0 })
                .fold(1.0, f64::min)
        })
        .collect();
    let residual = (0..q.cols())
        .map(|k| {
            let composed = (0..q.rows())
                .map(|j| p_hat[j].min(q.get(j, k)))
                .fold(0.0, f64::max);
            (composed - r[k]).abs()
        })
        .fold(0.0, f64::max);
    Ok(FreSolution {
        p_hat,
        solvable: residual <= SOLVE_TOLERANCE,
        residual,
    })
}

/// Largest absolute cell difference between compose(P, Q) and R.
pub fn fre_verify(p: &Matrix, q: &Matrix, r: &Matrix, composition: Composition) -> Result<f64> {
    let composed = match composition {
        Composition::MaxMin => p.compose_max_min(q)?,
        Composition::MaxProduct => p.compose_max_product(q)?,
    };
    if composed.shape() != r.shape() {
        return Err(Error::ShapeMismatch {
            left_rows: composed.rows(),
            left_cols: composed.cols(),
            right_rows: r.rows(),
            right_cols: r.cols(),
        });
    }
    Ok(composed
        .data()
        .iter()
        .zip(r.data())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Closed-form max-product fit of P for P o q = r with q a column of
/// positive inputs: every row is the constant r_i / q_max, where q_max is
/// attained at the smallest such index. The fit composes back exactly.
pub fn fre_fit_max_product(q: &[f64], r: &[f64]) -> Result<Matrix> {
    if q.is_empty() {
        return Err(Error::EmptyInput("no inputs to fit"));
    }
    if let Some((j, &bad)) = q.iter().enumerate().find(|(_, &x)| x <= 0.0 || x.is_nan()) {
        return Err(Error::InvalidModel(format!(
            "input q[{j}] = {bad} must be positive"
        )));
    }
    let q_max = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    for (i, &target) in r.iter().enumerate() {
        if target / q_max > 1.0 {
            return Err(Error::InfeasibleFit {
                row: i,
                value: target,
                bound: q_max,
            });
        }
        if target < 0.0 {
            return Err(Error::InfeasibleFit {
                row: i,
                value: target,
                bound: q_max,
            });
        }
    }
    let mut data = Vec::with_capacity(r.len() * q.len());
    for &target in r {
        let weight = linear_activation(target / q_max);
        data.extend(std::iter::repeat_n(weight, q.len()));
    }
    Matrix::from_vec(r.len(), q.len(), data)
}

/// How to split the input vector into partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionScheme {
    /// Consecutive chunks of the given size; the length must divide evenly.
    EqualChunks(usize),
    /// Explicit, mutually disjoint index lists.
    Explicit(Vec<Vec<usize>>),
}

/// One partition's fit and its preferred index.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionPeak {
    /// Indices of this partition within the full input.
    pub indices: Vec<usize>,
    pub fitted: Matrix,
    /// Index of the peak within the full input; ties break low.
    pub peak_index: usize,
    pub peak_value: f64,
}

/// Fit each partition by the closed-form max-product rule and report the
/// largest target inside it. Overlapping partitions are rejected: shared
/// indices would hand two partitions the same preference.
pub fn fre_partition_peaks(
    q_full: &[f64],
    r_full: &[f64],
    scheme: &PartitionScheme,
) -> Result<Vec<PartitionPeak>> {
    if q_full.len() != r_full.len() {
        return Err(Error::LengthMismatch {
            expected: q_full.len(),
            found: r_full.len(),
        });
    }
    if q_full.is_empty() {
        return Err(Error::EmptyInput("no data to partition"));
    }
    let partitions: Vec<Vec<usize>> = match scheme {
        PartitionScheme::EqualChunks(size) => {
            if *size == 0 || !q_full.len().is_multiple_of(*size) {
                return Err(Error::InvalidModel(format!(
                    "chunk size {size} does not divide {} elements evenly",
                    q_full.len()
                )));
            }
            (0..q_full.len() / size)
                .map(|c| (c * size..(c + 1) * size).collect())
                .collect()
        }
        PartitionScheme::Explicit(lists) => {
            let mut seen = std::collections::BTreeSet::new();
            for list in lists {
                for &ix in list {
                    if ix >= q_full.len() {
                        return Err(Error::IndexOutOfRange {
                            index: ix,
                            len: q_full.len(),
                        });
                    }
                    if !seen.insert(ix) {
                        return Err(Error::OverlappingPartitions(ix));
                    }
                }
            }
            lists.clone()
        }
    };
    let mut peaks = Vec::with_capacity(partitions.len());
    for indices in partitions {
        if indices.is_empty() {
            return Err(Error::EmptyInput("empty partition"));
        }
        let q: Vec<f64> = indices.iter().map(|&i| q_full[i]).collect();
        let r: Vec<f64> = indices.iter().map(|&i| r_full[i]).collect();
        let fitted = fre_fit_max_product(&q, &r)?;
        let mut best = 0;
        for (pos, &v) in r.iter().enumerate() {
            if v > r[best] {
                best = pos;
            }
        }
        peaks.push(PartitionPeak {
            peak_index: indices[best],
            peak_value: r[best],
            indices,
            fitted,
        });
    }
    Ok(peaks)
}
