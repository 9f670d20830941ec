//! Fuzzy associative memory recall: graded max-min composition between a
//! fit vector and a fuzzy rule matrix, in both directions, with ranked
//! readout of the result.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// A fuzzy rule matrix; rows are output-side concepts, columns cause-side
/// concepts.
#[derive(Debug, Clone, PartialEq)]
pub struct FamModel {
    matrix: Matrix,
}

impl FamModel {
    pub fn new(matrix: Matrix) -> Result<Self> {
        matrix.require_fuzzy()?;
        Ok(FamModel { matrix })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

fn require_fuzzy_vector(v: &[f64], expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: v.len(),
        });
    }
    if let Some((i, &bad)) = v
        .iter()
        .enumerate()
        .find(|(_, &x)| !(0.0..=1.0).contains(&x))
    {
        return Err(Error::NotFuzzy {
            row: 0,
            col: i,
            value: bad,
        });
    }
    Ok(())
}

/// a_i = max over j of min(m_ij, b_j).
pub fn fam_backward(model: &FamModel, b: &[f64]) -> Result<Vec<f64>> {
    require_fuzzy_vector(b, model.cols())?;
    Ok((0..model.rows())
        .map(|i| {
            (0..model.cols())
                .map(|j| model.matrix.get(i, j).min(b[j]))
                .fold(0.0, f64::max)
        })
        .collect())
}

/// b_j = max over i of min(a_i, m_ij).
pub fn fam_forward(model: &FamModel, a: &[f64]) -> Result<Vec<f64>> {
    require_fuzzy_vector(a, model.rows())?;
    Ok((0..model.cols())
        .map(|j| {
            (0..model.rows())
                .map(|i| a[i].min(model.matrix.get(i, j)))
                .fold(0.0, f64::max)
        })
        .collect())
}

/// Stable descending sort of (label, value); ties keep input order.
pub fn fam_rank(values: &[f64], labels: &[String]) -> Result<Vec<(String, f64)>> {
    if values.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: values.len(),
            found: labels.len(),
        });
    }
    let mut ranked: Vec<(String, f64)> =
        labels.iter().cloned().zip(values.iter().copied()).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(ranked)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn women_hiv_model() -> FamModel {
        FamModel::new(
            Matrix::from_rows(&[
                vec![0.9, 0.8, 0.7, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.7],
                vec![0.5, 0.8, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.3, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 0.9, 0.6, 0.7, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.7, 0.5, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 0.6, 0.0, 0.0, 0.0, 0.0, 0.0],
            ])
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn backward_recall_from_three_causes() {
        let b = [0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let a = fam_backward(&women_hiv_model(), &b).unwrap();
        assert_eq!(a, vec![0.8, 0.8, 0.6, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn backward_trivial_fits() {
        let m = women_hiv_model();
        let zeros = fam_backward(&m, &[0.0; 10]).unwrap();
        assert!(zeros.iter().all(|&v| v == 0.0));
        let ones = fam_backward(&m, &[1.0; 10]).unwrap();
        for (i, v) in ones.iter().enumerate() {
            let row_max = m.matrix().row(i).iter().copied().fold(0.0, f64::max);
            assert_eq!(*v, row_max);
        }
    }

    #[test]
    fn forward_recall_of_recalled_vector() {
        // the composition the published output vector does not satisfy;
        // frozen from a per-cell max-min loop over the same matrix
        let a = [0.8, 0.8, 0.6, 0.0, 0.0, 0.0, 0.0];
        let b = fam_forward(&women_hiv_model(), &a).unwrap();
        assert_eq!(b, vec![0.8, 0.8, 0.7, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.7]);
    }

    #[test]
    fn forward_trivial_fits() {
        let m = women_hiv_model();
        let ones = fam_forward(&m, &[1.0; 7]).unwrap();
        for (j, v) in ones.iter().enumerate() {
            let col_max = (0..7).map(|i| m.matrix().get(i, j)).fold(0.0, f64::max);
            assert_eq!(*v, col_max);
        }
        let zeros = fam_forward(&m, &[0.0; 7]).unwrap();
        assert!(zeros.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn backward_agrees_with_matrix_composition() {
        let m = women_hiv_model();
        let b = [0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let composed = m
            .matrix()
            .compose_max_min(&Matrix::column_vector(&b).unwrap())
            .unwrap();
        let a = fam_backward(&m, &b).unwrap();
        assert_eq!(composed.data(), &a[..]);
    }

    #[test]
    fn rank_orders_descending_with_stable_ties() {
        let labels: Vec<String> = ["R1", "R2", "R3", "R4"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let ranked = fam_rank(&[0.9, 0.8, 0.8, 0.6], &labels).unwrap();
        let names: Vec<&str> = ranked.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(names, vec!["R1", "R2", "R3", "R4"]);

        let equal = fam_rank(&[0.5, 0.5, 0.5], &labels[..3]).unwrap();
        let names: Vec<&str> = equal.iter().map(|(l, _)| l.as_str()).collect();
        assert_eq!(names, vec!["R1", "R2", "R3"]);
    }

    #[test]
    fn rank_of_recalled_vector() {
        let a = fam_backward(
            &women_hiv_model(),
            &[0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        )
        .unwrap();
        let labels: Vec<String> = (1..=7).map(|i| format!("W{i}")).collect();
        let ranked = fam_rank(&a, &labels).unwrap();
        assert_eq!(ranked[0], ("W1".to_string(), 0.8));
        assert_eq!(ranked[1], ("W2".to_string(), 0.8));
        assert_eq!(ranked[2], ("W3".to_string(), 0.6));
    }

    #[test]
    fn recall_rejects_out_of_range_fits() {
        let m = women_hiv_model();
        let mut b = [0.0; 10];
        b[3] = 1.5;
        assert!(matches!(fam_backward(&m, &b), Err(Error::NotFuzzy { .. })));
        assert!(matches!(
            fam_backward(&m, &[0.0; 9]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn backward_is_monotone() {
        let m = women_hiv_model();
        let lo = [0.0, 0.4, 0.2, 0.0, 0.1, 0.0, 0.3, 0.0, 0.0, 0.0];
        let hi = [0.1, 0.9, 0.2, 0.5, 0.1, 0.2, 0.3, 0.8, 0.0, 0.1];
        let a_lo = fam_backward(&m, &lo).unwrap();
        let a_hi = fam_backward(&m, &hi).unwrap();
        for (x, y) in a_lo.iter().zip(&a_hi) {
            assert!(x <= y);
        }
    }

    #[test]
    fn round_trip_stabilises_within_row_count_iterations() {
        // one forward/backward pass is not idempotent in general, but the
        // iterated pass is monotone non-decreasing and reaches a fixed
        // point within as many sweeps as there are rows
        let m = FamModel::new(
            Matrix::from_rows(&[
                vec![0.9, 0.5, 0.4],
                vec![0.9, 0.5, 0.2],
                vec![0.2, 0.0, 0.2],
                vec![0.2, 0.2, 0.9],
            ])
            .unwrap(),
        )
        .unwrap();
        let a = [0.1, 0.0, 0.6, 0.8];
        let mut prev = fam_backward(&m, &fam_forward(&m, &a).unwrap()).unwrap();
        let mut settled = false;
        for _ in 0..m.rows() {
            let next = fam_backward(&m, &fam_forward(&m, &prev).unwrap()).unwrap();
            for (x, y) in prev.iter().zip(&next) {
                assert!(y >= x, "iterated recall never shrinks");
            }
            if next == prev {
                settled = true;
                break;
            }
            prev = next;
        }
        assert!(settled, "round trip reaches a fixed point");
    }
}
