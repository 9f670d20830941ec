//! Rectangular real matrices with optional row/column labels.
//!
//! The matrix is the carrier for every model in this crate: adjacency,
//! relational, synaptic and data matrices all share it. Values are
//! immutable; each operation returns a fresh matrix.

use crate::error::{Error, Result};

/// Axis selector for margins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

/// A rows x cols grid of `f64` in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
    row_labels: Option<Vec<String>>,
    col_labels: Option<Vec<String>>,
}

impl Matrix {
    /// Build from row-major data. `data.len()` must equal `rows * cols`
    /// and both dimensions must be positive.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyInput("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            data,
            row_labels: None,
            col_labels: None,
        })
    }

    /// Build from a list of equally long rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput("matrix needs at least one row"));
        }
        let cols = rows[0].len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Matrix::from_vec(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Matrix::from_vec(rows, cols, vec![0.0; rows * cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Matrix::zeros(n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        Ok(m)
    }

    /// A 1 x n matrix.
    pub fn row_vector(values: &[f64]) -> Result<Self> {
        Matrix::from_vec(1, values.len(), values.to_vec())
    }

    /// An n x 1 matrix.
    pub fn column_vector(values: &[f64]) -> Result<Self> {
        Matrix::from_vec(values.len(), 1, values.to_vec())
    }

    pub fn with_labels(
        mut self,
        row_labels: Option<Vec<String>>,
        col_labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(ref l) = row_labels {
            if l.len() != self.rows {
                return Err(Error::LengthMismatch {
                    expected: self.rows,
                    found: l.len(),
                });
            }
        }
        if let Some(ref l) = col_labels {
            if l.len() != self.cols {
                return Err(Error::LengthMismatch {
                    expected: self.cols,
                    found: l.len(),
                });
            }
        }
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_labels(&self) -> Option<&[String]> {
        self.row_labels.as_deref()
    }

    pub fn col_labels(&self) -> Option<&[String]> {
        self.col_labels.as_deref()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every entry lies in the unit interval.
    pub fn is_fuzzy(&self) -> bool {
        self.data.iter().all(|&v| (0.0..=1.0).contains(&v))
    }

    /// Err with the first offending cell when the matrix is not fuzzy.
    pub fn require_fuzzy(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::NotFuzzy {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn require_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn require_composable(&self, other: &Matrix) -> Result<()> {
        if self.cols != other.rows {
            return Err(Error::InnerDimMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn cellwise(&self, other: &Matrix, f: impl Fn(f64, f64) -> f64) -> Result<Matrix> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }

    /// Entrywise maximum of two equally shaped matrices.
    pub fn elementwise_max(&self, other: &Matrix) -> Result<Matrix> {
        self.cellwise(other, f64::max)
    }

    /// Entrywise minimum of two equally shaped matrices.
    pub fn elementwise_min(&self, other: &Matrix) -> Result<Matrix> {
        self.cellwise(other, f64::min)
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.cellwise(other, |a, b| a + b)
    }

    /// Multiply every entry by a scalar.
    pub fn scale(&self, factor: f64) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= factor;
        }
        out
    }

    fn compose(
        &self,
        other: &Matrix,
        cell: impl Fn(&Matrix, &Matrix, usize, usize) -> f64,
    ) -> Result<Matrix> {
        self.require_composable(other)?;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for k in 0..other.cols {
                data.push(cell(self, other, i, k));
            }
        }
        Matrix::from_vec(self.rows, other.cols, data)
    }

    /// `result[i][k] = max over j of min(a[i][j], b[j][k])`.
    pub fn compose_max_min(&self, other: &Matrix) -> Result<Matrix> {
        self.compose(other, |a, b, i, k| {
            (0..a.cols)
                .map(|j| a.get(i, j).min(b.get(j, k)))
                .fold(f64::NEG_INFINITY, f64::max)
        })
    }

    /// `result[i][k] = min over j of max(a[i][j], b[j][k])`.
    pub fn compose_min_max(&self, other: &Matrix) -> Result<Matrix> {
        self.compose(other, |a, b, i, k| {
            (0..a.cols)
                .map(|j| a.get(i, j).max(b.get(j, k)))
                .fold(f64::INFINITY, f64::min)
        })
    }

    /// `result[i][k] = max over j of a[i][j] * b[j][k]`.
    pub fn compose_max_product(&self, other: &Matrix) -> Result<Matrix> {
        self.compose(other, |a, b, i, k| {
            (0..a.cols)
                .map(|j| a.get(i, j) * b.get(j, k))
                .fold(f64::NEG_INFINITY, f64::max)
        })
    }

    /// Ordinary matrix product.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.compose(other, |a, b, i, k| {
            (0..a.cols).map(|j| a.get(i, j) * b.get(j, k)).sum()
        })
    }

    /// Transpose; labels travel with their axes.
    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Ordinary arithmetic sums along the chosen axis.
    pub fn margins(&self, axis: Axis) -> Vec<f64> {
        match axis {
            Axis::Row => (0..self.rows).map(|i| self.row(i).iter().sum()).collect(),
            Axis::Column => (0..self.cols)
                .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn elementwise_max_min_worked_tables() {
        let a = m(&[
            &[3.0, 9.0, 0.0, 2.0, 1.0],
            &[5.0, 12.0, 20.0, 9.0, 8.0],
            &[7.0, 9.0, 7.0, 3.0, 19.0],
        ]);
        let b = m(&[
            &[9.0, 0.0, 11.0, 3.0, 1.0],
            &[2.0, 17.0, 12.0, 0.0, 9.0],
            &[1.0, 9.0, 14.0, 1.0, 21.0],
        ]);
        let max = a.elementwise_max(&b).unwrap();
        assert_eq!(
            max,
            m(&[
                &[9.0, 9.0, 11.0, 3.0, 1.0],
                &[5.0, 17.0, 20.0, 9.0, 9.0],
                &[7.0, 9.0, 14.0, 3.0, 21.0],
            ])
        );
        let min = a.elementwise_min(&b).unwrap();
        assert_eq!(
            min,
            m(&[
                &[3.0, 0.0, 0.0, 2.0, 1.0],
                &[2.0, 12.0, 12.0, 0.0, 8.0],
                &[1.0, 9.0, 7.0, 1.0, 19.0],
            ])
        );
        // commutativity on this pair
        assert_eq!(max, b.elementwise_max(&a).unwrap());
        assert_eq!(min, b.elementwise_min(&a).unwrap());
    }

    #[test]
    fn elementwise_idempotent_and_singleton() {
        let a = m(&[&[0.3, 0.7], &[0.1, 1.0]]);
        assert_eq!(a.elementwise_max(&a).unwrap(), a);
        assert_eq!(a.elementwise_min(&a).unwrap(), a);
        let s = m(&[&[0.3]]);
        let t = m(&[&[1.0]]);
        assert_eq!(s.elementwise_max(&t).unwrap().get(0, 0), 1.0);
        assert_eq!(s.elementwise_min(&t).unwrap().get(0, 0), 0.3);
    }

    #[test]
    fn elementwise_shape_mismatch_names_both_shapes() {
        let a = Matrix::zeros(2, 3).unwrap();
        let b = Matrix::zeros(3, 2).unwrap();
        let err = a.elementwise_max(&b).unwrap_err();
        assert_eq!(
            err,
            Error::ShapeMismatch {
                left_rows: 2,
                left_cols: 3,
                right_rows: 3,
                right_cols: 2
            }
        );
    }

    // The published min-max table prints 0.4 at (3,2) and 0.6 at (4,1);
    // recomputation from the same inputs gives 0.2 and 0.7 (no input value
    // satisfies the printed (3,2) and (3,3) cells simultaneously, so the
    // print carries arithmetic slips). The max-min table and the
    // hand-verified (1,1), (1,2) min-max cells reproduce exactly.
    #[test]
    fn max_min_composition_four_by_five() {
        let x = m(&[
            &[0.3, 1.0, 0.7, 0.2, 0.5],
            &[1.0, 0.9, 0.0, 0.8, 0.1],
            &[0.8, 0.2, 0.3, 1.0, 0.4],
            &[0.5, 1.0, 0.6, 0.7, 0.8],
        ]);
        let y = m(&[
            &[0.8, 0.3, 1.0],
            &[0.7, 0.0, 0.2],
            &[1.0, 0.7, 1.0],
            &[0.5, 0.4, 0.5],
            &[0.4, 0.0, 0.7],
        ]);
        let xy = x.compose_max_min(&y).unwrap();
        assert_eq!(
            xy,
            m(&[
                &[0.7, 0.7, 0.7],
                &[0.8, 0.4, 1.0],
                &[0.8, 0.4, 0.8],
                &[0.7, 0.6, 0.7],
            ])
        );
        let d = x.compose_min_max(&y).unwrap();
        assert_eq!(
            d,
            m(&[
                &[0.5, 0.3, 0.5],
                &[0.4, 0.1, 0.7],
                &[0.4, 0.2, 0.2],
                &[0.7, 0.5, 0.7],
            ])
        );
    }

    #[test]
    fn max_min_row_vector_against_square() {
        let a = m(&[
            &[0.3, 1.0, 0.8, 0.2, 0.0, 1.0],
            &[0.2, 0.0, 1.0, 0.7, 0.6, 0.4],
            &[0.5, 0.3, 0.2, 1.0, 0.0, 0.2],
            &[0.9, 0.7, 1.0, 0.3, 0.1, 0.9],
            &[0.1, 0.8, 0.0, 0.8, 1.0, 0.7],
            &[0.2, 1.0, 1.0, 0.6, 0.0, 0.4],
        ]);
        let y = Matrix::row_vector(&[0.8, 0.1, 0.7, 0.0, 0.9, 1.0]).unwrap();
        let y1 = y.compose_max_min(&a).unwrap();
        assert_eq!(y1.data(), &[0.5, 1.0, 1.0, 0.8, 0.9, 0.8]);
    }

    #[test]
    fn max_min_against_all_ones_column_gives_row_max() {
        let ones = m(&[&[1.0], &[1.0], &[1.0]]);
        let r = Matrix::row_vector(&[0.2, 0.9, 0.5]).unwrap();
        let out = r.compose_max_min(&ones).unwrap();
        assert_eq!(out.shape(), (1, 1));
        assert_eq!(out.get(0, 0), 0.9);
        // and composing the ones column with r broadcasts r across rows
        let spread = ones.compose_max_min(&r).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(spread.get(i, j), r.get(0, j));
            }
        }
    }

    #[test]
    fn max_min_column_then_row_chain() {
        let a = m(&[
            &[0.2, 1.0, 0.6, 0.5, 0.0],
            &[0.9, 0.8, 0.0, 1.0, 0.7],
            &[0.5, 1.0, 0.6, 0.8, 1.0],
            &[0.1, 0.7, 0.9, 0.0, 0.5],
        ]);
        let y = m(&[&[0.7], &[0.2], &[0.9], &[1.0], &[0.4]]);
        let x = a.compose_max_min(&y).unwrap();
        assert_eq!(x.data(), &[0.6, 1.0, 0.8, 0.9]);
        let back = x.transpose().compose_max_min(&a).unwrap();
        assert_eq!(back.data(), &[0.9, 0.8, 0.9, 1.0, 0.8]);
    }

    #[test]
    fn min_max_singleton() {
        let a = m(&[&[0.2]]);
        let b = m(&[&[0.9]]);
        assert_eq!(a.compose_min_max(&b).unwrap().get(0, 0), 0.9);
    }

    #[test]
    fn max_product_first_partition_column() {
        let p1 = m(&[
            &[0.03, 0.06, 0.12],
            &[0.0221875, 0.044375, 0.08875],
            &[0.069375, 0.13875, 0.2775],
        ]);
        let q1 = Matrix::column_vector(&[0.06, 0.07, 0.08]).unwrap();
        let r = p1.compose_max_product(&q1).unwrap();
        assert!((r.get(0, 0) - 0.0096).abs() < 1e-12);
        assert!((r.get(1, 0) - 0.0071).abs() < 1e-12);
        assert!((r.get(2, 0) - 0.0222).abs() < 1e-12);
    }

    #[test]
    fn max_product_zero_matrix() {
        let z = Matrix::zeros(2, 3).unwrap();
        let b = m(&[&[0.5, 0.1], &[0.2, 0.9], &[0.3, 0.4]]);
        let out = z.compose_max_product(&b).unwrap();
        assert!(out.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn inner_dimension_mismatch() {
        let a = Matrix::zeros(2, 3).unwrap();
        let b = Matrix::zeros(2, 3).unwrap();
        assert!(matches!(
            a.compose_max_min(&b),
            Err(Error::InnerDimMismatch { .. })
        ));
    }

    #[test]
    fn transpose_worked_example_and_involution() {
        let a = m(&[
            &[3.0, 1.0, 8.0, 9.0],
            &[4.0, 0.0, 9.0, -1.0],
            &[5.0, 2.0, 7.0, 2.0],
        ]);
        let t = a.transpose();
        assert_eq!(
            t,
            m(&[
                &[3.0, 4.0, 5.0],
                &[1.0, 0.0, 2.0],
                &[8.0, 9.0, 7.0],
                &[9.0, -1.0, 2.0],
            ])
        );
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn transpose_symmetric_fixed() {
        let s = m(&[
            &[3.0, 1.0, 0.0, 1.0, 5.0],
            &[1.0, 7.0, 8.0, 9.0, 1.0],
            &[0.0, 8.0, 3.0, 2.0, 4.0],
            &[1.0, 9.0, 2.0, 9.0, 6.0],
            &[5.0, 1.0, 4.0, 6.0, 1.0],
        ]);
        assert_eq!(s.transpose(), s);
    }

    #[test]
    fn transpose_swaps_labels() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0]])
            .unwrap()
            .with_labels(Some(vec!["r".into()]), Some(vec!["c1".into(), "c2".into()]))
            .unwrap();
        let t = a.transpose();
        assert_eq!(
            t.row_labels(),
            Some(&["c1".to_string(), "c2".to_string()][..])
        );
        assert_eq!(t.col_labels(), Some(&["r".to_string()][..]));
    }

    #[test]
    fn margins_signed_seven_by_seven() {
        let a = m(&[
            &[-1.0, 0.0, 1.0, 0.0, 1.0, 1.0, 1.0],
            &[1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 1.0],
            &[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0],
            &[-1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0],
            &[0.0, 1.0, 0.0, 1.0, 0.0, -1.0, 0.0],
            &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0],
            &[1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0],
        ]);
        assert_eq!(
            a.margins(Axis::Row),
            vec![3.0, 4.0, 3.0, 1.0, 1.0, 4.0, 4.0]
        );
        assert_eq!(
            a.margins(Axis::Column),
            vec![1.0, 3.0, 4.0, 4.0, 2.0, 2.0, 4.0]
        );
        let z = Matrix::zeros(3, 2).unwrap();
        assert_eq!(z.margins(Axis::Row), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn ordinary_product_seven_by_three() {
        let a = m(&[
            &[3.0, 1.0, 0.0],
            &[2.0, 0.0, 1.0],
            &[5.0, 6.0, 0.0],
            &[0.0, 1.0, 2.0],
            &[1.0, 1.0, 1.0],
            &[0.0, 0.0, 7.0],
            &[1.0, 1.0, 0.0],
        ]);
        let b = m(&[
            &[0.0, 3.0, 6.0, 1.0],
            &[1.0, 4.0, 1.0, 0.0],
            &[2.0, 5.0, 0.0, 1.0],
        ]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            ab,
            m(&[
                &[1.0, 13.0, 19.0, 3.0],
                &[2.0, 11.0, 12.0, 3.0],
                &[6.0, 39.0, 36.0, 5.0],
                &[5.0, 14.0, 1.0, 2.0],
                &[3.0, 12.0, 7.0, 2.0],
                &[14.0, 35.0, 0.0, 7.0],
                &[1.0, 7.0, 7.0, 1.0],
            ])
        );
        // the reverse product is not even defined
        assert!(b.mul(&a).is_err());
    }

    #[test]
    fn label_length_must_match() {
        let a = Matrix::zeros(2, 2).unwrap();
        assert!(a.with_labels(Some(vec!["only-one".into()]), None).is_err());
    }
}
