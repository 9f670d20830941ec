//! Binary fuzzy relation utilities: domain/range/height projections, the
//! relational join, alpha-cuts and structural predicates.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Row maxima, column maxima and the global maximum of a fuzzy relation.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationSummary {
    pub dom: Vec<f64>,
    pub ran: Vec<f64>,
    pub height: f64,
}

/// dom_i = max over the row, ran_j = max over the column, height = global max.
pub fn relation_summary(r: &Matrix) -> Result<RelationSummary> {
    r.require_fuzzy()?;
    let dom: Vec<f64> = (0..r.rows())
        .map(|i| r.row(i).iter().copied().fold(0.0, f64::max))
        .collect();
    let ran: Vec<f64> = (0..r.cols())
        .map(|j| (0..r.rows()).map(|i| r.get(i, j)).fold(0.0, f64::max))
        .collect();
    let height = dom.iter().copied().fold(0.0, f64::max);
    Ok(RelationSummary { dom, ran, height })
}

/// Ternary relation produced by the relational join of two fuzzy relations.
#[derive(Debug, Clone, PartialEq)]
pub struct JoinTensor {
    x: usize,
    y: usize,
    z: usize,
    data: Vec<f64>,
}

impl JoinTensor {
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.x, self.y, self.z)
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> f64 {
        debug_assert!(x < self.x && y < self.y && z < self.z);
        self.data[(x * self.y + y) * self.z + z]
    }

    /// Collapse the middle index by max; equals the max-min composition.
    pub fn collapse_max(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.x * self.z);
        for x in 0..self.x {
            for z in 0..self.z {
                data.push(
                    (0..self.y)
                        .map(|y| self.get(x, y, z))
                        .fold(f64::NEG_INFINITY, f64::max),
                );
            }
        }
        Matrix::from_vec(self.x, self.z, data).expect("join dims are positive")
    }
}

/// `t[x][y][z] = min(p[x][y], q[y][z])`.
pub fn relational_join(p: &Matrix, q: &Matrix) -> Result<JoinTensor> {
    p.require_fuzzy()?;
    q.require_fuzzy()?;
    if p.cols() != q.rows() {
        return Err(Error::InnerDimMismatch {
            left_rows: p.rows(),
            left_cols: p.cols(),
            right_rows: q.rows(),
            right_cols: q.cols(),
        });
    }
    let (x, y, z) = (p.rows(), p.cols(), q.cols());
    let mut data = Vec::with_capacity(x * y * z);
    for i in 0..x {
        for j in 0..y {
            for k in 0..z {
                data.push(p.get(i, j).min(q.get(j, k)));
            }
        }
    }
    Ok(JoinTensor { x, y, z, data })
}

/// Crisp relation containing exactly the pairs with membership >= alpha.
pub fn alpha_cut(r: &Matrix, alpha: f64) -> Result<Matrix> {
    r.require_fuzzy()?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let data = r
        .data()
        .iter()
        .map(|&v| if v >= alpha { 1.0 } else { 0.0 })
        .collect();
    Matrix::from_vec(r.rows(), r.cols(), data)
}

/// Structural predicates of a square fuzzy relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationProperties {
    pub reflexive: bool,
    pub anti_reflexive: bool,
    pub symmetric: bool,
    pub max_min_transitive: bool,
    pub compatibility: bool,
    pub similarity: bool,
}

/// Predicates with reflexivity meaning R(x,x) = 1 exactly.
pub fn relation_properties(r: &Matrix) -> Result<RelationProperties> {
    relation_properties_with(r, 1.0)
}

/// Predicates with an epsilon-reflexivity threshold: R(x,x) >= eps counts
/// as reflexive. eps = 1.0 recovers the strict definition.
pub fn relation_properties_with(r: &Matrix, reflexive_eps: f64) -> Result<RelationProperties> {
    r.require_fuzzy()?;
    r.require_square()?;
    let n = r.rows();
    let reflexive = (0..n).all(|i| r.get(i, i) >= reflexive_eps);
    let anti_reflexive = (0..n).all(|i| r.get(i, i) == 0.0);
    let symmetric = (0..n).all(|i| (0..n).all(|j| r.get(i, j) == r.get(j, i)));
    // exhaustive triple loop; relations here are desk-scale
    let mut max_min_transitive = true;
    'outer: for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                if r.get(i, j).min(r.get(j, k)) > r.get(i, k) + 1e-12 {
                    max_min_transitive = false;
                    break 'outer;
                }
            }
        }
    }
    let compatibility = reflexive && symmetric;
    Ok(RelationProperties {
        reflexive,
        anti_reflexive,
        symmetric,
        max_min_transitive,
        compatibility,
        similarity: compatibility && max_min_transitive,
    })
}
