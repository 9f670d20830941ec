//! Fuzzy relational maps: bidirectional inference over two disjoint node
//! spaces through a rectangular relational matrix and its transpose, plus
//! the alpha-graded fuzzification pipeline for data-driven maps.

use crate::cetd::ColumnStats;
use crate::error::{Error, Result};
use crate::matrix::{Axis, Matrix};
use crate::state::{threshold, threshold_clamped, StateVector};

/// Which node space a vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Domain,
    Range,
}

/// A relational map: n domain rows by m range columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Frm {
    relation: Matrix,
    theta: f64,
}

impl Frm {
    pub fn new(relation: Matrix) -> Result<Self> {
        if relation.rows() == 0 || relation.cols() == 0 {
            return Err(Error::EmptyInput("relational matrix must be non-empty"));
        }
        Ok(Frm {
            relation,
            theta: 1.0,
        })
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn relation(&self) -> &Matrix {
        &self.relation
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn domain_len(&self) -> usize {
        self.relation.rows()
    }

    pub fn range_len(&self) -> usize {
        self.relation.cols()
    }
}

/// Kind of a bidirectional equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairKind {
    FixedPair,
    LimitCycle,
}

/// Terminal behaviour of a bidirectional run. `pairs` holds one
/// (domain, range) snapshot per full exchange, in visit order; the final
/// entries form the recurrent segment.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenPatternPair {
    pub kind: PairKind,
    pub pairs: Vec<(StateVector, StateVector)>,
    /// The recurrent pairs: a single pair for a fixed pair, the cycle
    /// segment otherwise.
    pub terminal_pairs: Vec<(StateVector, StateVector)>,
    pub steps: usize,
}

/// Run the bidirectional dynamics from a vector in either space.
///
/// Each full exchange maps the start-space vector through the relation to
/// the other space and back; thresholding applies on both half-steps and
/// clamping only in the start space. The run stops when a
/// (domain, range) pair recurs. A pair that repeats immediately is a
/// fixed pair unless its start-space component is the initial input, in
/// which case the system is revisiting its starting state and the run is a
/// limit cycle; longer returns are limit cycles outright.
pub fn frm_hidden_pattern(
    map: &Frm,
    initial: &StateVector,
    start_space: Space,
    max_steps: usize,
) -> Result<HiddenPatternPair> {
    let expected = match start_space {
        Space::Domain => map.domain_len(),
        Space::Range => map.range_len(),
    };
    if initial.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            found: initial.len(),
        });
    }
    let clamp = if initial.clamp_set().is_empty() {
        initial.on_indices().into_iter().collect()
    } else {
        initial.clamp_set().clone()
    };
    let start = initial.reclamped(clamp.clone())?;

    let forward = |v: &StateVector| -> Result<StateVector> {
        // domain -> range
        let raw = Matrix::row_vector(&v.to_reals())?.mul(&map.relation)?;
        Ok(threshold(raw.data(), map.theta))
    };
    let backward = |v: &StateVector| -> Result<StateVector> {
        // range -> domain
        let raw = Matrix::row_vector(&v.to_reals())?.mul(&map.relation.transpose())?;
        Ok(threshold(raw.data(), map.theta))
    };

    let mut current = start.clone();
    let mut pairs: Vec<(StateVector, StateVector)> = Vec::new();
    for step in 1..=max_steps {
        let pair = match start_space {
            Space::Domain => {
                let range = forward(&current)?;
                let raw = Matrix::row_vector(&range.to_reals())?.mul(&map.relation.transpose())?;
                let domain = threshold_clamped(raw.data(), map.theta, &clamp);
                current = domain.clone();
                (domain, range)
            }
            Space::Range => {
                let domain = backward(&current)?;
                let raw = Matrix::row_vector(&domain.to_reals())?.mul(&map.relation)?;
                let range = threshold_clamped(raw.data(), map.theta, &clamp);
                current = range.clone();
                (domain, range)
            }
        };
        let repeat = pairs
            .iter()
            .position(|(d, r)| d.bits() == pair.0.bits() && r.bits() == pair.1.bits());
        if let Some(first_visit) = repeat {
            let start_component = match start_space {
                Space::Domain => pair.0.bits(),
                Space::Range => pair.1.bits(),
            };
            let revisits_initial = start_component == start.bits();
            let kind = if first_visit == pairs.len() - 1 && !revisits_initial {
                PairKind::FixedPair
            } else {
                PairKind::LimitCycle
            };
            let terminal_pairs = pairs[first_visit..].to_vec();
            pairs.push(pair);
            return Ok(HiddenPatternPair {
                kind,
                pairs,
                terminal_pairs,
                steps: step,
            });
        }
        pairs.push(pair);
    }
    Err(Error::NonTermination { max_steps })
}

/// Entrywise sum of relational matrices over identical node orderings.
pub fn frm_combine(maps: &[Frm]) -> Result<Frm> {
    let first = maps
        .first()
        .ok_or(Error::EmptyInput("no maps to combine"))?;
    let mut acc = first.relation.clone();
    for m in &maps[1..] {
        acc = acc.add(&m.relation)?;
    }
    Frm::new(acc)
}

/// Divide every entry by a positive constant; the preprocessing step that
/// turns a raw relational matrix into an average matrix.
pub fn average_matrix(relation: &Matrix, divisor: f64) -> Result<Matrix> {
    if divisor <= 0.0 || divisor.is_nan() {
        return Err(Error::InvalidModel(format!(
            "divisor {divisor} must be positive"
        )));
    }
    Ok(relation.scale(1.0 / divisor))
}

/// Graded fuzzification of an average matrix: 0 below the band, a linear
/// ramp across it, 1 above it. The 0 branch wins ties, then the 1 branch,
/// so zero-width bands stay total.
pub fn frm_fuzzify(avg: &Matrix, stats: &ColumnStats, alpha: f64) -> Result<Matrix> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    if stats.means.len() != avg.cols() {
        return Err(Error::LengthMismatch {
            expected: avg.cols(),
            found: stats.means.len(),
        });
    }
    let mut data = Vec::with_capacity(avg.rows() * avg.cols());
    for i in 0..avg.rows() {
        for j in 0..avg.cols() {
            let a = avg.get(i, j);
            let lo = stats.means[j] - alpha * stats.sds[j];
            let hi = stats.means[j] + alpha * stats.sds[j];
            let b = if a <= lo {
                0.0
            } else if a >= hi {
                1.0
            } else {
                (a - lo) / (hi - lo)
            };
            data.push(b);
        }
    }
    Matrix::from_vec(avg.rows(), avg.cols(), data)
}

/// Normalise row sums to [0, 1]: the smallest maps to 0, the largest to 1.
pub fn frm_membership_grades(row_sums: &[f64]) -> Result<Vec<f64>> {
    if row_sums.is_empty() {
        return Err(Error::EmptyInput("no row sums"));
    }
    let min = row_sums.iter().copied().fold(f64::INFINITY, f64::min);
    let max = row_sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max - min <= 0.0 {
        return Err(Error::DegenerateRange);
    }
    Ok(row_sums
        .iter()
        .map(|&r| ((r - min) / (max - min)).clamp(0.0, 1.0))
        .collect())
}

/// Combined fuzzification over an alpha grid plus its row sums and grades.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinedFuzzy {
    pub matrix: Matrix,
    pub row_sums: Vec<f64>,
    pub grades: Vec<f64>,
}

/// Entrywise sum of fuzzifications over the grid, then margins and grades.
pub fn frm_combined_fuzzy(
    avg: &Matrix,
    stats: &ColumnStats,
    alpha_grid: &[f64],
) -> Result<CombinedFuzzy> {
    if alpha_grid.is_empty() {
        return Err(Error::EmptyInput("no alpha grid"));
    }
    let mut acc = Matrix::zeros(avg.rows(), avg.cols())?;
    for &alpha in alpha_grid {
        acc = acc.add(&frm_fuzzify(avg, stats, alpha)?)?;
    }
    let row_sums = acc.margins(Axis::Row);
    let grades = frm_membership_grades(&row_sums)?;
    Ok(CombinedFuzzy {
        matrix: acc,
        row_sums,
        grades,
    })
}
