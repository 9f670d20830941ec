//! Fuzzy cognitive map inference: a clamped, thresholded state vector is
//! iterated through the adjacency matrix until it revisits a state, which
//! classifies the run as a fixed point or a limit cycle.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::state::{threshold_clamped, StateVector};

/// A cognitive map: square adjacency matrix with zero diagonal plus the
/// activation threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Fcm {
    adjacency: Matrix,
    theta: f64,
}

impl Fcm {
    pub fn new(adjacency: Matrix) -> Result<Self> {
        adjacency.require_square()?;
        for i in 0..adjacency.rows() {
            if adjacency.get(i, i) != 0.0 {
                return Err(Error::InvalidModel(format!(
                    "adjacency diagonal entry ({i},{i}) = {} must be zero",
                    adjacency.get(i, i)
                )));
            }
        }
        Ok(Fcm {
            adjacency,
            theta: 1.0,
        })
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn adjacency(&self) -> &Matrix {
        &self.adjacency
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.rows()
    }
}

/// Terminal behaviour of an iterated run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternKind {
    FixedPoint,
    LimitCycle,
}

/// Classified terminal behaviour plus the full visited trace.
#[derive(Debug, Clone, PartialEq)]
pub struct HiddenPattern {
    pub kind: PatternKind,
    /// The fixed point alone, or the cycle states in first-visit order.
    pub terminal_states: Vec<StateVector>,
    /// Every visited state, starting with the initial vector.
    pub trace: Vec<StateVector>,
    pub steps: usize,
}

/// One synchronous update: raw = s . adjacency, thresholded at theta, with
/// every clamped index forced back on.
pub fn fcm_step(map: &Fcm, state: &StateVector) -> Result<StateVector> {
    if state.len() != map.node_count() {
        return Err(Error::LengthMismatch {
            expected: map.node_count(),
            found: state.len(),
        });
    }
    let s = Matrix::row_vector(&state.to_reals())?;
    let raw = s.mul(&map.adjacency)?;
    Ok(threshold_clamped(raw.data(), map.theta, state.clamp_set()))
}

/// Iterate until a state recurs. A recurrence of the immediate predecessor
/// is a fixed point; any longer return is a limit cycle reported in
/// first-visit order from the earliest repeated state.
pub fn fcm_hidden_pattern(
    map: &Fcm,
    initial: &StateVector,
    max_steps: usize,
) -> Result<HiddenPattern> {
    if initial.len() != map.node_count() {
        return Err(Error::LengthMismatch {
            expected: map.node_count(),
            found: initial.len(),
        });
    }
    // convention: the initially fired nodes stay clamped unless the caller
    // supplied an explicit clamp set
    let start = if initial.clamp_set().is_empty() {
        initial.reclamped(initial.on_indices().into_iter().collect())?
    } else {
        initial.clone()
    };
    let mut trace = vec![start.clone()];
    let mut current = start;
    for step in 1..=max_steps {
        let next = fcm_step(map, &current)?;
        if let Some(first_visit) = trace.iter().position(|s| s.bits() == next.bits()) {
            let kind = if first_visit == trace.len() - 1 {
                PatternKind::FixedPoint
            } else {
                PatternKind::LimitCycle
            };
            let terminal_states = trace[first_visit..].to_vec();
            trace.push(next);
            return Ok(HiddenPattern {
                kind,
                terminal_states,
                trace,
                steps: step,
            });
        }
        trace.push(next.clone());
        current = next;
    }
    Err(Error::NonTermination { max_steps })
}

/// Entrywise sum of the adjacency matrices; node orderings must agree.
/// The combined map keeps the default threshold; adjust with
/// [`Fcm::with_theta`].
pub fn fcm_combine(maps: &[Fcm]) -> Result<Fcm> {
    let first = maps
        .first()
        .ok_or(Error::EmptyInput("no maps to combine"))?;
    let mut acc = first.adjacency.clone();
    for m in &maps[1..] {
        acc = acc.add(&m.adjacency)?;
    }
    Fcm::new(acc)
}

/// Place block connection matrices into an n x n map. Each block's entry
/// `(r, c)` is added at `(indices[r], indices[c])`; overlapping blocks
/// accumulate.
pub fn fcm_assemble_blocks(n: usize, blocks: &[(Vec<usize>, Matrix)]) -> Result<Fcm> {
    let mut data = vec![0.0; n * n];
    for (indices, block) in blocks {
        block.require_square()?;
        if block.rows() != indices.len() {
            return Err(Error::LengthMismatch {
                expected: indices.len(),
                found: block.rows(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for &ix in indices {
            if ix >= n {
                return Err(Error::IndexOutOfRange { index: ix, len: n });
            }
            if !seen.insert(ix) {
                return Err(Error::InvalidModel(format!(
                    "block index {ix} repeats within one block"
                )));
            }
        }
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                data[indices[r] * n + indices[c]] += block.get(r, c);
            }
        }
    }
    Fcm::new(Matrix::from_vec(n, n, data)?)
}
