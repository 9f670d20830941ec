//! Discrete bidirectional associative memory: threshold signal functions
//! with keep-previous ties, synchronous exchanges through the synaptic
//! matrix and its transpose, and detection of the bidirectional fixed pair.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::state::StateVector;

/// Which neuron field an activation vector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Synaptic matrix on an expert scale [-c, c] plus per-neuron thresholds
/// and constant external inputs (all zero by default).
#[derive(Debug, Clone, PartialEq)]
pub struct BamModel {
    synaptic: Matrix,
    thresholds_x: Vec<f64>,
    thresholds_y: Vec<f64>,
    inputs_x: Vec<f64>,
    inputs_y: Vec<f64>,
    scale: f64,
}

impl BamModel {
    pub fn new(synaptic: Matrix, scale: f64) -> Result<Self> {
        if scale <= 0.0 || scale.is_nan() {
            return Err(Error::InvalidModel(format!(
                "scale {scale} must be positive"
            )));
        }
        if let Some(&bad) = synaptic.data().iter().find(|v| v.abs() > scale) {
            return Err(Error::InvalidModel(format!(
                "synaptic entry {bad} exceeds the scale bound {scale}"
            )));
        }
        let (n, p) = synaptic.shape();
        Ok(BamModel {
            synaptic,
            thresholds_x: vec![0.0; n],
            thresholds_y: vec![0.0; p],
            inputs_x: vec![0.0; n],
            inputs_y: vec![0.0; p],
            scale,
        })
    }

    pub fn with_thresholds(mut self, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != self.synaptic.rows() {
            return Err(Error::LengthMismatch {
                expected: self.synaptic.rows(),
                found: x.len(),
            });
        }
        if y.len() != self.synaptic.cols() {
            return Err(Error::LengthMismatch {
                expected: self.synaptic.cols(),
                found: y.len(),
            });
        }
        self.thresholds_x = x;
        self.thresholds_y = y;
        Ok(self)
    }

    pub fn with_inputs(mut self, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != self.synaptic.rows() {
            return Err(Error::LengthMismatch {
                expected: self.synaptic.rows(),
                found: x.len(),
            });
        }
        if y.len() != self.synaptic.cols() {
            return Err(Error::LengthMismatch {
                expected: self.synaptic.cols(),
                found: y.len(),
            });
        }
        self.inputs_x = x;
        self.inputs_y = y;
        Ok(self)
    }

    pub fn synaptic(&self) -> &Matrix {
        &self.synaptic
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The same memory seen from the other field: transposed matrix with
    /// thresholds and inputs swapped.
    pub fn transposed(&self) -> BamModel {
        BamModel {
            synaptic: self.synaptic.transpose(),
            thresholds_x: self.thresholds_y.clone(),
            thresholds_y: self.thresholds_x.clone(),
            inputs_x: self.inputs_y.clone(),
            inputs_y: self.inputs_x.clone(),
            scale: self.scale,
        }
    }

    pub fn x_len(&self) -> usize {
        self.synaptic.rows()
    }

    pub fn y_len(&self) -> usize {
        self.synaptic.cols()
    }
}

/// Threshold signal: 1 above the threshold, previous signal at equality,
/// 0 below.
pub fn bam_signal(
    activation: &[f64],
    thresholds: &[f64],
    prev: &StateVector,
) -> Result<StateVector> {
    if activation.len() != thresholds.len() {
        return Err(Error::LengthMismatch {
            expected: activation.len(),
            found: thresholds.len(),
        });
    }
    if prev.len() != activation.len() {
        return Err(Error::LengthMismatch {
            expected: activation.len(),
            found: prev.len(),
        });
    }
    let bits = activation
        .iter()
        .zip(thresholds)
        .zip(prev.bits())
        .map(|((&a, &u), &p)| {
            if a > u {
                1
            } else if a == u {
                p
            } else {
                0
            }
        })
        .collect();
    StateVector::new(bits)
}

/// One exchange of a bidirectional run.
#[derive(Debug, Clone, PartialEq)]
pub struct BamStep {
    /// Field that received the activation this step.
    pub side: Side,
    /// The raw activation vector before signalling.
    pub activation: Vec<f64>,
    /// Signal pair after this step, as (x side, y side).
    pub signals: (StateVector, StateVector),
}

/// Full record of a run: every exchange, the settled pair and the step at
/// which the signals stopped changing.
#[derive(Debug, Clone, PartialEq)]
pub struct BamTrace {
    pub steps: Vec<BamStep>,
    pub fixed_pair: (StateVector, StateVector),
    pub settle_step: usize,
}

/// Run the synchronous dynamics from a raw activation on either side until
/// the signal pair repeats, then report the bidirectional fixed pair.
/// First-step ties at the threshold resolve to 0.
pub fn bam_run(
    model: &BamModel,
    initial: &[f64],
    start_side: Side,
    max_steps: usize,
) -> Result<BamTrace> {
    let (start_len, start_thresholds) = match start_side {
        Side::X => (model.x_len(), &model.thresholds_x),
        Side::Y => (model.y_len(), &model.thresholds_y),
    };
    if initial.len() != start_len {
        return Err(Error::LengthMismatch {
            expected: start_len,
            found: initial.len(),
        });
    }
    let zeros_x = StateVector::new(vec![0; model.x_len()])?;
    let zeros_y = StateVector::new(vec![0; model.y_len()])?;
    let (mut sx, mut sy) = match start_side {
        Side::X => (bam_signal(initial, start_thresholds, &zeros_x)?, zeros_y),
        Side::Y => (zeros_x, bam_signal(initial, start_thresholds, &zeros_y)?),
    };
    let mut side = match start_side {
        Side::X => Side::Y,
        Side::Y => Side::X,
    };
    let mut steps: Vec<BamStep> = Vec::new();
    let mut settle_step = 0;
    let mut unchanged_streak = 0;
    for step in 1..=max_steps {
        let (activation, new_signal) = match side {
            Side::Y => {
                let raw = Matrix::row_vector(&sx.to_reals())?.mul(&model.synaptic)?;
                let act: Vec<f64> = raw
                    .data()
                    .iter()
                    .zip(&model.inputs_y)
                    .map(|(&a, &j)| a + j)
                    .collect();
                let sig = bam_signal(&act, &model.thresholds_y, &sy)?;
                (act, sig)
            }
            Side::X => {
                let raw = Matrix::row_vector(&sy.to_reals())?.mul(&model.synaptic.transpose())?;
                let act: Vec<f64> = raw
                    .data()
                    .iter()
                    .zip(&model.inputs_x)
                    .map(|(&a, &i)| a + i)
                    .collect();
                let sig = bam_signal(&act, &model.thresholds_x, &sx)?;
                (act, sig)
            }
        };
        let changed = match side {
            Side::Y => {
                let c = new_signal != sy;
                sy = new_signal;
                c
            }
            Side::X => {
                let c = new_signal != sx;
                sx = new_signal;
                c
            }
        };
        if changed {
            settle_step = step;
            unchanged_streak = 0;
        } else {
            unchanged_streak += 1;
        }
        steps.push(BamStep {
            side,
            activation,
            signals: (sx.clone(), sy.clone()),
        });
        // one unchanged exchange in each direction means the pair repeated
        // across a full cycle
        if unchanged_streak >= 2 {
            return Ok(BamTrace {
                steps,
                fixed_pair: (sx, sy),
                settle_step,
            });
        }
        side = match side {
            Side::X => Side::Y,
            Side::Y => Side::X,
        };
    }
    Err(Error::NonTermination { max_steps })
}

/// Indirect coupling of two memories: ordinary product of the synaptic
/// matrices, transposed, with the scale bound c1 * c2 * p it lives on.
#[derive(Debug, Clone, PartialEq)]
pub struct IndirectRelation {
    pub matrix: Matrix,
    pub bound: f64,
}

pub fn bam_indirect(a: &BamModel, b: &BamModel) -> Result<IndirectRelation> {
    let product = a.synaptic.mul(&b.synaptic)?;
    let bound = a.scale * b.scale * a.synaptic.cols() as f64;
    Ok(IndirectRelation {
        matrix: product.transpose(),
        bound,
    })
}
