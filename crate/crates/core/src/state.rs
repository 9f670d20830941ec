//! Binary state vectors with clamped positions, and the inclusive
//! threshold map that produces them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A 0/1 vector plus a set of positions held at 1 across iterations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    bits: Vec<u8>,
    clamp: BTreeSet<usize>,
}

impl StateVector {
    /// A state with an empty clamp set. Bits must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        StateVector::with_clamp(bits, BTreeSet::new())
    }

    /// A state with the given clamp set; clamped positions are forced to 1.
    pub fn with_clamp(mut bits: Vec<u8>, clamp: BTreeSet<usize>) -> Result<Self> {
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidModel(format!(
                "state bit {bad} is neither 0 nor 1"
            )));
        }
        for &i in &clamp {
            if i >= bits.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: bits.len(),
                });
            }
            bits[i] = 1;
        }
        Ok(StateVector { bits, clamp })
    }

    /// Build from the 1-based positions that are on; clamp equals those
    /// positions.
    pub fn from_on_positions(len: usize, on: &[usize]) -> Result<Self> {
        let mut bits = vec![0u8; len];
        let mut clamp = BTreeSet::new();
        for &p in on {
            if p == 0 || p > len {
                return Err(Error::IndexOutOfRange { index: p, len });
            }
            bits[p - 1] = 1;
            clamp.insert(p - 1);
        }
        StateVector::with_clamp(bits, clamp)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn clamp_set(&self) -> &BTreeSet<usize> {
        &self.clamp
    }

    /// Indices currently on.
    pub fn on_indices(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(i, _)| i)
            .collect()
    }

    /// Same bits, different clamp set.
    pub fn reclamped(&self, clamp: BTreeSet<usize>) -> Result<Self> {
        StateVector::with_clamp(self.bits.clone(), clamp)
    }

    /// Bits as real numbers, for matrix products.
    pub fn to_reals(&self) -> Vec<f64> {
        self.bits.iter().map(|&b| b as f64).collect()
    }
}

/// bit_i = 1 iff v_i >= theta. The clamp set of the result is empty.
pub fn threshold(values: &[f64], theta: f64) -> StateVector {
    let bits = values
        .iter()
        .map(|&v| if v >= theta { 1 } else { 0 })
        .collect();
    StateVector {
        bits,
        clamp: BTreeSet::new(),
    }
}

/// Threshold, then force every clamped index to 1 and carry the clamp
/// forward. This is the update rule shared by the map dynamics.
pub fn threshold_clamped(values: &[f64], theta: f64, clamp: &BTreeSet<usize>) -> StateVector {
    let mut s = threshold(values, theta);
    for &i in clamp {
        s.bits[i] = 1;
    }
    s.clamp = clamp.clone();
    s
}
