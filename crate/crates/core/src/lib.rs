//! Deterministic fuzzy matrix models over a shared immutable matrix
//! carrier: the CETD statistical pipeline, fuzzy cognitive and relational
//! maps, discrete bidirectional and fuzzy associative memories, fuzzy
//! relational equations and binary fuzzy relation utilities.
//!
//! Everything is a pure function over immutable values, so models and
//! runs are safe to share and rerun across threads.

pub mod bam;
pub mod cetd;
pub mod error;
pub mod fam;
pub mod fcm;
pub mod fre;
pub mod frm;
pub mod matrix;
pub mod relations;
pub mod state;

pub use error::{Error, Result};
pub use matrix::{Axis, Matrix};
pub use state::{threshold, threshold_clamped, StateVector};
