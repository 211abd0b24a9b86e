//! Quaternionic matrix-valued slice-regular functions.

// `!(x > 0.0)` is used on purpose to reject NaN alongside out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approx;
pub mod codec;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod maxprinciple;
mod optimize;
pub mod quaternion;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
pub use linalg::{ChiBlock, ComplexMatrix, QuatMatrix, QuatVector};
pub use quaternion::{ImaginaryUnit, Quaternion, SlicePoint};
