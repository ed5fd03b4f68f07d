//! Scalar abstraction for the numeric layer.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

/// Floating-point scalar the statevector engine and probability math are
/// generic over: f32 or f64.
pub trait Real: Float + FloatConst + NumAssign + Sum + Debug + Display + Default + 'static {
    /// Lossy conversion from an `f64` literal (tolerances, constants).
    fn from_f64(v: f64) -> Self;
}

impl Real for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
}
