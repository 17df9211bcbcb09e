//! Floating-point scalar abstraction for log-domain arithmetic.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real type used for log-domain index values and ratio functions.
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static {
    /// Absolute tolerance under which two log-domain values compare equal.
    fn compare_tolerance() -> Self;

    fn from_usize_lossy(x: usize) -> Self {
        Self::from_usize(x).expect("usize converts to float")
    }

    fn from_f64_lossy(x: f64) -> Self {
        Self::from_f64(x).expect("f64 converts to float")
    }

    /// `Some(m)` when `self` is a non-negative integer that fits in `u32`.
    fn as_exact_exponent(self) -> Option<u32> {
        if self.fract() == Self::zero() && self >= Self::zero() {
            self.to_u32()
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    fn compare_tolerance() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn compare_tolerance() -> Self {
        1e-4
    }
}
