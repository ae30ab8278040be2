//! Scalar abstraction shared by the floating-point parts of the crate.
//!
//! Everything that evaluates transcendental formulas or stores amplitudes is
//! generic over [`Real`], so the same code runs in `f32` or `f64`. Exact
//! quantities (Kravchuk values, XOR probabilities, solution counts) use
//! big integers and rationals instead and never go through this trait.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count.
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }

    /// Widening conversion used when writing results.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }

    /// Absolute tolerance floor for bisection: `1e-12` or a few ulps at 1/2,
    /// whichever is larger.
    fn bisection_tol() -> Self {
        let floor = Self::epsilon() * Self::lit(4.0);
        let want = Self::lit(1e-12);
        if want > floor {
            want
        } else {
            floor
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}
