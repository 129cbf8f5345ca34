// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the numerical core is generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Widening conversion used for reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite real")
    }

    /// `max(abs, k * eps)`: a tolerance that never drops below what the type can resolve.
    #[inline]
    fn tol(abs: f64, eps_multiple: f64) -> Self {
        Self::lit(abs).max(Self::epsilon() * Self::lit(eps_multiple))
    }
}

impl Real for f32 {}
impl Real for f64 {}
