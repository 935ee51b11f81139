//! Floating-point scalar used by the statistics layer.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::{de::DeserializeOwned, Serialize};

/// f32 or f64
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Default stopping tolerance for the spectral solver.
    fn spectral_tolerance() -> Self;

    fn of_u64(v: u64) -> Self {
        <Self as FromPrimitive>::from_u64(v).expect("u64 is representable as a float")
    }

    fn of_usize(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("usize is representable as a float")
    }

    fn lit(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("literal is representable")
    }
}

impl Real for f32 {
    fn spectral_tolerance() -> Self {
        1e-5
    }
}

impl Real for f64 {
    fn spectral_tolerance() -> Self {
        1e-8
    }
}
