//! Scalar traits shared by the exact and floating-point layers.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, One, ToPrimitive, Zero};
use rustfft::FftNum;

/// Coefficient field of a [`crate::Polynomial`].
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: i64) -> Self;
    fn approx_f64(&self) -> f64;
}

impl Coeff for BigRational {
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Coeff for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn approx_f64(&self) -> f64 {
        *self
    }
}

impl Coeff for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }

    fn approx_f64(&self) -> f64 {
        *self as f64
    }
}

/// Floating-point scalar used by every grid and quadrature kernel.
pub trait Real:
    Float + FloatConst + FftNum + Coeff + Sum + Display + LowerExp + Send + Sync + 'static
{
    fn lit(v: f64) -> Self;
}

impl Real for f64 {
    fn lit(v: f64) -> Self {
        v
    }
}

impl Real for f32 {
    fn lit(v: f64) -> Self {
        v as f32
    }
}

/// Exact rational from a numerator/denominator pair.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Pairwise summation in index order; the tree shape depends only on the length.
pub fn pairwise_sum<T, F>(n: usize, term: &F) -> T
where
    T: Zero + Add<Output = T>,
    F: Fn(usize) -> T,
{
    fn rec<T: Zero + Add<Output = T>, F: Fn(usize) -> T>(lo: usize, hi: usize, term: &F) -> T {
        match hi - lo {
            0 => T::zero(),
            1 => term(lo),
            2 => term(lo) + term(lo + 1),
            len => {
                let mid = lo + len / 2;
                rec(lo, mid, term) + rec(mid, hi, term)
            }
        }
    }
    rec(0, n, term)
}
