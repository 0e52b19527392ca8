//! Exact scalar fields: ℚ and ℚ(x₁,…,xₘ).

mod parse;
mod poly;
mod ratfun;
mod rational;

pub use parse::parse_rational_function;
pub use poly::{Monomial, Polynomial};
pub use ratfun::RationalFunction;
pub use rational::Rational;

use core::fmt::{Debug, Display};
use core::ops::{Add, Mul, Neg, Sub};

/// A field with exact equality.
///
/// Arithmetic is by value on the left and by reference on the right, so the
/// usual pattern in generic code is `a.clone() * &b`.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
}
