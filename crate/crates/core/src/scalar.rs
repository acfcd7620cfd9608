//! Scalar abstractions.
//!
//! [`Real`] covers the floating-point types used by every numerical routine
//! (matrices, eigensolvers, square roots). [`Scalar`] is what the closed-form
//! rational spectra need: a lossless trip through [`Rational`]. Float inputs
//! are read as the shortest decimal that round-trips them (so `0.1` is
//! exactly `1/10`), evaluated exactly, and rounded once.

use std::fmt::{Debug, Display, LowerExp};

use nalgebra::RealField;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Value with an exact rational image.
pub trait Scalar: Clone + Debug + PartialOrd {
    /// Rational value; `None` for NaN and infinities. Floats give the
    /// shortest round-tripping decimal, which maps back to the same float.
    fn to_exact(&self) -> Option<Rational>;
    /// Nearest representable value.
    fn from_exact(q: &Rational) -> Self;
}

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    RealField + Scalar + Copy + Display + LowerExp + Debug + Send + Sync + serde::Serialize + 'static
{
    fn cst(x: f64) -> Self;
    fn as_f64(self) -> f64;
    fn from_count(n: usize) -> Self {
        Self::cst(n as f64)
    }
    /// Machine epsilon of the type.
    fn eps() -> Self;
}

impl Real for f32 {
    fn cst(x: f64) -> Self {
        x as f32
    }
    fn as_f64(self) -> f64 {
        self as f64
    }
    fn eps() -> Self {
        f32::EPSILON
    }
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn as_f64(self) -> f64 {
        self
    }
    fn eps() -> Self {
        f64::EPSILON
    }
}

/// Exact value of a decimal in `{:e}` notation, e.g. `-1.25e-7`.
fn parse_decimal(s: &str) -> Rational {
    let (mant, exp) = s.split_once('e').unwrap_or((s, "0"));
    let exp: i32 = exp.parse().expect("integer exponent");
    let (neg, mant) = mant.strip_prefix('-').map_or((false, mant), |m| (true, m));
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if shift >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        q = -q;
    }
    q
}

impl Scalar for f32 {
    fn to_exact(&self) -> Option<Rational> {
        self.is_finite().then(|| parse_decimal(&format!("{self:e}")))
    }
    fn from_exact(q: &Rational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}

impl Scalar for f64 {
    fn to_exact(&self) -> Option<Rational> {
        self.is_finite().then(|| parse_decimal(&format!("{self:e}")))
    }
    fn from_exact(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Rational {
    fn to_exact(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_exact(q: &Rational) -> Self {
        q.clone()
    }
}

/// Exact rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact rational `num/den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::cst(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_round_trip_is_lossless() {
        for x in [0.1, -3.75, 1e-300, 6.02e23] {
            assert_eq!(f64::from_exact(&x.to_exact().unwrap()), x);
        }
        assert!(f64::NAN.to_exact().is_none());
    }

    #[test]
    fn decimal_lifting() {
        assert_eq!(0.1f64.to_exact().unwrap(), ratio(1, 10));
        assert_eq!((-1.25e-7f64).to_exact().unwrap(), ratio(-1, 8_000_000));
        assert_eq!(6.02e23f64.to_exact().unwrap(), rat(602) * rat(10).pow(21));
        assert_eq!(0.1f32.to_exact().unwrap(), ratio(1, 10));
        assert_eq!(0.0f64.to_exact().unwrap(), rat(0));
        for x in [f64::MIN_POSITIVE, 5e-324, f64::MAX, 1.0 / 3.0] {
            assert_eq!(f64::from_exact(&x.to_exact().unwrap()), x);
        }
    }

    #[test]
    fn rounding_is_to_nearest() {
        assert_eq!(f64::from_exact(&ratio(1, 10)), 0.1);
        assert_eq!(f64::from_exact(&ratio(-1, 80000)), -1.25e-5);
        assert_eq!(f32::from_exact(&ratio(1, 3)), 1.0f32 / 3.0);
    }
}
