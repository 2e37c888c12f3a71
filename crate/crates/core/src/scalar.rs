//! Coefficient fields.
//!
//! Everything downstream is written against [`Field`]; the engine itself is
//! instantiated with exact rationals. Floating-point types satisfy the trait
//! bounds but row reduction tests entries against exact zero, so they are
//! only suitable for experimentation.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, Zero};

/// A commutative field with exact equality.
pub trait Field:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn is_negative(&self) -> bool;

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }
}

impl<T> Field for num_rational::Ratio<T>
where
    T: num_integer::Integer + Clone + Signed + FromPrimitive + fmt::Debug + fmt::Display + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        num_rational::Ratio::from_integer(T::from_i64(v).expect("integer does not fit the scalar type"))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Field for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

/// `(-1)^k` in the field.
pub fn sign<F: Field>(k: usize) -> F {
    if k.is_multiple_of(2) {
        F::one()
    } else {
        -F::one()
    }
}

pub(crate) fn is_zero<F: Field>(x: &F) -> bool {
    Zero::is_zero(x)
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
