//! Coefficient traits shared by every algebraic layer.
//!
//! All algebra, tensor and linear-algebra code is generic over [`Ring`]
//! (or [`Field`] where pivots must be inverted).  The concrete coefficient
//! types are:
//!
//! * [`Laurent`](crate::scalars::Laurent): exact Laurent polynomials in the
//!   parameters, used for symbolic identity checks;
//! * [`BigRational`]: a random rational specialization of the parameters;
//! * [`RatFunc`](crate::scalars::RatFunc): the rational function field
//!   `Q(q)`, used when only `q` occurs.

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with exact arithmetic.
///
/// The `*_ref` methods have clone-based defaults; big-number types override
/// them to avoid temporaries in inner loops.
pub trait Ring:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Embeds a rational constant.
    fn from_rational(r: &BigRational) -> Self;

    /// Multiplicative inverse, if `self` is a unit.
    fn try_inverse(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self = self.clone() + rhs.clone();
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self = self.clone() - rhs.clone();
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }

    /// `self += a * b`
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        self.add_assign_ref(&p);
    }

    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.try_inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Some(acc)
    }
}

/// A ring in which every nonzero element is invertible.
pub trait Field: Ring {
    fn inverse(&self) -> Self {
        self.try_inverse().expect("inverse of zero")
    }
}

impl Ring for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }

    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Field for BigRational {}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
