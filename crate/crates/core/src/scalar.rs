//! The coefficient-field abstraction the algebra and representation layers
//! are generic over.
//!
//! Two fields are provided: [`ScalarQ`] (generic `q`) and [`Rational`]
//! (a specialization of `s = q^(1/2)` to an exact rational, e.g. the
//! classical point `s = 1`).

use std::fmt::{Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ScalarError;
use crate::qrat::ScalarQ;

pub type Rational = BigRational;

pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> AddAssign<&'a Self>
{
    fn from_int(c: i64) -> Self;

    fn try_inv(&self) -> Result<Self, ScalarError>;

    /// Coefficient part of the star anti-involution (`q ↦ q^{-1}`).
    ///
    /// On a specialization this is the identity, which is only meaningful at
    /// `s = ±1`.
    fn conj(&self) -> Self;

    /// Integer power, negative exponents allowed for invertible values.
    fn powi(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.try_inv()? } else { self.clone() };
        Ok((0..k.unsigned_abs()).fold(Self::one(), |acc, _| acc * &base))
    }
}

impl Coeff for ScalarQ {
    fn from_int(c: i64) -> Self {
        ScalarQ::from_int(c)
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.inv()
    }

    fn conj(&self) -> Self {
        self.bar()
    }

    fn powi(&self, k: i64) -> Result<Self, ScalarError> {
        if *self == ScalarQ::s() {
            return Ok(ScalarQ::s_pow(k));
        }
        let base = if k < 0 { self.inv()? } else { self.clone() };
        Ok((0..k.unsigned_abs()).fold(ScalarQ::one(), |acc, _| acc * &base))
    }
}

impl Coeff for Rational {
    fn from_int(c: i64) -> Self {
        BigRational::from_integer(c.into())
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Specializes a generic-`q` coefficient at `s = s0`.
pub fn specialize(c: &ScalarQ, s0: &Rational) -> Result<Rational, ScalarError> {
    c.eval_at(s0)
}
