//! Coefficient types.
//!
//! Everything numeric in the crate is generic over [`Scalar`]. Rank computations additionally need
//! [`ExactScalar`], which clears denominators so elimination can run over the integers, and
//! reduced echelon forms need a [`Field`]. Floating point types deliberately implement neither of
//! the latter two.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

pub trait Scalar:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent a small integer")
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + Display + PartialEq + Num + Neg<Output = T> + FromPrimitive + Send + Sync + 'static
{
}

/// A scalar whose values can be brought to a common integer scale without loss.
pub trait ExactScalar: Scalar {
    /// Multiplies a vector by the least common denominator of its entries.
    fn integerize(entries: &[(usize, Self)]) -> Vec<(usize, BigInt)>;
}

/// Exact fields: exact scalars where every nonzero element is invertible.
pub trait Field: ExactScalar {
    fn from_bigint(v: BigInt) -> Self;
}

impl ExactScalar for BigInt {
    fn integerize(entries: &[(usize, Self)]) -> Vec<(usize, BigInt)> {
        entries.to_vec()
    }
}

impl ExactScalar for i64 {
    fn integerize(entries: &[(usize, Self)]) -> Vec<(usize, BigInt)> {
        entries.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect()
    }
}

impl ExactScalar for i128 {
    fn integerize(entries: &[(usize, Self)]) -> Vec<(usize, BigInt)> {
        entries.iter().map(|(c, v)| (*c, BigInt::from(*v))).collect()
    }
}

impl ExactScalar for BigRational {
    fn integerize(entries: &[(usize, Self)]) -> Vec<(usize, BigInt)> {
        let lcm = entries
            .iter()
            .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        entries
            .iter()
            .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
            .collect()
    }
}

impl Field for BigRational {
    fn from_bigint(v: BigInt) -> Self {
        BigRational::from_integer(v)
    }
}

/// Rational number from a pair of machine integers.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    Ratio::new(BigInt::from(numer), BigInt::from(denom))
}

/// Divides an integer vector by the gcd of its entries and makes the leading entry positive.
pub fn primitive_part(entries: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in entries.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if g.is_zero() {
        return;
    }
    let flip = entries.first().map(|(_, v)| v.is_negative()).unwrap_or(false);
    if g.is_one() && !flip {
        return;
    }
    if flip {
        g = -g;
    }
    for (_, v) in entries.iter_mut() {
        *v = &*v / &g;
    }
}
