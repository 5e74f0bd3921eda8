//! Exact integer arithmetic used by the counters and formula evaluators.

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};

use crate::{Error, Result};

/// Signed exact integer with checked arithmetic.
///
/// Implemented for every type with the listed capabilities, which covers
/// `i64`, `i128` and `num_bigint::BigInt`. Fixed-width types report
/// overflow as [`Error::Overflow`]; `BigInt` never does.
pub trait Exact:
    Clone + Ord + Signed + FromPrimitive + CheckedAdd + CheckedSub + CheckedMul + Debug + Display + Send + Sync
{
}

impl<T> Exact for T where
    T: Clone
        + Ord
        + Signed
        + FromPrimitive
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Debug
        + Display
        + Send
        + Sync
{
}

pub(crate) fn lift<T: Exact>(v: u128) -> Result<T> {
    T::from_u128(v).ok_or_else(|| Error::overflow(format!("{v} does not fit the count type")))
}

pub(crate) fn lift_i<T: Exact>(v: i128) -> Result<T> {
    T::from_i128(v).ok_or_else(|| Error::overflow(format!("{v} does not fit the count type")))
}

pub(crate) fn add<T: Exact>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or_else(|| Error::overflow("addition"))
}

pub(crate) fn sub<T: Exact>(a: &T, b: &T) -> Result<T> {
    a.checked_sub(b).ok_or_else(|| Error::overflow("subtraction"))
}

pub(crate) fn mul<T: Exact>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or_else(|| Error::overflow("multiplication"))
}

pub(crate) fn pow<T: Exact>(base: &T, exp: u32) -> Result<T> {
    let mut acc = T::one();
    for _ in 0..exp {
        acc = mul(&acc, base)?;
    }
    Ok(acc)
}

/// Binomial coefficient as an exact integer.
pub(crate) fn binom<T: Exact>(n: u64, k: u64) -> Result<T> {
    if k > n {
        return Ok(T::zero());
    }
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point
        acc = mul(&acc, &lift::<T>(u128::from(n - i))?)?;
        acc = acc / lift::<T>(u128::from(i + 1))?;
    }
    Ok(acc)
}
