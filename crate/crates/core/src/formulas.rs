//! Closed-form values of the dual DP color function of small complete
//! graphs, the K_n approximation `f(m)` with its error bounds, and the
//! falling factorial. Exact integer arithmetic throughout.

use crate::num::{add, binom, lift, mul, pow, sub};
use crate::{Error, Exact, Result};

fn val<T: Exact>(x: u64) -> Result<T> {
    lift(u128::from(x))
}

/// `m^4 - 6m^3 + 15m^2 - 13m`, minus 3 when `m` is odd: the maximum number
/// of colorings over full m-fold covers of K4.
pub fn thm3_value<T: Exact>(m: u64) -> Result<T> {
    if m < 2 {
        return Err(Error::invalid(format!("K4 dual value needs m >= 2, got {m}")));
    }
    let even = thm4_f::<T>(4, m)?;
    if m.is_multiple_of(2) {
        Ok(even)
    } else {
        sub(&even, &val(3)?)
    }
}

/// `m(m-1)` for K2 and `(m-1)^3 + 1` for K3.
pub fn small_complete_dual<T: Exact>(n: u64, m: u64) -> Result<T> {
    match n {
        2 if m >= 1 => mul(&val(m)?, &val(m - 1)?),
        3 if m >= 2 => add(&pow(&val::<T>(m - 1)?, 3)?, &T::one()),
        2 | 3 => Err(Error::invalid(format!("m = {m} out of range for K{n}"))),
        _ => Err(Error::invalid(format!("closed form known only for K2 and K3, got K{n}"))),
    }
}

/// `m^n - t m^{n-1} + C(t,2) m^{n-2} - (C(t,3) - C(n,3) - 3C(n,4)) m^{n-3}`
/// with `t = C(n,2)`.
pub fn thm4_f<T: Exact>(n: u64, m: u64) -> Result<T> {
    if n < 4 {
        return Err(Error::invalid(format!("f(m) is defined for n >= 4, got {n}")));
    }
    let t = n * (n - 1) / 2;
    let mm = val::<T>(m)?;
    let e = |k: u64| pow(&mm, (n - k) as u32);
    let c3 = sub(
        &sub(&binom::<T>(t, 3)?, &binom::<T>(n, 3)?)?,
        &mul(&val(3)?, &binom::<T>(n, 4)?)?,
    )?;
    let mut acc = e(0)?;
    acc = sub(&acc, &mul(&val(t)?, &e(1)?)?)?;
    acc = add(&acc, &mul(&binom::<T>(t, 2)?, &e(2)?)?)?;
    sub(&acc, &mul(&c3, &e(3)?)?)
}

/// `f(m) ± 2^t m^{n-4}` together with the threshold `2^{t+1} + t + n - 6`
/// above which the bounds are known to enclose the dual DP value of K_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundPair<T> {
    pub lower: T,
    pub upper: T,
    pub f_value: T,
    pub slack: T,
    pub threshold: T,
}

impl<T: Exact> BoundPair<T> {
    /// Whether `m` lies strictly above the threshold.
    pub fn asserted_at(&self, m: &T) -> bool {
        m > &self.threshold
    }

    pub fn contains(&self, value: &T) -> bool {
        &self.lower <= value && value <= &self.upper
    }
}

pub fn thm4_bounds<T: Exact>(n: u64, m: u64) -> Result<BoundPair<T>> {
    let f_value = thm4_f::<T>(n, m)?;
    let t = n * (n - 1) / 2;
    let two = val::<T>(2)?;
    let slack = mul(&pow(&two, t as u32)?, &pow(&val(m)?, (n - 4) as u32)?)?;
    let threshold = sub(&add(&add(&pow(&two, (t + 1) as u32)?, &val(t)?)?, &val(n)?)?, &val(6)?)?;
    Ok(BoundPair {
        lower: sub(&f_value, &slack)?,
        upper: add(&f_value, &slack)?,
        f_value,
        slack,
        threshold,
    })
}

/// `m (m-1) .. (m-n+1)`, the number of proper m-colorings of K_n.
pub fn falling_factorial<T: Exact>(n: u64, m: u64) -> Result<T> {
    if n < 1 {
        return Err(Error::invalid("falling factorial needs n >= 1"));
    }
    let m = val::<T>(m)?;
    (0..n).try_fold(T::one(), |acc, i| mul(&acc, &sub(&m, &val(i)?)?))
}
