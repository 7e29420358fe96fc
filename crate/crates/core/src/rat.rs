//! Exact rational scalars.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

#[inline]
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[inline]
pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"3"`, `"-1/2"` or `" 7/4 "`.
pub fn parse(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn to_string(x: &Q) -> String {
    x.to_string()
}

/// `[1, -1/2, 0]`.
pub fn vec_string(v: &[Q]) -> String {
    let parts: alloc::vec::Vec<String> = v.iter().map(to_string).collect();
    alloc::format!("[{}]", parts.join(", "))
}

/// Returns the value as `i64` when it is an integer that fits.
pub fn as_int(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn to_f64(x: &Q) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both sides down before converting.
            let bits = x.numer().bits().max(x.denom().bits());
            let shift = bits.saturating_sub(1000) as usize;
            let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (x.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}
