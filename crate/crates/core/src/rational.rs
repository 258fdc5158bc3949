//! Exact rational scalars.

use alloc::string::{String, ToString};
use num_bigint::BigInt;
use num_traits::{One, Zero};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_int(n: &BigInt) -> Q {
    Q::from_integer(n.clone())
}

/// `"p/q"` rendering, or `"p"` for integers.
pub fn render(x: &Q) -> String {
    x.to_string()
}

/// Parses `"p/q"`, `"p"`, with optional sign. Rejects a zero denominator.
pub fn parse(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}
