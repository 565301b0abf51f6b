//! Exact rationals and their canonical `"p/q"` text form.

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// `1 - 1/e`, the discriminant weight of a component of degree `e`.
pub fn weight(e: u32) -> Q {
    Q::one() - Q::new(1, i64::from(e))
}

/// Lowest terms with positive denominator, always with an explicit `/q`.
pub fn to_pq(x: &Q) -> String {
    // Ratio keeps itself reduced with a positive denominator.
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_pq(s: &str) -> Result<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: i64 = n.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d: i64 = d.parse().map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d == 0 {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Q::new(n, d))
}

/// Human-facing form: integers without a denominator.
pub fn display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn sign(x: &Q) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn is_one(x: &Q) -> bool {
    x.is_one()
}
