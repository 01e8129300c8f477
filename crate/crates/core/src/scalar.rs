//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Base field element. Always kept in reduced form by `num_rational`.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

/// Parses `p/q` or an integer, with an optional leading `-`.
pub fn parse_rational(text: &str) -> Option<Scalar> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let valid = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    let value = match body.split_once('/') {
        Some((n, d)) => {
            if !valid(n) || !valid(d) {
                return None;
            }
            let den: BigInt = d.parse().ok()?;
            if den.is_zero() {
                return None;
            }
            BigRational::new(n.parse().ok()?, den)
        }
        None => {
            if !valid(body) {
                return None;
            }
            BigRational::from_integer(body.parse().ok()?)
        }
    };
    Some(if neg { -value } else { value })
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
