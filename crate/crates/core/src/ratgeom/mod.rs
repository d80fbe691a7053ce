//! Exact rational scalars, vectors and matrices.
//!
//! Rationals are `num_rational::BigRational`, always reduced with a positive
//! denominator. They print as `p/q`, or `p` when the denominator is one.

mod affine;
mod matrix;
mod vector;

pub use affine::{primitive_ray, primitive_ray_ints, solve_affine_hull, AffineHull};
pub use matrix::{int_determinant, int_rank, nullspace, rank, rref, solve, RMatrix};
pub use vector::RVector;

use alloc::string::ToString;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den`; panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p/q"` or `"p"` (optionally signed) into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidArgument(alloc::format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

pub fn format_rational(r: &Rational) -> alloc::string::String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Gcd of absolute values; zero for an all-zero input.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Decimal approximation for display-only output.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64()
        .unwrap_or_else(|| if r.is_negative() { f64::MIN } else { f64::MAX })
}

/// Best rational with denominator `10^digits` to a finite float.
pub fn from_f64_rounded(x: f64, digits: u32) -> Rational {
    let scale = libm::pow(10.0, digits as f64);
    let n = libm::round(x * scale);
    let mut den = BigInt::one();
    for _ in 0..digits {
        den *= 10;
    }
    Rational::new(BigInt::from(n as i64), den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 3 / -6 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-3, 6)), "-1/2");
        assert_eq!(format_rational(&int(5)), "5");
    }

    #[test]
    fn float_rounding() {
        assert_eq!(from_f64_rounded(0.5, 6), rat(1, 2));
        assert_eq!(from_f64_rounded(-0.1234567, 6), rat(-123457, 1000000));
    }
}
