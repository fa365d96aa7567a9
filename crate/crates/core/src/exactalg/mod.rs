//! Exact rational scalars, dense matrices over them, and the elimination
//! kernel (RREF, Bareiss) that every other module builds on.
//!
//! Rationals are `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator. Nothing here uses floating point.

mod bareiss;
mod matrix;
mod univariate;

pub use bareiss::{bareiss_determinant, bareiss_rank};
pub use matrix::Matrix;
pub use univariate::UniPoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"` or `"p/q"`; rejects a zero denominator.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Scalar::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_vector(items: &[String]) -> Result<Vec<Scalar>> {
    items.iter().map(|s| parse_scalar(s)).collect()
}

pub fn format_vector(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

/// Parses a comma separated list such as `0,1,-2/3`.
pub fn parse_scalar_list(s: &str) -> Result<Vec<Scalar>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_scalar).collect()
}

/// Binomial coefficient C(k, l), zero when l > k.
pub fn binomial(k: u64, l: u64) -> u64 {
    if l > k {
        return 0;
    }
    let l = l.min(k - l);
    let mut acc: u128 = 1;
    for i in 0..l {
        acc = acc * (k - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Integer power of a rational.
pub fn pow(x: &Scalar, e: u32) -> Scalar {
    let mut acc = one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Dot product of two equal-length vectors.
pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 1), 3);
        // dim of degree-5 forms in 2 variables
        assert_eq!(binomial(2 - 1 + 5, 2 - 1), 6);
        assert_eq!(binomial(2, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(30, 15), 155_117_520);
    }

    #[test]
    fn scalar_round_trip() {
        for s in ["0", "-7", "3/4", "-12/5", "123456789012345678901234567890"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(format_scalar(&parse_scalar("6/4").unwrap()), "3/2");
        assert_eq!(format_scalar(&parse_scalar("4/-2").unwrap()), "-2");
        assert_eq!(format_scalar(&parse_scalar("0/5").unwrap()), "0");
    }

    #[test]
    fn parse_rejects_zero_denominator_and_garbage() {
        assert!(matches!(parse_scalar("1/0"), Err(Error::Parse(_))));
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1.5").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn scalar_list() {
        let v = parse_scalar_list("0, 1,-2/3").unwrap();
        assert_eq!(v, vec![int(0), int(1), frac(-2, 3)]);
    }
}
