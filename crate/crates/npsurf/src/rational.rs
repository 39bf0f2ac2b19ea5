//! Exact rational scalars.
//!
//! All dimension counts in this crate are ranks of matrices over the
//! rationals, which agree with ranks over any field of characteristic zero.
//! `num-rational` keeps values reduced with a positive denominator, which is
//! exactly the normal form the rest of the crate relies on.

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses "num/den" or "num". The result is reduced and the denominator positive.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => {
            let n: BigInt = s
                .parse()
                .map_err(|_| Error::invalid(format!("invalid integer `{s}`")))?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("invalid numerator in `{s}`")))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("invalid denominator in `{s}`")))?;
            if d == BigInt::from(0) {
                return Err(Error::invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Renders a rational as "num" when integral and "num/den" otherwise.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(rational_to_string(&rational_from_str("6/4").unwrap()), "3/2");
        assert_eq!(rational_to_string(&rational_from_str("-6/4").unwrap()), "-3/2");
        assert_eq!(rational_to_string(&rational_from_str("6/-4").unwrap()), "-3/2");
        assert_eq!(rational_to_string(&rational_from_str("5").unwrap()), "5");
        assert_eq!(rational_to_string(&rational_from_str("10/5").unwrap()), "2");
        assert!(rational_from_str("1/0").is_err());
        assert!(rational_from_str("x").is_err());
    }

    #[test]
    fn value_equality() {
        assert_eq!(
            rational_from_str("2/6").unwrap(),
            rational_from_str("1/3").unwrap()
        );
    }
}
