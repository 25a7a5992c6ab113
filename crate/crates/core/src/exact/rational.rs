//! Thin helpers around [`num_rational::BigRational`], the ground field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Reduced rational `n/d` with positive denominator.
pub fn rational_normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<BigRational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    // BigRational::new reduces and fixes the sign of the denominator.
    Ok(BigRational::new(n.into(), d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text: `n` or `n/d`.
pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_examples() {
        let half = rational_normalize(2, 4).unwrap();
        assert_eq!(half, frac(1, 2));
        assert_eq!(half.denom(), &BigInt::from(2));

        let neg = rational_normalize(3, -6).unwrap();
        assert_eq!(neg.numer(), &BigInt::from(-1));
        assert_eq!(neg.denom(), &BigInt::from(2));

        let zero = rational_normalize(0, 7).unwrap();
        assert_eq!(zero.numer(), &BigInt::from(0));
        assert_eq!(zero.denom(), &BigInt::from(1));
    }

    #[test]
    fn zero_denominator_is_an_error() {
        let err = rational_normalize(1, 0).unwrap_err();
        assert_eq!(err.to_string(), "division by zero");
    }

    #[test]
    fn text_form() {
        assert_eq!(rational_to_string(&frac(-3, 6)), "-1/2");
        assert_eq!(rational_to_string(&int(4)), "4");
    }
}
