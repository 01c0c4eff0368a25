//! Exact rational scalars.
//!
//! Coefficients throughout the crate are arbitrary-precision rationals kept
//! in lowest terms with a positive denominator; `num_rational::BigRational`
//! maintains exactly that normal form, so it is re-exported as the crate's
//! scalar type.

use num_bigint::BigInt;

pub use num_rational::BigRational as Rational;

/// Rational from a numerator/denominator pair of machine integers.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a machine integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn stored_in_lowest_terms_with_positive_denominator() {
        let r = rat(4, -6);
        assert_eq!(r, rat(-2, 3));
        assert_eq!(*r.numer(), BigInt::from(-2));
        assert_eq!(*r.denom(), BigInt::from(3));
        assert!(r.denom().is_positive());
    }

    #[test]
    fn arithmetic_is_exact() {
        // 1/3 + 1/6 = 1/2, with no rounding anywhere.
        assert_eq!(rat(1, 3) + rat(1, 6), rat(1, 2));
        assert_eq!(rat(1, 10) * int(10), int(1));
    }
}
