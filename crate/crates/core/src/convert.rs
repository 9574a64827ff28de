//! Float conversion for huge exact quantities.
//!
//! Densities at n in the thousands have numerators and denominators with
//! hundreds of digits, far outside `f64` range individually, while their
//! ratio is an ordinary probability. These helpers divide first and scale
//! afterwards.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

const QUOTIENT_BITS: i64 = 64;

/// `num / den` as the nearest-ish `f64` (truncated to 64 quotient bits).
///
/// Panics if `den` is zero.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    assert!(!den.is_zero(), "ratio_to_f64: zero denominator");
    if num.is_zero() {
        return 0.0;
    }
    let exp = num.bits() as i64 - den.bits() as i64;
    let shift = QUOTIENT_BITS - exp;
    let quotient = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let q = quotient.to_f64().unwrap_or(f64::INFINITY);
    libm::scalbn(q, -shift as i32)
}

/// Signed variant of [`ratio_to_f64`].
pub fn signed_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    let mag = ratio_to_f64(num.magnitude(), den.magnitude());
    match (num.sign(), den.sign()) {
        (Sign::Minus, Sign::Minus) | (Sign::Plus, Sign::Plus) | (Sign::NoSign, _) => mag,
        _ => -mag,
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    signed_ratio_to_f64(r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn small_ratios_are_exact() {
        let r = ratio_to_f64(&BigUint::from(35u32), &BigUint::from(12u32));
        assert!((r - 35.0 / 12.0).abs() < 1e-15);
        assert_eq!(ratio_to_f64(&BigUint::zero(), &BigUint::one()), 0.0);
    }

    #[test]
    fn huge_operands_with_moderate_ratio() {
        let den = BigUint::from(3u32).pow(2000);
        let num = &den * 7u32 / 2u32;
        let r = ratio_to_f64(&num, &den);
        assert!((r - 3.5).abs() < 1e-12);
    }

    #[test]
    fn signs() {
        let r = signed_ratio_to_f64(&BigInt::from(-3), &BigInt::from(4));
        assert_eq!(r, -0.75);
        let r = signed_ratio_to_f64(&BigInt::from(-3), &BigInt::from(-4));
        assert_eq!(r, 0.75);
    }
}
