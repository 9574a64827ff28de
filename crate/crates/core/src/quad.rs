//! Exact arithmetic in the quadratic field Q[√5].
//!
//! The golden mean and every closed-form constant of the summand statistics
//! live here, so identities like `phi^2 = phi + 1` hold exactly and floats
//! only enter through [`QuadRat::to_f64`].

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::convert::rational_to_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("division by zero in Q[sqrt 5]")]
    DivisionByZero,
}

/// `a + b·√5` with rational `a`, `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub a: BigRational,
    pub b: BigRational,
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl QuadRat {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadRat { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadRat {
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `(an/ad) + (bn/bd)√5`.
    pub fn from_parts(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        QuadRat {
            a: rat(an, ad),
            b: rat(bn, bd),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn sqrt5() -> Self {
        Self::from_parts(0, 1, 1, 1)
    }

    /// The golden mean `(1 + √5)/2`.
    pub fn phi() -> Self {
        Self::from_parts(1, 2, 1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a - b√5`.
    pub fn conjugate(&self) -> Self {
        QuadRat {
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// `(a + b√5)(a - b√5) = a² - 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigInt::from(5)
    }

    pub fn recip(&self) -> Result<Self, QuadError> {
        let norm = self.norm();
        if norm.is_zero() {
            // √5 is irrational, so the norm vanishes only at zero
            return Err(QuadError::DivisionByZero);
        }
        Ok(QuadRat {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, QuadError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        QuadRat {
            a: &self.a * k,
            b: &self.b * k,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// -1, 0 or 1, decided exactly.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa >= 0 && sb >= 0 {
            return if sa + sb > 0 { 1 } else { 0 };
        }
        if sa <= 0 && sb <= 0 {
            return -1;
        }
        // opposite signs: compare a^2 with 5 b^2
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * BigInt::from(5);
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * libm::sqrt(5.0)
    }
}

fn sign_of(r: &BigRational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for QuadRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadRat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl<'a> Add<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a QuadRat> for &'a QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        let five = BigInt::from(5);
        QuadRat {
            a: &self.a * &rhs.a + &self.b * &rhs.b * five,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for QuadRat {
            type Output = QuadRat;
            fn $method(self, rhs: QuadRat) -> QuadRat {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt5", self.a, self.b)
    }
}

/// Closed-form constants of the summand statistics.
pub mod constants {
    use super::QuadRat;

    fn div(x: QuadRat, y: QuadRat) -> QuadRat {
        x.checked_div(&y).expect("nonzero constant divisor")
    }

    /// `C = 1/(phi + 2)`, the mean summand density.
    pub fn mean_density() -> QuadRat {
        div(QuadRat::one(), &QuadRat::phi() + &QuadRat::from_int(2))
    }

    /// `(5 - √5)/10`, the printed form of [`mean_density`].
    pub fn mean_slope() -> QuadRat {
        QuadRat::from_parts(1, 2, -1, 10)
    }

    /// `1/(5√5)`, the variance per unit n.
    pub fn variance_slope() -> QuadRat {
        div(QuadRat::one(), QuadRat::sqrt5().scale(&super::rat(5, 1)))
    }

    /// `phi/2`, the asymptotic excess of positive over negative
    /// far-difference summands.
    pub fn fardiff_mean_gap() -> QuadRat {
        QuadRat::phi().scale(&super::rat(1, 2))
    }

    /// `(371 - 113√5)/40`.
    pub fn fardiff_mean_offset() -> QuadRat {
        QuadRat::from_parts(371, 40, -113, 40)
    }

    /// `(15 + 21√5)/1000`.
    pub fn fardiff_variance_slope() -> QuadRat {
        QuadRat::from_parts(15, 1000, 21, 1000)
    }

    /// `-(21 - 2 phi)/(29 + 2 phi)`, the limiting correlation of the
    /// positive and negative far-difference summand counts.
    pub fn fardiff_correlation() -> QuadRat {
        let two_phi = QuadRat::phi().scale(&super::rat(2, 1));
        -div(
            &QuadRat::from_int(21) - &two_phi,
            &QuadRat::from_int(29) + &two_phi,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::constants::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_mean_identity() {
        let phi = QuadRat::phi();
        assert_eq!(&phi * &phi, &phi + &QuadRat::one());
        assert_eq!(&phi * &phi.recip().unwrap(), QuadRat::one());
        assert!((phi.to_f64() - (1.0 + libm::sqrt(5.0)) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn mean_density_forms_agree() {
        assert_eq!(mean_density(), mean_slope());
        let phi = QuadRat::phi();
        let via_square = QuadRat::one()
            .checked_div(&(&(&phi * &phi) + &QuadRat::one()))
            .unwrap();
        assert_eq!(via_square, mean_slope());
    }

    #[test]
    fn variance_slope_forms_agree() {
        let phi = QuadRat::phi();
        let alt = phi
            .checked_div(&(&phi + &QuadRat::from_int(2)).scale(&rat(5, 1)))
            .unwrap();
        assert_eq!(variance_slope(), alt);
        assert_eq!(variance_slope(), QuadRat::from_parts(0, 1, 1, 25));
    }

    #[test]
    fn constant_values() {
        assert!((fardiff_mean_gap().to_f64() - 0.809017).abs() < 1e-6);
        assert!((fardiff_correlation().to_f64() + 0.551058).abs() < 1e-6);
        assert!((fardiff_mean_offset().to_f64() - 2.958108).abs() < 1e-6);
        assert!((fardiff_variance_slope().to_f64() - 0.061957).abs() < 1e-6);
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(
            QuadRat::one().checked_div(&QuadRat::zero()),
            Err(QuadError::DivisionByZero)
        );
    }

    #[test]
    fn ordering_is_exact() {
        let phi = QuadRat::phi();
        let close = QuadRat::from_parts(1618033988, 1000000000, 0, 1);
        assert!(phi > close);
        assert!(QuadRat::from_parts(-2, 1, 1, 1) > QuadRat::zero()); // √5 > 2
        assert!(QuadRat::from_parts(3, 1, -1, 1) > QuadRat::zero()); // 3 > √5
        assert!(QuadRat::from_parts(2, 1, -1, 1) < QuadRat::zero());
    }

    fn quad() -> impl Strategy<Value = QuadRat> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20)
            .prop_map(|(an, ad, bn, bd)| QuadRat::from_parts(an, ad, bn, bd))
    }

    proptest! {
        #[test]
        fn norm_is_product_with_conjugate(x in quad()) {
            let prod = &x * &x.conjugate();
            prop_assert_eq!(prod.clone(), QuadRat::from_rational(x.norm()));
            prop_assert!(prod.b.is_zero());
        }

        #[test]
        fn field_laws(x in quad(), y in quad()) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
            }
            let fx = x.to_f64();
            let fy = y.to_f64();
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
        }
    }
}
