//! Coefficient domains for polynomials and q-series.
//!
//! Exact domains (arbitrary-precision integers, rationals, Gaussian
//! rationals) never round; the complex-float domain exists only for
//! operations explicitly marked numeric.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Ring operations every coefficient domain supports.
///
/// Values carry their own ring context (`zero_like`/`one_like` derive the
/// additive and multiplicative identities from an existing element), which
/// lets polynomial coefficients themselves be polynomials over a shared
/// generator table.
pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse, if the element is a unit.
    fn try_inv(&self) -> Option<Self>;

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
}

/// Coefficient domains closed under division by nonzero integers.
///
/// Needed by exp/log/series division; the integer domain deliberately does
/// not implement it.
pub trait FieldCoeff: Coeff {
    /// Exact multiplication by the rational num/den. `den` must be nonzero.
    fn mul_rat_i64(&self, num: i64, den: i64) -> Self;
}

impl Coeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_inv(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coeff for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl FieldCoeff for BigRational {
    fn mul_rat_i64(&self, num: i64, den: i64) -> Self {
        assert!(den != 0, "division by zero");
        self * BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Gaussian rational a + b*i with exact rational parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }
    pub fn from_rational(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }
    pub fn from_i64(re: i64, im: i64) -> Self {
        GaussRat {
            re: BigRational::from(BigInt::from(re)),
            im: BigRational::from(BigInt::from(im)),
        }
    }
    /// Squared modulus |a+bi|^2 = a^2 + b^2.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Coeff for GaussRat {
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn zero_like(&self) -> Self {
        GaussRat::from_i64(0, 0)
    }
    fn one_like(&self) -> Self {
        GaussRat::from_i64(1, 0)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
    fn neg_ref(&self) -> Self {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn try_inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl FieldCoeff for GaussRat {
    fn mul_rat_i64(&self, num: i64, den: i64) -> Self {
        assert!(den != 0, "division by zero");
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        GaussRat {
            re: &self.re * &r,
            im: &self.im * &r,
        }
    }
}

/// Complex double precision. Only for numeric verifiers; zero tests are
/// exact bit tests, so never rely on cancellation here.
impl Coeff for Complex64 {
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn try_inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

impl FieldCoeff for Complex64 {
    fn mul_rat_i64(&self, num: i64, den: i64) -> Self {
        self * (num as f64 / den as f64)
    }
}

/// Rational constructor shorthand used throughout the crate.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer-valued rational shorthand.
pub fn rint(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}
