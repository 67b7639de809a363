//! Exact arithmetic in `ℚ(√t′)` for `t′ < 0`: elements `p + q√t′` with
//! rational coordinates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct QuadInt {
    re: BigRational,
    im: BigRational,
    rad: BigInt,
}

impl QuadInt {
    pub fn new(re: BigRational, im: BigRational, rad: BigInt) -> QuadInt {
        assert!(rad.is_negative(), "radicand must be negative");
        QuadInt { re, im, rad }
    }

    pub fn from_ints(re: BigInt, im: BigInt, rad: BigInt) -> QuadInt {
        QuadInt::new(BigRational::from(re), BigRational::from(im), rad)
    }

    /// `(h_re + h_im√rad)/2` — the shape of algebraic integers here.
    pub fn from_halves(h_re: BigInt, h_im: BigInt, rad: BigInt) -> QuadInt {
        let two = BigInt::from(2);
        QuadInt::new(
            BigRational::new(h_re, two.clone()),
            BigRational::new(h_im, two),
            rad,
        )
    }

    pub fn one(rad: BigInt) -> QuadInt {
        QuadInt::new(BigRational::one(), BigRational::zero(), rad)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn rad(&self) -> &BigInt {
        &self.rad
    }

    pub fn conj(&self) -> QuadInt {
        QuadInt {
            re: self.re.clone(),
            im: -self.im.clone(),
            rad: self.rad.clone(),
        }
    }

    pub fn add(&self, other: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.rad, other.rad);
        QuadInt {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
            rad: self.rad.clone(),
        }
    }

    pub fn mul(&self, other: &QuadInt) -> QuadInt {
        debug_assert_eq!(self.rad, other.rad);
        let rad = BigRational::from(self.rad.clone());
        QuadInt {
            re: &self.re * &other.re + (&self.im * &other.im) * &rad,
            im: &self.re * &other.im + &self.im * &other.re,
            rad: self.rad.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QuadInt {
        QuadInt {
            re: &self.re * c,
            im: &self.im * c,
            rad: self.rad.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> QuadInt {
        let mut acc = QuadInt::one(self.rad.clone());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `re² − rad·im²`, the field norm (positive for `rad < 0`).
    pub fn norm(&self) -> BigRational {
        let rad = BigRational::from(self.rad.clone());
        &self.re * &self.re - (&self.im * &self.im) * rad
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl fmt::Debug for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}·√{})", self.re, self.im, self.rad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(re: i64, im: i64) -> QuadInt {
        QuadInt::from_ints(BigInt::from(re), BigInt::from(im), BigInt::from(-1))
    }

    #[test]
    fn gaussian_arithmetic() {
        // (3+2i)⁴ = -119+120i
        let z = gauss(3, 2).pow(4);
        assert_eq!(z, gauss(-119, 120));
        // (1+i)(-119+120i) = -239+i
        let w = gauss(1, 1).mul(&z);
        assert_eq!(w, gauss(-239, 1));
        assert_eq!(w.conj(), gauss(-239, -1));
        assert_eq!(gauss(3, 2).norm(), BigRational::from(BigInt::from(13)));
    }

    #[test]
    fn half_coordinates() {
        // ((1+√-3)/2)³ = -1
        let z = QuadInt::from_halves(BigInt::from(1), BigInt::from(1), BigInt::from(-3));
        assert_eq!(z.pow(3), gaussian_minus_one(-3));
    }

    fn gaussian_minus_one(rad: i64) -> QuadInt {
        QuadInt::from_ints(BigInt::from(-1), BigInt::from(0), BigInt::from(rad))
    }
}
