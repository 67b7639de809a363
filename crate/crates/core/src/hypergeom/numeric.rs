//! High-precision numerics: conversions from the exact types into
//! `rug::Float` (MPFR) and a small complex layer on top of it.

use super::quadint::QuadInt;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;
use std::ops::{Add, Mul, Neg, Sub};

pub(crate) fn float_int(n: &BigInt, prec: u32) -> Float {
    let i = rug::Integer::from_str_radix(&n.to_str_radix(16), 16).expect("radix-16 round trip");
    Float::with_val(prec, i)
}

pub(crate) fn float_ratio(q: &BigRational, prec: u32) -> Float {
    let n = rug::Integer::from_str_radix(&q.numer().to_str_radix(16), 16).unwrap();
    let d = rug::Integer::from_str_radix(&q.denom().to_str_radix(16), 16).unwrap();
    Float::with_val(prec, rug::Rational::from((n, d)))
}

pub(crate) fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Complex number as a pair of `rug::Float`s with a common precision.
#[derive(Debug, Clone, PartialEq)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    pub fn new(re: Float, im: Float) -> CFloat {
        CFloat { re, im }
    }

    pub fn zero(prec: u32) -> CFloat {
        CFloat::new(Float::with_val(prec, 0), Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> CFloat {
        CFloat::new(Float::with_val(prec, 1), Float::with_val(prec, 0))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Evaluates `re + im·√rad` (with `rad < 0`) as a complex point.
    pub fn from_quadint(q: &QuadInt, prec: u32) -> CFloat {
        let s = float_int(&q.rad().abs(), prec).sqrt();
        CFloat::new(float_ratio(q.re(), prec), float_ratio(q.im(), prec) * s)
    }

    pub fn conj(&self) -> CFloat {
        CFloat::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Float {
        self.re.clone().square() + self.im.clone().square()
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// Principal argument in `(−π, π]`.
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn scale(&self, c: &Float) -> CFloat {
        CFloat::new(self.re.clone() * c, self.im.clone() * c)
    }

    pub fn div(&self, other: &CFloat) -> CFloat {
        let den = other.norm_sqr();
        let num = self * &other.conj();
        CFloat::new(num.re / &den, num.im / den)
    }

    pub fn powi(&self, e: u32) -> CFloat {
        let mut acc = CFloat::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `e^{iθ}`.
    pub fn unit(theta: &Float) -> CFloat {
        let (sin, cos) = theta.clone().sin_cos(Float::new(theta.prec()));
        CFloat::new(cos, sin)
    }
}

impl Add for &CFloat {
    type Output = CFloat;
    fn add(self, rhs: &CFloat) -> CFloat {
        CFloat::new(self.re.clone() + &rhs.re, self.im.clone() + &rhs.im)
    }
}

impl Sub for &CFloat {
    type Output = CFloat;
    fn sub(self, rhs: &CFloat) -> CFloat {
        CFloat::new(self.re.clone() - &rhs.re, self.im.clone() - &rhs.im)
    }
}

impl Mul for &CFloat {
    type Output = CFloat;
    fn mul(self, rhs: &CFloat) -> CFloat {
        CFloat::new(
            self.re.clone() * &rhs.re - self.im.clone() * &rhs.im,
            self.re.clone() * &rhs.im + self.im.clone() * &rhs.re,
        )
    }
}

impl Neg for &CFloat {
    type Output = CFloat;
    fn neg(self) -> CFloat {
        CFloat::new(-self.re.clone(), -self.im.clone())
    }
}

/// `2^{-bits}` at the given precision, for tolerance thresholds.
pub(crate) fn two_pow_neg(bits: u32, prec: u32) -> Float {
    Float::with_val(prec, 2).pow(-(bits as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn complex_basics() {
        let prec = 128;
        let i = CFloat::new(Float::with_val(prec, 0), Float::with_val(prec, 1));
        let sq = &i * &i;
        assert_eq!(sq.re.to_f64(), -1.0);
        assert_eq!(sq.im.to_f64(), 0.0);
        let q = i.div(&i);
        assert_eq!(q.re.to_f64(), 1.0);

        let z = CFloat::new(Float::with_val(prec, 3), Float::with_val(prec, 4));
        assert_eq!(z.abs().to_f64(), 5.0);
        assert!((z.arg().to_f64() - (4f64 / 3f64).atan()).abs() < 1e-15);
    }

    #[test]
    fn quadint_embedding() {
        let prec = 192;
        // (1 + 2√-3) → (1, 2√3)
        let q = QuadInt::from_ints(BigInt::one(), BigInt::from(2), BigInt::from(-3));
        let z = CFloat::from_quadint(&q, prec);
        assert_eq!(z.re.to_f64(), 1.0);
        assert!((z.im.to_f64() - 2.0 * 3f64.sqrt()).abs() < 1e-15);
    }
}
