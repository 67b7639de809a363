//! The quartic-representation decomposer: for a sequence element
//! `x + y²√d = αε^{2k}` with `−N_α` a square, finds integers `f | b²` and
//! `(r, s)` with
//!
//! ```text
//! ±f²(x + N_{ε^k}√N_α) = (a + √N_α)(r + s√core(N_α))⁴,   fy = b(r² − core(N_α)s²)
//! ```
//!
//! Since `−N_α` is a positive square, `core(N_α) = −1` and everything lives
//! in the Gaussian integers.

use super::quadint::QuadInt;
use super::HypergeomError;
use crate::arith::{factorize, perfect_square_root};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A witness `(f, r, s, sign)` for the quartic identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticWitness {
    pub f: BigInt,
    pub r: BigInt,
    pub s: BigInt,
    /// The `±` on the left-hand side.
    pub sign: i8,
}

/// Searches for a witness. `x` is the integer `x_k`, `y_root` the square
/// root of `y_k`, `n_eps_k = N_{ε^k} = (N_ε)^k`. When `required_sign` is
/// set, only that `±` is accepted.
pub fn lemma31_decompose(
    x: &BigInt,
    y_root: &BigInt,
    a: &BigInt,
    b: &BigInt,
    n_alpha: &BigInt,
    n_eps_k: i8,
    required_sign: Option<i8>,
) -> Result<QuarticWitness, HypergeomError> {
    if x.is_zero() || !y_root.is_positive() {
        return Err(HypergeomError::InvalidParameters(
            "need x ≠ 0 and y_root > 0".into(),
        ));
    }
    let n = match n_root(n_alpha) {
        Some(n) => n,
        None => {
            return Err(HypergeomError::InvalidParameters(format!(
                "−N_α = {} is not a positive square",
                -n_alpha
            )))
        }
    };
    let rad = BigInt::from(-1);
    // sign·f²·(x + N_{ε^k}·n·i) = (a + n·i)(r + s·i)⁴
    let alpha = QuadInt::from_ints(a.clone(), n.clone(), rad.clone());
    let lhs_base = QuadInt::from_ints(x.clone(), BigInt::from(n_eps_k) * &n, rad.clone());

    for f in divisors_sorted(&(b * b)) {
        let fy = &f * y_root;
        let (target, rem) = fy.div_rem(b);
        if !rem.is_zero() || !target.is_positive() {
            continue;
        }
        // r² + s² = f·y_root/b; canonical representative has r > 0, s ≥ 0
        // (or r = 0), so scanning r ≥ 0 with s ≥ 0 is exhaustive up to
        // fourth-power symmetry.
        let f2 = &f * &f;
        let lhs_abs = lhs_base.scale(&num_rational::BigRational::from(f2.clone()));
        let r_max = target.sqrt();
        let mut r_cur = BigInt::zero();
        while r_cur <= r_max {
            if let Some(s) = perfect_square_root(&(&target - &r_cur * &r_cur)) {
                let z4 = QuadInt::from_ints(r_cur.clone(), s.clone(), rad.clone()).pow(4);
                let rhs = alpha.mul(&z4);
                for sign in [1i8, -1] {
                    if required_sign.is_some_and(|want| want != sign) {
                        continue;
                    }
                    let lhs = if sign == 1 {
                        lhs_abs.clone()
                    } else {
                        lhs_abs.scale(&num_rational::BigRational::from(BigInt::from(-1)))
                    };
                    if lhs == rhs {
                        return Ok(QuarticWitness {
                            f,
                            r: r_cur,
                            s,
                            sign,
                        });
                    }
                }
            }
            r_cur += 1;
        }
    }
    Err(HypergeomError::NoDecomposition {
        x: x.clone(),
        y_root: y_root.clone(),
    })
}

fn n_root(n_alpha: &BigInt) -> Option<BigInt> {
    if !n_alpha.is_negative() {
        return None;
    }
    perfect_square_root(&-n_alpha).filter(|n| n.is_positive())
}

/// All positive divisors, ascending.
fn divisors_sorted(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::from(1)];
    for (p, e) in factorize(n).expect("positive") {
        let base_len = divs.len();
        let mut pk = BigInt::from(1);
        for _ in 0..e {
            pk = &pk * &p;
            for i in 0..base_len {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    divs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn witness_for_239_13() {
        // tuple (1,1,2,2,2), k = 3: αε⁶ = 239 + 169√2, N_{ε³} = −1
        let w = lemma31_decompose(&big(239), &big(13), &big(1), &big(1), &big(-1), -1, None)
            .unwrap();
        assert_eq!((w.f, w.r, w.s, w.sign), (big(1), big(3), big(2), -1));
    }

    #[test]
    fn wrong_sign_demanded() {
        let err = lemma31_decompose(&big(239), &big(13), &big(1), &big(1), &big(-1), -1, Some(1));
        assert!(matches!(err, Err(HypergeomError::NoDecomposition { .. })));
    }

    #[test]
    fn f_equals_one_constraint() {
        // With f = b = 1 the constraint is r² + s² = y_root directly.
        let w = lemma31_decompose(&big(239), &big(13), &big(1), &big(1), &big(-1), -1, None)
            .unwrap();
        assert_eq!(&w.r * &w.r + &w.s * &w.s, big(13));
    }

    #[test]
    fn divisors_of_36() {
        let d: Vec<i64> = divisors_sorted(&big(36))
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }
}
