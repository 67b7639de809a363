//! The polynomial side of the construction: coefficients of
//! `X_{m,n,r}(z) = ₂F₁(−r−ν, −r; 1−ν; z)` with `ν = m/n`, the integrality
//! denominators `D_{n,r}` and `N_{d′,n,r}`, the `𝒩_{d′,n}` factor and the
//! `g = g₁√(g₂/g₃)` normaliser.

use super::HypergeomError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn check_mn(m: u32, n: u32) -> Result<(), HypergeomError> {
    if !(0 < m && m < n && m.gcd(&n) == 1) {
        return Err(HypergeomError::InvalidParameters(format!(
            "need 0 < m < n with gcd(m, n) = 1, got (m, n) = ({m}, {n})"
        )));
    }
    Ok(())
}

/// Exact coefficients of the degree-`r` polynomial `X_{m,n,r}`:
/// coefficient `i` is `(−r−ν)_i (−r)_i / ((1−ν)_i · i!)`.
pub fn xpoly_coeffs(m: u32, n: u32, r: u32) -> Result<Vec<BigRational>, HypergeomError> {
    check_mn(m, n)?;
    let nu = BigRational::new(BigInt::from(m), BigInt::from(n));
    let mut coeffs = Vec::with_capacity(r as usize + 1);
    let mut c = BigRational::one();
    coeffs.push(c.clone());
    for i in 0..r {
        let i_rat = BigRational::from(BigInt::from(i));
        let r_rat = BigRational::from(BigInt::from(r));
        // ratio c_{i+1}/c_i of the hypergeometric series
        let num = (-&r_rat - &nu + &i_rat) * (-&r_rat + &i_rat);
        let den = (BigRational::one() - &nu + &i_rat)
            * (i_rat + BigRational::one());
        c = c * num / den;
        coeffs.push(c.clone());
    }
    Ok(coeffs)
}

fn admissible_ms(n: u32) -> Vec<u32> {
    (1..n).filter(|m| m.gcd(&n) == 1).collect()
}

/// `D_{n,r}`: the smallest positive integer clearing all denominators of
/// `X_{m,n,r}` over every admissible `m`.
pub fn dnr(n: u32, r: u32) -> Result<BigInt, HypergeomError> {
    if n < 2 {
        return Err(HypergeomError::InvalidParameters(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let mut l = BigInt::one();
    for m in admissible_ms(n) {
        for c in xpoly_coeffs(m, n, r)? {
            l = l.lcm(c.denom());
        }
    }
    Ok(l)
}

/// `N_{d′,n,r}`: the largest integer with
/// `(D_{n,r}/N) X_{m,n,r}(1 − √d′·x) ∈ ℤ[√d′][x]` for all admissible `m`.
///
/// The coefficient of `x^j` in `D·X(1−√d′x)` is an integer `A_j` times
/// `d′^{⌊j/2⌋}` (times `√d′` for odd `j`); the answer is the gcd of all
/// those integer contents.
pub fn ndnr(d_prime: &BigInt, n: u32, r: u32) -> Result<BigInt, HypergeomError> {
    if d_prime.is_zero() {
        return Err(HypergeomError::InvalidParameters(
            "d′ must be non-zero".into(),
        ));
    }
    let d = dnr(n, r)?;
    let mut gcd_acc = BigInt::zero();
    for m in admissible_ms(n) {
        let coeffs = xpoly_coeffs(m, n, r)?;
        // binomial expansion of Σ_i c_i (1 − √d′ x)^i, collected per power of x
        for j in 0..=r {
            let mut a_j = BigRational::zero();
            let mut binom = BigInt::one(); // C(i, j) as i runs from j upward
            for i in j..=r {
                if i > j {
                    // C(i, j) = C(i-1, j) · i / (i - j)
                    binom = binom * BigInt::from(i) / BigInt::from(i - j);
                }
                a_j += &coeffs[i as usize] * BigRational::from(binom.clone());
            }
            let a_j = a_j * BigRational::from(d.clone());
            assert!(a_j.denom().is_one(), "D_{{n,r}} must clear denominators");
            let content = a_j.numer() * num_traits::Pow::pow(d_prime, j / 2);
            gcd_acc = gcd_acc.gcd(&content);
        }
    }
    Ok(gcd_acc)
}

/// `(𝒩_{d′,n})²` — squared so that the half-integral exponent in
/// `p^{min(v_p(d′)/2, v_p(n)+1/(p−1))}` stays rational. Only `n = 4` is
/// supported, where `𝒩² = 2^{min(v₂(d′), 6)}`.
pub fn script_n_squared(d_prime: &BigInt, n: u32) -> Result<BigRational, HypergeomError> {
    if n != 4 {
        return Err(HypergeomError::InvalidParameters(format!(
            "only n = 4 is supported, got {n}"
        )));
    }
    if d_prime.is_zero() {
        return Err(HypergeomError::InvalidParameters(
            "d′ must be non-zero".into(),
        ));
    }
    let v2 = d_prime.trailing_zeros().unwrap_or(0).min(6);
    Ok(BigRational::from(BigInt::one() << v2))
}

/// The factor `g = g₁√(g₂/g₃)` attached to `(u₁, u₂, t′)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFactor {
    pub g1: BigInt,
    pub g2: BigInt,
    pub g3: BigInt,
}

impl GFactor {
    /// `g² = g₁²·g₂/g₃`, exact.
    pub fn g_squared(&self) -> BigRational {
        BigRational::new(&self.g1 * &self.g1 * &self.g2, self.g3.clone())
    }
}

/// Computes `g₁ = gcd(u₁, u₂)`, `g₂ = gcd(u₁/g₁, t′)` and the three-case
/// `g₃ ∈ {1, 2, 4}`.
pub fn g_factor(u1: &BigInt, u2: &BigInt, t_prime: &BigInt) -> Result<GFactor, HypergeomError> {
    if u1.is_zero() || u2.is_zero() {
        return Err(HypergeomError::InvalidParameters(
            "u₁ and u₂ must be non-zero".into(),
        ));
    }
    if !t_prime.is_negative() {
        return Err(HypergeomError::InvalidParameters(format!(
            "t′ must be negative, got {t_prime}"
        )));
    }
    let g1 = u1.gcd(u2);
    let g2 = (u1 / &g1).gcd(t_prime);
    let diff_even = ((u1 - u2) / &g1).is_even();
    let t_mod4 = t_prime.mod_floor(&BigInt::from(4));
    let g3 = if t_mod4 == BigInt::one() && diff_even {
        BigInt::one()
    } else if t_mod4 == BigInt::from(3) && diff_even {
        BigInt::from(2)
    } else {
        BigInt::from(4)
    };
    Ok(GFactor { g1, g2, g3 })
}

/// `d′ = u₂²t′/g²`, always an integer.
pub fn d_prime(u1: &BigInt, u2: &BigInt, t_prime: &BigInt) -> Result<BigInt, HypergeomError> {
    let g = g_factor(u1, u2, t_prime)?;
    let num = u2 * u2 * t_prime * &g.g3;
    let den = &g.g1 * &g.g1 * &g.g2;
    let (q, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "u₂²t′/g² is an integer by construction");
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn xpoly_examples() {
        assert_eq!(xpoly_coeffs(1, 4, 0).unwrap(), vec![rat(1, 1)]);
        assert_eq!(xpoly_coeffs(3, 4, 0).unwrap(), vec![rat(1, 1)]);
        assert_eq!(xpoly_coeffs(1, 4, 1).unwrap(), vec![rat(1, 1), rat(5, 3)]);
        assert_eq!(xpoly_coeffs(3, 4, 1).unwrap(), vec![rat(1, 1), rat(7, 1)]);
        assert_eq!(
            xpoly_coeffs(1, 4, 2).unwrap(),
            vec![rat(1, 1), rat(6, 1), rat(15, 7)]
        );
        assert_eq!(
            xpoly_coeffs(3, 4, 2).unwrap(),
            vec![rat(1, 1), rat(22, 1), rat(77, 5)]
        );
        assert!(xpoly_coeffs(2, 4, 1).is_err());
        assert!(xpoly_coeffs(4, 4, 1).is_err());
    }

    #[test]
    fn dnr_examples() {
        assert_eq!(dnr(4, 0).unwrap(), BigInt::from(1));
        assert_eq!(dnr(4, 1).unwrap(), BigInt::from(3));
        assert_eq!(dnr(4, 2).unwrap(), BigInt::from(35));
    }

    #[test]
    fn ndnr_r0_is_one() {
        assert_eq!(ndnr(&BigInt::from(-7), 4, 0).unwrap(), BigInt::one());
        assert_eq!(ndnr(&BigInt::from(-1024), 4, 0).unwrap(), BigInt::one());
    }

    #[test]
    fn ndnr_r1_oracle_values() {
        // Frozen from the expansion oracle in tests/props.rs:
        // 3·X_{1,4,1}(1−√d′x) = 8 − 5√d′·x, 3·X_{3,4,1}(1−√d′x) = 24 − 21√d′·x,
        // so the gcd of contents over both m is gcd(8, 5, 24, 21) = 1.
        assert_eq!(ndnr(&BigInt::from(-16), 4, 1).unwrap(), BigInt::one());
        assert_eq!(ndnr(&BigInt::from(-1), 4, 1).unwrap(), BigInt::one());
    }

    #[test]
    fn script_n_examples() {
        let n2 = |d: i64| script_n_squared(&BigInt::from(d), 4).unwrap();
        assert_eq!(n2(-7), rat(1, 1));
        assert_eq!(n2(-16), rat(16, 1));
        assert_eq!(n2(-256), rat(64, 1));
    }

    #[test]
    fn g_factor_examples() {
        let g = |u1: i64, u2: i64, t: i64| {
            g_factor(&BigInt::from(u1), &BigInt::from(u2), &BigInt::from(t)).unwrap()
        };
        let case = g(6, 4, -1);
        assert_eq!(case.g3, BigInt::from(4));
        assert_eq!(case.g_squared(), rat(1, 1));

        let case = g(2, 2, -3);
        assert_eq!(case.g3, BigInt::from(1));
        assert_eq!(case.g_squared(), rat(4, 1));

        let case = g(2, 2, -1);
        assert_eq!(case.g3, BigInt::from(2));
        assert_eq!(case.g_squared(), rat(2, 1));
    }

    #[test]
    fn d_prime_integrality() {
        // d′ = u₂²t′/g²; for (2x, 2n, −1) sequence data this is 4N_α/g².
        assert_eq!(
            d_prime(&BigInt::from(2), &BigInt::from(2), &BigInt::from(-1)).unwrap(),
            BigInt::from(-2)
        );
        assert_eq!(
            d_prime(&BigInt::from(6), &BigInt::from(4), &BigInt::from(-1)).unwrap(),
            BigInt::from(-16)
        );
    }
}
