//! Exact integer and rational primitives shared by every other module.
//!
//! Everything here is arbitrary precision and rounding-free. Factorisation
//! is trial division below 10⁶ with a Pollard-Brent rho fallback; all inputs
//! produced by the search are far below the range where that matters.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("negative input: {0}")]
    Negative(BigInt),
    #[error("zero input rejected")]
    Zero,
    #[error("input must be positive: {0}")]
    NonPositive(BigInt),
    #[error("{0} is not prime")]
    NotPrime(BigInt),
}

/// Floor square root of a non-negative integer: the unique `r` with
/// `r² ≤ n < (r+1)²`.
pub fn isqrt(n: &BigInt) -> Result<BigInt, ArithError> {
    if n.is_negative() {
        return Err(ArithError::Negative(n.clone()));
    }
    Ok(n.sqrt())
}

/// Returns `Some(m)` with `m² = n`, `m ≥ 0`, when `n` is a perfect square.
pub fn perfect_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    perfect_square_root(n).is_some()
}

/// The unique squarefree integer `c` with `n/c` a positive square.
/// Keeps the sign of `n`; `core(1) = 1`.
pub fn squarefree_core(n: &BigInt) -> Result<BigInt, ArithError> {
    if n.is_zero() {
        return Err(ArithError::Zero);
    }
    let mut core = BigInt::one();
    for (p, e) in factorize(&n.abs())? {
        if e % 2 == 1 {
            core *= p;
        }
    }
    if n.is_negative() {
        core = -core;
    }
    Ok(core)
}

/// Largest power of the prime `p` dividing the non-zero rational `x`
/// (negative when `p` divides the denominator).
pub fn padic_valuation(p: &BigInt, x: &BigRational) -> Result<i64, ArithError> {
    if x.is_zero() {
        return Err(ArithError::Zero);
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p.clone()));
    }
    Ok(int_valuation(p, x.numer()) - int_valuation(p, x.denom()))
}

fn int_valuation(p: &BigInt, n: &BigInt) -> i64 {
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        n = q;
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Complete prime factorisation of `n ≥ 1`, primes ascending.
pub fn factorize(n: &BigInt) -> Result<Vec<(BigInt, u32)>, ArithError> {
    if !n.is_positive() {
        return Err(ArithError::NonPositive(n.clone()));
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();

    let strip = |p: u64, rest: &mut BigInt, factors: &mut Vec<(BigInt, u32)>| {
        let pb = BigInt::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            e += 1;
            *rest = q;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    };

    strip(2, &mut rest, &mut factors);
    strip(3, &mut rest, &mut factors);
    let mut p = 5u64;
    while p <= TRIAL_LIMIT {
        if let Some(r64) = rest.to_u64() {
            // Small enough that any remaining factor above p must be prime
            // once p² exceeds it.
            if p.saturating_mul(p) > r64 {
                break;
            }
        }
        strip(p, &mut rest, &mut factors);
        strip(p + 2, &mut rest, &mut factors);
        p += 6;
    }

    if !rest.is_one() {
        let mut big: Vec<BigInt> = Vec::new();
        split_into_primes(rest, &mut big);
        big.sort();
        let mut i = 0;
        while i < big.len() {
            let mut e = 1u32;
            while i + 1 < big.len() && big[i + 1] == big[i] {
                e += 1;
                i += 1;
            }
            factors.push((big[i].clone(), e));
            i += 1;
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(factors)
}

fn split_into_primes(n: BigInt, out: &mut Vec<BigInt>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    if let Some(r) = perfect_square_root(&n) {
        split_into_primes(r.clone(), out);
        split_into_primes(r, out);
        return;
    }
    let d = pollard_rho(&n);
    split_into_primes(n / &d, out);
    split_into_primes(d, out);
}

/// Pollard-Brent rho; caller guarantees `n` odd, composite and not a prime
/// power that trial division would have caught.
fn pollard_rho(n: &BigInt) -> BigInt {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let mut x = BigInt::from(2);
        let mut y = BigInt::from(2);
        let mut d = BigInt::one();
        let f = |v: &BigInt| (v * v + &c) % n;
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += &one;
    }
}

/// Deterministic Miller-Rabin below 3.3·10²⁴ (standard witness set),
/// probabilistic with the same witnesses above that. Far beyond anything the
/// search feeds it.
pub fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let sb = BigInt::from(small);
        if n == &sb {
            return true;
        }
        if (n % &sb).is_zero() {
            return false;
        }
    }
    let n_minus_1: BigInt = n - BigInt::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn big(n: i64) -> BigInt {
        BigInt::from_i64(n).unwrap()
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&big(0)).unwrap(), big(0));
        assert_eq!(isqrt(&big(16)).unwrap(), big(4));
        // 5762² = 33,200,644 ≤ 33,203,125 < 5763²
        assert_eq!(isqrt(&big(33_203_125)).unwrap(), big(5762));
        assert!(matches!(isqrt(&big(-1)), Err(ArithError::Negative(_))));
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(perfect_square_root(&big(390_625)), Some(big(625)));
        assert_eq!(perfect_square_root(&big(28)), None);
        assert_eq!(perfect_square_root(&big(0)), Some(big(0)));
        assert!(!is_perfect_square(&big(-4)));
    }

    #[test]
    fn squarefree_core_examples() {
        assert_eq!(squarefree_core(&big(1)).unwrap(), big(1));
        assert_eq!(squarefree_core(&big(-28)).unwrap(), big(-7));
        assert_eq!(squarefree_core(&big(50)).unwrap(), big(2));
        assert!(matches!(squarefree_core(&big(0)), Err(ArithError::Zero)));
    }

    #[test]
    fn padic_examples() {
        let r = |n: i64, d: i64| BigRational::new(big(n), big(d));
        assert_eq!(padic_valuation(&big(2), &r(48, 1)).unwrap(), 4);
        assert_eq!(padic_valuation(&big(3), &r(54, 1)).unwrap(), 3);
        assert_eq!(padic_valuation(&big(2), &r(5, 8)).unwrap(), -3);
        assert!(matches!(
            padic_valuation(&big(4), &r(3, 1)),
            Err(ArithError::NotPrime(_))
        ));
        assert!(matches!(
            padic_valuation(&big(2), &r(0, 1)),
            Err(ArithError::Zero)
        ));
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(&big(1)).unwrap(), vec![]);
        assert_eq!(
            factorize(&big(24)).unwrap(),
            vec![(big(2), 3), (big(3), 1)]
        );
        // 3025 = 55²
        assert_eq!(
            factorize(&big(3025)).unwrap(),
            vec![(big(5), 2), (big(11), 2)]
        );
        assert!(matches!(
            factorize(&big(0)),
            Err(ArithError::NonPositive(_))
        ));
    }

    #[test]
    fn factorize_past_trial_limit() {
        // 1,000,003 and 1,000,033 are primes above the trial-division bound.
        let n = big(1_000_003) * big(1_000_033);
        let f = factorize(&n).unwrap();
        assert_eq!(f, vec![(big(1_000_003), 1), (big(1_000_033), 1)]);
        let sq = big(1_000_003) * big(1_000_003);
        assert_eq!(factorize(&sq).unwrap(), vec![(big(1_000_003), 2)]);
    }

    #[test]
    fn primality_spot_checks() {
        assert!(is_prime(&big(2)));
        assert!(is_prime(&big(1_000_003)));
        assert!(!is_prime(&big(1)));
        assert!(!is_prime(&(big(1_000_003) * big(1_000_003))));
        // Carmichael number
        assert!(!is_prime(&big(561)));
    }
}
