//! Empirical census of distinct integer squares in `(y_k)` or `(y'_k)` over
//! an index window, binned by the arithmetic of `N_α`, with the
//! conjectured per-class limits evaluated.

use crate::arith::{factorize, is_perfect_square, squarefree_core};
use crate::seq::SequenceParams;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("window [{k_lo}, {k_hi}] is invalid or exceeds the |k| ≤ 10⁴ guard")]
    Window { k_lo: i64, k_hi: i64 },
}

/// Classification of `|N_α|` mirroring the conjectures' three clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormClass {
    /// `|N_α|` is a perfect square.
    SquareNorm,
    /// `core(|N_α|)` divides `2p` for an odd prime `p`.
    TwoPNorm,
    General,
}

/// One distinct square value with every index it occurs at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareOccurrence {
    pub value: BigInt,
    pub root: BigInt,
    pub indices: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct SquareCensus {
    pub k_lo: i64,
    pub k_hi: i64,
    pub prime_sequence: bool,
    pub distinct: Vec<SquareOccurrence>,
    pub class: NormClass,
    /// The conjectured maximum for this sequence kind and norm class.
    pub limit: usize,
    pub within_limit: bool,
    /// Distinct values occurring at an even / odd index (a value can count
    /// towards both).
    pub even_index_values: usize,
    pub odd_index_values: usize,
}

impl SquareCensus {
    pub fn distinct_count(&self) -> usize {
        self.distinct.len()
    }
}

pub fn classify_norm(n_alpha: &BigInt) -> NormClass {
    let n_abs = n_alpha.abs();
    if is_perfect_square(&n_abs) {
        return NormClass::SquareNorm;
    }
    let core = squarefree_core(&n_abs).expect("|N_α| > 0");
    let odd_part = if core.is_even() {
        core.clone() / BigInt::from(2)
    } else {
        core.clone()
    };
    // core ∈ {2, p, 2p} for odd prime p (core = 1 is the square case above)
    if odd_part.is_one() || crate::arith::is_prime(&odd_part) {
        NormClass::TwoPNorm
    } else {
        NormClass::General
    }
}

fn is_prime_power(n: &BigInt) -> bool {
    n > &BigInt::one() && factorize(n).expect("positive").len() == 1
}

fn conjectured_limit(params: &SequenceParams, prime_sequence: bool, class: NormClass) -> usize {
    if prime_sequence {
        let n_abs = params.n_abs();
        if is_prime_power(&n_abs) || is_perfect_square(&n_abs) {
            3
        } else {
            4
        }
    } else {
        match class {
            NormClass::SquareNorm => 2,
            NormClass::TwoPNorm => 3,
            NormClass::General => 4,
        }
    }
}

const WINDOW_GUARD: i64 = 10_000;

/// Counts distinct integer squares (by value, not index) among `y_k` (or
/// `y'_k`) for `k ∈ [k_lo, k_hi]`.
pub fn square_census(
    params: &SequenceParams,
    k_lo: i64,
    k_hi: i64,
    prime_sequence: bool,
) -> Result<SquareCensus, CensusError> {
    if k_lo > k_hi || k_lo.abs() > WINDOW_GUARD || k_hi.abs() > WINDOW_GUARD {
        return Err(CensusError::Window { k_lo, k_hi });
    }
    let mut distinct: Vec<SquareOccurrence> = Vec::new();
    let iter = if prime_sequence {
        params.iter_prime_from(k_lo)
    } else {
        params.iter_from(k_lo)
    };
    for e in iter.take((k_hi - k_lo + 1) as usize) {
        if let Some(root) = e.y_square_root() {
            let value = &root * &root;
            match distinct.iter_mut().find(|occ| occ.value == value) {
                Some(occ) => occ.indices.push(e.k),
                None => distinct.push(SquareOccurrence {
                    value,
                    root,
                    indices: vec![e.k],
                }),
            }
        }
    }
    distinct.sort_by(|x, y| x.value.cmp(&y.value));

    let class = classify_norm(&params.n_alpha);
    let limit = conjectured_limit(params, prime_sequence, class);
    let even_index_values = distinct
        .iter()
        .filter(|occ| occ.indices.iter().any(|k| k % 2 == 0))
        .count();
    let odd_index_values = distinct
        .iter()
        .filter(|occ| occ.indices.iter().any(|k| k % 2 != 0))
        .count();
    let within_limit = distinct.len() <= limit;
    Ok(SquareCensus {
        k_lo,
        k_hi,
        prime_sequence,
        distinct,
        class,
        limit,
        within_limit,
        even_index_values,
        odd_index_values,
    })
}

/// JSONL form of a census, one object per line.
pub fn census_jsonl(params: &SequenceParams, census: &SquareCensus) -> String {
    let squares: Vec<String> = census
        .distinct
        .iter()
        .map(|occ| {
            let idx: Vec<String> = occ.indices.iter().map(|k| k.to_string()).collect();
            format!(
                "{{\"value\":\"{}\",\"root\":\"{}\",\"indices\":[{}]}}",
                occ.value,
                occ.root,
                idx.join(",")
            )
        })
        .collect();
    format!(
        "{{\"a\":\"{}\",\"b\":\"{}\",\"d\":\"{}\",\"t\":\"{}\",\"u\":\"{}\",\"n_alpha\":\"{}\",\
         \"window\":[{},{}],\"prime\":{},\"class\":\"{}\",\"limit\":{},\"distinct\":[{}],\
         \"within_limit\":{}}}",
        params.a,
        params.b,
        params.d,
        params.t,
        params.u,
        params.n_alpha,
        census.k_lo,
        census.k_hi,
        census.prime_sequence,
        match census.class {
            NormClass::SquareNorm => "square-norm",
            NormClass::TwoPNorm => "2p-norm",
            NormClass::General => "general",
        },
        census.limit,
        squares.join(","),
        census.within_limit
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PalindromeReport {
    /// `y_{−k} = y_{k−1}` for all `1 ≤ k ≤ k_max`.
    pub holds: bool,
    /// Whether `α/σ(α)` is a unit: `α²/N_α` has doubled-integer
    /// coordinates, i.e. `N_α | 2(a² + b⁴d)` and `N_α | 4ab²`.
    pub alpha_ratio_is_unit: bool,
}

pub fn palindrome_check(params: &SequenceParams, k_max: i64) -> PalindromeReport {
    assert!(k_max >= 1);
    let mut holds = true;
    // Walk y_{−1}, y_{−2}, … and y_0, y_1, … in lock step.
    let mut forward = params.iter_from(0);
    let mut backward = params.iter_down_from(-1);
    for _ in 1..=k_max {
        let fwd = forward.next().expect("infinite");
        let back = backward.next().expect("infinite");
        if fwd.y2 != back.y2 {
            holds = false;
            break;
        }
    }

    let b2 = &params.b * &params.b;
    let p_num = BigInt::from(2) * (&params.a * &params.a + &b2 * &b2 * &params.d);
    let q_num = BigInt::from(4) * &params.a * &b2;
    let alpha_ratio_is_unit =
        (p_num % &params.n_alpha).is_zero() && (q_num % &params.n_alpha).is_zero();

    PalindromeReport {
        holds,
        alpha_ratio_is_unit,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::validate_params;

    fn params(a: i64, b: i64, d: i64, t: i64, u: i64) -> SequenceParams {
        validate_params(
            BigInt::from(a),
            BigInt::from(b),
            BigInt::from(d),
            BigInt::from(t),
            BigInt::from(u),
        )
        .unwrap()
    }

    #[test]
    fn census_examples() {
        // (1,1,5,1,1): odd-indexed Fibonacci numbers; only square value is 1
        let p = params(1, 1, 5, 1, 1);
        let c = square_census(&p, -20, 20, false).unwrap();
        assert_eq!(c.distinct_count(), 1);
        assert_eq!(c.distinct[0].value, BigInt::one());
        assert_eq!(c.class, NormClass::SquareNorm); // |N_α| = 4
        assert_eq!(c.limit, 2);
        assert!(c.within_limit);

        // (1,1,2,2,2): squares 1 and 169
        let p = params(1, 1, 2, 2, 2);
        let c = square_census(&p, -10, 10, false).unwrap();
        let values: Vec<i64> = c
            .distinct
            .iter()
            .map(|o| i64::try_from(&o.value).unwrap())
            .collect();
        assert_eq!(values, vec![1, 169]);
        assert_eq!(c.class, NormClass::SquareNorm); // |N_α| = 1
        assert!(c.within_limit);

        // (10,5,5,1,1): only y₀ = 25; neighbours are half-integers or
        // non-squares
        let p = params(10, 5, 5, 1, 1);
        let c = square_census(&p, -10, 10, false).unwrap();
        assert_eq!(c.distinct_count(), 1);
        assert_eq!(c.distinct[0].value, BigInt::from(25));
    }

    #[test]
    fn window_guard() {
        let p = params(1, 1, 5, 1, 1);
        assert!(matches!(
            square_census(&p, -20_000, 0, false),
            Err(CensusError::Window { .. })
        ));
        assert!(matches!(
            square_census(&p, 5, 4, false),
            Err(CensusError::Window { .. })
        ));
    }

    #[test]
    fn prime_census_even_indices_match_base() {
        let p = params(1, 1, 2, 2, 2);
        let base = square_census(&p, -5, 5, false).unwrap();
        let prime = square_census(&p, -10, 10, true).unwrap();
        let even_values: Vec<&BigInt> = prime
            .distinct
            .iter()
            .filter(|o| o.indices.iter().any(|k| k % 2 == 0))
            .map(|o| &o.value)
            .collect();
        let base_values: Vec<&BigInt> = base.distinct.iter().map(|o| &o.value).collect();
        assert_eq!(even_values, base_values);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_norm(&BigInt::from(-4)), NormClass::SquareNorm);
        assert_eq!(classify_norm(&BigInt::from(-28)), NormClass::TwoPNorm); // core 7
        assert_eq!(classify_norm(&BigInt::from(-6)), NormClass::TwoPNorm); // core 6 = 2·3
        assert_eq!(classify_norm(&BigInt::from(-2)), NormClass::TwoPNorm);
        assert_eq!(classify_norm(&BigInt::from(-15)), NormClass::General); // core 15
    }

    #[test]
    fn palindrome_examples() {
        let rep = palindrome_check(&params(42, 4, 7, 16, 6), 50);
        assert!(rep.holds);
        assert!(rep.alpha_ratio_is_unit);

        let rep = palindrome_check(&params(1, 1, 2, 2, 2), 20);
        assert!(rep.holds);

        let rep = palindrome_check(&params(8, 2, 5, 1, 1), 5);
        assert!(!rep.holds);
    }
}
