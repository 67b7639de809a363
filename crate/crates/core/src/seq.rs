//! The sequences `(x_k, y_k)` defined by `x_k + y_k√d = αε^{2k}` and the
//! odd-power-inclusive variant `x'_k + y'_k√d = αε^k`, where `α = a + b²√d`
//! and `ε = (t + u√d)/2` is a unit.
//!
//! When `t` and `u` are both odd the coordinates are genuine half-integers,
//! so everything is carried in doubled coordinates `(2x_k, 2y_k)`; those are
//! always integers.

use crate::arith::{is_perfect_square, perfect_square_root};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("all of a, b, d, t, u must be positive")]
    NonPositive,
    #[error("d = {0} is a perfect square")]
    SquareD(BigInt),
    #[error("t² − du² = {0}, so (t + u√d)/2 is not a unit")]
    NonUnit(BigInt),
}

/// A validated tuple `(a, b, d, t, u)` together with its derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceParams {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
    pub t: BigInt,
    pub u: BigInt,
    /// `N_α = a² − b⁴d`.
    pub n_alpha: BigInt,
    /// `N_ε = (t² − du²)/4 ∈ {+1, −1}`.
    pub n_eps: i8,
    /// `(t² + du²)/2 = Tr(ε²)`, the recurrence multiplier.
    pub recurrence_coeff: BigInt,
}

/// One sequence element in doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceElement {
    pub k: i64,
    /// `2x_k`
    pub x2: BigInt,
    /// `2y_k`
    pub y2: BigInt,
}

impl SequenceElement {
    /// `y_k` is an integer iff `2y_k` is even.
    pub fn y_is_integer(&self) -> bool {
        self.y2.is_even()
    }

    /// The root of `y_k` when `y_k` is an integer perfect square.
    pub fn y_square_root(&self) -> Option<BigInt> {
        if !self.y_is_integer() {
            return None;
        }
        perfect_square_root(&(&self.y2 >> 1))
    }

    /// `x_k` when it is an integer (it always is whenever `y_k` is).
    pub fn x_integer(&self) -> Option<BigInt> {
        if self.x2.is_even() {
            Some(&self.x2 >> 1)
        } else {
            None
        }
    }
}

/// Element `(p + q√d)/2` of the quadratic order, in doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
struct HalfElem {
    p: BigInt,
    q: BigInt,
}

impl HalfElem {
    fn mul(&self, other: &HalfElem, d: &BigInt) -> HalfElem {
        let p = &self.p * &other.p + d * &self.q * &other.q;
        let q = &self.p * &other.q + &self.q * &other.p;
        debug_assert!(p.is_even() && q.is_even());
        HalfElem {
            p: p >> 1,
            q: q >> 1,
        }
    }

    fn conj(&self) -> HalfElem {
        HalfElem {
            p: self.p.clone(),
            q: -&self.q,
        }
    }

    fn one() -> HalfElem {
        HalfElem {
            p: BigInt::from(2),
            q: BigInt::zero(),
        }
    }

    fn pow(&self, mut e: u64, d: &BigInt) -> HalfElem {
        let mut base = self.clone();
        let mut acc = HalfElem::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, d);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, d);
            }
        }
        acc
    }
}

/// Validates `(a, b, d, t, u)` and computes the derived fields.
pub fn validate_params(
    a: BigInt,
    b: BigInt,
    d: BigInt,
    t: BigInt,
    u: BigInt,
) -> Result<SequenceParams, ParamError> {
    if !(a.is_positive() && b.is_positive() && d.is_positive() && t.is_positive() && u.is_positive())
    {
        return Err(ParamError::NonPositive);
    }
    if d < BigInt::from(2) || is_perfect_square(&d) {
        return Err(ParamError::SquareD(d));
    }
    let unit_norm4 = &t * &t - &d * &u * &u;
    let n_eps = if unit_norm4 == BigInt::from(4) {
        1i8
    } else if unit_norm4 == BigInt::from(-4) {
        -1i8
    } else {
        return Err(ParamError::NonUnit(unit_norm4));
    };
    let b2 = &b * &b;
    let n_alpha = &a * &a - &b2 * &b2 * &d;
    let recurrence_coeff = (&t * &t + &d * &u * &u) >> 1;
    Ok(SequenceParams {
        a,
        b,
        d,
        t,
        u,
        n_alpha,
        n_eps,
        recurrence_coeff,
    })
}

impl SequenceParams {
    /// `|N_α|`.
    pub fn n_abs(&self) -> BigInt {
        self.n_alpha.abs()
    }

    /// The root of `−N_α` when the tuple is in the paper-case
    /// (`N_α < 0` with `−N_α` a perfect square).
    pub fn neg_norm_root(&self) -> Option<BigInt> {
        if self.n_alpha.is_negative() {
            perfect_square_root(&-&self.n_alpha)
        } else {
            None
        }
    }

    /// `α` as a doubled-coordinate ring element.
    fn alpha(&self) -> HalfElem {
        HalfElem {
            p: &self.a << 1,
            q: (&self.b * &self.b) << 1,
        }
    }

    /// `ε²` as a doubled-coordinate ring element: `(T + tu·√d)/2` with
    /// `T = (t² + du²)/2`.
    fn eps_sq(&self) -> HalfElem {
        HalfElem {
            p: self.recurrence_coeff.clone(),
            q: &self.t * &self.u,
        }
    }

    /// `ε` itself.
    fn eps(&self) -> HalfElem {
        HalfElem {
            p: self.t.clone(),
            q: self.u.clone(),
        }
    }

    /// Exact `(2x_k, 2y_k)` by binary powering. Negative `k` uses the
    /// conjugate of `ε²`, which is its inverse since `N(ε²) = 1`.
    pub fn element_at(&self, k: i64) -> SequenceElement {
        let base = if k >= 0 {
            self.eps_sq()
        } else {
            self.eps_sq().conj()
        };
        let w = base.pow(k.unsigned_abs(), &self.d);
        let res = self.alpha().mul(&w, &self.d);
        let elem = SequenceElement {
            k,
            x2: res.p,
            y2: res.q,
        };
        debug_assert!(self.check_norm(&elem));
        elem
    }

    /// Exact `(2x'_k, 2y'_k)` for the odd-power-inclusive sequence
    /// `x'_k + y'_k√d = αε^k`. For `k < 0`, `ε^{-1} = N_ε·σ(ε)`.
    pub fn element_prime_at(&self, k: i64) -> SequenceElement {
        let base = if k >= 0 {
            self.eps()
        } else {
            let c = self.eps().conj();
            if self.n_eps == 1 {
                c
            } else {
                HalfElem { p: -c.p, q: -c.q }
            }
        };
        let w = base.pow(k.unsigned_abs(), &self.d);
        let res = self.alpha().mul(&w, &self.d);
        SequenceElement {
            k,
            x2: res.p,
            y2: res.q,
        }
    }

    fn check_norm(&self, e: &SequenceElement) -> bool {
        let lhs = &e.x2 * &e.x2 - &self.d * &e.y2 * &e.y2;
        lhs == &self.n_alpha * 4
    }

    /// Iterator over consecutive elements starting at index `k0`, stepping by
    /// the recurrence (one multiply per step instead of a fresh powering).
    pub fn iter_from(&self, k0: i64) -> SequenceIter {
        SequenceIter {
            mult: self.recurrence_coeff.clone(),
            norm: 1,
            next_k: k0,
            prev: self.element_at(k0 - 1),
            cur: self.element_at(k0),
        }
    }

    /// Same for the `(x'_k, y'_k)` sequence. A step of `ε` obeys
    /// `v_{k+1} = t·v_k − N_ε·v_{k−1}`.
    pub fn iter_prime_from(&self, k0: i64) -> SequenceIter {
        SequenceIter {
            mult: self.t.clone(),
            norm: self.n_eps,
            next_k: k0,
            prev: self.element_prime_at(k0 - 1),
            cur: self.element_prime_at(k0),
        }
    }

    /// Iterator walking `k` downward from `k0` via the reversed recurrence.
    pub fn iter_down_from(&self, k0: i64) -> BackwardIter<'_> {
        BackwardIter {
            params: self,
            cur: self.element_at(k0),
            above: self.element_at(k0 + 1),
        }
    }

    /// The largest negative integer `K` with `y_K > b²`. Termination is
    /// guaranteed because the backward branch is eventually increasing; the
    /// descent is still capped as a guard against invariant violations.
    pub fn compute_k_index(&self) -> i64 {
        let b2_doubled = (&self.b * &self.b) << 1;
        let mut prev = self.element_at(0); // k = 0
        let mut cur = self.element_at(-1); // k = -1
        let mut k = -1i64;
        loop {
            if cur.y2 > b2_doubled {
                return k;
            }
            let next_y2 = &self.recurrence_coeff * &cur.y2 - &prev.y2;
            let next_x2 = &self.recurrence_coeff * &cur.x2 - &prev.x2;
            prev = cur;
            k -= 1;
            cur = SequenceElement {
                k,
                x2: next_x2,
                y2: next_y2,
            };
            assert!(
                k > -1_000_000,
                "compute_k_index: descent exceeded 10^6 steps for {:?}",
                self
            );
        }
    }

    /// All `k` in `[k_lo, k_hi]` where `y_k` (or `y'_k` with `prime` set) is
    /// an integer perfect square, with the square root. Half-integer values
    /// never qualify.
    pub fn scan_squares(&self, k_lo: i64, k_hi: i64, prime: bool) -> Vec<(i64, BigInt)> {
        assert!(k_lo <= k_hi);
        let iter = if prime {
            self.iter_prime_from(k_lo)
        } else {
            self.iter_from(k_lo)
        };
        let mut hits = Vec::new();
        for e in iter.take((k_hi - k_lo + 1) as usize) {
            if let Some(root) = e.y_square_root() {
                hits.push((e.k, root));
            }
        }
        hits
    }
}

/// Steps through consecutive elements via the two-term recurrence
/// `v_{k+1} = mult·v_k − norm·v_{k−1}`.
pub struct SequenceIter {
    mult: BigInt,
    norm: i8,
    next_k: i64,
    prev: SequenceElement,
    cur: SequenceElement,
}

impl Iterator for SequenceIter {
    type Item = SequenceElement;

    fn next(&mut self) -> Option<SequenceElement> {
        let out = self.cur.clone();
        let step = |c: &BigInt, p: &BigInt| {
            if self.norm == 1 {
                &self.mult * c - p
            } else {
                &self.mult * c + p
            }
        };
        let next = SequenceElement {
            k: self.next_k + 1,
            x2: step(&self.cur.x2, &self.prev.x2),
            y2: step(&self.cur.y2, &self.prev.y2),
        };
        self.prev = std::mem::replace(&mut self.cur, next);
        self.next_k += 1;
        Some(out)
    }
}

/// Steps `k` downward: `u_{k−1} = ((t² + du²)/2)·u_k − u_{k+1}`.
pub struct BackwardIter<'a> {
    params: &'a SequenceParams,
    cur: SequenceElement,
    above: SequenceElement,
}

impl Iterator for BackwardIter<'_> {
    type Item = SequenceElement;

    fn next(&mut self) -> Option<SequenceElement> {
        let out = self.cur.clone();
        let r = &self.params.recurrence_coeff;
        let below = SequenceElement {
            k: self.cur.k - 1,
            x2: r * &self.cur.x2 - &self.above.x2,
            y2: r * &self.cur.y2 - &self.above.y2,
        };
        self.above = std::mem::replace(&mut self.cur, below);
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

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
    fn validate_examples() {
        let p = params(42, 4, 7, 16, 6);
        assert_eq!(p.n_eps, 1);
        assert_eq!(p.n_alpha, BigInt::from(-28));

        let p = params(1, 1, 5, 1, 1);
        assert_eq!(p.n_eps, -1);
        assert_eq!(p.n_alpha, BigInt::from(-4));

        assert!(matches!(
            validate_params(
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(4),
                BigInt::from(4),
                BigInt::from(2)
            ),
            Err(ParamError::SquareD(_))
        ));
        assert!(matches!(
            validate_params(
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(5),
                BigInt::from(2),
                BigInt::from(1)
            ),
            Err(ParamError::NonUnit(_))
        ));
        assert!(matches!(
            validate_params(
                BigInt::from(0),
                BigInt::from(1),
                BigInt::from(5),
                BigInt::from(1),
                BigInt::from(1)
            ),
            Err(ParamError::NonPositive)
        ));
    }

    #[test]
    fn element_examples() {
        let p = params(42, 4, 7, 16, 6);
        let e0 = p.element_at(0);
        assert_eq!(e0.x2, BigInt::from(84)); // x₀ = a = 42
        assert_eq!(e0.y2, BigInt::from(32)); // y₀ = b² = 16
        let e1 = p.element_at(1);
        assert_eq!(e1.y2, BigInt::from(2 * 4048)); // y₁ = 4048
        let em1 = p.element_at(-1);
        assert_eq!(em1.y2, BigInt::from(32)); // y₋₁ = 16

        // y₁ = 85/2, a genuine half-integer
        let p = params(10, 5, 5, 1, 1);
        assert_eq!(p.element_at(1).y2, BigInt::from(85));
        assert!(!p.element_at(1).y_is_integer());
    }

    #[test]
    fn element_prime_examples() {
        let p = params(1, 1, 5, 1, 1);
        assert_eq!(p.element_prime_at(1).y2, BigInt::from(2)); // y′₁ = 1 (αε = 3+√5)
        assert_eq!(p.element_prime_at(1).x2, BigInt::from(6));
        assert_eq!(p.element_prime_at(3).y2, BigInt::from(6)); // y′₃ = 3 (αε³ = 7+3√5)
        assert_eq!(p.element_prime_at(0), p.element_at(0));
    }

    #[test]
    fn k_index_examples() {
        assert_eq!(params(42, 4, 7, 16, 6).compute_k_index(), -2);
        assert_eq!(params(1, 1, 5, 1, 1).compute_k_index(), -2);
        assert_eq!(params(8, 2, 5, 1, 1).compute_k_index(), -4);
    }

    #[test]
    fn scan_examples() {
        let p = params(1, 1, 5, 1, 1);
        let hits = p.scan_squares(-5, 5, false);
        assert_eq!(hits, vec![(-1, BigInt::one()), (0, BigInt::one())]);

        let p = params(1, 1, 2, 2, 2);
        let hits = p.scan_squares(0, 4, false);
        assert_eq!(hits, vec![(0, BigInt::one()), (3, BigInt::from(13))]);

        let p = params(42, 4, 7, 16, 6);
        assert!(p.scan_squares(1, 2, false).is_empty());
    }

    #[test]
    fn recurrence_matches_powering() {
        let p = params(8, 2, 5, 1, 1);
        for k0 in [-12i64, -3, 0, 5] {
            let mut iter = p.iter_from(k0);
            for k in k0..k0 + 8 {
                assert_eq!(iter.next().unwrap(), p.element_at(k));
            }
        }
        let mut iter = p.iter_prime_from(-6);
        for k in -6..6 {
            assert_eq!(iter.next().unwrap(), p.element_prime_at(k));
        }
    }

    #[test]
    fn prime_even_indices_match_base() {
        let p = params(10, 5, 5, 1, 1);
        for k in -8..=8i64 {
            let prime = p.element_prime_at(2 * k);
            let base = p.element_at(k);
            assert_eq!(prime.x2, base.x2);
            assert_eq!(prime.y2, base.y2);
        }
    }
}
