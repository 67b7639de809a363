//! Every closed-form threshold used by the search pipeline as an exact
//! predicate: the six-term square-exclusion maximum, the single consolidated
//! threshold, the gap principle, the four d-bounds that define the record
//! predicate, the five-term enumeration bound, and the admissible-b
//! classifier.
//!
//! Decimal constants are exact rationals and fractional exponents are
//! cleared by raising both sides to the lcm of the exponent denominators, so
//! every comparison is an integer comparison.

use crate::arith::{factorize, perfect_square_root, squarefree_core};
use crate::seq::SequenceParams;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Pow, Signed, Zero};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("missing value for symbol {0:?}")]
    MissingSymbol(Sym),
    #[error("symbol {0:?} must be positive")]
    NonPositiveValue(Sym),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Symbols a [`PowerTerm`] may reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sym {
    /// `b`
    B,
    /// `|N_α|`
    NAbs,
    /// `d`
    D,
    /// `u`
    U,
    /// `y`
    Y,
}

/// One monomial `coeff · ∏ sym^exp` with positive rational coefficient and
/// rational exponents (denominators at most 23, the largest that occurs).
#[derive(Debug, Clone)]
pub struct PowerTerm {
    coeff: BigRational,
    exps: Vec<(Sym, Ratio<i64>)>,
}

impl PowerTerm {
    pub fn new(coeff_num: i64, coeff_den: i64, exps: &[(Sym, i64, i64)]) -> PowerTerm {
        assert!(coeff_num > 0 && coeff_den > 0);
        let exps: Vec<(Sym, Ratio<i64>)> = exps
            .iter()
            .map(|&(s, n, d)| {
                assert!(d >= 1 && d <= 23, "exponent denominator out of range");
                (s, Ratio::new(n, d))
            })
            .collect();
        PowerTerm {
            coeff: BigRational::new(BigInt::from(coeff_num), BigInt::from(coeff_den)),
            exps,
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn exps(&self) -> &[(Sym, Ratio<i64>)] {
        &self.exps
    }
}

/// Values for the symbols appearing in a term. All values must be positive.
#[derive(Debug, Clone, Default)]
pub struct SymValues {
    vals: Vec<(Sym, BigInt)>,
}

impl SymValues {
    pub fn new() -> SymValues {
        SymValues::default()
    }

    pub fn with(mut self, sym: Sym, v: BigInt) -> SymValues {
        self.vals.retain(|(s, _)| *s != sym);
        self.vals.push((sym, v));
        self
    }

    /// `b`, `|N_α|`, `d`, `u` from a validated tuple.
    pub fn from_params(p: &SequenceParams) -> SymValues {
        SymValues::new()
            .with(Sym::B, p.b.clone())
            .with(Sym::NAbs, p.n_abs())
            .with(Sym::D, p.d.clone())
            .with(Sym::U, p.u.clone())
    }

    fn get(&self, sym: Sym) -> Result<&BigInt, BoundsError> {
        self.vals
            .iter()
            .find(|(s, _)| *s == sym)
            .map(|(_, v)| v)
            .ok_or(BoundsError::MissingSymbol(sym))
    }
}

/// Exact ordering of `lhs` against `coeff · ∏ sym^exp`: both sides are
/// raised to the lcm of the exponent denominators and cleared to integers.
/// A non-positive `lhs` is always `Less` (terms are positive).
pub fn compare_power(
    lhs: &BigRational,
    term: &PowerTerm,
    values: &SymValues,
) -> Result<Ordering, BoundsError> {
    if !lhs.is_positive() {
        return Ok(Ordering::Less);
    }
    let mut l = 1i64;
    for (_, e) in &term.exps {
        l = l.lcm(e.denom());
    }
    let lu = u32::try_from(l).expect("lcm of exponent denominators fits u32");

    // lhs^L · cd^L · ∏_{e<0} v^{|e|L}  vs  cn^L · ∏_{e>0} v^{eL} (den of lhs on the right)
    let mut left: BigInt = Pow::pow(lhs.numer(), lu) * Pow::pow(term.coeff.denom(), lu);
    let mut right: BigInt = Pow::pow(lhs.denom(), lu) * Pow::pow(term.coeff.numer(), lu);
    for (sym, e) in &term.exps {
        let v = values.get(*sym)?;
        if !v.is_positive() {
            return Err(BoundsError::NonPositiveValue(*sym));
        }
        let p = e.numer() * l / e.denom();
        match p.cmp(&0) {
            Ordering::Greater => right *= Pow::pow(v, u32::try_from(p).unwrap()),
            Ordering::Less => left *= Pow::pow(v, u32::try_from(-p).unwrap()),
            Ordering::Equal => {}
        }
    }
    Ok(left.cmp(&right))
}

/// The six terms whose maximum a square `y_k` (with `k ≥ 1` or `k ≤ K`) must
/// exceed; symbols `b`, `|N_α|`, `d`.
pub fn prop41_terms() -> Vec<PowerTerm> {
    use Sym::{NAbs as N, B, D};
    vec![
        // 16.33 b² |N|² / √d — almost always the binding term, so it is
        // listed first and checked first.
        PowerTerm::new(1633, 100, &[(B, 2, 1), (N, 2, 1), (D, -1, 2)]),
        // 0.19 b^{26/11} |N|^{13/11} / d^{12/11}
        PowerTerm::new(19, 100, &[(B, 26, 11), (N, 13, 11), (D, -12, 11)]),
        // b^{8/3} |N|^{7/6} / (10 d^{7/6})
        PowerTerm::new(1, 10, &[(B, 8, 3), (N, 7, 6), (D, -7, 6)]),
        // 14.8 b^{4/3} |N|^{5/3} / √d
        PowerTerm::new(74, 5, &[(B, 4, 3), (N, 5, 3), (D, -1, 2)]),
        // 4 |N| / √d
        PowerTerm::new(4, 1, &[(N, 1, 1), (D, -1, 2)]),
        // b² |N| / d
        PowerTerm::new(1, 1, &[(B, 2, 1), (N, 1, 1), (D, -1, 1)]),
    ]
}

/// The consolidated threshold `16.33 b^{8/3} |N_α|² / √d`.
pub fn thm12_term() -> PowerTerm {
    use Sym::{NAbs as N, B, D};
    PowerTerm::new(1633, 100, &[(B, 8, 3), (N, 2, 1), (D, -1, 2)])
}

fn y_rational(y2: &BigInt) -> BigRational {
    BigRational::new(y2.clone(), BigInt::from(2))
}

/// Whether `y` (supplied doubled) strictly exceeds all six terms.
pub fn prop41_exceeds(y2: &BigInt, params: &SequenceParams) -> bool {
    if !y2.is_positive() {
        return false;
    }
    let vals = SymValues::from_params(params);
    let y = y_rational(y2);
    prop41_terms()
        .iter()
        .all(|t| compare_power(&y, t, &vals).expect("params provide all symbols") == Ordering::Greater)
}

/// Whether `y` (supplied doubled) strictly exceeds the consolidated
/// threshold.
pub fn thm12_threshold_exceeds(y2: &BigInt, params: &SequenceParams) -> bool {
    if !y2.is_positive() {
        return false;
    }
    let vals = SymValues::from_params(params);
    compare_power(&y_rational(y2), &thm12_term(), &vals).expect("params provide all symbols")
        == Ordering::Greater
}

/// Gap principle: ordered distinct squares `y_i < y_j` (indices ≠ 0, both
/// above the hypothesis floor) satisfy `y_j > 57.32 d² y_i³ / (b⁴ N_α²)`.
/// Inputs are doubled; returns false unless `y_j > y_i`.
pub fn gap_holds(y2_i: &BigInt, y2_j: &BigInt, params: &SequenceParams) -> bool {
    if y2_j <= y2_i {
        return false;
    }
    // y_j > (1433/25)·d²·y_i³/(b⁴N²), cleared of halves:
    // 100·(2y_j)·b⁴·N² > 1433·d²·(2y_i)³
    let b4 = Pow::pow(&params.b, 4u32);
    let n2 = Pow::pow(&params.n_alpha, 2u32);
    let d2 = Pow::pow(&params.d, 2u32);
    let lhs = BigInt::from(100) * y2_j * b4 * n2;
    let rhs = BigInt::from(1433) * d2 * Pow::pow(y2_i, 3u32);
    lhs > rhs
}

/// The hypothesis floor of the gap principle:
/// `y ≥ max(4√(|N_α|/d), b²|N_α|/d)`, with `y` doubled. Exact.
pub fn gap_hypothesis_met(y2: &BigInt, params: &SequenceParams) -> bool {
    if !y2.is_positive() {
        return false;
    }
    let n = params.n_abs();
    // y ≥ 4√(N/d) ⟺ y²d ≥ 16N ⟺ (2y)²·d ≥ 64·N
    let sqrt_ok = y2 * y2 * &params.d >= BigInt::from(64) * &n;
    // y ≥ b²N/d ⟺ (2y)·d ≥ 2b²N
    let lin_ok = y2 * &params.d >= BigInt::from(2) * &params.b * &params.b * n;
    sqrt_ok && lin_ok
}

/// The four d-lower-bounds whose conjunction (with the `12b²/u²`
/// prerequisite) excludes a tuple from explicit checking; symbols
/// `|N_α|`, `b`, `u`, compared against `d`.
pub fn step_d_terms() -> Vec<PowerTerm> {
    use Sym::{NAbs as N, B, U};
    vec![
        // 0.882 |N|^{2/23} b^{48/23} / u^{44/23}
        PowerTerm::new(441, 500, &[(N, 2, 23), (B, 48, 23), (U, -44, 23)]),
        // 0.66 |N|^{1/13} b^{28/13} / u^{24/13}
        PowerTerm::new(33, 50, &[(N, 1, 13), (B, 28, 13), (U, -24, 13)]),
        // 15.3 |N|^{4/11} b^{20/11} / u^{24/11}
        PowerTerm::new(153, 10, &[(N, 4, 11), (B, 20, 11), (U, -24, 11)]),
        // 17 b² |N|^{1/2} / u²
        PowerTerm::new(17, 1, &[(B, 2, 1), (N, 1, 2), (U, -2, 1)]),
    ]
}

/// For each step bound, whether `d` strictly exceeds it. Requires
/// `N_α < 0`.
pub fn step_d_bounds(params: &SequenceParams) -> Result<[bool; 4], BoundsError> {
    if !params.n_alpha.is_negative() {
        return Err(BoundsError::Precondition("N_α must be negative".into()));
    }
    Ok(step_d_bounds_values(
        &params.d,
        &params.u,
        &params.b,
        &params.n_abs(),
    ))
}

/// Same, from raw values.
pub fn step_d_bounds_values(d: &BigInt, u: &BigInt, b: &BigInt, n_abs: &BigInt) -> [bool; 4] {
    let vals = SymValues::new()
        .with(Sym::B, b.clone())
        .with(Sym::U, u.clone())
        .with(Sym::NAbs, n_abs.clone());
    let d_rat = BigRational::from(d.clone());
    let mut out = [false; 4];
    for (i, t) in step_d_terms().iter().enumerate() {
        out[i] = compare_power(&d_rat, t, &vals).expect("all symbols supplied") == Ordering::Greater;
    }
    out
}

/// The five terms of the enumeration bound `D_{b,u}`; symbols `b`, `u`.
pub fn enum_bound_terms() -> Vec<PowerTerm> {
    use Sym::{B, U};
    vec![
        // 12 b² / u²
        PowerTerm::new(12, 1, &[(B, 2, 1), (U, -2, 1)]),
        // 0.88 b^{8/3} / u^{44/21}
        PowerTerm::new(22, 25, &[(B, 8, 3), (U, -44, 21)]),
        // 0.64 b^{8/3} / u²
        PowerTerm::new(16, 25, &[(B, 8, 3), (U, -2, 1)]),
        // 60 b^{36/7} / u^{24/7}
        PowerTerm::new(60, 1, &[(B, 36, 7), (U, -24, 7)]),
        // 85 b⁸ / u⁴
        PowerTerm::new(85, 1, &[(B, 8, 1), (U, -4, 1)]),
    ]
}

/// The enumeration bound `D_{b,u}`: which term dominates and the largest
/// integer `d` with `d ≤ D_{b,u}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBound {
    pub dominant: usize,
    pub cap: BigInt,
}

/// Largest integer at most `coeff · ∏ sym^exp` (exact, via integer roots).
pub fn floor_power(term: &PowerTerm, values: &SymValues) -> Result<BigInt, BoundsError> {
    let mut l = 1i64;
    for (_, e) in &term.exps {
        l = l.lcm(e.denom());
    }
    let lu = u32::try_from(l).unwrap();
    // d ≤ term ⟺ d^L · Y ≤ X with X/Y = term^L cleared to integers
    let mut x: BigInt = Pow::pow(term.coeff.numer(), lu);
    let mut y: BigInt = Pow::pow(term.coeff.denom(), lu);
    for (sym, e) in &term.exps {
        let v = values.get(*sym)?;
        if !v.is_positive() {
            return Err(BoundsError::NonPositiveValue(*sym));
        }
        let p = e.numer() * l / e.denom();
        match p.cmp(&0) {
            Ordering::Greater => x *= Pow::pow(v, u32::try_from(p).unwrap()),
            Ordering::Less => y *= Pow::pow(v, u32::try_from(-p).unwrap()),
            Ordering::Equal => {}
        }
    }
    let q = x.div_floor(&y);
    if !q.is_positive() {
        return Ok(BigInt::zero());
    }
    Ok(q.nth_root(lu))
}

/// Exact `D_{b,u}` evaluation.
pub fn search_enum_bound(b: &BigInt, u: &BigInt) -> EnumBound {
    let vals = SymValues::new().with(Sym::B, b.clone()).with(Sym::U, u.clone());
    let terms = enum_bound_terms();
    // Dominant term by exact pairwise comparison: t_i vs t_j reduces to
    // comparing 1 against t_j/t_i, itself a power term.
    let mut dominant = 0usize;
    for i in 1..terms.len() {
        if term_less(&terms[dominant], &terms[i], &vals) {
            dominant = i;
        }
    }
    let cap = floor_power(&terms[dominant], &vals).expect("symbols supplied");
    EnumBound { dominant, cap }
}

/// Exact `t1 < t2` on power terms over the same symbols.
fn term_less(t1: &PowerTerm, t2: &PowerTerm, values: &SymValues) -> bool {
    // t1 < t2 ⟺ 1 < t2/t1
    let ratio_coeff = &t2.coeff / &t1.coeff;
    let mut exps: Vec<(Sym, Ratio<i64>)> = t2.exps.clone();
    for (sym, e) in &t1.exps {
        if let Some(slot) = exps.iter_mut().find(|(s, _)| s == sym) {
            slot.1 -= e;
        } else {
            exps.push((*sym, -e));
        }
    }
    // Positive coefficient by construction; reuse compare_power with lhs 1.
    let term = PowerTerm {
        coeff: ratio_coeff,
        exps,
    };
    compare_power(&BigRational::one(), &term, values).expect("symbols supplied") == Ordering::Less
}

/// Whether every enumeration-bound term is strictly below `threshold`.
pub fn enum_bound_below(b: &BigInt, u: &BigInt, threshold: &BigRational) -> bool {
    let vals = SymValues::new().with(Sym::B, b.clone()).with(Sym::U, u.clone());
    enum_bound_terms()
        .iter()
        .all(|t| compare_power(threshold, t, &vals).expect("symbols supplied") == Ordering::Greater)
}

/// Whether `b = b₁·b₂` with `b₁ ∈ {1, 5, 13, 17}` and `b₂` free of prime
/// factors `≡ 1 (mod 4)`.
pub fn admissible_b(b: &BigInt) -> bool {
    if !b.is_positive() {
        return false;
    }
    for b1 in [1u32, 5, 13, 17] {
        let b1 = BigInt::from(b1);
        if !(b % &b1).is_zero() {
            continue;
        }
        let b2 = b / &b1;
        let ok = factorize(&b2)
            .expect("positive")
            .iter()
            .all(|(p, _)| (p % BigInt::from(4)) != BigInt::one());
        if ok {
            return true;
        }
    }
    false
}

/// Assertion checker: under the hypotheses `gcd(a, b²)` squarefree and
/// `db⁴ − a²` a positive square, every prime divisor of `b` is `≡ 1 (mod 4)`.
/// Reports hypothesis violations distinctly.
pub fn lemma36_all_divisors_1mod4(
    a: &BigInt,
    b: &BigInt,
    d: &BigInt,
) -> Result<bool, BoundsError> {
    if !(a.is_positive() && b.is_positive() && d.is_positive()) {
        return Err(BoundsError::Precondition("a, b, d must be positive".into()));
    }
    let g = a.gcd(&(b * b));
    if squarefree_core(&g).expect("positive gcd") != g {
        return Err(BoundsError::Precondition(format!(
            "gcd(a, b²) = {g} is not squarefree"
        )));
    }
    let n2 = d * Pow::pow(b, 4u32) - a * a;
    match perfect_square_root(&n2) {
        Some(n) if n.is_positive() => {}
        _ => {
            return Err(BoundsError::Precondition(format!(
                "db⁴ − a² = {n2} is not a positive square"
            )))
        }
    }
    Ok(factorize(b)
        .expect("positive")
        .iter()
        .all(|(p, _)| (p % BigInt::from(4)) == BigInt::one()))
}
