//! Construction of the approximant triples `(p_r, q_r, R_r)` for
//! `ω = u/σ(u)`, plus the `(Q, E, ℓ₀, k₀)` context and the
//! irrationality-measure calculator.
//!
//! `p_r` and `q_r` are carried in two forms: the exact `ℚ(√t′)` parts
//! `σ(u)^r·X(ω)` and `σ(u)^r·Y(ω)` (conjugates of one another), and their
//! numeric values after the `(D_{4,r}/N_{d′,4,r})·g^{−r}` scaling. The only
//! non-exact ingredient of `R_r` is the convergent ₂F₁ tail.

use super::numeric::{float_int, float_ratio, pi, two_pow_neg, CFloat};
use super::poly::{dnr, g_factor, ndnr, script_n_squared, xpoly_coeffs, GFactor};
use super::quadint::QuadInt;
use super::HypergeomError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rug::ops::Pow;
use rug::Float;

/// One approximant triple with its full context.
#[derive(Debug, Clone)]
pub struct ApproximantTriple {
    pub r: u32,
    pub u1: BigInt,
    pub u2: BigInt,
    pub t_prime: BigInt,
    pub d_prime: BigInt,
    pub g: GFactor,
    /// `(𝒩_{d′,4})²`, exact.
    pub script_n_squared: BigRational,
    /// `D_{4,r}`
    pub dnr: BigInt,
    /// `N_{d′,4,r}`
    pub ndnr: BigInt,
    /// `σ(u)^r · X_{1,4,r}(ω)`, exact; `p_r` is this times `(D/N)g^{−r}`.
    pub p_surd: QuadInt,
    /// `σ(u)^r · Y_{1,4,r}(ω) = conj(p_surd)`, exact.
    pub q_surd: QuadInt,
    pub p: CFloat,
    pub q: CFloat,
    pub remainder: CFloat,
    pub omega: CFloat,
    /// `ω^{1/4} = e^{iφ/4}` under the principal-argument convention.
    pub omega_quarter: CFloat,
    /// Principal argument `φ` of `ω`, in `(−π, π]`.
    pub phi: Float,
    pub big_q: Float,
    pub big_e: Float,
    pub ell0: Float,
    pub k0: Float,
    /// Requested precision; floats carry extra working bits on top.
    pub precision: u32,
}

impl ApproximantTriple {
    /// `|q_r·ω^{1/4} − p_r − R_r|`, the remainder-identity defect.
    pub fn identity_defect(&self) -> Float {
        let lhs = &(&self.q * &self.omega_quarter) - &self.p;
        (&lhs - &self.remainder).abs()
    }

    /// `|g|·𝒩_{d′,4}`, numeric.
    pub fn g_script_n(&self) -> Float {
        (float_ratio(&self.g.g_squared(), self.p.prec())
            * float_ratio(&self.script_n_squared, self.p.prec()))
        .sqrt()
    }
}

/// `𝒟₄ = e^{1.68}`.
fn d4(prec: u32) -> Float {
    Float::with_val(prec, rug::Rational::from((42, 25))).exp()
}

/// Builds the approximant triple of order `r` for `u = (u₁ + u₂√t′)/2`.
pub fn approximants(
    u1: &BigInt,
    u2: &BigInt,
    t_prime: &BigInt,
    r: u32,
    precision_bits: u32,
) -> Result<ApproximantTriple, HypergeomError> {
    if precision_bits < 128 {
        return Err(HypergeomError::InvalidParameters(format!(
            "precision must be at least 128 bits, got {precision_bits}"
        )));
    }
    let g = g_factor(u1, u2, t_prime)?; // validates u1, u2, t′
    let g_squared = g.g_squared();
    let d_prime = {
        let num = u2 * u2 * t_prime * &g.g3;
        let den = &g.g1 * &g.g1 * &g.g2;
        num / den
    };
    let dn = dnr(4, r)?;
    let nd = ndnr(&d_prime, 4, r)?;
    let n_sq = script_n_squared(&d_prime, 4)?;

    // Working precision: |q_r| grows like Q^r, and the remainder identity is
    // an absolute tolerance, so budget the magnitude bits on top.
    let mag_bits = u64::from(u1.bits().max(u2.bits() + t_prime.bits() / 2 + 1)) + 6;
    let wprec = precision_bits + 64 + u32::try_from(mag_bits * u64::from(r + 1)).unwrap();

    let surd = float_int(&t_prime.abs(), wprec).sqrt();
    let half = Float::with_val(wprec, rug::Rational::from((1, 2)));
    let u = CFloat::new(
        float_int(u1, wprec) * &half,
        float_int(u2, wprec) * surd * &half,
    );
    let sigma_u = u.conj();
    let omega = u.div(&sigma_u);
    let phi = omega.arg();

    let pi_third = pi(wprec) / 3u32;
    if phi.clone().abs() >= pi_third {
        return Err(HypergeomError::Domain {
            phi: phi.to_f64(),
        });
    }

    // Exact surd parts: σ(u)^r X(ω) = Σ c_i u^i σ(u)^{r−i}.
    let coeffs = xpoly_coeffs(1, 4, r)?;
    let u_exact = QuadInt::from_halves(u1.clone(), u2.clone(), t_prime.clone());
    let s_exact = u_exact.conj();
    let mut p_surd = QuadInt::from_ints(BigInt::zero(), BigInt::zero(), t_prime.clone());
    for (i, c) in coeffs.iter().enumerate() {
        let term = u_exact
            .pow(u32::try_from(i).unwrap())
            .mul(&s_exact.pow(r - u32::try_from(i).unwrap()));
        p_surd = p_surd.add(&term.scale(c));
    }
    let q_surd = p_surd.conj();

    // Numeric scaling (D/N)·g^{−r}; g may be irrational, only g² is exact.
    let g_f = float_ratio(&g_squared, wprec).sqrt();
    let scale = float_ratio(
        &BigRational::new(dn.clone(), nd.clone()),
        wprec,
    ) * g_f.pow(-(r as i32));
    let p = CFloat::from_quadint(&p_surd, wprec).scale(&scale);
    let q = CFloat::from_quadint(&q_surd, wprec).scale(&scale);

    // R_r = (D/N)(σ(u)/g)^r (ω−1)^{2r+1} · pref · ₂F₁(r+1−ν, r+1; 2r+2; 1−ω)
    let remainder = {
        let one = CFloat::one(wprec);
        let w = &one - &omega;
        let f = gauss_2f1_tail(r, &w, precision_bits + 16, wprec)?;
        let mut pref = BigRational::one();
        for i in 0..=r {
            // ν + i with ν = 1/4
            pref *= BigRational::new(BigInt::from(4 * i + 1), BigInt::from(4));
        }
        for i in (r + 1)..=(2 * r + 1) {
            pref /= BigRational::from(BigInt::from(i));
        }
        let omega_m1 = &omega - &one;
        let base = omega_m1.powi(2 * r + 1).scale(&float_ratio(&pref, wprec));
        (&(&base * &f) * &sigma_u.powi(r)).scale(&scale)
    };

    let phi_quarter = phi.clone() / 4u32;
    let omega_quarter = CFloat::unit(&phi_quarter);

    // Q, E, ℓ₀, k₀
    let root = float_int(&(u1 * u1 - t_prime * u2 * u2), wprec).sqrt();
    let height = float_int(&u1.abs(), wprec) + root;
    let g_script_n = (float_ratio(&g_squared, wprec) * float_ratio(&n_sq, wprec)).sqrt();
    let d4v = d4(wprec);
    let big_q = d4v.clone() * &height / &g_script_n;
    let big_e = g_script_n * height
        / (d4v * float_int(&(u2 * u2 * t_prime.abs()), wprec));
    let ell0 = phi.clone().abs() / 5u32;
    let k0 = Float::with_val(wprec, rug::Rational::from((89, 100)));

    Ok(ApproximantTriple {
        r,
        u1: u1.clone(),
        u2: u2.clone(),
        t_prime: t_prime.clone(),
        d_prime,
        g,
        script_n_squared: n_sq,
        dnr: dn,
        ndnr: nd,
        p_surd,
        q_surd,
        p,
        q,
        remainder,
        omega,
        omega_quarter,
        phi,
        big_q,
        big_e,
        ell0,
        k0,
        precision: precision_bits,
    })
}

/// `₂F₁(r+1−ν, r+1; 2r+2; w)` with `ν = 1/4`, by the defining series.
/// Terms are accumulated until they fall below `2^{−tol_bits}` scaled by the
/// remaining geometric tail.
fn gauss_2f1_tail(
    r: u32,
    w: &CFloat,
    tol_bits: u32,
    wprec: u32,
) -> Result<CFloat, HypergeomError> {
    let w_abs = w.abs().to_f64();
    if w_abs >= 1.0 {
        return Err(HypergeomError::Domain { phi: f64::NAN });
    }
    let tail_slack = Float::with_val(wprec, 1.0 - w_abs);
    let threshold = two_pow_neg(tol_bits, wprec) * tail_slack;

    let mut sum = CFloat::one(wprec);
    let mut term = CFloat::one(wprec);
    // a = r + 3/4, b = r + 1, c = 2r + 2
    let max_iter = 200_000usize;
    for j in 0..max_iter {
        let j4 = BigInt::from(4 * (u64::from(r) + j as u64) + 3); // 4(r+j)+3 = 4(a+j)
        let num = BigRational::new(
            j4 * BigInt::from(u64::from(r) + 1 + j as u64),
            BigInt::from(4),
        );
        let den = BigRational::from(
            BigInt::from(2 * u64::from(r) + 2 + j as u64) * BigInt::from(j as u64 + 1),
        );
        let ratio = num / den;
        term = (&term * w).scale(&float_ratio(&ratio, wprec));
        sum = &sum + &term;
        if term.abs() < threshold && j as u64 > u64::from(r) {
            return Ok(sum);
        }
    }
    Err(HypergeomError::Precision(format!(
        "hypergeometric tail did not reach 2^-{tol_bits} within {max_iter} terms (|w| = {w_abs})"
    )))
}

/// The measure calculator: `r₀` is the smallest positive integer with
/// `(Q − 1/E)·ℓ₀·|q|/(Q − 1) < c·E^{r₀}`; the returned lower bound for
/// `|qθ − p|` is `(1 − c/E)/(k₀Q^{r₀+1})` when the fraction coincides with
/// `p_{r₀}/q_{r₀}` and `(1 − c)/(k₀Q^{r₀})` otherwise.
pub fn lemma21_bound(
    big_q: &Float,
    big_e: &Float,
    k0: &Float,
    ell0: &Float,
    q_abs: &Float,
    c: &Float,
    same_fraction: bool,
) -> Result<(u32, Float), HypergeomError> {
    let one = Float::with_val(big_q.prec(), 1);
    if !(big_q > &one && big_e > &one) {
        return Err(HypergeomError::InvalidParameters(
            "need Q > 1 and E > 1".into(),
        ));
    }
    if !(c.is_sign_positive() && c < &one && !c.is_zero()) {
        return Err(HypergeomError::InvalidParameters("need 0 < c < 1".into()));
    }
    if !(k0.is_sign_positive() && ell0.is_sign_positive()) {
        return Err(HypergeomError::InvalidParameters(
            "need k₀, ℓ₀ > 0".into(),
        ));
    }
    let lhs = (big_q.clone() - one.clone() / big_e) * ell0 * q_abs / (big_q.clone() - &one);
    let mut r0 = 1u32;
    let mut rhs = c.clone() * big_e;
    while lhs >= rhs {
        r0 += 1;
        rhs *= big_e;
        if r0 > 1_000_000 {
            return Err(HypergeomError::Precision(
                "r₀ exceeded 10⁶; inputs out of the lemma's intended range".into(),
            ));
        }
    }
    let bound = if same_fraction {
        (one - c.clone() / big_e) / (k0.clone() * big_q.clone().pow(r0 + 1))
    } else {
        (one - c.clone()) / (k0.clone() * big_q.clone().pow(r0))
    };
    Ok((r0, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn r0_is_identity_approximant() {
        let t = approximants(&big(8), &big(4), &big(-1), 0, 192).unwrap();
        assert_eq!(t.dnr, BigInt::one());
        assert_eq!(t.ndnr, BigInt::one());
        assert!(t.p_surd.im().is_zero() && t.p_surd.re().is_one());
        assert!((t.p.re.to_f64() - 1.0).abs() < 1e-30);
        assert!((t.q.re.to_f64() - 1.0).abs() < 1e-30);
        // R₀ = ω^{1/4} − 1
        let expect = &t.omega_quarter - &CFloat::one(t.p.prec());
        let diff = (&t.remainder - &expect).abs();
        assert!(diff.to_f64() < 1e-40);
    }

    #[test]
    fn remainder_identity_r1() {
        let t = approximants(&big(8), &big(4), &big(-1), 1, 256).unwrap();
        let defect = t.identity_defect();
        assert!(defect.to_f64() < 1e-30, "defect = {}", defect.to_f64());
    }

    #[test]
    fn growth_and_decay_r5() {
        let t = approximants(&big(8), &big(4), &big(-1), 5, 256).unwrap();
        // |R₅| ≤ ℓ₀·E^{−5}
        let r_bound = t.ell0.clone() * t.big_e.clone().pow(-5);
        assert!(t.remainder.abs() <= r_bound);
        // |q₅| ≤ 0.89·Q⁵
        let q_bound = t.k0.clone() * t.big_q.clone().pow(5);
        assert!(t.q.abs() <= q_bound);
    }

    #[test]
    fn domain_rejection() {
        // u = (1 + 4i)/2 has argument far above π/6, so ω = u/σ(u) has
        // |φ| > π/3.
        let err = approximants(&big(1), &big(4), &big(-1), 1, 192);
        assert!(matches!(err, Err(HypergeomError::Domain { .. })));
    }

    #[test]
    fn lemma21_example() {
        let prec = 192;
        let f = |v: f64| Float::with_val(prec, v);
        let (r0, bound) = lemma21_bound(
            &f(21.12),
            &f(2.0),
            &f(0.89),
            &f(0.1),
            &f(10.0),
            &f(0.75),
            false,
        )
        .unwrap();
        assert_eq!(r0, 1);
        assert!((bound.to_f64() - 0.25 / (0.89 * 21.12)).abs() < 1e-12);
    }

    #[test]
    fn lemma21_tiny_q() {
        let prec = 192;
        let f = |v: f64| Float::with_val(prec, v);
        let (r0, _) = lemma21_bound(
            &f(21.12),
            &f(2.0),
            &f(0.89),
            &f(0.1),
            &f(1e-30),
            &f(0.75),
            false,
        )
        .unwrap();
        assert_eq!(r0, 1);
    }

    #[test]
    fn lemma21_case_a_below_case_b() {
        let prec = 192;
        let f = |v: f64| Float::with_val(prec, v);
        let args = (f(21.12), f(2.0), f(0.89), f(0.1), f(10.0), f(0.75));
        let (r0a, a) =
            lemma21_bound(&args.0, &args.1, &args.2, &args.3, &args.4, &args.5, true).unwrap();
        let (r0b, b) =
            lemma21_bound(&args.0, &args.1, &args.2, &args.3, &args.4, &args.5, false).unwrap();
        assert_eq!(r0a, r0b);
        assert!(a < b);
    }
}
