//! The exhaustive tuple search: for a given `b`, enumerate every
//! `(a, b, d, t, u)` with `t² − du² = ±4`, `d ≤ D_{b,u}` non-square and
//! `db⁴ − a²` a positive square that escapes the d-lower-bound exclusions,
//! then verify that none of the attached sequences has a square below the
//! six-term threshold.
//!
//! The kernel runs on `u64` (guarded), with the pruning thresholds and the
//! record predicate evaluated in exact arbitrary-precision arithmetic. The
//! threshold derived from each d-bound is used only to shrink the scanned
//! `n` range; the exact predicate is still evaluated for every emitted
//! tuple.

use crate::bounds::{
    self, compare_power, step_d_terms, SymValues,
};
use crate::seq::{validate_params, SequenceParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::cmp::Ordering;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("b = {0} is too large for the u64 search kernel (85·b¹² must fit in 63 bits)")]
    InputTooLarge(u64),
    #[error("b must be positive")]
    InvalidB,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One search hit. `−N_α = n_root²` and `sign` is the unit norm
/// `N_ε = (t² − du²)/4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateTuple {
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub t: u64,
    pub u: u64,
    pub sign: i8,
    pub n_root: u64,
}

impl CandidateTuple {
    pub fn n_alpha(&self) -> BigInt {
        -BigInt::from(self.n_root) * BigInt::from(self.n_root)
    }

    pub fn params(&self) -> SequenceParams {
        let p = validate_params(
            BigInt::from(self.a),
            BigInt::from(self.b),
            BigInt::from(self.d),
            BigInt::from(self.t),
            BigInt::from(self.u),
        )
        .expect("emitted tuples are valid");
        debug_assert_eq!(p.n_eps, self.sign);
        debug_assert_eq!(p.n_alpha, self.n_alpha());
        p
    }

    /// The JSONL wire form: decimal strings, fixed key order.
    pub fn jsonl_line(&self) -> String {
        format!(
            "{{\"a\":\"{}\",\"b\":\"{}\",\"d\":\"{}\",\"t\":\"{}\",\"u\":\"{}\",\"sign\":\"{}\",\"n\":\"{}\"}}",
            self.a, self.b, self.d, self.t, self.u, self.sign, self.n_root
        )
    }
}

/// Strictness and scope knobs. The defaults reproduce the published counts.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    /// Prerequisite `d ≥ 12b²/u²` uses `>` instead of `≥` when set.
    pub prereq_strict: bool,
    /// When set (default), a d-bound excludes a tuple only when `d` strictly
    /// exceeds it; tuples sitting exactly on a bound are recorded.
    pub bounds_strict: bool,
    /// Restrict `u` (inclusive); `None` means the full range `1 ≤ u < U_b`.
    pub u_range: Option<(u64, u64)>,
    /// Restrict `t` (inclusive).
    pub t_range: Option<(u64, u64)>,
    /// Restrict to one unit-norm sign.
    pub sign_filter: Option<i8>,
    /// Scan each candidate's sequence for squares below the six-term
    /// threshold.
    pub verify: bool,
    /// Keep the tuples in the report (in addition to counting them).
    pub keep_tuples: bool,
    pub jsonl_path: Option<PathBuf>,
    pub csv_path: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            threads: 0,
            prereq_strict: false,
            bounds_strict: true,
            u_range: None,
            t_range: None,
            sign_filter: None,
            verify: true,
            keep_tuples: false,
            jsonl_path: None,
            csv_path: None,
        }
    }
}

impl SearchConfig {
    /// Hash of everything that affects the output (thread count and output
    /// paths deliberately excluded: results are independent of them).
    pub fn fingerprint(&self, b: u64) -> String {
        let mut h = Sha256::new();
        h.update(format!(
            "pellsq-search-v1 b={} prereq_strict={} bounds_strict={} u_range={:?} t_range={:?} sign={:?} verify={}",
            b, self.prereq_strict, self.bounds_strict, self.u_range, self.t_range,
            self.sign_filter, self.verify
        ));
        let digest = h.finalize();
        let mut s = String::new();
        for byte in digest.iter().take(8) {
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }
}

/// A square found below the six-term threshold — a published-result
/// contradiction if it ever occurs.
#[derive(Debug, Clone)]
pub struct Violation {
    pub tuple: CandidateTuple,
    pub k: i64,
    pub root: BigInt,
}

#[derive(Debug)]
pub struct SearchReport {
    pub b: u64,
    pub u_b: u64,
    /// `D_b = D_{b,1}`, the largest enumeration cap.
    pub d_b: u64,
    pub candidate_count: u64,
    /// Count per `u`, ascending, zero-count entries omitted.
    pub per_u: Vec<(u64, u64)>,
    pub violations: Vec<Violation>,
    pub tuples: Option<Vec<CandidateTuple>>,
    pub wall_seconds: f64,
    pub fingerprint: String,
}

/// Smallest `u` for which every term of the enumeration bound is below 2.
pub fn compute_ub(b: u64) -> u64 {
    let b_int = BigInt::from(b);
    let two = BigRational::from(BigInt::from(2));
    let mut u = 1u64;
    loop {
        if bounds::enum_bound_below(&b_int, &BigInt::from(u), &two) {
            return u;
        }
        u += 1;
        assert!(u < 10_000_000, "U_b runaway for b = {b}");
    }
}

/// Largest integer `d ≤ D_{b,u}`, as a `u64` for the kernel.
pub fn enum_cap(b: u64, u: u64) -> u64 {
    let e = bounds::search_enum_bound(&BigInt::from(b), &BigInt::from(u));
    u64::try_from(&e.cap).expect("cap fits u64 for supported b")
}

const fn build_table<const M: usize>() -> [bool; M] {
    let mut t = [false; M];
    let mut i = 0;
    while i < M {
        t[(i * i) % M] = true;
        i += 1;
    }
    t
}

static SQ256: [bool; 256] = build_table::<256>();
static SQ63: [bool; 63] = build_table::<63>();
static SQ65: [bool; 65] = build_table::<65>();
static SQ11: [bool; 11] = build_table::<11>();

#[inline]
fn square_root_u64(n: u64) -> Option<u64> {
    if !SQ256[(n & 255) as usize]
        || !SQ63[(n % 63) as usize]
        || !SQ65[(n % 65) as usize]
        || !SQ11[(n % 11) as usize]
    {
        return None;
    }
    let r = n.isqrt();
    (r * r == n).then_some(r)
}

/// Per-`b` exact constants for the d-bound thresholds (denominator side of
/// each cleared inequality).
struct BoundConstants {
    y1: BigInt, // 441²³ · b⁴⁸
    y2: BigInt, // 33¹³ · b²⁸
    y3: BigInt, // 153¹¹ · b²⁰
    y4: BigInt, // 17 · b²
    twelve_b2: u128,
}

impl BoundConstants {
    fn new(b: u64) -> BoundConstants {
        let b_int = BigInt::from(b);
        BoundConstants {
            y1: BigInt::from(441u32).pow(23u32) * b_int.clone().pow(48u32),
            y2: BigInt::from(33u32).pow(13u32) * b_int.clone().pow(28u32),
            y3: BigInt::from(153u32).pow(11u32) * b_int.clone().pow(20u32),
            y4: BigInt::from(17u32) * &b_int * &b_int,
            twelve_b2: 12u128 * u128::from(b) * u128::from(b),
        }
    }
}

/// Largest `n` for which all four d-bounds hold (i.e. the tuple would be
/// excluded); `None` when the prerequisite fails so every `n` is recorded.
fn exclusion_threshold(
    d: u64,
    u: u64,
    consts: &BoundConstants,
    prereq_strict: bool,
    bounds_strict: bool,
) -> Option<u64> {
    let du2 = u128::from(d) * u128::from(u) * u128::from(u);
    let prereq = if prereq_strict {
        du2 > consts.twelve_b2
    } else {
        du2 >= consts.twelve_b2
    };
    if !prereq {
        return None;
    }
    let d_int = BigInt::from(d);
    let u_int = BigInt::from(u);
    // Cleared forms of "d exceeds the bound", solved for the largest n:
    //   (1) d²³·u⁴⁴·500²³ vs 441²³·n⁴·b⁴⁸
    //   (2) d¹³·u²⁴·50¹³  vs 33¹³·n²·b²⁸
    //   (3) d¹¹·u²⁴·10¹¹  vs 153¹¹·n⁸·b²⁰
    //   (4) d·u²          vs 17·n·b²
    // With strict bounds, n must satisfy lhs > rhs, i.e. n^e ≤ (X−1)/Y;
    // with non-strict, n^e ≤ X/Y.
    let solve = |x: BigInt, y: &BigInt, root: u32| -> BigInt {
        let x = if bounds_strict { x - 1 } else { x };
        if !x.is_positive() {
            return BigInt::zero();
        }
        let q = x / y;
        if root == 1 {
            q
        } else {
            q.nth_root(root)
        }
    };
    let x1 = d_int.clone().pow(23u32) * u_int.clone().pow(44u32) * BigInt::from(500u32).pow(23u32);
    let x2 = d_int.clone().pow(13u32) * u_int.clone().pow(24u32) * BigInt::from(50u32).pow(13u32);
    let x3 = d_int.clone().pow(11u32) * u_int.clone().pow(24u32) * BigInt::from(10u32).pow(11u32);
    let x4 = d_int * u_int.clone() * u_int;
    let n1 = solve(x1, &consts.y1, 4);
    let n2 = solve(x2, &consts.y2, 2);
    let n3 = solve(x3, &consts.y3, 8);
    let n4 = solve(x4, &consts.y4, 1);
    let n_star = n1.min(n2).min(n3).min(n4);
    Some(u64::try_from(&n_star).unwrap_or(u64::MAX))
}

/// The record predicate, evaluated exactly from the bounds module: a tuple
/// needs explicit checking unless the prerequisite and all four d-bounds
/// hold.
pub fn needs_checking(
    d: u64,
    u: u64,
    b: u64,
    n_root: u64,
    prereq_strict: bool,
    bounds_strict: bool,
) -> bool {
    let du2 = u128::from(d) * u128::from(u) * u128::from(u);
    let twelve_b2 = 12u128 * u128::from(b) * u128::from(b);
    let prereq = if prereq_strict {
        du2 > twelve_b2
    } else {
        du2 >= twelve_b2
    };
    if !prereq {
        return true;
    }
    let vals = SymValues::new()
        .with(bounds::Sym::B, BigInt::from(b))
        .with(bounds::Sym::U, BigInt::from(u))
        .with(bounds::Sym::NAbs, BigInt::from(n_root) * BigInt::from(n_root));
    let d_rat = BigRational::from(BigInt::from(d));
    let excluded = step_d_terms().iter().all(|term| {
        let ord = compare_power(&d_rat, term, &vals).expect("all symbols supplied");
        if bounds_strict {
            ord == Ordering::Greater
        } else {
            ord != Ordering::Less
        }
    });
    !excluded
}

/// Scans the sequence attached to a candidate for integer squares below the
/// six-term threshold: upward from `k = 2` and downward from `k = K − 1`.
pub fn verify_candidate(tuple: &CandidateTuple) -> Vec<(i64, BigInt)> {
    let params = tuple.params();
    let mut hits = Vec::new();

    let mut scan = |iter: &mut dyn Iterator<Item = crate::seq::SequenceElement>| {
        let mut steps = 0u32;
        for e in iter {
            if bounds::prop41_exceeds(&e.y2, &params) {
                break;
            }
            if let Some(root) = e.y_square_root() {
                hits.push((e.k, root));
            }
            steps += 1;
            assert!(steps < 1_000_000, "threshold scan runaway for {tuple:?}");
        }
    };

    scan(&mut params.iter_from(2));

    let k_index = params.compute_k_index();
    scan(&mut params.iter_down_from(k_index - 1));

    hits
}

/// One unit of parallel work: a `(u, sign, t-chunk)` block.
#[derive(Debug, Clone)]
struct Block {
    u: u64,
    sign: i8,
    t_lo: u64,
    t_hi: u64,
    cap: u64,
}

struct BlockOutput {
    u: u64,
    tuples: Vec<CandidateTuple>,
    violations: Vec<Violation>,
}

fn enumerate_block(
    b: u64,
    block: &Block,
    consts: &BoundConstants,
    config: &SearchConfig,
) -> BlockOutput {
    let b4 = b * b * b * b;
    let u2 = block.u * block.u;
    let mut tuples = Vec::new();
    let mut violations = Vec::new();
    let mut per_d_hits: Vec<CandidateTuple> = Vec::new();

    for t in block.t_lo..=block.t_hi {
        let tt = i128::from(t) * i128::from(t);
        let num = tt - 4 * i128::from(block.sign);
        if num < 2 * i128::from(u2) {
            continue;
        }
        let num = num as u128;
        if num % u128::from(u2) != 0 {
            continue;
        }
        let d = num / u128::from(u2);
        if d > u128::from(block.cap) {
            continue;
        }
        let d = d as u64;
        if square_root_u64(d).is_some() {
            continue;
        }
        let db4 = d
            .checked_mul(b4)
            .expect("db⁴ fits u64 for supported b");

        let n_lo = match exclusion_threshold(d, block.u, consts, config.prereq_strict, config.bounds_strict)
        {
            Some(n_star) => n_star.saturating_add(1),
            None => 1,
        };
        let n_hi = (db4 - 1).isqrt();
        if n_lo > n_hi {
            continue;
        }

        per_d_hits.clear();
        // Enumerate over whichever of a or n has the shorter range; the
        // pair (a, n) is symmetric through a² + n² = db⁴.
        let a_hi = (db4 - n_lo * n_lo).isqrt();
        if n_hi - n_lo <= a_hi {
            for n in n_lo..=n_hi {
                if let Some(a) = square_root_u64(db4 - n * n) {
                    if a >= 1 {
                        per_d_hits.push(CandidateTuple {
                            a,
                            b,
                            d,
                            t,
                            u: block.u,
                            sign: block.sign,
                            n_root: n,
                        });
                    }
                }
            }
        } else {
            for a in 1..=a_hi {
                if let Some(n) = square_root_u64(db4 - a * a) {
                    if n >= n_lo {
                        per_d_hits.push(CandidateTuple {
                            a,
                            b,
                            d,
                            t,
                            u: block.u,
                            sign: block.sign,
                            n_root: n,
                        });
                    }
                }
            }
        }

        per_d_hits.sort_by_key(|c| c.a);
        for tuple in per_d_hits.drain(..) {
            debug_assert!(needs_checking(
                d,
                block.u,
                b,
                tuple.n_root,
                config.prereq_strict,
                config.bounds_strict
            ));
            if config.verify {
                for (k, root) in verify_candidate(&tuple) {
                    violations.push(Violation {
                        tuple: tuple.clone(),
                        k,
                        root,
                    });
                }
            }
            tuples.push(tuple);
        }
    }

    BlockOutput {
        u: block.u,
        tuples,
        violations,
    }
}

/// Runs the full search for one `b`. Deterministic for a fixed config:
/// output is sorted by `(u, sign, t, a)` regardless of thread count.
pub fn run_search(b: u64, config: &SearchConfig) -> Result<SearchReport, SearchError> {
    if b == 0 {
        return Err(SearchError::InvalidB);
    }
    // The kernel needs db⁴ ≤ 85·b¹² to fit comfortably in u64.
    let b12 = u128::from(b).pow(12);
    if 85 * b12 >= (1u128 << 63) {
        return Err(SearchError::InputTooLarge(b));
    }

    let start = Instant::now();
    let u_b = compute_ub(b);
    let d_b = enum_cap(b, 1);
    let consts = BoundConstants::new(b);

    let (u_min, u_max) = match config.u_range {
        Some((lo, hi)) => (lo.max(1), hi.min(u_b.saturating_sub(1))),
        None => (1, u_b.saturating_sub(1)),
    };

    let mut blocks = Vec::new();
    for u in u_min..=u_max {
        let cap = enum_cap(b, u);
        if cap < 2 {
            continue;
        }
        // d ≤ cap ⟺ t² ≤ cap·u² + 4·sign
        for sign in [-1i8, 1] {
            if config.sign_filter.is_some_and(|s| s != sign) {
                continue;
            }
            let limit = (cap as i128) * (u as i128) * (u as i128) + 4 * i128::from(sign);
            if limit < 1 {
                continue;
            }
            let t_hi_cap = u64::try_from((limit as u128).isqrt()).unwrap();
            let (t_lo, t_hi) = match config.t_range {
                Some((lo, hi)) => (lo.max(1), hi.min(t_hi_cap)),
                None => (1, t_hi_cap),
            };
            if t_lo > t_hi {
                continue;
            }
            const CHUNK: u64 = 1024;
            let mut lo = t_lo;
            while lo <= t_hi {
                let hi = (lo + CHUNK - 1).min(t_hi);
                blocks.push(Block {
                    u,
                    sign,
                    t_lo: lo,
                    t_hi: hi,
                    cap,
                });
                lo = hi + 1;
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .expect("thread pool");
    let outputs: Vec<BlockOutput> = pool.install(|| {
        blocks
            .par_iter()
            .map(|blk| enumerate_block(b, blk, &consts, config))
            .collect()
    });

    let mut candidate_count = 0u64;
    let mut per_u: Vec<(u64, u64)> = Vec::new();
    let mut violations = Vec::new();
    let mut kept = if config.keep_tuples {
        Some(Vec::new())
    } else {
        None
    };

    let mut jsonl = match &config.jsonl_path {
        Some(path) => Some(std::io::BufWriter::new(std::fs::File::create(path)?)),
        None => None,
    };
    for out in outputs {
        candidate_count += out.tuples.len() as u64;
        match per_u.last_mut() {
            Some((u, c)) if *u == out.u => *c += out.tuples.len() as u64,
            _ => {
                if !out.tuples.is_empty() {
                    per_u.push((out.u, out.tuples.len() as u64));
                }
            }
        }
        violations.extend(out.violations);
        if let Some(w) = jsonl.as_mut() {
            for tuple in &out.tuples {
                writeln!(w, "{}", tuple.jsonl_line())?;
            }
        }
        if let Some(kept) = kept.as_mut() {
            kept.extend(out.tuples);
        }
    }
    if let Some(mut w) = jsonl {
        w.flush()?;
    }

    let report = SearchReport {
        b,
        u_b,
        d_b,
        candidate_count,
        per_u,
        violations,
        tuples: kept,
        wall_seconds: start.elapsed().as_secs_f64(),
        fingerprint: config.fingerprint(b),
    };

    if let Some(path) = &config.csv_path {
        write_csv(path, std::slice::from_ref(&report))?;
    }
    Ok(report)
}

/// Table-1-shaped CSV: one row per report.
pub fn write_csv(path: &std::path::Path, reports: &[SearchReport]) -> Result<(), SearchError> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(w, "b,U_b,D_b,c_b,violations,cpu_seconds")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{},{:.3}",
            r.b,
            r.u_b,
            r.d_b,
            r.candidate_count,
            r.violations.len(),
            r.wall_seconds
        )?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn restricted(b: u64, u: u64, t: u64, sign: i8) -> Vec<CandidateTuple> {
        let config = SearchConfig {
            u_range: Some((u, u)),
            t_range: Some((t, t)),
            sign_filter: Some(sign),
            verify: false,
            keep_tuples: true,
            ..SearchConfig::default()
        };
        run_search(b, &config).unwrap().tuples.unwrap()
    }

    #[test]
    fn ub_table1() {
        assert_eq!(compute_ub(5), 64);
        assert_eq!(compute_ub(13), 432);
        assert_eq!(compute_ub(17), 738);
    }

    #[test]
    fn micro_t1_plus() {
        // d = (1² + 4)/1 = 5, db⁴ = 3125 = a² + n²
        let tuples = restricted(5, 1, 1, -1);
        let a: Vec<u64> = tuples.iter().map(|c| c.a).collect();
        assert_eq!(a, vec![10, 25, 38, 41, 50, 55]);
        assert!(tuples.iter().all(|c| c.d == 5 && c.sign == -1));
    }

    #[test]
    fn micro_t2_plus() {
        // d = (2² + 4)/1 = 8, db⁴ = 5000
        let tuples = restricted(5, 1, 2, -1);
        let a: Vec<u64> = tuples.iter().map(|c| c.a).collect();
        assert_eq!(a, vec![10, 34, 50, 62, 70]);
    }

    #[test]
    fn square_filter_agrees() {
        for n in 0..100_000u64 {
            let r = square_root_u64(n);
            let e = n.isqrt();
            assert_eq!(r.is_some(), e * e == n, "n = {n}");
        }
    }

    #[test]
    fn verify_examples() {
        let tuple = CandidateTuple {
            a: 10,
            b: 5,
            d: 5,
            t: 1,
            u: 1,
            sign: -1,
            n_root: 55,
        };
        assert!(verify_candidate(&tuple).is_empty());
    }

    #[test]
    fn determinism_across_threads() {
        let mk = |threads: usize| {
            let config = SearchConfig {
                threads,
                u_range: Some((1, 2)),
                t_range: Some((1, 300)),
                verify: false,
                keep_tuples: true,
                ..SearchConfig::default()
            };
            run_search(5, &config).unwrap()
        };
        let one = mk(1);
        let four = mk(4);
        assert_eq!(one.candidate_count, four.candidate_count);
        assert_eq!(one.tuples, four.tuples);
        assert_eq!(one.fingerprint, four.fingerprint);
    }

    #[test]
    fn tuples_sorted_and_valid() {
        let config = SearchConfig {
            u_range: Some((1, 3)),
            t_range: Some((1, 120)),
            verify: false,
            keep_tuples: true,
            ..SearchConfig::default()
        };
        let report = run_search(5, &config).unwrap();
        let tuples = report.tuples.unwrap();
        assert!(!tuples.is_empty());
        let keys: Vec<_> = tuples.iter().map(|c| (c.u, c.sign, c.t, c.a)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for c in &tuples {
            // t² − du² = 4·sign, d non-square, db⁴ − a² = n² with n ≥ 1
            let lhs = i128::from(c.t) * i128::from(c.t)
                - i128::from(c.d) * i128::from(c.u) * i128::from(c.u);
            assert_eq!(lhs, 4 * i128::from(c.sign));
            assert!(square_root_u64(c.d).is_none());
            assert_eq!(
                u128::from(c.d) * u128::from(c.b).pow(4),
                u128::from(c.a) * u128::from(c.a) + u128::from(c.n_root) * u128::from(c.n_root)
            );
            assert!(c.n_root >= 1);
            assert!(needs_checking(c.d, c.u, c.b, c.n_root, false, true));
        }
    }
}
