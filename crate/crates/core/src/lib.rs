//! Exact machinery for studying perfect squares in the binary recurrence
//! sequences attached to generalised Pell equations `X² − dY² = c`.
//!
//! The crate is organised around the pipeline used by the exhaustive search:
//!
//! * [`arith`] — arbitrary-precision integer/rational primitives (floor
//!   square roots, squarefree cores, p-adic valuations, factorisation).
//! * [`seq`] — the sequences `(x_k, y_k)` with `x_k + y_k√d = αε^{2k}` and
//!   their odd-power variant, in exact doubled coordinates.
//! * [`bounds`] — every closed-form threshold (growth bounds, the gap
//!   principle, square-exclusion thresholds, d-bounds) as an exact predicate.
//! * [`hypergeom`] — Gauss-hypergeometric approximants to `ω^{1/4}`,
//!   integrality denominators and the quartic-representation decomposer.
//! * [`search`] — the exhaustive tuple enumeration with pruning, inline
//!   verification and deterministic reporting.
//! * [`census`] — empirical square censuses over index windows.
//!
//! All counting-relevant comparisons are exact: decimal constants are
//! rationals, fractional exponents are cleared to integer powers before
//! comparing. Floating point appears only in `hypergeom` diagnostics, where
//! every value carries its precision.

pub mod arith;
pub mod bounds;
pub mod census;
pub mod hypergeom;
pub mod search;
pub mod seq;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
