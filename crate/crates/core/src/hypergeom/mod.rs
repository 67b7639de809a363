//! The Diophantine-approximation machinery: Gauss-hypergeometric polynomial
//! approximants to `ω^{1/4}`, their integrality denominators, the `g` and
//! `𝒩` factors, the `(Q, E, ℓ₀, k₀)` quantities, the irrationality-measure
//! calculator and the quartic-representation decomposer.
//!
//! Only `n = 4` (so `ν ∈ {1/4, 3/4}`) is supported; that is the only case
//! the rest of the crate needs.

mod approx;
mod decompose;
mod numeric;
mod poly;
mod quadint;

pub use approx::{approximants, lemma21_bound, ApproximantTriple};
pub use decompose::{lemma31_decompose, QuarticWitness};
pub use numeric::CFloat;
pub use poly::{d_prime, dnr, g_factor, ndnr, script_n_squared, xpoly_coeffs, GFactor};
pub use quadint::QuadInt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HypergeomError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("|ω − 1| ≥ 1 (φ = {phi}): outside the hypergeometric domain")]
    Domain { phi: f64 },
    #[error("series cannot meet tolerance: {0}")]
    Precision(String),
    #[error(
        "no quartic decomposition of (x, y) = ({x}, {y_root}²): \
         contradicts the representation lemma — report this input"
    )]
    NoDecomposition { x: BigInt, y_root: BigInt },
}
