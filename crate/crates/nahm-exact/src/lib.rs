//! Exact arithmetic for bundle invariants on an elliptic curve.
//!
//! Three layers share one rational type:
//!
//! - [`invariants`]: Chern pairs, formal polystable classes, the Fourier-Mukai
//!   action on `(rank, degree)` and moduli descriptors.
//! - [`triple_stability`]: α-stability windows, candidate critical values and
//!   the small/large/equal-rank preservation criteria for holomorphic triples.
//! - [`vortex`]: the coupled vortex parameters `τ, τ'`, covariantly constant
//!   block decompositions and their transformed slopes.
//!
//! Nothing in this crate touches floating point.

pub mod invariants;
pub mod triple_stability;
pub mod vortex;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Rational = num_rational::Ratio<i64>;

/// Builds `p/q` in lowest terms. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// Builds the integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(p)
}
