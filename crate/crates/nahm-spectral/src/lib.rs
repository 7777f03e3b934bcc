//! Numerical Nahm transform for constant-curvature line bundles on the flat
//! square torus of unit area.
//!
//! Sections of a degree-`d` line bundle are sampled on an `N×N` grid in the
//! Landau gauge: `s(x+1, y) = e^{2πi d y} s(x, y)` and `s(x, y+1) = s(x, y)`.
//! The twisted Dolbeault operator `𝒟_w = ∂̄ + π w` is discretized by forward
//! differences with magnetic link phases, kernels are extracted on a grid of
//! dual points `w`, and the curvature of the resulting index bundle is read
//! off from frame overlaps around lattice plaquettes.

pub mod chain;
pub mod curvature;
pub mod dirac;
pub mod double;
pub mod it_check;
pub mod kernel;
pub mod linalg;
pub mod morphism;
pub mod sweep;
pub mod torus;

pub use num_complex::Complex64 as C64;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("grid size {n} too small for degree {degree}")]
    BadGrid { n: usize, degree: i64 },
    #[error("degree must be nonzero")]
    DegreeZero,
    #[error("only the square torus with modulus i is supported")]
    UnsupportedModulus,
    #[error("summands must share a strict degree sign")]
    MixedSigns,
    #[error("bundle has no summands")]
    EmptySpec,
    #[error("dual grid size {0} below 8")]
    DualGridTooSmall(usize),
    #[error("gap ratio {ratio:.3e} below {threshold:.0e} at w = {w}")]
    GapTooSmall { ratio: f64, threshold: f64, w: C64 },
    #[error("boundary identification residual {residual:.3e} above {tolerance:.0e}")]
    BoundaryCheckFailed { residual: f64, tolerance: f64 },
    #[error("singular link overlap (smallest singular value {0:.3e})")]
    SingularOverlap(f64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("numerical index pattern {numerical} contradicts symbolic {symbolic}")]
    Inconsistent { numerical: String, symbolic: String },
    #[error("double transform needs positive degree")]
    NonPositiveDegree,
    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

pub type Result<T> = std::result::Result<T, SpectralError>;

/// Required ratio between the first discarded and the last retained
/// singular value.
pub const GAP_THRESHOLD: f64 = 1e2;
