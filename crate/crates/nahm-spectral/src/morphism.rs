//! Transform of a morphism `Φ: E2 → E1` given by pointwise multiplication:
//! `Φ̂_w = F1(w)^H (Φ·F2(w)) h²`.

use std::f64::consts::PI;

use faer::Mat;

use crate::dirac::grid_point;
use crate::linalg::{overlap, scale_rows, singular_values};
use crate::sweep::TransformSweep;
use crate::{Result, SpectralError, C64};

/// Pointwise multiplication datum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier {
    /// `c·Id`, for a bundle mapped to itself.
    Scalar(C64),
    /// Theta function `Σ_{n ≡ r (k)} e^{−πk(x−n/k)²} e^{2πi n y}` of level `k`,
    /// a holomorphic section of the degree-`k` bundle.
    Theta { level: i64, residue: i64 },
}

/// Level-`k` theta function with residue `r`, in the Landau gauge
/// `θ(x+1, y) = e^{2πi k y} θ(x, y)`.
pub fn theta_value(level: i64, residue: i64, x: f64, y: f64) -> C64 {
    let k = level as f64;
    let centre = (k * x).round() as i64;
    let mut sum = C64::new(0.0, 0.0);
    for n in centre - 12 * level.max(1)..=centre + 12 * level.max(1) {
        if (n - residue).rem_euclid(level) != 0 {
            continue;
        }
        let t = x - n as f64 / k;
        sum += C64::from_polar((-PI * k * t * t).exp(), 2.0 * PI * n as f64 * y);
    }
    sum
}

impl Multiplier {
    pub fn level(&self) -> i64 {
        match self {
            Multiplier::Scalar(_) => 0,
            Multiplier::Theta { level, .. } => *level,
        }
    }

    pub fn sample(&self, n: usize) -> Vec<C64> {
        (0..n * n)
            .map(|r| match *self {
                Multiplier::Scalar(c) => c,
                Multiplier::Theta { level, residue } => {
                    let (x, y) = grid_point(n, r);
                    theta_value(level, residue, x, y)
                }
            })
            .collect()
    }
}

/// `Φ̂` on the dual grid, indexed by `a + m b`.
#[derive(Debug, Clone)]
pub struct MorphismField {
    pub m: usize,
    pub matrices: Vec<Mat<C64>>,
    pub singular_values: Vec<Vec<f64>>,
}

impl MorphismField {
    /// Largest finite difference `M·|σ(a+1,b) − σ(a,b)|` of the singular
    /// values over neighbouring grid points, both directions, periodic.
    pub fn max_singular_slope(&self) -> f64 {
        let m = self.m;
        let mut worst: f64 = 0.0;
        for b in 0..m {
            for a in 0..m {
                let s = &self.singular_values[a + m * b];
                for nb in [(a + 1) % m + m * b, a + m * ((b + 1) % m)] {
                    for (x, y) in s.iter().zip(&self.singular_values[nb]) {
                        worst = worst.max((x - y).abs() * m as f64);
                    }
                }
            }
        }
        worst
    }

    pub fn max_rank(&self, tol: f64) -> usize {
        self.singular_values
            .iter()
            .map(|s| s.iter().filter(|&&x| x > tol * s[0].max(f64::MIN_POSITIVE)).count())
            .max()
            .unwrap_or(0)
    }
}

/// Transform of `Φ: E2 → E1` from the sweeps of `E1` (`target`) and `E2`
/// (`source`).
pub fn transform_morphism(target: &TransformSweep, source: &TransformSweep, phi: &Multiplier) -> Result<MorphismField> {
    if target.n != source.n || target.m != source.m || target.options.scheme != source.options.scheme {
        return Err(SpectralError::ShapeMismatch("sweeps use different grids or schemes".into()));
    }
    match phi {
        Multiplier::Scalar(_) => {
            if target.spec != source.spec {
                return Err(SpectralError::ShapeMismatch("scalar morphism needs identical bundles".into()));
            }
        }
        Multiplier::Theta { level, .. } => {
            let (t, s) = (target.spec.summands(), source.spec.summands());
            if t.len() != 1 || s.len() != 1 {
                return Err(SpectralError::ShapeMismatch("theta multipliers act between line bundles".into()));
            }
            if *level <= 0 || t[0].degree - s[0].degree != *level || t[0].flat_twist != s[0].flat_twist {
                return Err(SpectralError::ShapeMismatch(format!(
                    "level {level} does not map degree {} to degree {}",
                    s[0].degree, t[0].degree
                )));
            }
        }
    }
    let values = phi.sample(source.n);
    let weight = source.weight();
    let mut matrices = Vec::with_capacity(source.frames.len());
    let mut singular = Vec::with_capacity(source.frames.len());
    for (f1, f2) in target.frames.iter().zip(&source.frames) {
        let moved = scale_rows(f2.basis.as_ref(), &values);
        let m = overlap(f1.basis.as_ref(), moved.as_ref(), weight);
        singular.push(singular_values(m.as_ref())?);
        matrices.push(m);
    }
    Ok(MorphismField {
        m: source.m,
        matrices,
        singular_values: singular,
    })
}
