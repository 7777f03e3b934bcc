//! Torus, line bundle and direct-sum specifications.

use nahm_exact::invariants::{BundleClass, ChernPair, Summand};

use crate::{Result, SpectralError, C64};

/// Flat torus `ℂ/(ℤ + τℤ)` rescaled to unit area. Only `τ = i` is supported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusSpec {
    pub modulus: C64,
}

impl Default for TorusSpec {
    fn default() -> Self {
        TorusSpec { modulus: C64::i() }
    }
}

impl TorusSpec {
    pub fn new(modulus: C64) -> Result<TorusSpec> {
        if modulus.im <= 0.0 || (modulus - C64::i()).norm() > 1e-14 {
            return Err(SpectralError::UnsupportedModulus);
        }
        Ok(TorusSpec { modulus })
    }

    pub fn area(&self) -> f64 {
        1.0
    }
}

/// Reduces a dual point to the fundamental domain `[0,1)²`.
pub fn reduce_dual(w: C64) -> C64 {
    let f = |t: f64| {
        let r = t.rem_euclid(1.0);
        if r >= 1.0 {
            0.0
        } else {
            r
        }
    };
    C64::new(f(w.re), f(w.im))
}

/// Degree-`d` line bundle with constant curvature `2πd`, tensored with the
/// flat bundle `flat_twist` of the dual torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineBundleSpec {
    pub degree: i64,
    pub flat_twist: C64,
    pub torus: TorusSpec,
}

impl LineBundleSpec {
    pub fn new(degree: i64, flat_twist: C64) -> Result<LineBundleSpec> {
        if degree == 0 {
            return Err(SpectralError::DegreeZero);
        }
        Ok(LineBundleSpec {
            degree,
            flat_twist: reduce_dual(flat_twist),
            torus: TorusSpec::default(),
        })
    }

    pub fn untwisted(degree: i64) -> Result<LineBundleSpec> {
        LineBundleSpec::new(degree, C64::new(0.0, 0.0))
    }

    pub fn slope(&self) -> f64 {
        self.degree as f64
    }
}

/// Direct sum of line bundles with a common strict degree sign.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleSpec {
    summands: Vec<LineBundleSpec>,
}

impl BundleSpec {
    pub fn new(summands: Vec<LineBundleSpec>) -> Result<BundleSpec> {
        let first = summands.first().ok_or(SpectralError::EmptySpec)?;
        let sign = first.degree.signum();
        if summands.iter().any(|s| s.degree.signum() != sign) {
            return Err(SpectralError::MixedSigns);
        }
        Ok(BundleSpec { summands })
    }

    pub fn line(spec: LineBundleSpec) -> BundleSpec {
        BundleSpec { summands: vec![spec] }
    }

    /// Sum of untwisted line bundles of the given degrees.
    pub fn from_degrees(degrees: &[i64]) -> Result<BundleSpec> {
        let summands = degrees
            .iter()
            .map(|&d| LineBundleSpec::untwisted(d))
            .collect::<Result<Vec<_>>>()?;
        BundleSpec::new(summands)
    }

    pub fn summands(&self) -> &[LineBundleSpec] {
        &self.summands
    }

    pub fn rank(&self) -> i64 {
        self.summands.len() as i64
    }

    pub fn degree(&self) -> i64 {
        self.summands.iter().map(|s| s.degree).sum()
    }

    pub fn sign(&self) -> i64 {
        self.summands[0].degree.signum()
    }

    /// Dimension of the kernel (or cokernel) fibre of the Dirac family.
    pub fn index_rank(&self) -> usize {
        self.summands.iter().map(|s| s.degree.unsigned_abs() as usize).sum()
    }

    pub fn chern_pair(&self) -> ChernPair {
        ChernPair::new(self.rank(), self.degree())
    }

    /// Exact class: one stable rank-one summand per line bundle.
    pub fn bundle_class(&self) -> BundleClass {
        let summands = self
            .summands
            .iter()
            .map(|s| Summand::new(ChernPair::new(1, s.degree), 1, None).expect("rank one"))
            .collect();
        BundleClass::new(summands, false).expect("nonempty")
    }
}
