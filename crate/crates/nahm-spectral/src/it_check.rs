//! Numerical check of the IT pattern against the symbolic prediction.

use nahm_exact::invariants::{it_class, ITIndex};

use crate::dirac::{build_dirac, Scheme};
use crate::kernel::{kernel_frame_with, roughness, KernelMethod, KernelSide};
use crate::torus::BundleSpec;
use crate::{Result, SpectralError, C64};

/// Roughness separating smooth kernel vectors from lattice doublers.
pub const ROUGHNESS_THRESHOLD: f64 = 0.25;

/// Smooth kernel and cokernel dimensions at one dual point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexPattern {
    pub kernel: usize,
    pub cokernel: usize,
}

/// The square discretization has index zero, so each degree-`d` summand
/// has `|d|`-dimensional kernels on both sides; one side consists of lattice
/// doublers. Only smooth vectors count towards the continuum (co)kernel.
pub fn index_pattern(spec: &BundleSpec, n: usize, w: C64) -> Result<IndexPattern> {
    let mut pattern = IndexPattern { kernel: 0, cokernel: 0 };
    for line in spec.summands() {
        let op = build_dirac(line, w, n, Scheme::LinkTwist)?;
        let dim = line.degree.unsigned_abs() as usize;
        for side in [KernelSide::Operator, KernelSide::Adjoint] {
            let frame = kernel_frame_with(&op, dim, side, KernelMethod::Auto)?;
            let smooth = (0..frame.dim)
                .filter(|&j| {
                    let col: Vec<C64> = (0..op.dim()).map(|i| frame.basis[(i, j)]).collect();
                    roughness(&op, &col) < ROUGHNESS_THRESHOLD
                })
                .count();
            match side {
                KernelSide::Operator => pattern.kernel += smooth,
                KernelSide::Adjoint => pattern.cokernel += smooth,
            }
        }
    }
    Ok(pattern)
}

pub fn numerical_it_check(spec: &BundleSpec, n: usize) -> Result<ITIndex> {
    let samples = [C64::new(0.0, 0.0), C64::new(0.5, 0.0), C64::new(0.0, 0.5), C64::new(0.31, 0.77)];
    let rank = spec.index_rank();
    let mut found: Option<ITIndex> = None;
    for w in samples {
        let p = index_pattern(spec, n, w)?;
        let here = match (p.kernel, p.cokernel) {
            (k, 0) if k == rank => ITIndex::Zero,
            (0, c) if c == rank => ITIndex::One,
            (k, c) => {
                return Err(SpectralError::Inconsistent {
                    numerical: format!("kernel {k}, cokernel {c} at w = {w}"),
                    symbolic: format!("index rank {rank}"),
                })
            }
        };
        if found.is_some_and(|f| f != here) {
            return Err(SpectralError::Inconsistent {
                numerical: "pattern varies over the dual torus".into(),
                symbolic: format!("index rank {rank}"),
            });
        }
        found = Some(here);
    }
    let numerical = found.expect("samples are nonempty");
    let symbolic = it_class(&spec.bundle_class()).map_err(|e| SpectralError::Inconsistent {
        numerical: numerical.to_string(),
        symbolic: e.to_string(),
    })?;
    if numerical != symbolic {
        return Err(SpectralError::Inconsistent {
            numerical: numerical.to_string(),
            symbolic: symbolic.to_string(),
        });
    }
    Ok(numerical)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs_give_the_index() {
        assert_eq!(numerical_it_check(&BundleSpec::from_degrees(&[2]).unwrap(), 16), Ok(ITIndex::Zero));
        assert_eq!(numerical_it_check(&BundleSpec::from_degrees(&[-2]).unwrap(), 16), Ok(ITIndex::One));
    }
}
