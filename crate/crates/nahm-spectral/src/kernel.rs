//! Near-kernel frames of `𝒟_w` (IT_0) or of `𝒟_w*` (IT_1).

use faer::Mat;

use crate::chain::{FourierChain, YTransform};
use crate::dirac::DiracOperator;
use crate::linalg::columns_to_mat;
use crate::{Result, SpectralError, C64, GAP_THRESHOLD};

/// Which operator's kernel is extracted. The cokernel of `𝒟` is computed as
/// the kernel of its adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelSide {
    Operator,
    Adjoint,
}

impl KernelSide {
    /// `Operator` for positive degree (IT_0), `Adjoint` for negative (IT_1).
    pub fn for_degree(degree: i64) -> KernelSide {
        if degree > 0 {
            KernelSide::Operator
        } else {
            KernelSide::Adjoint
        }
    }
}

/// Extraction algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelMethod {
    /// Full dense SVD.
    Dense,
    /// Fourier-chain recursion with a Lanczos gap bound.
    Chain,
    /// Chain when its truncation residual is below `1e-13`, dense otherwise.
    #[default]
    Auto,
}

impl KernelMethod {
    pub fn parse(s: &str) -> Option<KernelMethod> {
        match s {
            "dense" => Some(KernelMethod::Dense),
            "chain" => Some(KernelMethod::Chain),
            "auto" => Some(KernelMethod::Auto),
            _ => None,
        }
    }
}

/// Orthonormal near-kernel. Columns are normalized in the grid inner product
/// `⟨f,g⟩ = Σ f̄ g h²`.
#[derive(Debug, Clone)]
pub struct KernelFrame {
    pub basis: Mat<C64>,
    pub dim: usize,
    /// First discarded over last retained singular value.
    pub gap_ratio: f64,
    pub xi: C64,
    pub side: KernelSide,
    pub retained_singular: f64,
    pub next_singular: f64,
    pub method: KernelMethod,
}

fn gap_ratio(next: f64, retained: f64, norm: f64) -> f64 {
    next / retained.max(f64::EPSILON * norm)
}

fn finish(frame: KernelFrame, w: C64) -> Result<KernelFrame> {
    if !(frame.gap_ratio >= GAP_THRESHOLD) {
        return Err(SpectralError::GapTooSmall {
            ratio: frame.gap_ratio,
            threshold: GAP_THRESHOLD,
            w,
        });
    }
    Ok(frame)
}

/// Dense SVD kernel on the side dictated by the degree sign.
pub fn kernel_frame(op: &DiracOperator, expected_dim: usize) -> Result<KernelFrame> {
    kernel_frame_with(op, expected_dim, KernelSide::for_degree(op.degree), KernelMethod::Dense)
}

pub fn kernel_frame_with(
    op: &DiracOperator,
    expected_dim: usize,
    side: KernelSide,
    method: KernelMethod,
) -> Result<KernelFrame> {
    match method {
        KernelMethod::Dense => dense_kernel(op, expected_dim, side),
        KernelMethod::Chain => chain_kernel(op, expected_dim, side, None),
        KernelMethod::Auto => {
            let chain = FourierChain::new(op);
            let k = chain.kernel(side, expected_dim);
            if k.vectors.len() == expected_dim && k.min_depth > 30.0 {
                chain_kernel(op, expected_dim, side, Some((chain, k)))
            } else {
                dense_kernel(op, expected_dim, side)
            }
        }
    }
}

fn dense_kernel(op: &DiracOperator, dim: usize, side: KernelSide) -> Result<KernelFrame> {
    let size = op.dim();
    if dim == 0 || dim >= size {
        return Err(SpectralError::ShapeMismatch(format!("kernel dimension {dim}")));
    }
    let svd = op
        .to_dense()
        .svd()
        .map_err(|e| SpectralError::Linalg(format!("{e:?}")))?;
    let s = svd.S().column_vector();
    let vecs = match side {
        KernelSide::Operator => svd.V(),
        KernelSide::Adjoint => svd.U(),
    };
    let scale = op.n as f64;
    let basis = Mat::from_fn(size, dim, |i, j| vecs[(i, size - dim + j)] * scale);
    let retained = s[size - dim].re;
    let next = s[size - dim - 1].re;
    let frame = KernelFrame {
        basis,
        dim,
        gap_ratio: gap_ratio(next, retained, s[0].re),
        xi: op.xi,
        side,
        retained_singular: retained,
        next_singular: next,
        method: KernelMethod::Dense,
    };
    finish(frame, op.w)
}

fn chain_kernel(
    op: &DiracOperator,
    dim: usize,
    side: KernelSide,
    precomputed: Option<(FourierChain, crate::chain::ChainKernel)>,
) -> Result<KernelFrame> {
    let k = match precomputed {
        Some((_, k)) => k,
        None => FourierChain::new(op).kernel(side, dim),
    };
    let ratio = if k.vectors.len() == dim {
        gap_ratio(k.next_singular, k.residual, k.norm_bound)
    } else {
        0.0
    };
    let yt = YTransform::new(op.n);
    let cols: Vec<Vec<C64>> = k.vectors.iter().map(|v| yt.to_real(v)).collect();
    let frame = KernelFrame {
        basis: columns_to_mat(&cols, op.n as f64),
        dim: cols.len(),
        gap_ratio: ratio,
        xi: op.xi,
        side,
        retained_singular: k.residual,
        next_singular: k.next_singular,
        method: KernelMethod::Chain,
    };
    finish(frame, op.w)
}

/// Gauge-covariant roughness `(‖∇_x f‖² + ‖∇_y f‖²)·h²/‖f‖²` of a grid
/// section, using unit-step link differences. Smooth sections give `O(h²)`
/// values, lattice doublers give values of order one.
pub fn roughness(op: &DiracOperator, f: &[C64]) -> f64 {
    let n = op.n;
    let h = op.h();
    let mut num = 0.0;
    let mut den = 0.0;
    let inv = 2.0 * h;
    for k in 0..n {
        for j in 0..n {
            let r = j + n * k;
            let xn = if j + 1 < n { f[r + 1] * op.x_coefficient(j, k) * inv } else { f[n * k] * op.x_coefficient(j, k) * inv };
            let yn = f[j + n * ((k + 1) % n)] * op.y_coefficient(j) * inv * C64::new(0.0, -1.0);
            num += (xn - f[r]).norm_sqr() + (yn - f[r]).norm_sqr();
            den += f[r].norm_sqr();
        }
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{build_dirac, Scheme};
    use crate::linalg::{max_abs_diff, overlap};
    use crate::torus::LineBundleSpec;

    fn op(d: i64, w: C64, n: usize) -> DiracOperator {
        build_dirac(&LineBundleSpec::untwisted(d).unwrap(), w, n, Scheme::LinkTwist).unwrap()
    }

    fn projector(f: &KernelFrame, n: usize) -> Mat<C64> {
        let h2 = 1.0 / (n * n) as f64;
        let mut p = &f.basis * f.basis.adjoint();
        for j in 0..p.ncols() {
            for i in 0..p.nrows() {
                p[(i, j)] *= h2;
            }
        }
        p
    }

    #[test]
    fn chain_agrees_with_dense() {
        for (d, w) in [(1, C64::new(0.3, 0.6)), (2, C64::new(0.0, 0.0)), (-1, C64::new(0.8, 0.1))] {
            let o = op(d, w, 16);
            let side = KernelSide::for_degree(d);
            let dense = kernel_frame_with(&o, d.unsigned_abs() as usize, side, KernelMethod::Dense).unwrap();
            let chain = kernel_frame_with(&o, d.unsigned_abs() as usize, side, KernelMethod::Chain).unwrap();
            let diff = max_abs_diff(projector(&dense, 16).as_ref(), projector(&chain, 16).as_ref());
            assert!(diff < 1e-8, "d={d}: {diff}");
            assert!((dense.next_singular - chain.next_singular).abs() < 1e-6 * dense.next_singular);
            let g = overlap(chain.basis.as_ref(), chain.basis.as_ref(), 1.0 / 256.0);
            assert!(max_abs_diff(g.as_ref(), Mat::<C64>::identity(chain.dim, chain.dim).as_ref()) < 1e-12);
        }
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let o = op(1, C64::new(0.0, 0.0), 16);
        assert!(matches!(kernel_frame(&o, 2), Err(SpectralError::GapTooSmall { .. })));
        assert!(matches!(
            kernel_frame_with(&o, 2, KernelSide::Operator, KernelMethod::Chain),
            Err(SpectralError::GapTooSmall { .. })
        ));
    }

    #[test]
    fn smooth_and_doubler_roughness_separate() {
        let o = op(1, C64::new(0.0, 0.0), 16);
        let smooth = kernel_frame_with(&o, 1, KernelSide::Operator, KernelMethod::Dense).unwrap();
        let doubler = kernel_frame_with(&o, 1, KernelSide::Adjoint, KernelMethod::Dense).unwrap();
        let col = |f: &KernelFrame| (0..256).map(|i| f.basis[(i, 0)]).collect::<Vec<_>>();
        assert!(roughness(&o, &col(&smooth)) < 0.25);
        assert!(roughness(&o, &col(&doubler)) > 0.25);
    }
}
