//! Kernel frames over an `M×M` grid of dual points `w = w₀ + (a + i b)/M`.

use std::f64::consts::PI;

use faer::Mat;
use rayon::prelude::*;

use crate::dirac::{build_dirac, check_grid, grid_point, DiracOperator, Scheme};
use crate::kernel::{kernel_frame_with, KernelFrame, KernelMethod, KernelSide};
use crate::linalg::scale_rows;
use crate::torus::BundleSpec;
use crate::{Result, SpectralError, C64};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    pub scheme: Scheme,
    pub method: KernelMethod,
    /// Allowed relative residual of the conjugation identity.
    pub boundary_tolerance: f64,
    /// Dual point of grid index `(0, 0)`.
    pub origin: C64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            scheme: Scheme::LinkTwist,
            method: KernelMethod::Auto,
            boundary_tolerance: 1e-10,
            origin: C64::new(0.0, 0.0),
        }
    }
}

/// Multiplication operators identifying the fibres at `w` and `w + 1`
/// (`χ_1 = e^{2πi y}`) and at `w` and `w + i` (`χ_i = e^{−2πi x}`):
/// `χ 𝒟_w χ⁻¹ = 𝒟_{w+λ̂}`, so `ker 𝒟_{w+λ̂} = χ·ker 𝒟_w`.
#[derive(Debug, Clone)]
pub struct BoundaryMaps {
    pub chi_one: Vec<C64>,
    pub chi_i: Vec<C64>,
}

impl BoundaryMaps {
    pub fn new(n: usize) -> BoundaryMaps {
        let (chi_one, chi_i) = (0..n * n)
            .map(|r| {
                let (x, y) = grid_point(n, r);
                (C64::from_polar(1.0, 2.0 * PI * y), C64::from_polar(1.0, -2.0 * PI * x))
            })
            .unzip();
        BoundaryMaps { chi_one, chi_i }
    }
}

#[derive(Debug, Clone)]
pub struct TransformSweep {
    pub spec: BundleSpec,
    pub n: usize,
    pub m: usize,
    pub options: SweepOptions,
    pub side: KernelSide,
    /// Frames indexed by `a + m b`; rows are stacked per summand.
    pub frames: Vec<KernelFrame>,
    pub boundary_maps: BoundaryMaps,
    pub boundary_residual: f64,
}

pub fn dual_point(a: usize, b: usize, m: usize) -> C64 {
    C64::new(a as f64, b as f64) / m as f64
}

fn test_vector(len: usize, seed: f64) -> Vec<C64> {
    (0..len)
        .map(|t| {
            let s = t as f64 + seed;
            C64::new((s * 0.754_877_666_2).fract() - 0.5, (s * 0.569_840_291).fract() - 0.5)
        })
        .collect()
}

fn rel_diff(a: &[C64], b: &[C64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

/// Largest relative residual of `𝒟_{w+λ̂}(χ v) = χ 𝒟_w v` over a few
/// sample points and vectors.
pub fn boundary_residual(spec: &BundleSpec, n: usize, scheme: Scheme, maps: &BoundaryMaps) -> Result<f64> {
    let samples = [C64::new(0.0, 0.0), C64::new(0.37, 0.61)];
    let mut worst: f64 = 0.0;
    for line in spec.summands() {
        for (s, &w) in samples.iter().enumerate() {
            let base = build_dirac(line, w, n, scheme)?;
            for (chi, shift) in [(&maps.chi_one, C64::new(1.0, 0.0)), (&maps.chi_i, C64::new(0.0, 1.0))] {
                let moved = build_dirac(line, w + shift, n, scheme)?;
                let v = test_vector(n * n, s as f64 * 17.0);
                let cv: Vec<C64> = v.iter().zip(chi).map(|(x, c)| x * c).collect();
                let lhs = moved.apply(&cv);
                let rhs: Vec<C64> = base.apply(&v).iter().zip(chi).map(|(x, c)| x * c).collect();
                worst = worst.max(rel_diff(&lhs, &rhs));
            }
        }
    }
    Ok(worst)
}

fn block_frame(ops: &[DiracOperator], spec: &BundleSpec, side: KernelSide, method: KernelMethod) -> Result<KernelFrame> {
    let n2 = ops[0].dim();
    let parts = ops
        .iter()
        .zip(spec.summands())
        .map(|(op, line)| kernel_frame_with(op, line.degree.unsigned_abs() as usize, side, method))
        .collect::<Result<Vec<_>>>()?;
    if parts.len() == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    let dim: usize = parts.iter().map(|p| p.dim).sum();
    let mut basis = Mat::<C64>::zeros(n2 * parts.len(), dim);
    let mut col = 0;
    for (s, p) in parts.iter().enumerate() {
        for j in 0..p.dim {
            for i in 0..n2 {
                basis[(s * n2 + i, col + j)] = p.basis[(i, j)];
            }
        }
        col += p.dim;
    }
    Ok(KernelFrame {
        basis,
        dim,
        gap_ratio: parts.iter().map(|p| p.gap_ratio).fold(f64::INFINITY, f64::min),
        xi: parts[0].xi,
        side,
        retained_singular: parts.iter().map(|p| p.retained_singular).fold(0.0, f64::max),
        next_singular: parts.iter().map(|p| p.next_singular).fold(f64::INFINITY, f64::min),
        method: parts[0].method,
    })
}

pub fn transform_sweep(spec: &BundleSpec, m: usize, n: usize) -> Result<TransformSweep> {
    transform_sweep_with(spec, m, n, SweepOptions::default())
}

pub fn transform_sweep_with(spec: &BundleSpec, m: usize, n: usize, options: SweepOptions) -> Result<TransformSweep> {
    if m < 8 {
        return Err(SpectralError::DualGridTooSmall(m));
    }
    for line in spec.summands() {
        check_grid(n, line.degree)?;
    }
    let maps = BoundaryMaps::new(n);
    let residual = boundary_residual(spec, n, options.scheme, &maps)?;
    if !(residual < options.boundary_tolerance) {
        return Err(SpectralError::BoundaryCheckFailed {
            residual,
            tolerance: options.boundary_tolerance,
        });
    }
    let side = KernelSide::for_degree(spec.sign());
    let frames = (0..m * m)
        .into_par_iter()
        .map(|idx| {
            let w = options.origin + dual_point(idx % m, idx / m, m);
            let ops = spec
                .summands()
                .iter()
                .map(|line| build_dirac(line, w, n, options.scheme))
                .collect::<Result<Vec<_>>>()?;
            block_frame(&ops, spec, side, options.method)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransformSweep {
        spec: spec.clone(),
        n,
        m,
        options,
        side,
        frames,
        boundary_maps: maps,
        boundary_residual: residual,
    })
}

impl TransformSweep {
    pub fn rank(&self) -> usize {
        self.frames[0].dim
    }

    pub fn frame(&self, a: usize, b: usize) -> &KernelFrame {
        &self.frames[a + self.m * b]
    }

    /// Frame at `(a, b)` with `0 ≤ a, b ≤ m`, the far edges obtained from the
    /// fundamental domain through the boundary maps.
    pub fn extended(&self, a: usize, b: usize) -> Mat<C64> {
        let f = &self.frame(a % self.m, b % self.m).basis;
        match (a == self.m, b == self.m) {
            (false, false) => f.clone(),
            (true, false) => scale_rows(f.as_ref(), &self.boundary_maps.chi_one),
            (false, true) => scale_rows(f.as_ref(), &self.boundary_maps.chi_i),
            (true, true) => {
                let both: Vec<C64> = self
                    .boundary_maps
                    .chi_one
                    .iter()
                    .zip(&self.boundary_maps.chi_i)
                    .map(|(p, q)| p * q)
                    .collect();
                scale_rows(f.as_ref(), &both)
            }
        }
    }

    /// Grid inner-product weight `h²`.
    pub fn weight(&self) -> f64 {
        1.0 / (self.n * self.n) as f64
    }

    pub fn min_gap_ratio(&self) -> f64 {
        self.frames.iter().map(|f| f.gap_ratio).fold(f64::INFINITY, f64::min)
    }

    /// True when the kernel dimension is the same at every grid point.
    pub fn index_is_stable(&self) -> bool {
        self.frames.iter().all(|f| f.dim == self.frames[0].dim)
    }
}
