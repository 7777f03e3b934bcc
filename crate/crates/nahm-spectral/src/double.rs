//! Two successive transforms of a positive line bundle.
//!
//! The first leg produces frames `F(a,b)` of `Ê` over the dual grid. Their
//! unitary link variables `U = polar(F^H F')` define the projected
//! connection on `Ê`, and the second leg discretizes the Dolbeault operator
//! of `Ê ⊗ P_x` on the `M×M` dual lattice with the same link-twist scheme:
//!
//! `(𝒟̂σ)(a,b) = [t_u U_u σ(a+1,b) − σ + i(t_v U_v σ(a,b+1) − σ)]/2ĥ`,
//!
//! with `t_u = e^{2πi q ĥ}`, `t_v = e^{−2πi p ĥ}` for `x = p + iq`. Since `Ê`
//! has negative degree the second leg is IT_1 and its fibres are kernels
//! of the adjoint.

use std::f64::consts::PI;

use faer::Mat;
use rayon::prelude::*;

use crate::curvature::{sweep_links, CurvatureMap, LinkField};
use crate::kernel::KernelSide;
use crate::linalg::{polar, scale_rows};
use crate::sweep::{dual_point, transform_sweep, TransformSweep};
use crate::torus::{BundleSpec, LineBundleSpec};
use crate::{Result, SpectralError, C64, GAP_THRESHOLD};

#[derive(Debug, Clone)]
pub struct DoubleTransform {
    /// Constant-curvature factor measured after both legs.
    pub lambda_out: f64,
    /// `2π·degree` of the input.
    pub lambda_in: f64,
    pub first: CurvatureMap,
    pub second: CurvatureMap,
    /// `(rank, degree)` after both legs.
    pub chern_pair: (i64, i64),
    pub second_side: KernelSide,
    pub min_gap_ratio: f64,
}

/// Dolbeault operator of the transformed bundle on the dual lattice.
#[derive(Debug, Clone)]
pub struct DualDirac {
    pub m: usize,
    pub rank: usize,
    u: Vec<Mat<C64>>,
    v: Vec<Mat<C64>>,
}

impl DualDirac {
    pub fn from_links(links: &LinkField, rank: usize) -> Result<DualDirac> {
        let u = links.u.iter().map(|l| polar(l.as_ref())).collect::<Result<Vec<_>>>()?;
        let v = links.v.iter().map(|l| polar(l.as_ref())).collect::<Result<Vec<_>>>()?;
        Ok(DualDirac { m: links.m, rank, u, v })
    }

    pub fn dim(&self) -> usize {
        self.m * self.m * self.rank
    }

    pub fn matrix(&self, x: C64) -> Mat<C64> {
        let (m, r) = (self.m, self.rank);
        let hh = 1.0 / m as f64;
        let inv = 0.5 / hh;
        let tu = C64::from_polar(inv, 2.0 * PI * x.im * hh);
        let tv = C64::i() * C64::from_polar(inv, -2.0 * PI * x.re * hh);
        let mut mat = Mat::<C64>::zeros(self.dim(), self.dim());
        let idx = |a: usize, b: usize, k: usize| ((a % m) + m * (b % m)) * r + k;
        for b in 0..m {
            for a in 0..m {
                let site = a + m * b;
                for i in 0..r {
                    let row = idx(a, b, i);
                    mat[(row, row)] += C64::new(-inv, -inv);
                    for j in 0..r {
                        mat[(row, idx(a + 1, b, j))] += tu * self.u[site][(i, j)];
                        mat[(row, idx(a, b + 1, j))] += tv * self.v[site][(i, j)];
                    }
                }
            }
        }
        mat
    }
}

struct DualFrame {
    basis: Mat<C64>,
    gap_ratio: f64,
}

fn dual_kernel(op: &DualDirac, x: C64, dim: usize, side: KernelSide) -> Result<DualFrame> {
    let size = op.dim();
    let svd = op.matrix(x).svd().map_err(|e| SpectralError::Linalg(format!("{e:?}")))?;
    let s = svd.S().column_vector();
    let vecs = match side {
        KernelSide::Operator => svd.V(),
        KernelSide::Adjoint => svd.U(),
    };
    let scale = op.m as f64;
    let basis = Mat::from_fn(size, dim, |i, j| vecs[(i, size - dim + j)] * scale);
    let retained = s[size - dim].re.max(f64::EPSILON * s[0].re);
    let gap_ratio = s[size - dim - 1].re / retained;
    if !(gap_ratio >= GAP_THRESHOLD) {
        return Err(SpectralError::GapTooSmall { ratio: gap_ratio, threshold: GAP_THRESHOLD, w: x });
    }
    Ok(DualFrame { basis, gap_ratio })
}

pub fn double_transform(spec: &LineBundleSpec, m: usize, n: usize) -> Result<DoubleTransform> {
    double_transform_with(spec, m, n, m)
}

/// `m` is the first-leg dual grid (and second-leg lattice), `m2` the grid
/// of points `x` on the original torus.
pub fn double_transform_with(spec: &LineBundleSpec, m: usize, n: usize, m2: usize) -> Result<DoubleTransform> {
    if spec.degree <= 0 {
        return Err(SpectralError::NonPositiveDegree);
    }
    let sweep: TransformSweep = transform_sweep(&BundleSpec::line(*spec), m, n)?;
    let links = sweep_links(&sweep)?;
    let first = CurvatureMap::from_links(&links, sweep.rank());
    let op = DualDirac::from_links(&links, sweep.rank())?;
    let side = KernelSide::for_degree(first.chern);
    let dim = first.chern.unsigned_abs() as usize;
    let frames = (0..m2 * m2)
        .into_par_iter()
        .map(|idx| dual_kernel(&op, dual_point(idx % m2, idx / m2, m2), dim, side))
        .collect::<Result<Vec<_>>>()?;
    let min_gap_ratio = frames.iter().map(|f| f.gap_ratio).fold(f64::INFINITY, f64::min);
    let r = op.rank;
    let sites = op.dim();
    let hh = 1.0 / m as f64;
    let chi_one: Vec<C64> = (0..sites).map(|i| C64::from_polar(1.0, 2.0 * PI * ((i / r) / m) as f64 * hh)).collect();
    let chi_i: Vec<C64> = (0..sites).map(|i| C64::from_polar(1.0, -2.0 * PI * ((i / r) % m) as f64 * hh)).collect();
    let both: Vec<C64> = chi_one.iter().zip(&chi_i).map(|(p, q)| p * q).collect();
    let extended = |a: usize, b: usize| {
        let f = &frames[(a % m2) + m2 * (b % m2)].basis;
        match (a == m2, b == m2) {
            (false, false) => f.clone(),
            (true, false) => scale_rows(f.as_ref(), &chi_one),
            (false, true) => scale_rows(f.as_ref(), &chi_i),
            (true, true) => scale_rows(f.as_ref(), &both),
        }
    };
    let second_links = LinkField::new(m2, hh * hh, extended)?;
    let second = CurvatureMap::from_links(&second_links, dim);
    Ok(DoubleTransform {
        lambda_out: second.mean_curvature_density,
        lambda_in: 2.0 * PI * spec.degree as f64,
        chern_pair: (dim as i64, second.chern),
        first,
        second,
        second_side: side,
        min_gap_ratio,
    })
}
