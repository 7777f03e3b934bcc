//! Discretized twisted Dolbeault operators `𝒟_w` on the `N×N` grid.
//!
//! Grid index `r = j + N k` for `x = j h`, `y = k h`, `h = 1/N`. Both schemes
//! share the Landau-gauge stencil
//!
//! `(𝒟s)(j,k) = [a_x s(j+1,k) + i a_y e^{-2πi d x h} s(j,k+1) − (1+i) s(j,k)]/2h + σ s(j,k)`
//!
//! with `s(N,k) = e^{2πi d y} s(0,k)`. The twist `w = u + iv` enters either
//! through the link phases `a_x = e^{2πi v h}`, `a_y = e^{−2πi u h}` (link
//! scheme, `σ = 0`) or as the scalar shift `σ = π w` (affine scheme,
//! `a_x = a_y = 1`).

use std::f64::consts::PI;

use faer::Mat;

use crate::torus::LineBundleSpec;
use crate::{Result, SpectralError, C64};

/// Discretization of the twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Scheme {
    /// Twist carried by link phases. Dual-lattice translations act by exact
    /// multiplication operators, so the kernel family closes up exactly.
    #[default]
    LinkTwist,
    /// Twist carried by the scalar shift `π w`, so that `𝒟_w − 𝒟_0 = π w`
    /// holds exactly; translations hold only to first order in `h`.
    AffineShift,
}

impl Scheme {
    pub fn tag(&self) -> &'static str {
        match self {
            Scheme::LinkTwist => "link-twist",
            Scheme::AffineShift => "affine-shift",
        }
    }

    pub fn parse(s: &str) -> Option<Scheme> {
        match s {
            "link-twist" | "link" => Some(Scheme::LinkTwist),
            "affine-shift" | "affine" => Some(Scheme::AffineShift),
            _ => None,
        }
    }
}

/// Stencil form of `𝒟_w`; [`DiracOperator::to_dense`] gives the matrix.
#[derive(Debug, Clone)]
pub struct DiracOperator {
    pub n: usize,
    pub degree: i64,
    /// Requested dual point.
    pub xi: C64,
    /// Flat coordinate actually applied: `xi` plus the bundle's flat twist.
    pub w: C64,
    pub scheme: Scheme,
    x_hop: C64,
    x_wrap: Vec<C64>,
    y_hop: Vec<C64>,
    diag_base: C64,
    shift: C64,
}

/// Smallest admissible grid: at least 8 points per side and magnetic flux
/// per plaquette `2π|d|h²` below `π`.
pub fn check_grid(n: usize, degree: i64) -> Result<()> {
    if degree == 0 {
        return Err(SpectralError::DegreeZero);
    }
    if n < 8 || 2 * degree.unsigned_abs() as usize >= n * n {
        return Err(SpectralError::BadGrid { n, degree });
    }
    Ok(())
}

pub fn build_dirac(spec: &LineBundleSpec, xi: C64, n: usize, scheme: Scheme) -> Result<DiracOperator> {
    check_grid(n, spec.degree)?;
    let w = xi + spec.flat_twist;
    let h = 1.0 / n as f64;
    let d = spec.degree as f64;
    let (ax, ay, shift) = match scheme {
        Scheme::LinkTwist => (
            C64::from_polar(1.0, 2.0 * PI * w.im * h),
            C64::from_polar(1.0, -2.0 * PI * w.re * h),
            C64::new(0.0, 0.0),
        ),
        Scheme::AffineShift => (C64::new(1.0, 0.0), C64::new(1.0, 0.0), PI * w),
    };
    let inv = 0.5 / h;
    let x_wrap = (0..n)
        .map(|k| ax * C64::from_polar(inv, 2.0 * PI * d * k as f64 * h))
        .collect();
    let y_hop = (0..n)
        .map(|j| C64::i() * ay * C64::from_polar(inv, -2.0 * PI * d * j as f64 * h * h))
        .collect();
    Ok(DiracOperator {
        n,
        degree: spec.degree,
        xi,
        w,
        scheme,
        x_hop: ax * inv,
        x_wrap,
        y_hop,
        diag_base: C64::new(-inv, -inv),
        shift,
    })
}

impl DiracOperator {
    pub fn dim(&self) -> usize {
        self.n * self.n
    }

    pub fn scheme_tag(&self) -> &'static str {
        self.scheme.tag()
    }

    pub fn h(&self) -> f64 {
        1.0 / self.n as f64
    }

    pub fn diagonal(&self) -> C64 {
        self.diag_base + self.shift
    }

    /// Coefficient of `s(j+1,k)` in row `(j,k)`, wrap factor included.
    pub fn x_coefficient(&self, j: usize, k: usize) -> C64 {
        if j + 1 < self.n {
            self.x_hop
        } else {
            self.x_wrap[k]
        }
    }

    /// Coefficient of `s(j,k+1)` in row `(j,k)`.
    pub fn y_coefficient(&self, j: usize) -> C64 {
        self.y_hop[j]
    }

    /// Uniform part of the `x` hop, `a_x/2h`.
    pub fn x_hop(&self) -> C64 {
        self.x_hop
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        let n = self.n;
        assert_eq!(v.len(), n * n);
        let diag = self.diagonal();
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for k in 0..n {
            let kn = (k + 1) % n;
            for j in 0..n {
                let r = j + n * k;
                let xs = if j + 1 < n {
                    self.x_hop * v[r + 1]
                } else {
                    self.x_wrap[k] * v[n * k]
                };
                out[r] = xs + self.y_hop[j] * v[j + n * kn] + diag * v[r];
            }
        }
        out
    }

    pub fn apply_adjoint(&self, v: &[C64]) -> Vec<C64> {
        let n = self.n;
        assert_eq!(v.len(), n * n);
        let diag = self.diagonal().conj();
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for k in 0..n {
            let kp = (k + n - 1) % n;
            for j in 0..n {
                let r = j + n * k;
                let xs = if j > 0 {
                    self.x_hop.conj() * v[r - 1]
                } else {
                    self.x_wrap[k].conj() * v[n - 1 + n * k]
                };
                out[r] = xs + self.y_hop[j].conj() * v[j + n * kp] + diag * v[r];
            }
        }
        out
    }

    pub fn to_dense(&self) -> Mat<C64> {
        let n = self.n;
        let mut m = Mat::<C64>::zeros(n * n, n * n);
        let diag = self.diagonal();
        for k in 0..n {
            let kn = (k + 1) % n;
            for j in 0..n {
                let r = j + n * k;
                let xc = if j + 1 < n { r + 1 } else { n * k };
                m[(r, xc)] += self.x_coefficient(j, k);
                m[(r, j + n * kn)] += self.y_hop[j];
                m[(r, r)] += diag;
            }
        }
        m
    }
}

/// Grid coordinates `(x, y)` of index `r`.
pub fn grid_point(n: usize, r: usize) -> (f64, f64) {
    let h = 1.0 / n as f64;
    ((r % n) as f64 * h, (r / n) as f64 * h)
}

/// Smooth bump of radius `0.45` centred in the fundamental domain, modulated
/// by `e^{2πi(k_x x + k_y y)}`; supported away from the gauge seams.
pub fn interior_bump(n: usize, kx: f64, ky: f64) -> Vec<C64> {
    (0..n * n)
        .map(|r| {
            let (x, y) = grid_point(n, r);
            let rr = ((x - 0.5).powi(2) + (y - 0.5).powi(2)) / 0.2025;
            if rr < 1.0 {
                C64::from_polar((-1.0 / (1.0 - rr)).exp(), 2.0 * PI * (kx * x + ky * y))
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect()
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `max_v ‖([𝒟,𝒟*] − π d) v‖ / ‖v‖` over interior bumps `v`; the continuum
/// commutator is `λ/2 = π d`.
pub fn commutator_residual(op: &DiracOperator) -> f64 {
    let target = PI * op.degree as f64;
    let modes = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (1.0, 1.0)];
    modes
        .iter()
        .map(|&(kx, ky)| {
            let v = interior_bump(op.n, kx, ky);
            let a = op.apply(&op.apply_adjoint(&v));
            let b = op.apply_adjoint(&op.apply(&v));
            let r: Vec<C64> = (0..v.len()).map(|i| a[i] - b[i] - target * v[i]).collect();
            norm(&r) / norm(&v)
        })
        .fold(0.0, f64::max)
}

/// Largest entry of `matrix(w) − matrix(0) − π w·Id`, relative to the
/// largest entry of `matrix(0)`.
pub fn affine_law_residual(op_w: &DiracOperator, op_0: &DiracOperator) -> f64 {
    let a = op_w.to_dense();
    let b = op_0.to_dense();
    let dw = PI * (op_w.w - op_0.w);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let expect = if i == j { dw } else { C64::new(0.0, 0.0) };
            worst = worst.max((a[(i, j)] - b[(i, j)] - expect).norm());
            scale = scale.max(b[(i, j)].norm());
        }
    }
    worst / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(d: i64, w: C64, n: usize, s: Scheme) -> DiracOperator {
        build_dirac(&LineBundleSpec::untwisted(d).unwrap(), w, n, s).unwrap()
    }

    #[test]
    fn grid_limits() {
        let l = LineBundleSpec::untwisted(1).unwrap();
        assert!(matches!(build_dirac(&l, C64::new(0.0, 0.0), 4, Scheme::LinkTwist), Err(SpectralError::BadGrid { .. })));
        let big = LineBundleSpec::untwisted(32).unwrap();
        assert!(build_dirac(&big, C64::new(0.0, 0.0), 8, Scheme::LinkTwist).is_err());
    }

    #[test]
    fn stencil_matches_dense() {
        let o = op(2, C64::new(0.3, 0.7), 8, Scheme::LinkTwist);
        let m = o.to_dense();
        let v: Vec<C64> = (0..64).map(|i| C64::new((i as f64).sin(), (i as f64 * 0.3).cos())).collect();
        let a = o.apply(&v);
        let b = o.apply_adjoint(&v);
        for r in 0..64 {
            let mut s = C64::new(0.0, 0.0);
            let mut t = C64::new(0.0, 0.0);
            for c in 0..64 {
                s += m[(r, c)] * v[c];
                t += m[(c, r)].conj() * v[c];
            }
            assert!((s - a[r]).norm() < 1e-12);
            assert!((t - b[r]).norm() < 1e-12);
        }
    }

    #[test]
    fn affine_family_law_is_exact() {
        let w = C64::new(0.37, 0.81);
        let o0 = op(1, C64::new(0.0, 0.0), 16, Scheme::AffineShift);
        let ow = op(1, w, 16, Scheme::AffineShift);
        assert!(affine_law_residual(&ow, &o0) < 1e-15);
        let l0 = op(1, C64::new(0.0, 0.0), 16, Scheme::LinkTwist);
        let lw = op(1, w, 16, Scheme::LinkTwist);
        assert!(affine_law_residual(&lw, &l0) > 1e-3);
    }

    #[test]
    fn commutator_target_is_pi_d() {
        for d in [1, 2] {
            let r32 = commutator_residual(&op(d, C64::new(0.0, 0.0), 32, Scheme::LinkTwist));
            let r64 = commutator_residual(&op(d, C64::new(0.0, 0.0), 64, Scheme::LinkTwist));
            assert!(r64 < r32 / 3.0, "d={d}: {r32} {r64}");
        }
    }
}
