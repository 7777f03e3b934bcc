//! Lattice field strength of a family of frames.
//!
//! For frames `F(a,b)` on an `M×M` grid, the link variables are
//! `U_u(a,b) = F(a,b)^H F(a+1,b)` and `U_v(a,b) = F(a,b)^H F(a,b+1)` in the
//! grid inner product. The plaquette phase is minus the argument of the
//! determinant of their ordered product around the plaquette; phases sum to
//! `2π` times an integer, the degree of the index bundle.

use std::f64::consts::PI;
use std::fmt::Write as _;

use faer::Mat;

use crate::linalg::{overlap, singular_values};
use crate::sweep::TransformSweep;
use crate::{Result, SpectralError, C64};

/// Smallest admissible singular value of a link overlap.
pub const MIN_LINK_SINGULAR: f64 = 1e-8;

/// Link overlaps of a periodic family of frames.
#[derive(Debug, Clone)]
pub struct LinkField {
    pub m: usize,
    pub u: Vec<Mat<C64>>,
    pub v: Vec<Mat<C64>>,
    pub min_singular: f64,
}

impl LinkField {
    /// `frame(a, b)` must accept `0 ≤ a, b ≤ m` and apply the boundary
    /// identifications on the far edges.
    pub fn new(m: usize, weight: f64, frame: impl Fn(usize, usize) -> Mat<C64>) -> Result<LinkField> {
        let mut u = Vec::with_capacity(m * m);
        let mut v = Vec::with_capacity(m * m);
        let mut min_singular = f64::INFINITY;
        let mut grid: Vec<Mat<C64>> = Vec::with_capacity((m + 1) * (m + 1));
        for b in 0..=m {
            for a in 0..=m {
                grid.push(frame(a, b));
            }
        }
        let at = |a: usize, b: usize| &grid[a + (m + 1) * b];
        for b in 0..m {
            for a in 0..m {
                let lu = overlap(at(a, b).as_ref(), at(a + 1, b).as_ref(), weight);
                let lv = overlap(at(a, b).as_ref(), at(a, b + 1).as_ref(), weight);
                for l in [&lu, &lv] {
                    let s = singular_values(l.as_ref())?;
                    min_singular = min_singular.min(*s.last().unwrap_or(&0.0));
                }
                u.push(lu);
                v.push(lv);
            }
        }
        if !(min_singular > MIN_LINK_SINGULAR) {
            return Err(SpectralError::SingularOverlap(min_singular));
        }
        Ok(LinkField { m, u, v, min_singular })
    }

    pub fn u(&self, a: usize, b: usize) -> &Mat<C64> {
        &self.u[a % self.m + self.m * (b % self.m)]
    }

    pub fn v(&self, a: usize, b: usize) -> &Mat<C64> {
        &self.v[a % self.m + self.m * (b % self.m)]
    }

    /// Plaquette phases indexed by `a + m b`.
    pub fn plaquette_phases(&self) -> Vec<f64> {
        let m = self.m;
        let dets: Vec<(C64, C64)> = self
            .u
            .iter()
            .zip(&self.v)
            .map(|(u, v)| (u.determinant(), v.determinant()))
            .collect();
        let du = |a: usize, b: usize| dets[a % m + m * (b % m)].0;
        let dv = |a: usize, b: usize| dets[a % m + m * (b % m)].1;
        let mut out = Vec::with_capacity(m * m);
        for b in 0..m {
            for a in 0..m {
                let loop_ = du(a, b) * dv(a + 1, b) * du(a, b + 1).conj() * dv(a, b).conj();
                out.push(-loop_.arg());
            }
        }
        out
    }
}

/// Per-plaquette curvature of an index bundle.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureMap {
    pub m: usize,
    pub rank: usize,
    pub plaquette_phases: Vec<f64>,
    pub chern: i64,
    /// `Σ phases / 2π` before rounding.
    pub chern_sum: f64,
    /// Mean of `phase · M² / rank`, the trace part of `iΛF̂`.
    pub mean_curvature_density: f64,
    pub max_relative_deviation: f64,
    pub min_link_singular: f64,
}

impl CurvatureMap {
    pub fn from_links(links: &LinkField, rank: usize) -> CurvatureMap {
        let m = links.m;
        let phases = links.plaquette_phases();
        let total: f64 = phases.iter().sum();
        let chern_sum = total / (2.0 * PI);
        let scale = (m * m) as f64 / rank as f64;
        let mean = phases.iter().map(|p| p * scale).sum::<f64>() / phases.len() as f64;
        let dev = phases
            .iter()
            .map(|p| (p * scale - mean).abs())
            .fold(0.0, f64::max)
            / mean.abs();
        CurvatureMap {
            m,
            rank,
            plaquette_phases: phases,
            chern: chern_sum.round() as i64,
            chern_sum,
            mean_curvature_density: mean,
            max_relative_deviation: dev,
            min_link_singular: links.min_singular,
        }
    }

    pub fn density(&self, a: usize, b: usize) -> f64 {
        self.plaquette_phases[a + self.m * b] * (self.m * self.m) as f64 / self.rank as f64
    }

    /// Heatmap rows `i, j, w_re, w_im, plaquette_phase`, with `w` the
    /// plaquette centre.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,w_re,w_im,plaquette_phase\n");
        let m = self.m as f64;
        for b in 0..self.m {
            for a in 0..self.m {
                let p = self.plaquette_phases[a + self.m * b];
                let _ = writeln!(s, "{a},{b},{:.11e},{:.11e},{:.11e}", (a as f64 + 0.5) / m, (b as f64 + 0.5) / m, p);
            }
        }
        s
    }
}

pub fn sweep_links(sweep: &TransformSweep) -> Result<LinkField> {
    LinkField::new(sweep.m, sweep.weight(), |a, b| sweep.extended(a, b))
}

pub fn berry_curvature(sweep: &TransformSweep) -> Result<CurvatureMap> {
    let links = sweep_links(sweep)?;
    Ok(CurvatureMap::from_links(&links, sweep.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::transform_sweep;
    use crate::torus::BundleSpec;

    #[test]
    fn degree_one_has_chern_minus_one() {
        let sweep = transform_sweep(&BundleSpec::from_degrees(&[1]).unwrap(), 8, 16).unwrap();
        let c = berry_curvature(&sweep).unwrap();
        assert_eq!(c.chern, -1);
        assert!((c.chern_sum + 1.0).abs() < 1e-10);
        assert!((c.mean_curvature_density + 2.0 * PI).abs() < 1e-9);
        assert_eq!(c.to_csv().lines().count(), 65);
    }
}
