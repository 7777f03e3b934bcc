//! Fourier-chain solver for the near-kernel of the stencil operator.
//!
//! In the basis `s(j,k) = N^{-1/2} Σ_q ŝ(j,q) e^{2πi q k/N}` the operator
//! becomes `(𝒟̂ŝ)(i) = c_i ŝ(i) + a ŝ(π(i))` with `π(j,q) = (j+1,q)` and
//! `π(N−1,q) = (0,q−d)`. The permutation `π` splits the index set into
//! `gcd(d,N)` cycles. Along a cycle a kernel vector obeys the two-term
//! recursion `x_{π(i)} = −(c_i/a) x_i`, so near-kernel vectors are bumps that
//! start where `|c/a|` drops below one and are truncated once they have
//! decayed below `1e-18`. The adjoint runs the same recursion backwards with
//! conjugated coefficients.
//!
//! The next singular value comes from shift-invert Lanczos on the cyclic
//! tridiagonal matrices `𝒟̂^H𝒟̂` (or `𝒟̂𝒟̂^H`) restricted to each cycle and
//! deflated against the retained bumps.

use std::f64::consts::PI;
use std::sync::Arc;

use faer::{Mat, Side};
use rustfft::{Fft, FftPlanner};

use crate::dirac::DiracOperator;
use crate::kernel::KernelSide;
use crate::linalg::orthonormalize;
use crate::C64;

/// Log of the relative amplitude at which bumps are truncated.
const CUTOFF: f64 = -41.5;
const MAX_LANCZOS: usize = 80;

#[derive(Debug, Clone)]
pub struct FourierChain {
    n: usize,
    a: C64,
    c: Vec<C64>,
    cycles: Vec<Vec<usize>>,
}

/// A truncated solution of the kernel recursion along one cycle.
#[derive(Debug, Clone)]
pub struct Bump {
    pub cycle: usize,
    /// Minus the log of the truncation residual relative to `|a|`.
    pub depth: f64,
    pub positions: Vec<usize>,
    pub values: Vec<C64>,
}

/// Orthonormal near-kernel in the Fourier basis with its error budget.
#[derive(Debug, Clone)]
pub struct ChainKernel {
    pub vectors: Vec<Vec<C64>>,
    pub min_depth: f64,
    /// Frobenius norm of the operator on the orthonormal vectors; bounds the
    /// largest retained singular value from above.
    pub residual: f64,
    /// Lower bound on the first discarded singular value.
    pub next_singular: f64,
    /// Upper bound on the operator norm.
    pub norm_bound: f64,
}

impl FourierChain {
    pub fn new(op: &DiracOperator) -> FourierChain {
        let n = op.n;
        let h = op.h();
        let d = op.degree.rem_euclid(n as i64) as usize;
        let diag = op.diagonal();
        let mut c = vec![C64::new(0.0, 0.0); n * n];
        for q in 0..n {
            let phase = C64::from_polar(1.0, 2.0 * PI * q as f64 * h);
            for j in 0..n {
                c[j + n * q] = diag + op.y_coefficient(j) * phase;
            }
        }
        let next = |i: usize| {
            let (j, q) = (i % n, i / n);
            if j + 1 < n {
                i + 1
            } else {
                n * ((q + n - d) % n)
            }
        };
        let mut seen = vec![false; n * n];
        let mut cycles = Vec::new();
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = next(i);
            }
            cycles.push(cyc);
        }
        FourierChain { n, a: op.x_hop(), c, cycles }
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn norm_bound(&self) -> f64 {
        self.a.norm() + self.c.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `𝒟̂x` or `𝒟̂^H x` in the Fourier basis.
    pub fn apply(&self, x: &[C64], side: KernelSide) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); x.len()];
        for cyc in &self.cycles {
            let l = cyc.len();
            for t in 0..l {
                let i = cyc[t];
                out[i] = match side {
                    KernelSide::Operator => self.c[i] * x[i] + self.a * x[cyc[(t + 1) % l]],
                    KernelSide::Adjoint => {
                        self.c[i].conj() * x[i] + self.a.conj() * x[cyc[(t + l - 1) % l]]
                    }
                };
            }
        }
        out
    }

    /// Traversal order and recursion ratios `x_{t+1} = r_t x_t` for `side`.
    fn recursion(&self, cycle: usize, side: KernelSide) -> (Vec<usize>, Vec<C64>) {
        let cyc = &self.cycles[cycle];
        match side {
            KernelSide::Operator => {
                let r = cyc.iter().map(|&i| -self.c[i] / self.a).collect();
                (cyc.clone(), r)
            }
            KernelSide::Adjoint => {
                let seq: Vec<usize> = cyc.iter().rev().copied().collect();
                let r = seq.iter().map(|&i| -self.c[i].conj() / self.a.conj()).collect();
                (seq, r)
            }
        }
    }

    /// All bumps of the recursion, one per crossing into a decaying stretch.
    pub fn bumps(&self, side: KernelSide) -> Vec<Bump> {
        let mut out = Vec::new();
        for cycle in 0..self.cycles.len() {
            let (seq, r) = self.recursion(cycle, side);
            out.extend(bumps_on(cycle, &seq, &r));
        }
        out
    }

    /// The `dim` deepest bumps, orthonormalized, with residual and gap bounds.
    pub fn kernel(&self, side: KernelSide, dim: usize) -> ChainKernel {
        let mut all = self.bumps(side);
        all.sort_by(|a, b| b.depth.total_cmp(&a.depth));
        all.truncate(dim);
        let size = self.n * self.n;
        let mut vectors: Vec<Vec<C64>> = all
            .iter()
            .map(|b| {
                let mut v = vec![C64::new(0.0, 0.0); size];
                for (&p, &x) in b.positions.iter().zip(&b.values) {
                    v[p] = x;
                }
                v
            })
            .collect();
        orthonormalize(&mut vectors);
        let residual = vectors
            .iter()
            .map(|v| self.apply(v, side).iter().map(|z| z.norm_sqr()).sum::<f64>())
            .sum::<f64>()
            .sqrt();
        let next = (0..self.cycles.len())
            .map(|cycle| self.lowest_deflated_eigenvalue(cycle, side, &vectors))
            .fold(f64::INFINITY, f64::min);
        ChainKernel {
            min_depth: all.iter().map(|b| b.depth).fold(f64::INFINITY, f64::min),
            vectors,
            residual,
            next_singular: next.max(0.0).sqrt(),
            norm_bound: self.norm_bound(),
        }
    }

    /// Diagonal and superdiagonal of the cyclic tridiagonal `𝒟̂^H𝒟̂`
    /// (operator side) or `𝒟̂𝒟̂^H` (adjoint side) on one cycle.
    fn normal_matrix(&self, cycle: usize, side: KernelSide) -> (Vec<f64>, Vec<C64>) {
        let cyc = &self.cycles[cycle];
        let l = cyc.len();
        let a2 = self.a.norm_sqr();
        let diag = cyc.iter().map(|&i| self.c[i].norm_sqr() + a2).collect();
        let sup = (0..l)
            .map(|t| match side {
                KernelSide::Operator => self.c[cyc[t]].conj() * self.a,
                KernelSide::Adjoint => self.a * self.c[cyc[(t + 1) % l]].conj(),
            })
            .collect();
        (diag, sup)
    }

    /// Lower bound for the smallest eigenvalue of the normal matrix on one
    /// cycle, restricted to the complement of `deflate`.
    fn lowest_deflated_eigenvalue(&self, cycle: usize, side: KernelSide, deflate: &[Vec<C64>]) -> f64 {
        let cyc = &self.cycles[cycle];
        let local: Vec<Vec<C64>> = deflate
            .iter()
            .map(|v| cyc.iter().map(|&i| v[i]).collect::<Vec<_>>())
            .filter(|v: &Vec<C64>| v.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-24)
            .collect();
        let (diag, sup) = self.normal_matrix(cycle, side);
        let solver = CyclicSolver::new(&diag, &sup, 1.0);
        let theta = lanczos_top(cyc.len(), &local, |x| solver.solve(x));
        1.0 / theta - 1.0
    }
}

fn bumps_on(cycle: usize, seq: &[usize], r: &[C64]) -> Vec<Bump> {
    let len = seq.len();
    let l: Vec<f64> = r.iter().map(|z| z.norm().ln()).collect();
    let mut out = Vec::new();
    for p in 0..len {
        if !(l[(p + len - 1) % len] > 0.0 && l[p] <= 0.0) {
            continue;
        }
        let mut fwd = vec![C64::new(1.0, 0.0)];
        let mut logv = 0.0;
        let mut t = p;
        let fwd_end = loop {
            let nl = logv + l[t];
            if l[t] > 0.0 || fwd.len() >= len {
                break nl;
            }
            let x = *fwd.last().unwrap() * r[t];
            fwd.push(x);
            logv = nl;
            t = (t + 1) % len;
            if logv < CUTOFF {
                break logv + l[t];
            }
        };
        let mut bwd: Vec<C64> = Vec::new();
        let mut logv = 0.0;
        let mut x = C64::new(1.0, 0.0);
        let mut t = (p + len - 1) % len;
        let bwd_end = loop {
            if l[t] <= 0.0 || fwd.len() + bwd.len() >= len {
                break logv;
            }
            x /= r[t];
            logv -= l[t];
            bwd.push(x);
            if logv < CUTOFF {
                break logv;
            }
            t = (t + len - 1) % len;
        };
        let start = (p + len - bwd.len()) % len;
        let values: Vec<C64> = bwd.into_iter().rev().chain(fwd).collect();
        let positions = (0..values.len()).map(|s| seq[(start + s) % len]).collect();
        out.push(Bump {
            cycle,
            depth: -fwd_end.max(bwd_end),
            positions,
            values,
        });
    }
    out
}

/// Solver for `(T + shift·I) x = b` with `T` Hermitian cyclic tridiagonal:
/// Thomas elimination plus a Sherman–Morrison correction for the corners.
struct CyclicSolver {
    diag: Vec<C64>,
    sup: Vec<C64>,
    sub: Vec<C64>,
    z: Vec<C64>,
    vl: C64,
    denom: C64,
}

impl CyclicSolver {
    fn new(diag: &[f64], sup: &[C64], shift: f64) -> CyclicSolver {
        let l = diag.len();
        let alpha = sup[l - 1];
        let beta = sup[l - 1].conj();
        let b0 = C64::new(diag[0] + shift, 0.0);
        let gamma = -b0;
        let mut d: Vec<C64> = diag.iter().map(|&x| C64::new(x + shift, 0.0)).collect();
        d[0] -= gamma;
        d[l - 1] -= alpha * beta / gamma;
        let sub: Vec<C64> = (0..l).map(|t| if t == 0 { C64::new(0.0, 0.0) } else { sup[t - 1].conj() }).collect();
        let mut u = vec![C64::new(0.0, 0.0); l];
        u[0] = gamma;
        u[l - 1] = alpha;
        let mut s = CyclicSolver {
            diag: d,
            sup: sup.to_vec(),
            sub,
            z: Vec::new(),
            vl: beta / gamma,
            denom: C64::new(0.0, 0.0),
        };
        let z = s.thomas(&u);
        s.denom = C64::new(1.0, 0.0) + z[0] + s.vl * z[l - 1];
        s.z = z;
        s
    }

    fn thomas(&self, b: &[C64]) -> Vec<C64> {
        let l = b.len();
        let mut cp = vec![C64::new(0.0, 0.0); l];
        let mut dp = vec![C64::new(0.0, 0.0); l];
        cp[0] = self.sup[0] / self.diag[0];
        dp[0] = b[0] / self.diag[0];
        for t in 1..l {
            let m = self.diag[t] - self.sub[t] * cp[t - 1];
            if t + 1 < l {
                cp[t] = self.sup[t] / m;
            }
            dp[t] = (b[t] - self.sub[t] * dp[t - 1]) / m;
        }
        let mut x = dp;
        for t in (0..l - 1).rev() {
            let next = x[t + 1];
            x[t] -= cp[t] * next;
        }
        x
    }

    fn solve(&self, b: &[C64]) -> Vec<C64> {
        let l = b.len();
        let mut y = self.thomas(b);
        let fact = (y[0] + self.vl * y[l - 1]) / self.denom;
        for (yi, zi) in y.iter_mut().zip(&self.z) {
            *yi -= fact * zi;
        }
        y
    }
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn project_out(v: &mut [C64], basis: &[Vec<C64>]) {
    for q in basis {
        let p = dot(q, v);
        for (x, y) in v.iter_mut().zip(q) {
            *x -= p * y;
        }
    }
}

/// Upper bound on the largest eigenvalue of the positive operator `op`
/// restricted to the complement of the orthonormal set `deflate`.
fn lanczos_top(len: usize, deflate: &[Vec<C64>], op: impl Fn(&[C64]) -> Vec<C64>) -> f64 {
    let mut v: Vec<C64> = (0..len)
        .map(|t| {
            let s = t as f64;
            C64::new((s * 0.754_877_666_2).fract() - 0.5, (s * 0.569_840_291).fract() - 0.5)
        })
        .collect();
    for _ in 0..2 {
        project_out(&mut v, deflate);
    }
    let nv = dot(&v, &v).re.sqrt();
    v.iter_mut().for_each(|x| *x /= nv);
    let mut basis: Vec<Vec<C64>> = vec![v];
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut bound = f64::INFINITY;
    for k in 0..MAX_LANCZOS.min(len.saturating_sub(deflate.len())) {
        let mut w = op(&basis[k]);
        project_out(&mut w, deflate);
        let a = dot(&basis[k], &w).re;
        alpha.push(a);
        for _ in 0..2 {
            project_out(&mut w, deflate);
            project_out(&mut w, &basis);
        }
        let b = dot(&w, &w).re.sqrt();
        let size = alpha.len();
        let t = Mat::<f64>::from_fn(size, size, |i, j| {
            if i == j {
                alpha[i]
            } else if i == j + 1 {
                beta[j]
            } else if j == i + 1 {
                beta[i]
            } else {
                0.0
            }
        });
        let eig = t.self_adjoint_eigen(Side::Lower).expect("tridiagonal eigenproblem");
        let theta = eig.S().column_vector()[size - 1];
        let s = eig.U()[(size - 1, size - 1)].abs();
        bound = theta + b * s;
        if b * s < 1e-10 * theta || b < 1e-300 {
            break;
        }
        beta.push(b);
        w.iter_mut().for_each(|x| *x /= b);
        basis.push(w);
    }
    bound
}

/// Shared inverse FFT of length `n`, scaled to be unitary.
pub struct YTransform {
    n: usize,
    inverse: Arc<dyn Fft<f64>>,
    forward: Arc<dyn Fft<f64>>,
}

impl YTransform {
    pub fn new(n: usize) -> YTransform {
        let mut planner = FftPlanner::new();
        YTransform {
            n,
            inverse: planner.plan_fft_inverse(n),
            forward: planner.plan_fft_forward(n),
        }
    }

    fn along_y(&self, v: &[C64], fft: &Arc<dyn Fft<f64>>) -> Vec<C64> {
        let n = self.n;
        let scale = 1.0 / (n as f64).sqrt();
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        let mut buf = vec![C64::new(0.0, 0.0); n];
        for j in 0..n {
            for k in 0..n {
                buf[k] = v[j + n * k];
            }
            fft.process(&mut buf);
            for k in 0..n {
                out[j + n * k] = buf[k] * scale;
            }
        }
        out
    }

    /// `ŝ(j,q) ↦ s(j,k)`.
    pub fn to_real(&self, v: &[C64]) -> Vec<C64> {
        self.along_y(v, &self.inverse)
    }

    /// `s(j,k) ↦ ŝ(j,q)`.
    pub fn to_fourier(&self, v: &[C64]) -> Vec<C64> {
        self.along_y(v, &self.forward)
    }
}
