//! Small dense helpers on top of faer.

use faer::{Mat, MatRef};

use crate::{Result, SpectralError, C64};

/// Weighted overlap `f^H g · weight`.
pub fn overlap(f: MatRef<'_, C64>, g: MatRef<'_, C64>, weight: f64) -> Mat<C64> {
    let mut m = f.adjoint() * g;
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            m[(i, j)] *= weight;
        }
    }
    m
}

pub fn singular_values(m: MatRef<'_, C64>) -> Result<Vec<f64>> {
    m.singular_values().map_err(|e| SpectralError::Linalg(format!("{e:?}")))
}

/// Unitary factor `U V^H` of the polar decomposition.
pub fn polar(m: MatRef<'_, C64>) -> Result<Mat<C64>> {
    let svd = m.svd().map_err(|e| SpectralError::Linalg(format!("{e:?}")))?;
    Ok(svd.U() * svd.V().adjoint())
}

/// Scales every row `r` of `f` by `phase[r]`.
pub fn scale_rows(f: MatRef<'_, C64>, phase: &[C64]) -> Mat<C64> {
    Mat::from_fn(f.nrows(), f.ncols(), |i, j| phase[i % phase.len()] * f[(i, j)])
}

/// Modified Gram–Schmidt with one reorthogonalization pass, in place.
pub fn orthonormalize(cols: &mut [Vec<C64>]) {
    for i in 0..cols.len() {
        for _ in 0..2 {
            for j in 0..i {
                let p: C64 = cols[j].iter().zip(&cols[i]).map(|(a, b)| a.conj() * b).sum();
                let (head, tail) = cols.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(&head[j]) {
                    *x -= p * y;
                }
            }
        }
        let nrm = cols[i].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[i].iter_mut() {
            *x /= nrm;
        }
    }
}

pub fn columns_to_mat(cols: &[Vec<C64>], scale: f64) -> Mat<C64> {
    let rows = cols.first().map_or(0, Vec::len);
    Mat::from_fn(rows, cols.len(), |i, j| cols[j][i] * scale)
}

pub fn max_abs_diff(a: MatRef<'_, C64>, b: MatRef<'_, C64>) -> f64 {
    let mut worst: f64 = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_of_scaled_unitary() {
        let u = Mat::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => C64::new(0.6, 0.0),
            (0, 1) => C64::new(0.0, 0.8),
            (1, 0) => C64::new(0.0, 0.8),
            _ => C64::new(0.6, 0.0),
        });
        let m = Mat::from_fn(2, 2, |i, j| u[(i, j)] * 3.0);
        let p = polar(m.as_ref()).unwrap();
        assert!(max_abs_diff(p.as_ref(), u.as_ref()) < 1e-14);
    }

    #[test]
    fn gram_schmidt_orthonormal() {
        let mut cols = vec![
            vec![C64::new(1.0, 0.0), C64::new(1.0, 1.0), C64::new(0.0, 2.0)],
            vec![C64::new(0.0, 1.0), C64::new(2.0, 0.0), C64::new(1.0, 0.0)],
        ];
        orthonormalize(&mut cols);
        let m = columns_to_mat(&cols, 1.0);
        let g = overlap(m.as_ref(), m.as_ref(), 1.0);
        assert!(max_abs_diff(g.as_ref(), Mat::<C64>::identity(2, 2).as_ref()) < 1e-14);
    }
}
