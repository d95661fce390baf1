//! Dense linear least squares via one-sided Jacobi SVD.
//!
//! Only used for the small (m x 5) fitting problems in [`crate::material`],
//! so the matrix is stored column-major as plain vectors.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Solution of `min ||A x - b||`.
#[derive(Debug, Clone)]
pub(crate) struct LeastSquares {
    pub x: Vec<f64>,
    pub residual_norm: f64,
    /// Ratio of extreme singular values after unit-norm column scaling.
    pub condition_number: f64,
}

/// Above this scaled condition number the basis is reported as rank deficient.
pub(crate) const MAX_CONDITION: f64 = 1e12;

const SWEEP_LIMIT: usize = 60;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// `columns[j][i]` is A(i, j).
pub(crate) fn solve(columns: &[Vec<f64>], rhs: &[f64]) -> Result<LeastSquares> {
    let n = columns.len();
    let m = rhs.len();
    debug_assert!(columns.iter().all(|c| c.len() == m));

    let scale: Vec<f64> = columns.iter().map(|c| norm(c)).collect();
    if scale.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::IllConditioned {
            condition_number: f64::INFINITY,
        });
    }
    let mut u: Vec<Vec<f64>> = columns
        .iter()
        .zip(&scale)
        .map(|(c, s)| c.iter().map(|v| v / s).collect())
        .collect();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|j| {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            e
        })
        .collect();

    for _ in 0..SWEEP_LIMIT {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&u[p], &u[p]);
                let beta = dot(&u[q], &u[q]);
                let gamma = dot(&u[p], &u[q]);
                if libm::fabs(gamma) <= f64::EPSILON * libm::sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (libm::fabs(zeta) + libm::sqrt(1.0 + zeta * zeta));
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                rotate(&mut u, p, q, c, s);
                rotate(&mut v, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma: Vec<f64> = u.iter().map(|c| norm(c)).collect();
    let smax = sigma.iter().cloned().fold(0.0_f64, f64::max);
    let smin = sigma.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition_number = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition_number <= MAX_CONDITION) {
        return Err(Error::IllConditioned { condition_number });
    }

    // x_scaled = V diag(1/sigma^2) U^T b, with U columns still unnormalized.
    let mut y = vec![0.0; n];
    for j in 0..n {
        let weight = dot(&u[j], rhs) / (sigma[j] * sigma[j]);
        for (yi, vj) in y.iter_mut().zip(&v[j]) {
            *yi += weight * vj;
        }
    }
    let x: Vec<f64> = y.iter().zip(&scale).map(|(yi, s)| yi / s).collect();

    let residual_norm = {
        let mut sq = 0.0;
        for i in 0..m {
            let fit: f64 = (0..n).map(|j| columns[j][i] * x[j]).sum();
            let r = fit - rhs[i];
            sq += r * r;
        }
        libm::sqrt(sq)
    };

    Ok(LeastSquares {
        x,
        residual_norm,
        condition_number,
    })
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(q);
    let cp = &mut head[p];
    let cq = &mut tail[0];
    for (a, b) in cp.iter_mut().zip(cq.iter_mut()) {
        let (x, y) = (*a, *b);
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}
