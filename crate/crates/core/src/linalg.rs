//! Thin wrappers over faer's dense Hermitian eigensolver and SVD.
//!
//! Everything runs with sequential parallelism so results are bitwise
//! reproducible; callers parallelize over independent problems instead.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::{evd, svd};
use faer::{Mat, MatRef, Par};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = Mat<Complex64>;

/// Eigenvalues of a Hermitian matrix (lower triangle is read), ascending.
pub fn hermitian_eigenvalues(a: MatRef<'_, Complex64>) -> Result<Vec<f64>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::Linalg("matrix is not square".into()));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut s = faer::diag::Diag::<Complex64>::zeros(n);
    let par = Par::Seq;
    let req = evd::self_adjoint_evd_scratch::<Complex64>(n, evd::ComputeEigenvectors::No, par, Default::default());
    let mut buf = MemBuffer::new(req);
    evd::self_adjoint_evd(a, s.as_mut(), None, par, MemStack::new(&mut buf), Default::default())
        .map_err(|e| Error::Linalg(format!("{e:?}")))?;
    let mut out: Vec<f64> = s.column_vector().iter().map(|x| x.re).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Singular values, descending.
pub fn singular_values(a: MatRef<'_, Complex64>) -> Result<Vec<f64>> {
    let (m, n) = (a.nrows(), a.ncols());
    if m == 0 || n == 0 {
        return Ok(Vec::new());
    }
    let mut s = faer::diag::Diag::<Complex64>::zeros(m.min(n));
    let par = Par::Seq;
    let req = svd::svd_scratch::<Complex64>(m, n, svd::ComputeSvdVectors::No, svd::ComputeSvdVectors::No, par, Default::default());
    let mut buf = MemBuffer::new(req);
    svd::svd(a, s.as_mut(), None, None, par, MemStack::new(&mut buf), Default::default())
        .map_err(|e| Error::Linalg(format!("{e:?}")))?;
    let mut out: Vec<f64> = s.column_vector().iter().map(|x| x.re.abs()).collect();
    out.sort_by(|x, y| y.total_cmp(x));
    Ok(out)
}

pub fn min_singular_value(a: MatRef<'_, Complex64>) -> Result<f64> {
    Ok(singular_values(a)?.last().copied().unwrap_or(0.0))
}

/// Matrices up to this size are handled by the dense eigensolver.
pub const DENSE_LIMIT: usize = 4096;
/// Hard ceiling for any eigensolve.
pub const MATRIX_LIMIT: usize = 16384;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Solver {
    Dense,
    Lanczos,
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
pub fn extreme_eigenvalues(a: MatRef<'_, Complex64>) -> Result<(f64, f64, Solver)> {
    let n = a.nrows();
    if n > MATRIX_LIMIT {
        return Err(Error::ResourceLimit(format!("matrix of size {n} exceeds {MATRIX_LIMIT}")));
    }
    if n > DENSE_LIMIT {
        if let Some((lo, hi)) = lanczos_extremes(a, 1e-10, 600) {
            return Ok((lo, hi, Solver::Lanczos));
        }
    }
    let ev = hermitian_eigenvalues(a)?;
    match (ev.first(), ev.last()) {
        (Some(&lo), Some(&hi)) => Ok((lo, hi, Solver::Dense)),
        _ => Err(Error::Linalg("empty matrix".into())),
    }
}

/// Lanczos with full reorthogonalization from a fixed start vector. Returns
/// `None` unless both extreme Ritz pairs reach residual `tol · ‖A‖`.
pub fn lanczos_extremes(a: MatRef<'_, Complex64>, tol: f64, max_steps: usize) -> Option<(f64, f64)> {
    let n = a.nrows();
    let steps = max_steps.min(n);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(steps);
    let mut alpha = Vec::with_capacity(steps);
    let mut beta: Vec<f64> = Vec::with_capacity(steps);
    let mut v: Vec<Complex64> = (0..n).map(|i| Complex64::new(1.0 + (i % 7) as f64 * 0.1, (i % 5) as f64 * 0.05)).collect();
    let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|z| *z /= nv);
    let scale = a.norm_l2().max(f64::MIN_POSITIVE);
    for step in 0..steps {
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            let vj = v[j];
            if vj == Complex64::new(0.0, 0.0) {
                continue;
            }
            let col = a.col(j);
            for (i, wi) in w.iter_mut().enumerate() {
                *wi += col[i] * vj;
            }
        }
        let a_k: f64 = v.iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum();
        basis.push(v.clone());
        alpha.push(a_k);
        for _ in 0..2 {
            for q in &basis {
                let c: Complex64 = q.iter().zip(&w).map(|(x, y)| x.conj() * y).sum();
                w.iter_mut().zip(q).for_each(|(y, x)| *y -= c * x);
            }
        }
        let b_k = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let m = step + 1;
        if m % 20 == 0 || m == steps || b_k < tol * scale {
            let t = Mat::<f64>::from_fn(m, m, |i, j| {
                if i == j {
                    alpha[i]
                } else if i == j + 1 || j == i + 1 {
                    beta[i.min(j)]
                } else {
                    0.0
                }
            });
            let evd = t.self_adjoint_eigen(faer::Side::Lower).ok()?;
            let vals = evd.S().column_vector();
            let vecs = evd.U();
            let (mut lo, mut hi) = (0usize, 0usize);
            for i in 0..m {
                if vals[i] < vals[lo] {
                    lo = i;
                }
                if vals[i] > vals[hi] {
                    hi = i;
                }
            }
            let res = |i: usize| b_k * vecs[(m - 1, i)].abs();
            if res(lo) <= tol * scale && res(hi) <= tol * scale {
                return Some((vals[lo], vals[hi]));
            }
        }
        if b_k < tol * scale {
            return None;
        }
        beta.push(b_k);
        v = w.iter().map(|z| z / b_k).collect();
    }
    None
}

/// `e^{2πi x}` with `x` given as a reduced fraction `num/den`.
pub fn unit_root(num: i64, den: u64) -> Complex64 {
    let k = num.rem_euclid(den as i64) as u64;
    if (4 * k as u128) % den as u128 == 0 {
        return match (4 * k as u128 / den as u128) as u8 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let r = k as f64 / den as f64;
    let theta = 2.0 * std::f64::consts::PI * r;
    Complex64::new(theta.cos(), theta.sin())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_diagonal() {
        let a = CMat::from_fn(3, 3, |i, j| if i == j { Complex64::new((3 - i) as f64, 0.0) } else { Complex64::new(0.0, 0.0) });
        assert_eq!(hermitian_eigenvalues(a.as_ref()).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn hermitian_two_by_two() {
        let i = Complex64::new(0.0, 1.0);
        let a = CMat::from_fn(2, 2, |r, c| match (r, c) {
            (0, 0) | (1, 1) => Complex64::new(2.0, 0.0),
            (1, 0) => i,
            _ => -i,
        });
        let ev = hermitian_eigenvalues(a.as_ref()).unwrap();
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
        let sv = singular_values(a.as_ref()).unwrap();
        assert!((sv[0] - 3.0).abs() < 1e-14 && (sv[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn lanczos_matches_dense() {
        let n = 120;
        let a = CMat::from_fn(n, n, |i, j| {
            let d = i as f64 - j as f64;
            if i == j {
                Complex64::new(2.0 + (i as f64 / n as f64), 0.0)
            } else {
                Complex64::new(0.3 / (1.0 + d * d), 0.1 * d / (1.0 + d * d * d * d))
            }
        });
        let ev = hermitian_eigenvalues(a.as_ref()).unwrap();
        let (lo, hi) = lanczos_extremes(a.as_ref(), 1e-10, n).unwrap();
        assert!((lo - ev[0]).abs() < 1e-9 && (hi - ev[n - 1]).abs() < 1e-9);
    }

    #[test]
    fn roots_of_unity() {
        let w = unit_root(-1, 4);
        assert!((w.re).abs() < 1e-16 && (w.im + 1.0).abs() < 1e-16);
    }
}
