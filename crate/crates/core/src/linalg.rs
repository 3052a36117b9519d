//! Small dense linear algebra kernels: real and complex matrices, cyclic
//! Jacobi eigensolvers, LU inversion, and a power-iteration 2-norm.
//!
//! Everything here targets desk-scale problems (matrices up to a few dozen
//! rows); simplicity and determinism win over asymptotics.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Convergence threshold for Jacobi sweeps, relative to the Frobenius norm.
const JACOBI_REL_TOL: f64 = 1e-13;
/// Maximum number of Jacobi sweeps before giving up.
const JACOBI_MAX_SWEEPS: usize = 50;

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidInput("matrix with zero rows".into()));
        }
        let c = rows[0].len();
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidInput("ragged matrix rows".into()));
            }
            data.extend_from_slice(row);
        }
        Ok(Mat { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn matmul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Mat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    out.data[r * other.cols + c] += a * other.get(k, c);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        let mut out = vec![0.0; self.rows];
        for r in 0..self.rows {
            let mut acc = 0.0;
            for c in 0..self.cols {
                acc += self.get(r, c) * v[c];
            }
            out[r] = acc;
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, alpha: f64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * alpha).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if (self.get(r, c) - self.get(c, r)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_real(m: &Mat) -> Self {
        let data = m.data().iter().map(|&x| Complex64::new(x, 0.0)).collect();
        CMat { rows: m.rows(), cols: m.cols(), data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.cols + c] = v;
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        let mut t = CMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).conj());
            }
        }
        t
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = CMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            if self.get(r, r).im.abs() > tol {
                return false;
            }
            for c in (r + 1)..self.cols {
                if (self.get(r, c) - self.get(c, r).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

fn offdiag_norm(a: &CMat) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a.get(r, c).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi with unitary
/// plane rotations. Returns eigenvalues in decreasing order and a unitary
/// matrix whose columns are the matching eigenvectors.
pub fn jacobi_hermitian(a: &CMat) -> (Vec<f64>, CMat) {
    assert_eq!(a.rows(), a.cols(), "jacobi requires a square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut v = CMat::identity(n);
    let scale = m.frobenius_norm();
    if scale > 0.0 {
        for _ in 0..JACOBI_MAX_SWEEPS {
            if offdiag_norm(&m) < JACOBI_REL_TOL * scale {
                break;
            }
            for p in 0..n.saturating_sub(1) {
                for q in (p + 1)..n {
                    let apq = m.get(p, q);
                    let r = apq.norm();
                    if r <= 1e-300 {
                        continue;
                    }
                    // Phase so the pivot becomes real, then a Givens angle.
                    let omega = if apq.im == 0.0 {
                        Complex64::new(apq.re.signum(), 0.0)
                    } else {
                        apq / r
                    };
                    let app = m.get(p, p).re;
                    let aqq = m.get(q, q).re;
                    let theta = (aqq - app) / (2.0 * r);
                    // Smaller root of t^2 - 2*theta*t - 1 = 0, which makes the
                    // rotation annihilate the (p, q) entry.
                    let t = if theta >= 0.0 {
                        -1.0 / (theta + (1.0 + theta * theta).sqrt())
                    } else {
                        1.0 / (-theta + (1.0 + theta * theta).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;

                    // Columns: [p q] <- [p q] * [[c, -s w],[s w^, c]]
                    for k in 0..n {
                        let akp = m.get(k, p);
                        let akq = m.get(k, q);
                        m.set(k, p, c * akp + s * omega.conj() * akq);
                        m.set(k, q, -s * omega * akp + c * akq);
                    }
                    // Rows: conjugate-transposed rotation from the left.
                    for k in 0..n {
                        let apk = m.get(p, k);
                        let aqk = m.get(q, k);
                        m.set(p, k, c * apk + s * omega * aqk);
                        m.set(q, k, -s * omega.conj() * apk + c * aqk);
                    }
                    // Clean up the pivot pair against round-off drift.
                    m.set(p, q, Complex64::new(0.0, 0.0));
                    m.set(q, p, Complex64::new(0.0, 0.0));
                    let dpp = m.get(p, p);
                    let dqq = m.get(q, q);
                    m.set(p, p, Complex64::new(dpp.re, 0.0));
                    m.set(q, q, Complex64::new(dqq.re, 0.0));

                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, c * vkp + s * omega.conj() * vkq);
                        v.set(k, q, -s * omega * vkp + c * vkq);
                    }
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (newc, &oldc) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, newc, v.get(r, oldc));
        }
    }
    (eigenvalues, vectors)
}

/// Eigendecomposition of a real symmetric matrix. Same contract as
/// [`jacobi_hermitian`]; with real input the rotations stay real.
pub fn jacobi_symmetric(a: &Mat) -> (Vec<f64>, Mat) {
    let (vals, cvec) = jacobi_hermitian(&CMat::from_real(a));
    let n = a.rows();
    let mut vecs = Mat::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            let z = cvec.get(r, c);
            debug_assert!(z.im.abs() < 1e-12, "real Jacobi produced complex output");
            vecs.set(r, c, z.re);
        }
    }
    (vals, vecs)
}

/// Matrix inverse by Gauss-Jordan elimination with partial pivoting.
///
/// Rejects matrices whose condition estimate (largest over smallest pivot
/// scale, cross-checked by `spectral_norm_2` of both factors) exceeds
/// `cond_limit`.
pub fn invert(a: &Mat, cond_limit: f64) -> Result<Mat> {
    assert_eq!(a.rows(), a.cols(), "invert requires a square matrix");
    let n = a.rows();
    let mut work = a.clone();
    let mut inv = Mat::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = work.get(col, col).abs();
        for r in (col + 1)..n {
            let v = work.get(r, col).abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = r;
            }
        }
        if pivot_val <= 1e-300 * scale.max(1.0) {
            return Err(Error::SingularMatrix { condition: f64::INFINITY });
        }
        if pivot_row != col {
            for c in 0..n {
                let tmp = work.get(col, c);
                work.set(col, c, work.get(pivot_row, c));
                work.set(pivot_row, c, tmp);
                let tmp = inv.get(col, c);
                inv.set(col, c, inv.get(pivot_row, c));
                inv.set(pivot_row, c, tmp);
            }
        }
        let p = work.get(col, col);
        for c in 0..n {
            work.set(col, c, work.get(col, c) / p);
            inv.set(col, c, inv.get(col, c) / p);
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = work.get(r, col);
            if f == 0.0 {
                continue;
            }
            for c in 0..n {
                work.set(r, c, work.get(r, c) - f * work.get(col, c));
                inv.set(r, c, inv.get(r, c) - f * inv.get(col, c));
            }
        }
    }
    let cond = spectral_norm_2(a) * spectral_norm_2(&inv);
    if !cond.is_finite() || cond > cond_limit {
        return Err(Error::SingularMatrix { condition: cond });
    }
    Ok(inv)
}

/// Largest singular value by power iteration on AᵀA, converged to 1e-12
/// relative with three deterministic restarts. The result is inflated by a
/// hair so downstream upper bounds stay on the safe side of the limit.
pub fn spectral_norm_2(a: &Mat) -> f64 {
    let n = a.cols();
    if n == 0 || a.rows() == 0 {
        return 0.0;
    }
    let ata = a.transpose().matmul(a);
    if ata.frobenius_norm() == 0.0 {
        return 0.0;
    }
    let mut best = 0.0f64;
    for restart in 0..3u64 {
        // Cheap deterministic start vector, varied per restart.
        let mut v: Vec<f64> = (0..n)
            .map(|i| {
                let x = (i as f64 + 1.3 * restart as f64 + 0.7).sin();
                1.0 + 0.5 * x
            })
            .collect();
        let mut norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in v.iter_mut() {
            *x /= norm;
        }
        let mut rayleigh = 0.0f64;
        for _ in 0..20_000 {
            let w = ata.matvec(&v);
            norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                rayleigh = 0.0;
                break;
            }
            let new_rayleigh = v.iter().zip(&w).map(|(x, y)| x * y).sum::<f64>();
            v = w.into_iter().map(|x| x / norm).collect();
            if (new_rayleigh - rayleigh).abs() <= 1e-12 * new_rayleigh.abs().max(1e-300) {
                rayleigh = new_rayleigh;
                break;
            }
            rayleigh = new_rayleigh;
        }
        best = best.max(rayleigh.max(0.0));
    }
    best.sqrt() * (1.0 + 1e-9)
}

/// Orthonormalize the columns of a real square matrix in place
/// (modified Gram-Schmidt, two passes).
pub fn orthonormalize_real(m: &mut Mat) {
    let n = m.rows();
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let mut dot = 0.0;
                for r in 0..n {
                    dot += m.get(r, i) * m.get(r, j);
                }
                for r in 0..n {
                    m.set(r, j, m.get(r, j) - dot * m.get(r, i));
                }
            }
        }
        let mut norm = 0.0;
        for r in 0..n {
            norm += m.get(r, j) * m.get(r, j);
        }
        let mut norm = norm.sqrt();
        if norm < 1e-10 {
            // Degenerate column: fall back to a basis vector and redo.
            for r in 0..n {
                m.set(r, j, if r == j { 1.0 } else { 0.0 });
            }
            for i in 0..j {
                let mut dot = 0.0;
                for r in 0..n {
                    dot += m.get(r, i) * m.get(r, j);
                }
                for r in 0..n {
                    m.set(r, j, m.get(r, j) - dot * m.get(r, i));
                }
            }
            norm = (0..n).map(|r| m.get(r, j) * m.get(r, j)).sum::<f64>().sqrt();
        }
        for r in 0..n {
            m.set(r, j, m.get(r, j) / norm);
        }
    }
}

/// Orthonormalize the columns of a complex square matrix in place.
pub fn orthonormalize_complex(m: &mut CMat) {
    let n = m.rows();
    for j in 0..n {
        for _pass in 0..2 {
            for i in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    dot += m.get(r, i).conj() * m.get(r, j);
                }
                for r in 0..n {
                    let v = m.get(r, j) - dot * m.get(r, i);
                    m.set(r, j, v);
                }
            }
        }
        let mut norm = (0..n).map(|r| m.get(r, j).norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-10 {
            for r in 0..n {
                m.set(r, j, Complex64::new(if r == j { 1.0 } else { 0.0 }, 0.0));
            }
            for i in 0..j {
                let mut dot = Complex64::new(0.0, 0.0);
                for r in 0..n {
                    dot += m.get(r, i).conj() * m.get(r, j);
                }
                for r in 0..n {
                    let v = m.get(r, j) - dot * m.get(r, i);
                    m.set(r, j, v);
                }
            }
            norm = (0..n).map(|r| m.get(r, j).norm_sqr()).sum::<f64>().sqrt();
        }
        for r in 0..n {
            let v = m.get(r, j) / norm;
            m.set(r, j, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reconstruct_sym(vals: &[f64], vecs: &Mat) -> Mat {
        let n = vals.len();
        let mut d = Mat::zeros(n, n);
        for i in 0..n {
            d.set(i, i, vals[i]);
        }
        vecs.matmul(&d).matmul(&vecs.transpose())
    }

    #[test]
    fn jacobi_symmetric_diag3() {
        let a = Mat::from_rows(&[
            vec![3.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ])
        .unwrap();
        let (vals, vecs) = jacobi_symmetric(&a);
        assert_eq!(vals, vec![3.0, 2.0, 1.0]);
        let r = reconstruct_sym(&vals, &vecs);
        for i in 0..3 {
            for j in 0..3 {
                assert!((r.get(i, j) - a.get(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_hermitian_pauli_x() {
        let mut a = CMat::zeros(2, 2);
        a.set(0, 1, Complex64::new(1.0, 0.0));
        a.set(1, 0, Complex64::new(1.0, 0.0));
        let (vals, vecs) = jacobi_hermitian(&a);
        assert!((vals[0] - 1.0).abs() < 1e-13);
        assert!((vals[1] + 1.0).abs() < 1e-13);
        // Unitarity of the eigenvector matrix.
        let id = vecs.adjoint().matmul(&vecs);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((id.get(i, j) - Complex64::new(expect, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn jacobi_hermitian_complex_offdiag() {
        // [[2, i],[-i, 2]] has eigenvalues 3 and 1.
        let mut a = CMat::zeros(2, 2);
        a.set(0, 0, Complex64::new(2.0, 0.0));
        a.set(1, 1, Complex64::new(2.0, 0.0));
        a.set(0, 1, Complex64::new(0.0, 1.0));
        a.set(1, 0, Complex64::new(0.0, -1.0));
        let (vals, vecs) = jacobi_hermitian(&a);
        assert!((vals[0] - 3.0).abs() < 1e-13);
        assert!((vals[1] - 1.0).abs() < 1e-13);
        // A v = lambda v for both columns.
        for c in 0..2 {
            for r in 0..2 {
                let mut av = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    av += a.get(r, k) * vecs.get(k, c);
                }
                assert!((av - vals[c] * vecs.get(r, c)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn jacobi_matches_reference_spectra() {
        // Reference values computed with an independent LAPACK-backed solver.
        let a = Mat::from_rows(&[
            vec![2.0, -1.0, 0.5, 0.25],
            vec![-1.0, 1.0, 0.75, -0.5],
            vec![0.5, 0.75, -2.0, 1.0],
            vec![0.25, -0.5, 1.0, 0.0],
        ])
        .unwrap();
        let expect = [
            2.711335453824568e0,
            6.873181650811923e-1,
            3.088980088415443e-1,
            -2.707551627747303e0,
        ];
        let (vals, _) = jacobi_symmetric(&a);
        for (v, e) in vals.iter().zip(&expect) {
            assert!((v - e).abs() < 1e-12, "{vals:?}");
        }

        let mut h = CMat::zeros(3, 3);
        h.set(0, 0, Complex64::new(1.0, 0.0));
        h.set(0, 1, Complex64::new(0.5, -0.25));
        h.set(1, 0, Complex64::new(0.5, 0.25));
        h.set(0, 2, Complex64::new(-1.0, 0.5));
        h.set(2, 0, Complex64::new(-1.0, -0.5));
        h.set(1, 1, Complex64::new(-0.5, 0.0));
        h.set(1, 2, Complex64::new(0.0, 1.0));
        h.set(2, 1, Complex64::new(0.0, -1.0));
        h.set(2, 2, Complex64::new(2.0, 0.0));
        let expect = [2.967882060729250e0, 6.196453045263992e-1, -1.087527365255648e0];
        let (vals, vecs) = jacobi_hermitian(&h);
        for (v, e) in vals.iter().zip(&expect) {
            assert!((v - e).abs() < 1e-12, "{vals:?}");
        }
        // residual ||H v - lambda v|| per eigenpair
        for c in 0..3 {
            for r in 0..3 {
                let mut hv = Complex64::new(0.0, 0.0);
                for k in 0..3 {
                    hv += h.get(r, k) * vecs.get(k, c);
                }
                assert!((hv - vals[c] * vecs.get(r, c)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn invert_small() {
        let a = Mat::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let inv = invert(&a, 1e12).unwrap();
        let prod = a.matmul(&inv);
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod.get(i, j) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn invert_rejects_singular() {
        let a = Mat::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(invert(&a, 1e12), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn spectral_norm_known() {
        let a = Mat::from_rows(&[vec![3.0, 0.0], vec![0.0, -4.0]]).unwrap();
        let s = spectral_norm_2(&a);
        assert!((s - 4.0).abs() < 1e-8, "sigma = {s}");
        assert!(s >= 4.0, "must not underestimate");
    }

    #[test]
    fn orthonormalize_produces_unitary() {
        let mut m = Mat::from_rows(&[
            vec![1.0, 2.0, 0.5],
            vec![0.3, -1.0, 2.0],
            vec![0.7, 0.1, -0.4],
        ])
        .unwrap();
        orthonormalize_real(&mut m);
        let id = m.transpose().matmul(&m);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((id.get(i, j) - expect).abs() < 1e-12);
            }
        }
    }
}
