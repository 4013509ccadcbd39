//! Small dense and banded linear-algebra kernels shared by the eigensolvers:
//! a cyclic Jacobi eigensolver for small symmetric matrices, a Cholesky
//! factorization for symmetric positive-definite band matrices, and a
//! partially-pivoted LU solve for (possibly indefinite) tridiagonal systems.

use crate::error::{Error, Result};

/// Dense symmetric matrix in row-major order, `n x n`.
#[derive(Clone, Debug)]
pub struct SymMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }
}

/// Eigenvalues (ascending) and eigenvectors (columns) of a small symmetric
/// matrix by cyclic Jacobi rotations.
pub fn jacobi_eigen(a: &SymMatrix) -> Result<(Vec<f64>, SymMatrix)> {
    let n = a.n;
    let mut m = a.clone();
    let mut v = SymMatrix::zeros(n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    if n == 1 {
        return Ok((vec![m.get(0, 0)], v));
    }
    let norm: f64 = m.data.iter().map(|x| x * x).sum::<f64>().sqrt();
    let tol = 1e-15 * norm.max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m.get(i, j).abs();
            }
        }
        if off < tol {
            let mut eig: Vec<(f64, usize)> =
                (0..n).map(|i| (m.get(i, i), i)).collect();
            eig.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let vals: Vec<f64> = eig.iter().map(|e| e.0).collect();
            let mut vecs = SymMatrix::zeros(n);
            for (col, &(_, src)) in eig.iter().enumerate() {
                for r in 0..n {
                    vecs.set(r, col, v.get(r, src));
                }
            }
            return Ok((vals, vecs));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq.abs() <= tol * 1e-2 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    Err(Error::Numerical(
        "Jacobi eigensolver did not converge".into(),
    ))
}

/// Cholesky factorization of a dense SPD matrix; returns the lower factor.
pub fn cholesky_dense(a: &SymMatrix) -> Result<SymMatrix> {
    let n = a.n;
    let mut l = SymMatrix::zeros(n);
    for j in 0..n {
        let mut d = a.get(j, j);
        for k in 0..j {
            d -= l.get(j, k) * l.get(j, k);
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::Numerical(format!(
                "Cholesky breakdown at pivot {j} (value {d})"
            )));
        }
        let dj = d.sqrt();
        l.set(j, j, dj);
        for i in (j + 1)..n {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l.get(i, k) * l.get(j, k);
            }
            l.set(i, j, s / dj);
        }
    }
    Ok(l)
}

/// Symmetric band matrix, lower storage: `band[r][j] = A[j + r][j]` for
/// `r = 0..=bw`, `j + r < n`.
#[derive(Clone, Debug)]
pub struct BandMatrix {
    pub n: usize,
    pub bw: usize,
    pub band: Vec<Vec<f64>>,
}

impl BandMatrix {
    pub fn zeros(n: usize, bw: usize) -> Self {
        BandMatrix {
            n,
            bw,
            band: (0..=bw).map(|_| vec![0.0; n]).collect(),
        }
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        debug_assert!(hi - lo <= self.bw);
        self.band[hi - lo][lo] += v;
    }

    /// y = A x for the full symmetric matrix.
    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        y.fill(0.0);
        for j in 0..self.n {
            y[j] += self.band[0][j] * x[j];
            let top = self.bw.min(self.n - 1 - j);
            for r in 1..=top {
                let v = self.band[r][j];
                y[j + r] += v * x[j];
                y[j] += v * x[j + r];
            }
        }
    }

    /// In-place banded Cholesky (SPD input); the banded lower factor replaces
    /// the stored band.
    pub fn cholesky(&mut self) -> Result<()> {
        let n = self.n;
        let bw = self.bw;
        for j in 0..n {
            let start = j.saturating_sub(bw);
            let mut d = self.band[0][j];
            for k in start..j {
                let l = self.band[j - k][k];
                d -= l * l;
            }
            if d <= 0.0 || !d.is_finite() {
                return Err(Error::Numerical(format!(
                    "banded Cholesky breakdown at pivot {j} (value {d})"
                )));
            }
            let dj = d.sqrt();
            self.band[0][j] = dj;
            let top = bw.min(n - 1 - j);
            for r in 1..=top {
                let i = j + r;
                let mut s = self.band[r][j];
                let start = i.saturating_sub(bw).max(start);
                for k in start..j {
                    s -= self.band[i - k][k] * self.band[j - k][k];
                }
                self.band[r][j] = s / dj;
            }
        }
        Ok(())
    }

    /// Solve `L L^T x = b` after [`BandMatrix::cholesky`].
    pub fn solve_cholesky(&self, b: &[f64], x: &mut [f64]) {
        let n = self.n;
        let bw = self.bw;
        x.copy_from_slice(b);
        for j in 0..n {
            let start = j.saturating_sub(bw);
            let mut s = x[j];
            for k in start..j {
                s -= self.band[j - k][k] * x[k];
            }
            x[j] = s / self.band[0][j];
        }
        for j in (0..n).rev() {
            let top = bw.min(n - 1 - j);
            let mut s = x[j];
            for r in 1..=top {
                s -= self.band[r][j] * x[j + r];
            }
            x[j] = s / self.band[0][j];
        }
    }
}

/// LU factorization with partial pivoting of a (possibly indefinite,
/// near-singular) tridiagonal matrix; row swaps introduce a second
/// superdiagonal. Used by inverse iteration, where near-singularity of the
/// shifted matrix is expected and harmless.
pub struct TriLu {
    n: usize,
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper1: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TriLu {
    pub fn factor(sub: &[f64], diag: &[f64], sup: &[f64]) -> TriLu {
        let n = diag.len();
        let mut d = diag.to_vec();
        let mut u1 = vec![0.0; n];
        let mut u2 = vec![0.0; n];
        let mut l = vec![0.0; n];
        let mut swapped = vec![false; n];
        u1[..n - 1].copy_from_slice(&sup[..n - 1]);
        for i in 0..n - 1 {
            // row i+1 is pristine at step i: entries sub[i], diag[i+1], sup[i+1]
            let below = sub[i];
            if below.abs() > d[i].abs() {
                swapped[i] = true;
                // swap row i and i+1
                let (p, q) = (d[i], u1[i]);
                d[i] = below;
                u1[i] = d[i + 1];
                u2[i] = if i + 2 < n { sup[i + 1] } else { 0.0 };
                d[i + 1] = q - (p / d[i]) * u1[i];
                if i + 2 < n {
                    u1[i + 1] = -(p / d[i]) * u2[i];
                    // original row i had no entry at column i+2
                }
                l[i] = p / d[i];
            } else {
                let piv = if d[i] == 0.0 { 1e-300 } else { d[i] };
                d[i] = piv;
                let m = below / piv;
                l[i] = m;
                d[i + 1] -= m * u1[i];
                u2[i] = 0.0;
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = 1e-300;
        }
        TriLu {
            n,
            lower: l,
            diag: d,
            upper1: u1,
            upper2: u2,
            swapped,
        }
    }

    pub fn solve(&self, b: &[f64], x: &mut [f64]) {
        let n = self.n;
        x.copy_from_slice(b);
        for i in 0..n - 1 {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            x[i + 1] -= self.lower[i] * x[i];
        }
        x[n - 1] /= self.diag[n - 1];
        if n >= 2 {
            x[n - 2] = (x[n - 2] - self.upper1[n - 2] * x[n - 1]) / self.diag[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - self.upper1[i] * x[i + 1] - self.upper2[i] * x[i + 2]) / self.diag[i];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn jacobi_small() {
        let mut a = SymMatrix::zeros(3);
        a.set(0, 0, 2.0);
        a.set(1, 1, 3.0);
        a.set(2, 2, 4.0);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0);
        let (vals, vecs) = jacobi_eigen(&a).unwrap();
        // eigenvalues of [[2,1,0],[1,3,0],[0,0,4]]: (5 +- sqrt(5))/2 and 4
        let lo = (5.0 - 5.0f64.sqrt()) / 2.0;
        let hi = (5.0 + 5.0f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(vals[0], lo, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[1], hi, epsilon = 1e-12);
        assert_abs_diff_eq!(vals[2], 4.0, epsilon = 1e-12);
        // residual A v = lambda v for the first pair
        for col in 0..3 {
            for row in 0..3 {
                let mut av = 0.0;
                for k in 0..3 {
                    av += a.get(row, k) * vecs.get(k, col);
                }
                assert_abs_diff_eq!(av, vals[col] * vecs.get(row, col), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn banded_cholesky_solves() {
        // 1D Laplacian, bandwidth 1
        let n = 20;
        let mut a = BandMatrix::zeros(n, 1);
        for i in 0..n {
            a.add(i, i, 2.0);
            if i + 1 < n {
                a.add(i + 1, i, -1.0);
            }
        }
        let x_true: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut b = vec![0.0; n];
        a.matvec(&x_true, &mut b);
        let mut f = a.clone();
        f.cholesky().unwrap();
        let mut x = vec![0.0; n];
        f.solve_cholesky(&b, &mut x);
        for i in 0..n {
            assert_abs_diff_eq!(x[i], x_true[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let mut a = BandMatrix::zeros(3, 1);
        a.add(0, 0, 1.0);
        a.add(1, 1, -1.0);
        a.add(2, 2, 1.0);
        assert!(a.cholesky().is_err());
    }

    #[test]
    fn tridiagonal_lu_with_pivoting() {
        let n = 30;
        // indefinite tridiagonal with small diagonal entries forces pivoting
        let sub: Vec<f64> = (0..n - 1).map(|i| 1.0 + 0.3 * (i as f64).cos()).collect();
        let sup: Vec<f64> = (0..n - 1).map(|i| -0.8 + 0.2 * (i as f64).sin()).collect();
        let diag: Vec<f64> = (0..n).map(|i| 0.01 * ((i as f64) - 15.0)).collect();
        let x_true: Vec<f64> = (0..n).map(|i| ((i * i) as f64 * 0.1).sin()).collect();
        let mut b = vec![0.0; n];
        for i in 0..n {
            b[i] = diag[i] * x_true[i];
            if i > 0 {
                b[i] += sub[i - 1] * x_true[i - 1];
            }
            if i + 1 < n {
                b[i] += sup[i] * x_true[i + 1];
            }
        }
        let lu = TriLu::factor(&sub, &diag, &sup);
        let mut x = vec![0.0; n];
        lu.solve(&b, &mut x);
        for i in 0..n {
            assert_abs_diff_eq!(x[i], x_true[i], epsilon = 1e-8);
        }
    }
}
