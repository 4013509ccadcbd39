//! Relaxed weighted Sturm-Liouville eigenvalues on `[0, 1]` by a P1
//! finite-element discretization and inertia-counting bisection on the
//! resulting symmetric tridiagonal pencil `(K, M)`.
//!
//! The weight enters as its piecewise-linear interpolant on the sample grid;
//! element integrals are the exact (two-point Gauss) integrals of that
//! interpolant against the P1 basis products. Natural boundary conditions
//! encode `h u' -> 0` at both endpoints, so no boundary handling is needed
//! even for weights that vanish there. The constant mode `mu_0 = 0` is
//! excluded by index, which matches orthogonality to the weight.

use crate::error::{Error, Result};
use crate::linalg::{cholesky_dense, jacobi_eigen, SymMatrix, TriLu};
use crate::profile::SampledWeight;

/// Relative width of the eigenvalue bisection bracket.
const BISECT_REL_TOL: f64 = 1.0e-10;
/// Convergence threshold on the normalized eigenpair residual.
const RESIDUAL_TOL: f64 = 1.0e-9;
/// Nodal values below this fraction of `max|u|` are treated as zero when
/// counting sign runs.
const NODAL_EPS: f64 = 1.0e-8;

/// Symmetric tridiagonal stiffness/mass pencil on a 1D grid.
#[derive(Clone, Debug)]
pub struct TridiagonalPencil {
    pub k_diag: Vec<f64>,
    pub k_off: Vec<f64>,
    pub m_diag: Vec<f64>,
    pub m_off: Vec<f64>,
    pub grid: Vec<f64>,
}

impl TridiagonalPencil {
    pub fn n(&self) -> usize {
        self.grid.len()
    }
}

/// One computed eigenpair of the pencil.
#[derive(Clone, Debug)]
pub struct SpectralSolution {
    /// Eigenvalue (units 1/length^2, interval normalized to length 1).
    pub mu: f64,
    /// Index among the nonzero eigenvalues (1-based).
    pub k: u32,
    /// Nodal eigenfunction values, normalized to `u^T M u = 1`.
    pub u: Vec<f64>,
    /// `||K u - mu M u|| / (||K u|| + mu ||M u||)`.
    pub residual: f64,
    /// Number of maximal sign-constant runs of the nodal values.
    pub nodal_intervals: usize,
    pub grid: Vec<f64>,
}

/// Assemble the P1 pencil for a sampled weight.
pub fn assemble(w: &SampledWeight) -> Result<TridiagonalPencil> {
    if w.values.iter().all(|&v| v == 0.0) {
        return Err(Error::Validation(
            "cannot assemble: weight is identically zero".into(),
        ));
    }
    Ok(assemble_nodal(&w.grid, &w.values))
}

/// Assembly core; also used with signed nodal "direction" data by the shape
/// derivative, so it performs no sign validation.
pub(crate) fn assemble_nodal(grid: &[f64], values: &[f64]) -> TridiagonalPencil {
    let n = grid.len();
    let mut k_diag = vec![0.0; n];
    let mut k_off = vec![0.0; n - 1];
    let mut m_diag = vec![0.0; n];
    let mut m_off = vec![0.0; n - 1];
    for e in 0..n - 1 {
        let len = grid[e + 1] - grid[e];
        let (wl, wr) = (values[e], values[e + 1]);
        let k_el = 0.5 * (wl + wr) / len;
        k_diag[e] += k_el;
        k_diag[e + 1] += k_el;
        k_off[e] -= k_el;
        // int w phi_a phi_b over the element, exact for linear w
        m_diag[e] += len * (wl / 4.0 + wr / 12.0);
        m_diag[e + 1] += len * (wl / 12.0 + wr / 4.0);
        m_off[e] += len * (wl + wr) / 12.0;
    }
    TridiagonalPencil {
        k_diag,
        k_off,
        m_diag,
        m_off,
        grid: grid.to_vec(),
    }
}

/// Energy products `u^T K(v) u` and `u^T M(v) u` for nodal direction data
/// `v`, using exactly the assembly quadrature (without forming matrices).
pub(crate) fn energy_products(grid: &[f64], v: &[f64], u: &[f64]) -> (f64, f64) {
    let mut stiff = 0.0;
    let mut mass = 0.0;
    for e in 0..grid.len() - 1 {
        let len = grid[e + 1] - grid[e];
        let (vl, vr) = (v[e], v[e + 1]);
        let (ul, ur) = (u[e], u[e + 1]);
        let du = ur - ul;
        stiff += 0.5 * (vl + vr) * du * du / len;
        mass += len
            * (vl * (ul * ul / 4.0 + ul * ur / 6.0 + ur * ur / 12.0)
                + vr * (ul * ul / 12.0 + ul * ur / 6.0 + ur * ur / 4.0));
    }
    (stiff, mass)
}

fn tri_matvec(diag: &[f64], off: &[f64], x: &[f64], y: &mut [f64]) {
    let n = diag.len();
    for i in 0..n {
        let mut s = diag[i] * x[i];
        if i > 0 {
            s += off[i - 1] * x[i - 1];
        }
        if i + 1 < n {
            s += off[i] * x[i + 1];
        }
        y[i] = s;
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    ((s), (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Compensated accumulator: the plain matvec rounds at `eps * |K||u|`, which
/// near convergence dwarfs the true residual `K u - theta M u`; this keeps
/// the product and summation errors so the measured residual tracks the
/// algebraic one.
struct Compensated {
    s: f64,
    c: f64,
}

impl Compensated {
    fn new() -> Self {
        Compensated { s: 0.0, c: 0.0 }
    }

    fn add_prod(&mut self, a: f64, b: f64) {
        let (p, e1) = two_prod(a, b);
        let (s, e2) = two_sum(self.s, p);
        self.s = s;
        self.c += e1 + e2;
    }

    fn sub_scaled_prod(&mut self, theta: f64, m: f64, z: f64) {
        let (tm, e1) = two_prod(theta, m);
        let (p, e2) = two_prod(tm, z);
        let (s, e3) = two_sum(self.s, -p);
        self.s = s;
        self.c += e3 - e2 - e1 * z;
    }

    fn value(&self) -> f64 {
        self.s + self.c
    }
}

/// `(K z - theta M z)_i` with compensated products and sums.
fn residual_component(p: &TridiagonalPencil, z: &[f64], theta: f64, i: usize) -> f64 {
    let n = z.len();
    let mut acc = Compensated::new();
    acc.add_prod(p.k_diag[i], z[i]);
    if i > 0 {
        acc.add_prod(p.k_off[i - 1], z[i - 1]);
    }
    if i + 1 < n {
        acc.add_prod(p.k_off[i], z[i + 1]);
    }
    acc.sub_scaled_prod(theta, p.m_diag[i], z[i]);
    if i > 0 {
        acc.sub_scaled_prod(theta, p.m_off[i - 1], z[i - 1]);
    }
    if i + 1 < n {
        acc.sub_scaled_prod(theta, p.m_off[i], z[i + 1]);
    }
    acc.value()
}

/// Number of pencil eigenvalues strictly below `lambda`, by the Sylvester
/// inertia of the `L D L^T` factorization of `K - lambda M`. Pivots smaller
/// than the standard floor are replaced by `-pivmin` (the usual
/// shift-perturbation guard), which is exact in exact arithmetic.
pub fn count_below(p: &TridiagonalPencil, lambda: f64) -> usize {
    let n = p.n();
    let mut scale = 0.0f64;
    for i in 0..n {
        scale = scale.max((p.k_diag[i] - lambda * p.m_diag[i]).abs());
    }
    for i in 0..n - 1 {
        scale = scale.max((p.k_off[i] - lambda * p.m_off[i]).abs());
    }
    let pivmin = (scale * 1.0e-280).max(1.0e-300);
    let mut count = 0;
    let mut d = p.k_diag[0] - lambda * p.m_diag[0];
    if d.abs() < pivmin {
        d = -pivmin;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let e = p.k_off[i - 1] - lambda * p.m_off[i - 1];
        d = (p.k_diag[i] - lambda * p.m_diag[i]) - e * e / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Bisection for the `index`-th (1-based, counting the zero mode) pencil
/// eigenvalue to relative bracket width [`BISECT_REL_TOL`].
fn pencil_eigenvalue(p: &TridiagonalPencil, index: usize) -> Result<f64> {
    // Both matrices are PSD, so the spectrum is nonnegative up to roundoff;
    // a slightly negative left end makes count_below(lo) = 0 robustly.
    let lo0 = -1.0e-3;
    let mut hi = 40.0 * (index * index) as f64;
    let mut grow = 0;
    while count_below(p, hi) < index {
        hi *= 4.0;
        grow += 1;
        if grow > 200 {
            return Err(Error::Numerical(format!(
                "no {index}-th eigenvalue found below {hi}"
            )));
        }
    }
    let mut lo = lo0;
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if count_below(p, mid) >= index {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= BISECT_REL_TOL * hi.abs().max(1e-300) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Inverse iteration on `(K - sigma M) z = M v` with M-normalization and
/// deflation of the constant mode; returns the eigenvector, its Rayleigh
/// quotient, and the final residual. The shift is refreshed to the latest
/// Rayleigh quotient while the residual is above tolerance (needed for
/// strongly endpoint-degenerate weights, where the bisection shift alone
/// leaves a residual plateau).
fn inverse_iteration(p: &TridiagonalPencil, sigma: f64) -> Result<(Vec<f64>, f64, f64)> {
    let n = p.n();
    let factor_at = |s: f64| {
        let sub: Vec<f64> = (0..n - 1).map(|i| p.k_off[i] - s * p.m_off[i]).collect();
        let diag: Vec<f64> = (0..n).map(|i| p.k_diag[i] - s * p.m_diag[i]).collect();
        TriLu::factor(&sub, &diag, &sub)
    };
    let mut shift = sigma;
    let mut lu = factor_at(shift);
    let mut refreshes = 0usize;
    let mut overflow_retries = 0usize;

    let ones = vec![1.0; n];
    let mut m_ones = vec![0.0; n];
    tri_matvec(&p.m_diag, &p.m_off, &ones, &mut m_ones);
    let ones_m_ones: f64 = m_ones.iter().sum();

    let mut v: Vec<f64> = (0..n).map(|i| (1.7 * (i as f64 + 1.0)).sin()).collect();
    let mut work = vec![0.0; n];
    let mut best_res = f64::INFINITY;
    let mut best: Option<(Vec<f64>, f64, f64)> = None;
    for _ in 0..50 {
        // deflate the constant mode in the M inner product
        let proj: f64 = v.iter().zip(&m_ones).map(|(a, b)| a * b).sum::<f64>() / ones_m_ones;
        for (vi, mi) in v.iter_mut().zip(&ones) {
            *vi -= proj * mi;
        }
        tri_matvec(&p.m_diag, &p.m_off, &v, &mut work);
        let mut z = vec![0.0; n];
        lu.solve(&work, &mut z);
        // one pass of iterative refinement with a compensated residual: the
        // raw solve's backward error (~eps ||K|| ||z||) otherwise floors the
        // normalized eigenpair residual around 1e-9 on fine grids
        if z.iter().all(|x| x.is_finite()) {
            let refine_rhs: Vec<f64> = (0..n)
                .map(|i| work[i] - residual_component(p, &z, shift, i))
                .collect();
            let mut dz = vec![0.0; n];
            lu.solve(&refine_rhs, &mut dz);
            if dz.iter().all(|x| x.is_finite()) {
                for (zi, di) in z.iter_mut().zip(&dz) {
                    *zi += di;
                }
            }
        }
        // guard against overflow of the near-singular solve: rescale by the
        // largest entry first, and nudge the shift if the solve blew up
        let zmax = z.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        if !zmax.is_finite() {
            if overflow_retries >= 4 {
                return Err(Error::Numerical(
                    "inverse iteration solve overflowed repeatedly".into(),
                ));
            }
            overflow_retries += 1;
            shift += shift.abs().max(1.0) * 1.0e-11 * overflow_retries as f64;
            lu = factor_at(shift);
            continue;
        }
        if zmax == 0.0 {
            return Err(Error::Numerical(
                "inverse iteration produced a zero vector".into(),
            ));
        }
        for zi in z.iter_mut() {
            *zi /= zmax;
        }
        tri_matvec(&p.m_diag, &p.m_off, &z, &mut work);
        let znorm2: f64 = z.iter().zip(&work).map(|(a, b)| a * b).sum();
        if !(znorm2 > 0.0) || !znorm2.is_finite() {
            return Err(Error::Numerical(
                "inverse iteration produced a degenerate vector".into(),
            ));
        }
        let s = znorm2.sqrt();
        for zi in z.iter_mut() {
            *zi /= s;
        }
        // Rayleigh quotient via the compensated shifted residual:
        // theta = shift + z^T (K - shift M) z when z^T M z = 1, which keeps
        // the rounding noise at eps*|shift| instead of eps*||K||
        let mut ku = vec![0.0; n];
        tri_matvec(&p.k_diag, &p.k_off, &z, &mut ku);
        tri_matvec(&p.m_diag, &p.m_off, &z, &mut work);
        let r_shift: Vec<f64> = (0..n)
            .map(|i| residual_component(p, &z, shift, i))
            .collect();
        let dtheta: f64 = z.iter().zip(&r_shift).map(|(a, b)| a * b).sum();
        let theta = shift + dtheta;
        let mut rnum = 0.0;
        let mut knorm = 0.0;
        let mut mnorm = 0.0;
        for i in 0..n {
            let r = r_shift[i] - dtheta * work[i];
            rnum += r * r;
            knorm += ku[i] * ku[i];
            mnorm += work[i] * work[i];
        }
        let res = rnum.sqrt() / (knorm.sqrt() + theta.abs() * mnorm.sqrt());
        if res < best_res {
            best_res = res;
            best = Some((z.clone(), theta, res));
        }
        if res <= RESIDUAL_TOL {
            break;
        }
        // Rayleigh-quotient shift: theta is far closer to the eigenvalue
        // than the bisection estimate once z carries the right mode
        if refreshes < 5 && (theta - sigma).abs() <= 1.0e-4 * sigma.abs().max(1.0) {
            shift = theta;
            lu = factor_at(shift);
            refreshes += 1;
        }
        v = z;
    }
    match best {
        Some(b) if b.2 <= RESIDUAL_TOL => Ok(b),
        Some(b) => Err(Error::Numerical(format!(
            "inverse iteration stalled at residual {:.3e}",
            b.2
        ))),
        None => Err(Error::Numerical("inverse iteration failed".into())),
    }
}

/// The `k`-th nonzero eigenvalue and eigenvector of the weighted problem.
pub fn mu_k(w: &SampledWeight, k: u32) -> Result<SpectralSolution> {
    if k < 1 {
        return Err(Error::Domain("eigenvalue index k must be >= 1".into()));
    }
    let p = assemble(w)?;
    let n = p.n();
    if (k as usize) > n / 8 {
        return Err(Error::Resolution(format!(
            "k = {k} is too large for an {n}-node grid; increase n to at least {}",
            8 * k as usize
        )));
    }
    let mu_est = pencil_eigenvalue(&p, k as usize + 1)?;
    let sigma = mu_est * (1.0 + 1.0e-9) + 1.0e-12;
    let (mut u, theta, residual) = inverse_iteration(&p, sigma)?;

    // deterministic sign: largest-magnitude entry positive
    let imax = (0..n)
        .max_by(|&a, &b| u[a].abs().partial_cmp(&u[b].abs()).unwrap())
        .unwrap();
    if u[imax] < 0.0 {
        for x in u.iter_mut() {
            *x = -*x;
        }
    }
    let nodal = count_sign_runs(&u);
    Ok(SpectralSolution {
        mu: theta,
        k,
        u,
        residual,
        nodal_intervals: nodal,
        grid: p.grid,
    })
}

/// First `k_max` nonzero eigenvalues by bisection only (no eigenvectors).
pub fn eigenvalues(w: &SampledWeight, k_max: u32) -> Result<Vec<f64>> {
    if k_max < 1 {
        return Err(Error::Domain("k_max must be >= 1".into()));
    }
    let p = assemble(w)?;
    if (k_max as usize) > p.n() / 8 {
        return Err(Error::Resolution(format!(
            "k_max = {k_max} is too large for an {}-node grid; increase n",
            p.n()
        )));
    }
    (1..=k_max as usize)
        .map(|k| pencil_eigenvalue(&p, k + 1))
        .collect()
}

fn count_sign_runs(u: &[f64]) -> usize {
    let max = u.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let thresh = NODAL_EPS * max;
    let mut runs = 0;
    let mut last_sign = 0i8;
    for &x in u {
        if x.abs() <= thresh {
            continue;
        }
        let s = if x > 0.0 { 1 } else { -1 };
        if s != last_sign {
            runs += 1;
            last_sign = s;
        }
    }
    runs
}

/// Count of maximal sign-constant runs of the nodal values, ignoring entries
/// below `1e-8 * max|u|`.
pub fn nodal_intervals(s: &SpectralSolution) -> usize {
    count_sign_runs(&s.u)
}

/// Rayleigh upper bound for `mu_k(w)` from the polynomial test functions
/// `phi_i(x) = x^i - (int t^i w)/(int w)`, `i = 1..=k`: the largest
/// generalized eigenvalue of the k-by-k stiffness/Gram pencil on their span.
/// Always `>=` the continuum eigenvalue by the variational principle.
pub fn polynomial_upper_bound(w: &SampledWeight, k: u32) -> Result<f64> {
    if k < 1 {
        return Err(Error::Domain("k must be >= 1".into()));
    }
    if k > 12 {
        return Err(Error::Validation(format!(
            "k = {k} exceeds 12; the monomial basis is too ill-conditioned, use a smaller k"
        )));
    }
    let k = k as usize;
    // moments m_i = int x^i w dx, exact for the piecewise-linear weight
    let mut moments = vec![0.0f64; 2 * k + 1];
    for e in 0..w.grid.len() - 1 {
        let (xl, xr) = (w.grid[e], w.grid[e + 1]);
        let len = xr - xl;
        let (wl, wr) = (w.values[e], w.values[e + 1]);
        let slope = (wr - wl) / len;
        let c0 = wl - slope * xl;
        let mut xl_pow = xl * xl;
        let mut xr_pow = xr * xr;
        // I_p = (xr^{p+1} - xl^{p+1})/(p+1)
        let mut i_prev = xr - xl; // I_0
        for (p, m) in moments.iter_mut().enumerate() {
            let i_next = (xr_pow - xl_pow) / (p as f64 + 2.0);
            *m += c0 * i_prev + slope * i_next;
            i_prev = i_next;
            xl_pow *= xl;
            xr_pow *= xr;
        }
    }
    let m0 = moments[0];
    if m0 <= 0.0 {
        return Err(Error::Validation("weight has zero mass".into()));
    }
    let mut a = SymMatrix::zeros(k);
    let mut b = SymMatrix::zeros(k);
    for i in 1..=k {
        for j in 1..=k {
            a.set(i - 1, j - 1, (i * j) as f64 * moments[i + j - 2]);
            b.set(i - 1, j - 1, moments[i + j] - moments[i] * moments[j] / m0);
        }
    }
    let l = cholesky_dense(&b).map_err(|_| {
        Error::Numerical(format!(
            "Gram matrix of the polynomial test space is not numerically positive \
             definite at k = {k}; use a smaller k"
        ))
    })?;
    // C = L^{-1} A L^{-T}
    let mut c = SymMatrix::zeros(k);
    // forward-substitute columns of A, then rows
    let mut work = a.clone();
    for col in 0..k {
        for i in 0..k {
            let mut s = work.get(i, col);
            for p in 0..i {
                s -= l.get(i, p) * work.get(p, col);
            }
            work.set(i, col, s / l.get(i, i));
        }
    }
    for row in 0..k {
        for j in 0..k {
            let mut s = work.get(row, j);
            for p in 0..j {
                s -= l.get(j, p) * c.get(row, p);
            }
            c.set(row, j, s / l.get(j, j));
        }
    }
    let (vals, _) = jacobi_eigen(&c)?;
    Ok(*vals.last().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{bessel_zero, BesselOrder};
    use crate::profile::{
        make_profile, optimal_profile, random_concave_profile, sample_weight, Grading,
        SampledWeight,
    };
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn constant_weight(n: usize) -> SampledWeight {
        let grid: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        SampledWeight::new(grid, vec![1.0; n], 1.0).unwrap()
    }

    fn roof_weight(n: usize) -> SampledWeight {
        let roof = optimal_profile(1.0, 1).unwrap();
        sample_weight(&roof, 1.0, n, Grading::Uniform).unwrap()
    }

    #[test]
    fn assemble_constant_weight_textbook() {
        let w = constant_weight(9);
        let p = assemble(&w).unwrap();
        let len = 1.0 / 8.0;
        assert_abs_diff_eq!(p.k_diag[0], 1.0 / len, epsilon = 1e-12);
        assert_abs_diff_eq!(p.k_diag[3], 2.0 / len, epsilon = 1e-12);
        assert_abs_diff_eq!(p.k_off[2], -1.0 / len, epsilon = 1e-12);
        // row sums exactly zero: constants in the kernel
        for i in 0..p.n() {
            let mut s = p.k_diag[i];
            if i > 0 {
                s += p.k_off[i - 1];
            }
            if i + 1 < p.n() {
                s += p.k_off[i];
            }
            assert_eq!(s, 0.0);
        }
        assert_abs_diff_eq!(p.m_diag[3], 2.0 * len / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.m_off[2], len / 6.0, epsilon = 1e-12);
    }

    #[test]
    fn assemble_roof_is_symmetric_tridiagonal_pd_mass() {
        let w = roof_weight(65);
        let p = assemble(&w).unwrap();
        assert!(p.m_diag.iter().all(|&d| d > 0.0));
        assert_eq!(p.k_off.len(), p.n() - 1);
    }

    #[test]
    fn count_below_constant_weight() {
        let w = constant_weight(257);
        let p = assemble(&w).unwrap();
        assert_eq!(count_below(&p, -1.0), 0);
        assert_eq!(count_below(&p, 0.5 * PI * PI), 1);
        assert_eq!(count_below(&p, 4.5 * PI * PI), 3);
    }

    #[test]
    fn neumann_interval_spectrum() {
        let w = constant_weight(2048);
        for k in 1..=3u32 {
            let s = mu_k(&w, k).unwrap();
            let exact = (k as f64 * PI).powi(2);
            assert!(
                (s.mu - exact).abs() / exact < 1e-3,
                "mu_{k} = {} vs {exact}",
                s.mu
            );
            assert!(s.residual <= 1e-9);
            assert_eq!(s.nodal_intervals, k as usize + 1);
        }
    }

    #[test]
    fn solution_invariants() {
        let w = roof_weight(1024);
        let s = mu_k(&w, 2).unwrap();
        let p = assemble(&w).unwrap();
        // u^T M u = 1
        let mut mu_v = vec![0.0; p.n()];
        tri_matvec(&p.m_diag, &p.m_off, &s.u, &mut mu_v);
        let norm: f64 = s.u.iter().zip(&mu_v).map(|(a, b)| a * b).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-10);
        // M-orthogonal to constants
        let dot: f64 = mu_v.iter().sum();
        assert!(dot.abs() < 1e-8, "constant-mode component {dot}");
    }

    #[test]
    fn roof_saturates_bessel_constant() {
        let w = roof_weight(4096);
        let s = mu_k(&w, 1).unwrap();
        let j01 = bessel_zero(BesselOrder::new(0.0).unwrap(), 1).unwrap().value;
        let exact = (2.0 * j01).powi(2);
        assert!(
            (s.mu - exact).abs() / exact < 5e-3,
            "mu_1(roof) = {} vs {exact}",
            s.mu
        );
    }

    #[test]
    fn scale_invariance_machine_level() {
        let w = roof_weight(512);
        let base = mu_k(&w, 1).unwrap().mu;
        for &c in &[1e-3, 1e3] {
            let scaled = SampledWeight::new(
                w.grid.clone(),
                w.values.iter().map(|v| c * v).collect(),
                w.exponent_tag,
            )
            .unwrap();
            let m = mu_k(&scaled, 1).unwrap().mu;
            assert!(
                ((m - base) / base).abs() < 1e-12,
                "scale {c}: {m} vs {base}"
            );
        }
    }

    #[test]
    fn eigenvalues_are_ordered() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let h = random_concave_profile(&mut rng, 5);
            let w = sample_weight(&h, 1.5, 512, Grading::Uniform).unwrap();
            let mut prev = 0.0;
            for k in 1..=5u32 {
                let m = mu_k(&w, k).unwrap().mu;
                assert!(m >= prev - 1e-9 * m.abs());
                prev = m;
            }
        }
    }

    #[test]
    fn mesh_convergence_doubling() {
        for &alpha in &[1.0, 2.5, 4.0] {
            let h = optimal_profile(alpha, 2).unwrap();
            let grading = if alpha > 2.0 {
                Grading::EndpointGraded
            } else {
                Grading::Uniform
            };
            for k in [1u32, 4, 6] {
                let w1 = sample_weight(&h, alpha, 1024, grading).unwrap();
                let w2 = sample_weight(&h, alpha, 2048, grading).unwrap();
                let m1 = mu_k(&w1, k).unwrap().mu;
                let m2 = mu_k(&w2, k).unwrap().mu;
                assert!(
                    ((m1 - m2) / m2).abs() < 2e-3,
                    "alpha={alpha} k={k}: {m1} vs {m2}"
                );
            }
        }
    }

    #[test]
    fn continuity_in_the_weight() {
        let w = roof_weight(1024);
        let base = mu_k(&w, 1).unwrap().mu;
        let mut gaps = Vec::new();
        for &eps in &[1e-1, 1e-2, 1e-3] {
            let w_eps = SampledWeight::new(
                w.grid.clone(),
                w.values.iter().map(|v| v + eps).collect(),
                1.0,
            )
            .unwrap();
            gaps.push((mu_k(&w_eps, 1).unwrap().mu - base).abs());
        }
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "gaps: {gaps:?}");
    }

    #[test]
    fn courant_sharp_nodal_counts() {
        for &alpha in &[1.0, 1.5, 3.0] {
            let grading = if alpha > 2.0 {
                Grading::EndpointGraded
            } else {
                Grading::Uniform
            };
            for k in 1..=5u32 {
                let h = optimal_profile(alpha, k).unwrap();
                let w = sample_weight(&h, alpha, 4096, grading).unwrap();
                let s = mu_k(&w, k).unwrap();
                assert_eq!(
                    s.nodal_intervals,
                    k as usize + 1,
                    "alpha={alpha} k={k}"
                );
                assert_eq!(nodal_intervals(&s), s.nodal_intervals);
            }
        }
    }

    #[test]
    fn resolution_error_for_large_k() {
        let w = constant_weight(64);
        match mu_k(&w, 20) {
            Err(Error::Resolution(msg)) => assert!(msg.contains("increase n")),
            other => panic!("expected resolution error, got {other:?}"),
        }
    }

    #[test]
    fn polynomial_bound_constant_weight_exact() {
        // phi_1 = x - 1/2: ratio = 1 / (1/12) = 12 with exact integrals
        let w = constant_weight(33);
        let b = polynomial_upper_bound(&w, 1).unwrap();
        assert_abs_diff_eq!(b, 12.0, epsilon = 1e-10);
        assert!(b >= PI * PI);
    }

    #[test]
    fn polynomial_bound_dominates_fem() {
        let w = roof_weight(2048);
        for k in 1..=4u32 {
            let fem = mu_k(&w, k).unwrap().mu;
            let ub = polynomial_upper_bound(&w, k).unwrap();
            assert!(
                ub >= fem * (1.0 - 1e-3),
                "k={k}: poly bound {ub} below FEM {fem}"
            );
        }
    }

    #[test]
    fn polynomial_bound_uniformly_bounded_on_capped_family() {
        // ||w||_inf <= 1, int w >= 0.3: bounded by a single finite constant
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let h = random_concave_profile(&mut rng, 6);
            let w = sample_weight(&h, 1.0, 128, Grading::Uniform).unwrap();
            let mass: f64 = (0..w.len() - 1)
                .map(|e| {
                    0.5 * (w.values[e] + w.values[e + 1]) * (w.grid[e + 1] - w.grid[e])
                })
                .sum();
            if mass < 0.3 {
                continue;
            }
            let b = polynomial_upper_bound(&w, 2).unwrap();
            assert!(b.is_finite() && b < 1e5, "unbounded test value {b}");
        }
    }

    #[test]
    fn polynomial_bound_rejects_large_k() {
        let w = constant_weight(33);
        assert!(polynomial_upper_bound(&w, 13).is_err());
    }

    #[test]
    fn zero_weight_rejected() {
        let grid: Vec<f64> = (0..17).map(|i| i as f64 / 16.0).collect();
        assert!(SampledWeight::new(grid, vec![0.0; 17], 1.0).is_err());
    }

    #[test]
    fn graded_grid_alpha3() {
        let h = optimal_profile(3.0, 1).unwrap();
        let w = sample_weight(&h, 3.0, 4096, Grading::EndpointGraded).unwrap();
        let s = mu_k(&w, 1).unwrap();
        let j11 = bessel_zero(BesselOrder::new(1.0).unwrap(), 1).unwrap().value;
        let exact = 4.0 * j11 * j11;
        assert!(
            (s.mu - exact).abs() / exact < 1e-2,
            "mu_1 = {} vs {exact}",
            s.mu
        );
    }

    #[test]
    fn trapezoid_weight_hits_sharp_constant() {
        let h = optimal_profile(1.0, 2).unwrap();
        let w = sample_weight(&h, 1.0, 4096, Grading::Uniform).unwrap();
        let s = mu_k(&w, 2).unwrap();
        let j01 = bessel_zero(BesselOrder::new(0.0).unwrap(), 1).unwrap().value;
        let exact = (2.0 * j01 + PI).powi(2);
        assert!((s.mu - exact).abs() / exact < 5e-3);
    }

    #[test]
    fn make_profile_roundtrip_through_solver() {
        let h = make_profile(&[(0.0, 0.4), (0.3, 1.0), (1.0, 0.2)]).unwrap();
        let w = sample_weight(&h, 1.0, 512, Grading::Uniform).unwrap();
        let s = mu_k(&w, 1).unwrap();
        assert!(s.mu > 0.0 && s.residual <= 1e-9);
    }
}
