//! Neumann Laplacian eigenvalues on planar ridge domains
//! `{(x, y): 0 < x < 1, 0 < y < eps * h(x)}` with P1 triangles on a mapped
//! structured grid, and the collapse study verifying
//! `D^2 mu_k(Omega_eps) <= mu_k(h)` with the gap shrinking as `eps -> 0`.

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigen, BandMatrix, SymMatrix};
use crate::profile::{sample_weight, Grading, PiecewiseLinearProfile};
use crate::sturm;
use serde::Serialize;

/// Columns are laid over `{x: h(x) >= DELTA_CLIP}`; the pinched tips are
/// trimmed away rather than meshed.
pub const DELTA_CLIP: f64 = 1.0e-3;
/// Relative residual required of every reported eigenpair.
const RESIDUAL_TOL_2D: f64 = 1.0e-8;
/// Mesh slack allowed on the collapse inequality.
pub const MESH_TOL: f64 = 0.02;

/// Triangulated ridge domain.
#[derive(Clone, Debug)]
pub struct RidgeMesh {
    pub vertices: Vec<[f64; 2]>,
    /// Positively oriented vertex-index triples.
    pub triangles: Vec<[usize; 3]>,
    pub epsilon: f64,
    pub profile: PiecewiseLinearProfile,
    /// Max pairwise vertex distance (computed exactly over hull vertices).
    pub diameter: f64,
    pub nx: usize,
    pub ny: usize,
}

/// Stiffness/mass pair in symmetric banded storage (lexicographic vertex
/// numbering keeps the band at `ny + 2`).
pub struct SparsePencil2D {
    pub k: BandMatrix,
    pub m: BandMatrix,
    pub n: usize,
}

/// Interval `{x: h(x) >= DELTA_CLIP}` of a concave profile.
fn clip_interval(h: &PiecewiseLinearProfile) -> Result<(f64, f64)> {
    let pts = h.breakpoints();
    if pts.iter().all(|p| p.1 < DELTA_CLIP) {
        return Err(Error::Validation(format!(
            "profile stays below the clip height {DELTA_CLIP} everywhere"
        )));
    }
    let crossing = |p0: (f64, f64), p1: (f64, f64)| -> f64 {
        p0.0 + (DELTA_CLIP - p0.1) / (p1.1 - p0.1) * (p1.0 - p0.0)
    };
    let mut x_lo = 0.0;
    if pts[0].1 < DELTA_CLIP {
        for w in pts.windows(2) {
            if w[0].1 < DELTA_CLIP && w[1].1 >= DELTA_CLIP {
                x_lo = crossing(w[0], w[1]);
                break;
            }
        }
    }
    let mut x_hi = 1.0;
    if pts[pts.len() - 1].1 < DELTA_CLIP {
        for w in pts.windows(2).rev() {
            if w[0].1 >= DELTA_CLIP && w[1].1 < DELTA_CLIP {
                x_hi = crossing(w[0], w[1]);
                break;
            }
        }
    }
    if x_hi <= x_lo {
        return Err(Error::Validation(
            "clipped ridge region is empty".into(),
        ));
    }
    Ok((x_lo, x_hi))
}

/// Structured mesh of the clipped ridge: `nx + 1` columns mapped by
/// `(x, s) -> (x, s * eps * h(x))`, each quad split into two triangles.
pub fn build_ridge_mesh(
    h: &PiecewiseLinearProfile,
    epsilon: f64,
    nx: usize,
    ny: usize,
) -> Result<RidgeMesh> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::Domain(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    if nx < 64 || ny < 4 {
        return Err(Error::Validation(format!(
            "mesh needs nx >= 64 and ny >= 4, got nx = {nx}, ny = {ny}"
        )));
    }
    let (x_lo, x_hi) = clip_interval(h)?;
    let mut vertices = Vec::with_capacity((nx + 1) * (ny + 1));
    for j in 0..=nx {
        let x = x_lo + (x_hi - x_lo) * j as f64 / nx as f64;
        let top = epsilon * h.eval(x);
        for i in 0..=ny {
            vertices.push([x, top * i as f64 / ny as f64]);
        }
    }
    let vid = |j: usize, i: usize| j * (ny + 1) + i;
    let mut triangles = Vec::with_capacity(2 * nx * ny);
    for j in 0..nx {
        for i in 0..ny {
            for tri in [
                [vid(j, i), vid(j + 1, i), vid(j + 1, i + 1)],
                [vid(j, i), vid(j + 1, i + 1), vid(j, i + 1)],
            ] {
                let a = signed_area(&vertices, tri);
                if a.abs() <= 1.0e-14 {
                    continue;
                }
                if a > 0.0 {
                    triangles.push(tri);
                } else {
                    triangles.push([tri[0], tri[2], tri[1]]);
                }
            }
        }
    }
    if triangles.is_empty() {
        return Err(Error::Validation("mesh has no valid triangles".into()));
    }
    let diameter = hull_diameter(&vertices);
    Ok(RidgeMesh {
        vertices,
        triangles,
        epsilon,
        profile: h.clone(),
        diameter,
        nx,
        ny,
    })
}

fn signed_area(vertices: &[[f64; 2]], t: [usize; 3]) -> f64 {
    let [a, b, c] = t;
    let (ax, ay) = (vertices[a][0], vertices[a][1]);
    let (bx, by) = (vertices[b][0], vertices[b][1]);
    let (cx, cy) = (vertices[c][0], vertices[c][1]);
    0.5 * ((bx - ax) * (cy - ay) - (cx - ax) * (by - ay))
}

/// Exact max pairwise distance via the convex hull (Andrew monotone chain,
/// then brute force over the hull points).
fn hull_diameter(points: &[[f64; 2]]) -> f64 {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let cross =
        |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut hull: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev() {
        while hull.len() >= lower_len && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    let mut best = 0.0f64;
    for i in 0..hull.len() {
        for j in i + 1..hull.len() {
            let dx = hull[i][0] - hull[j][0];
            let dy = hull[i][1] - hull[j][1];
            best = best.max(dx * dx + dy * dy);
        }
    }
    best.sqrt()
}

/// P1 stiffness and consistent mass on the triangulation.
pub fn assemble_2d(mesh: &RidgeMesh) -> SparsePencil2D {
    let n = mesh.vertices.len();
    let bw = mesh.ny + 2;
    let mut k = BandMatrix::zeros(n, bw);
    let mut m = BandMatrix::zeros(n, bw);
    for &t in &mesh.triangles {
        let area = signed_area(&mesh.vertices, t);
        let [a, b, c] = t;
        let p = [mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]];
        // gradients of the barycentric basis
        let grads = [
            [(p[1][1] - p[2][1]) / (2.0 * area), (p[2][0] - p[1][0]) / (2.0 * area)],
            [(p[2][1] - p[0][1]) / (2.0 * area), (p[0][0] - p[2][0]) / (2.0 * area)],
            [(p[0][1] - p[1][1]) / (2.0 * area), (p[1][0] - p[0][0]) / (2.0 * area)],
        ];
        for r in 0..3 {
            for s in r..3 {
                let kv = area * (grads[r][0] * grads[s][0] + grads[r][1] * grads[s][1]);
                let mv = area / 12.0 * if r == s { 2.0 } else { 1.0 };
                k.add(t[r], t[s], kv);
                m.add(t[r], t[s], mv);
                if r != s {
                    // symmetric banded storage keeps one copy; matvec
                    // mirrors it, so nothing else to add
                }
            }
        }
    }
    SparsePencil2D { k, m, n }
}

/// The `k_max` smallest nonzero Neumann eigenvalues by shift-inverted
/// subspace iteration with the constant mode deflated.
pub fn neumann_eigs_2d(mesh: &RidgeMesh, k_max: usize) -> Result<Vec<f64>> {
    if k_max < 1 || k_max > 10 {
        return Err(Error::Domain(format!(
            "k_max must lie in 1..=10, got {k_max}"
        )));
    }
    let pencil = assemble_2d(mesh);
    let n = pencil.n;
    let dim = (k_max + 4).min(n.saturating_sub(2));
    if dim < k_max {
        return Err(Error::Resolution("mesh too small for k_max".into()));
    }
    // K + M is SPD: shift sigma = -1
    let sigma = -1.0;
    let mut shifted = pencil.k.clone();
    for r in 0..=shifted.bw {
        for j in 0..n {
            shifted.band[r][j] -= sigma * pencil.m.band[r][j];
        }
    }
    shifted.cholesky()?;

    let m_dot = |x: &[f64], y: &[f64], buf: &mut Vec<f64>| -> f64 {
        pencil.m.matvec(y, buf);
        x.iter().zip(buf.iter()).map(|(a, b)| a * b).sum()
    };
    let ones = vec![1.0; n];
    let mut buf = vec![0.0; n];
    let ones_m = m_dot(&ones, &ones, &mut buf);

    let mut basis: Vec<Vec<f64>> = (0..dim)
        .map(|p| {
            (0..n)
                .map(|i| ((p + 1) as f64 * 0.7 + 1.3 * i as f64).sin())
                .collect()
        })
        .collect();

    let mut theta = vec![0.0; dim];
    let mut worst_residual = f64::INFINITY;
    for _iter in 0..500 {
        // Y = (K - sigma M)^{-1} M X, deflated and M-orthonormalized
        let mut next: Vec<Vec<f64>> = Vec::with_capacity(dim);
        for x in &basis {
            pencil.m.matvec(x, &mut buf);
            let mut y = vec![0.0; n];
            shifted.solve_cholesky(&buf, &mut y);
            let proj = m_dot(&ones, &y, &mut buf) / ones_m;
            for v in y.iter_mut() {
                *v -= proj;
            }
            next.push(y);
        }
        // modified Gram-Schmidt in the M inner product, two passes
        for j in 0..dim {
            for _pass in 0..2 {
                for i in 0..j {
                    let c = {
                        let (head, tail) = next.split_at(j);
                        m_dot(&head[i], &tail[0], &mut buf)
                    };
                    let (head, tail) = next.split_at_mut(j);
                    for (v, w) in tail[0].iter_mut().zip(head[i].iter()) {
                        *v -= c * w;
                    }
                }
            }
            let nrm = m_dot(&next[j], &next[j], &mut buf).sqrt();
            if !(nrm > 0.0) {
                return Err(Error::Numerical(
                    "subspace iteration produced a degenerate basis".into(),
                ));
            }
            for v in next[j].iter_mut() {
                *v /= nrm;
            }
        }
        // Rayleigh-Ritz on the M-orthonormal basis
        let mut kys: Vec<Vec<f64>> = Vec::with_capacity(dim);
        for y in &next {
            let mut ky = vec![0.0; n];
            pencil.k.matvec(y, &mut ky);
            kys.push(ky);
        }
        let mut hmat = SymMatrix::zeros(dim);
        for p in 0..dim {
            for q in p..dim {
                let v: f64 = next[p].iter().zip(&kys[q]).map(|(a, b)| a * b).sum();
                hmat.set(p, q, v);
                hmat.set(q, p, v);
            }
        }
        let (vals, vecs) = jacobi_eigen(&hmat)?;
        let mut rotated: Vec<Vec<f64>> = vec![vec![0.0; n]; dim];
        for (col, rot) in rotated.iter_mut().enumerate() {
            for p in 0..dim {
                let c = vecs.get(p, col);
                if c != 0.0 {
                    for (r, v) in rot.iter_mut().enumerate() {
                        *v += c * next[p][r];
                    }
                }
            }
        }
        theta.copy_from_slice(&vals);
        basis = rotated;

        // residuals of the leading Ritz pairs
        worst_residual = 0.0f64;
        for (p, t) in theta.iter().enumerate().take(k_max) {
            let mut kx = vec![0.0; n];
            pencil.k.matvec(&basis[p], &mut kx);
            pencil.m.matvec(&basis[p], &mut buf);
            let mut rnum = 0.0;
            let mut knorm = 0.0;
            let mut mnorm = 0.0;
            for i in 0..n {
                let r = kx[i] - t * buf[i];
                rnum += r * r;
                knorm += kx[i] * kx[i];
                mnorm += buf[i] * buf[i];
            }
            let res = rnum.sqrt() / (knorm.sqrt() + t.abs() * mnorm.sqrt());
            worst_residual = worst_residual.max(res);
        }
        if worst_residual <= RESIDUAL_TOL_2D {
            return Ok(theta[..k_max].to_vec());
        }
    }
    Err(Error::Numerical(format!(
        "2D eigensolver did not converge: residual {worst_residual:.3e} after 500 iterations"
    )))
}

/// One epsilon of the collapse study.
#[derive(Clone, Debug, Serialize)]
pub struct CollapseRow {
    pub epsilon: f64,
    pub diameter: f64,
    pub mu_k: f64,
    pub d2mu: f64,
    pub target: f64,
    pub ratio: f64,
}

/// Collapse verification over a decreasing list of thicknesses.
#[derive(Clone, Debug, Serialize)]
pub struct CollapseStudy {
    pub rows: Vec<CollapseRow>,
    /// 1D reference value `mu_k(h)`.
    pub target: f64,
    /// `D^2 mu_k <= target * (1 + MESH_TOL)` for every epsilon.
    pub upper_bound_ok: bool,
    /// Relative gap `|D^2 mu_k - target|/target` decreases along the list.
    pub gap_decreasing: bool,
}

/// Compute `D^2 mu_k(Omega_eps)` for each epsilon and compare against the 1D
/// value `mu_k(h)` (computed at `n_1d` nodes).
pub fn collapse_study(
    h: &PiecewiseLinearProfile,
    k: usize,
    epsilons: &[f64],
    nx: usize,
    ny: usize,
    n_1d: usize,
) -> Result<CollapseStudy> {
    if epsilons.is_empty() {
        return Err(Error::Validation("need at least one epsilon".into()));
    }
    if epsilons.windows(2).any(|w| w[1] >= w[0]) || epsilons[0] > 0.5 {
        return Err(Error::Validation(
            "epsilons must be strictly decreasing and <= 0.5".into(),
        ));
    }
    let w = sample_weight(h, 1.0, n_1d, Grading::Uniform)?;
    let target = sturm::mu_k(&w, k as u32)?.mu;
    let mut rows = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        let mesh = build_ridge_mesh(h, eps, nx, ny)?;
        let eigs = neumann_eigs_2d(&mesh, k)?;
        let mu = eigs[k - 1];
        let d2mu = mesh.diameter * mesh.diameter * mu;
        rows.push(CollapseRow {
            epsilon: eps,
            diameter: mesh.diameter,
            mu_k: mu,
            d2mu,
            target,
            ratio: d2mu / target,
        });
    }
    let upper_bound_ok = rows.iter().all(|r| r.d2mu <= target * (1.0 + MESH_TOL));
    let gap_decreasing = rows
        .windows(2)
        .all(|w| (w[1].d2mu - w[1].target).abs() <= (w[0].d2mu - w[0].target).abs());
    Ok(CollapseStudy {
        rows,
        target,
        upper_bound_ok,
        gap_decreasing,
    })
}

/// ASCII export: vertex lines `v x y`, then triangle lines `t a b c`.
pub fn mesh_to_ascii(mesh: &RidgeMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        out.push_str(&format!("v {} {}\n", v[0], v[1]));
    }
    for t in &mesh.triangles {
        out.push_str(&format!("t {} {} {}\n", t[0], t[1], t[2]));
    }
    out
}
