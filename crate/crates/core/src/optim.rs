//! Shape-derivative machinery and projected-gradient maximization of
//! `mu_k(h^alpha)` over concave piecewise-linear profiles: the eigenvalue
//! derivative in a perturbation direction, the switching function
//! `f = u'^2 - mu u^2` with its per-nodal-interval zero counts, per-piece
//! first-order integral conditions, and the optimizer itself (gradient on
//! breakpoint ordinates, pool-adjacent-violators projection onto the concave
//! cone, backtracking accepting only increases).

use crate::bounds::default_grading;
use crate::error::{Error, Result};
use crate::profile::{make_profile, sample_weight, PiecewiseLinearProfile, SampledWeight};
use crate::sturm::{eigenvalues, energy_products, mu_k, SpectralSolution};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Eigenvalues closer than this relative gap are treated as multiple; the
/// derivative formula assumes simplicity.
const GAP_TOL: f64 = 1.0e-6;
const GRAD_TOL: f64 = 1.0e-7;
const STEP_INIT: f64 = 0.1;
const MAX_HALVINGS: usize = 30;

/// A perturbation direction sampled on the solver grid.
#[derive(Clone, Debug)]
pub struct Perturbation {
    pub values: Vec<f64>,
}

impl Perturbation {
    /// Sample a function on a grid.
    pub fn on_grid(grid: &[f64], f: impl Fn(f64) -> f64) -> Self {
        Perturbation {
            values: grid.iter().map(|&x| f(x)).collect(),
        }
    }

    /// Piecewise-linear tent: 0 outside `(left, right)`, 1 at `center`.
    pub fn hat(grid: &[f64], left: f64, center: f64, right: f64) -> Self {
        Perturbation::on_grid(grid, |x| hat_value(x, left, center, right))
    }
}

fn hat_value(x: f64, left: f64, center: f64, right: f64) -> f64 {
    if x <= left || x >= right {
        // the half-hats at the interval ends keep their peak value there
        if (x - center).abs() < 1e-15 {
            1.0
        } else {
            0.0
        }
    } else if x <= center {
        (x - left) / (center - left)
    } else {
        (right - x) / (right - center)
    }
}

fn check_simple_eigenvalue(w: &SampledWeight, k: u32) -> Result<Vec<f64>> {
    let evs = eigenvalues(w, k + 1)?;
    let mu = evs[k as usize - 1];
    let below = if k == 1 { 0.0 } else { evs[k as usize - 2] };
    let gap = (mu - below).min(evs[k as usize] - mu) / mu.abs().max(1e-300);
    if gap <= GAP_TOL {
        return Err(Error::Numerical(format!(
            "eigenvalue {k} is numerically multiple (relative gap {gap:.2e}); \
             the derivative formula requires a simple eigenvalue"
        )));
    }
    Ok(evs)
}

/// Derivative of the discrete `mu_k(h^alpha)` in the direction `phi`:
/// `alpha int (u'^2 - mu u^2) h^(alpha-1) phi dx` with `u` normalized by
/// `int h^alpha u^2 = 1`, evaluated with exactly the assembly quadrature (so
/// it matches central finite differences of the discrete eigenvalue).
pub fn eigen_derivative(
    h: &PiecewiseLinearProfile,
    alpha: f64,
    k: u32,
    phi: &Perturbation,
    n: usize,
) -> Result<f64> {
    let w = sample_weight(h, alpha, n, default_grading(alpha))?;
    if phi.values.len() != w.grid.len() {
        return Err(Error::Validation(format!(
            "perturbation has {} samples but the solver grid has {} nodes \
             (build it on sample_weight(h, alpha, n, default_grading(alpha)).grid)",
            phi.values.len(),
            w.grid.len()
        )));
    }
    check_simple_eigenvalue(&w, k)?;
    let sol = mu_k(&w, k)?;
    let dir = direction_values(h, alpha, &w.grid, &phi.values);
    let (stiff, mass) = energy_products(&w.grid, &dir, &sol.u);
    Ok(stiff - sol.mu * mass)
}

/// Nodal samples of `alpha h^(alpha-1) phi` (just `phi` at `alpha = 1`).
fn direction_values(
    h: &PiecewiseLinearProfile,
    alpha: f64,
    grid: &[f64],
    phi: &[f64],
) -> Vec<f64> {
    if alpha == 1.0 {
        return phi.to_vec();
    }
    grid.iter()
        .zip(phi)
        .map(|(&x, &p)| alpha * h.eval(x).powf(alpha - 1.0) * p)
        .collect()
}

/// The switching function `f = u'^2 - mu u^2` sampled at element midpoints
/// (`u'` is elementwise constant for P1), with its sign-change counts inside
/// each nodal interval of `u`.
#[derive(Clone, Debug, Serialize)]
pub struct SwitchingFunction {
    pub midpoints: Vec<f64>,
    pub values: Vec<f64>,
    /// Sign changes of `f` within each nodal interval of `u`, in order.
    pub interval_sign_changes: Vec<usize>,
    pub total_zeros: usize,
}

pub fn switching_function(s: &SpectralSolution) -> Result<SwitchingFunction> {
    if s.residual > 1.0e-8 {
        return Err(Error::Validation(format!(
            "solution residual {:.2e} too large for optimality diagnostics",
            s.residual
        )));
    }
    let n = s.grid.len();
    let umax = s.u.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let uthresh = 1.0e-8 * umax;

    let mut midpoints = Vec::with_capacity(n - 1);
    let mut values = Vec::with_capacity(n - 1);
    let mut interval_of_element = Vec::with_capacity(n - 1);
    let mut interval = 0usize;
    let mut last_sign = 0i8;
    for e in 0..n - 1 {
        let len = s.grid[e + 1] - s.grid[e];
        let du = (s.u[e + 1] - s.u[e]) / len;
        let um = 0.5 * (s.u[e] + s.u[e + 1]);
        midpoints.push(0.5 * (s.grid[e] + s.grid[e + 1]));
        values.push(du * du - s.mu * um * um);
        // nodal interval bookkeeping from node signs
        let x = s.u[e + 1];
        if x.abs() > uthresh {
            let sgn = if x > 0.0 { 1 } else { -1 };
            if last_sign != 0 && sgn != last_sign {
                interval += 1;
            }
            last_sign = sgn;
        }
        interval_of_element.push(interval);
    }
    let n_intervals = interval + 1;
    let fmax = values.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let fthresh = 1.0e-12 * fmax;
    let mut counts = vec![0usize; n_intervals];
    let mut sign_in_interval = vec![0i8; n_intervals];
    for (e, &iv) in interval_of_element.iter().enumerate() {
        let f = values[e];
        if f.abs() <= fthresh {
            continue;
        }
        let sgn = if f > 0.0 { 1 } else { -1 };
        if sign_in_interval[iv] != 0 && sgn != sign_in_interval[iv] {
            counts[iv] += 1;
        }
        sign_in_interval[iv] = sgn;
    }
    let total = counts.iter().sum();
    Ok(SwitchingFunction {
        midpoints,
        values,
        interval_sign_changes: counts,
        total_zeros: total,
    })
}

/// First-order integral conditions accumulated over one maximal affine piece
/// of the profile.
#[derive(Clone, Debug, Serialize)]
pub struct PieceIntegrals {
    pub x_start: f64,
    pub x_end: f64,
    /// `int f dx` over the piece.
    pub int_f: f64,
    /// `int t f dt` over the piece.
    pub int_tf: f64,
    /// `int f h^alpha dx` over the piece (telescopes to the vertex boundary
    /// terms `h^alpha u u'`).
    pub int_f_weight: f64,
}

/// Midpoint-rule integrals of the switching function over each maximal
/// affine piece of `h`. The solution grid must contain the breakpoints of
/// `h`.
pub fn piece_integrals(
    h: &PiecewiseLinearProfile,
    s: &SpectralSolution,
    alpha: f64,
) -> Result<Vec<PieceIntegrals>> {
    for bp in h.breakpoints() {
        if !s.grid.iter().any(|&x| (x - bp.0).abs() < 1e-12) {
            return Err(Error::Validation(format!(
                "solution grid is missing profile breakpoint {}",
                bp.0
            )));
        }
    }
    let pieces = maximal_affine_pieces(h);
    let mut out: Vec<PieceIntegrals> = pieces
        .iter()
        .map(|&(x0, x1)| PieceIntegrals {
            x_start: x0,
            x_end: x1,
            int_f: 0.0,
            int_tf: 0.0,
            int_f_weight: 0.0,
        })
        .collect();
    let mut piece_idx = 0usize;
    for e in 0..s.grid.len() - 1 {
        let len = s.grid[e + 1] - s.grid[e];
        let xm = 0.5 * (s.grid[e] + s.grid[e + 1]);
        while xm > pieces[piece_idx].1 && piece_idx + 1 < pieces.len() {
            piece_idx += 1;
        }
        let du = (s.u[e + 1] - s.u[e]) / len;
        let um = 0.5 * (s.u[e] + s.u[e + 1]);
        let f = du * du - s.mu * um * um;
        let p = &mut out[piece_idx];
        p.int_f += f * len;
        p.int_tf += f * xm * len;
        p.int_f_weight += f * h.eval(xm).powf(alpha) * len;
    }
    Ok(out)
}

/// Merge consecutive segments with equal slopes into maximal affine pieces.
fn maximal_affine_pieces(h: &PiecewiseLinearProfile) -> Vec<(f64, f64)> {
    let pts = h.breakpoints();
    let mut pieces = Vec::new();
    let mut start = pts[0].0;
    let mut prev_slope = f64::NAN;
    for i in 0..pts.len() - 1 {
        let slope = (pts[i + 1].1 - pts[i].1) / (pts[i + 1].0 - pts[i].0);
        if i > 0 && (slope - prev_slope).abs() > 1e-9 * (1.0 + slope.abs().max(prev_slope.abs()))
        {
            pieces.push((start, pts[i].0));
            start = pts[i].0;
        }
        prev_slope = slope;
    }
    pieces.push((start, pts[pts.len() - 1].0));
    pieces
}

/// Eigenfunction value and one-sided-averaged derivative at a vertex.
#[derive(Clone, Debug, Serialize)]
pub struct VertexDiagnostic {
    pub x: f64,
    pub u: f64,
    pub u_prime: f64,
}

/// Outcome of a projected-gradient run.
#[derive(Clone, Debug, Serialize)]
pub struct OptimReport {
    pub alpha: f64,
    pub k: u32,
    pub n: usize,
    pub seed: u64,
    /// `(accepted step index, mu)`, nondecreasing in `mu`.
    pub trajectory: Vec<(usize, f64)>,
    pub final_profile: PiecewiseLinearProfile,
    pub final_mu: f64,
    pub vertex_diagnostics: Vec<VertexDiagnostic>,
    pub piece_integrals: Vec<PieceIntegrals>,
    pub converged: bool,
    pub termination: String,
    /// `h(0)` after each accepted step, for endpoint-decay diagnostics.
    pub endpoint_history: Vec<(f64, f64)>,
}

/// Weighted pool-adjacent-violators projection of `slopes` onto the
/// non-increasing cone (weights = segment lengths).
fn pav_nonincreasing(slopes: &[f64], weights: &[f64]) -> Vec<f64> {
    // negate, solve the non-decreasing problem, negate back
    let mut blocks: Vec<(f64, f64, usize)> = Vec::with_capacity(slopes.len()); // (mean, weight, count)
    for (&s, &w) in slopes.iter().zip(weights) {
        let mut mean = -s;
        let mut weight = w;
        let mut count = 1;
        while let Some(&(pm, pw, pc)) = blocks.last() {
            if pm > mean {
                blocks.pop();
                mean = (pm * pw + mean * weight) / (pw + weight);
                weight += pw;
                count += pc;
            } else {
                break;
            }
        }
        blocks.push((mean, weight, count));
    }
    let mut out = Vec::with_capacity(slopes.len());
    for &(mean, _, count) in &blocks {
        for _ in 0..count {
            out.push(-mean);
        }
    }
    out
}

/// Project ordinates onto the concave cone intersected with `[0, 1]` and
/// renormalize the maximum to 1: PAV on slopes, clip, repeat until the clip
/// is a no-op, then rescale. Idempotent on its output.
pub fn project_concave(xs: &[f64], ys: &[f64]) -> Result<Vec<f64>> {
    let m = xs.len();
    let mut y = ys.to_vec();
    let weights: Vec<f64> = (0..m - 1).map(|i| xs[i + 1] - xs[i]).collect();
    let pav_rebuild = |y: &mut Vec<f64>| {
        let slopes: Vec<f64> = (0..m - 1)
            .map(|i| (y[i + 1] - y[i]) / weights[i])
            .collect();
        let fitted = pav_nonincreasing(&slopes, &weights);
        for i in 0..m - 1 {
            y[i + 1] = y[i] + fitted[i] * weights[i];
        }
    };
    for _round in 0..64 {
        pav_rebuild(&mut y);
        let mut clip_move = 0.0f64;
        for v in y.iter_mut() {
            let c = v.clamp(0.0, 1.0);
            clip_move = clip_move.max((c - *v).abs());
            *v = c;
        }
        if clip_move <= 1.0e-14 {
            // the clip is inactive up to roundoff: one clean PAV pass, snap
            // the roundoff-level out-of-range values, and rescale
            pav_rebuild(&mut y);
            for v in y.iter_mut() {
                *v = v.clamp(0.0, 1.0);
            }
            let max = y.iter().cloned().fold(0.0, f64::max);
            if max <= 0.0 {
                return Err(Error::Numerical(
                    "projection collapsed to the zero profile".into(),
                ));
            }
            if max != 1.0 {
                for v in y.iter_mut() {
                    *v /= max;
                }
            }
            return Ok(y);
        }
    }
    Err(Error::Numerical(
        "concave projection did not reach a fixed point".into(),
    ))
}

fn profile_from_ordinates(xs: &[f64], ys: &[f64]) -> Result<PiecewiseLinearProfile> {
    let pts: Vec<(f64, f64)> = xs.iter().cloned().zip(ys.iter().cloned()).collect();
    make_profile(&pts)
}

/// Projected gradient ascent on breakpoint ordinates.
///
/// The gradient comes from the eigenvalue derivative in tent directions at
/// each breakpoint; every candidate is projected back onto the normalized
/// concave class before evaluation, and a step is accepted only if `mu`
/// increases. Terminates at the step budget, at gradient norm below 1e-7, or
/// when the backtracking line search (step 0.1, at most 30 halvings) finds
/// no increase.
pub fn maximize_mu(
    alpha: f64,
    k: u32,
    m_breakpoints: usize,
    init: &PiecewiseLinearProfile,
    steps: usize,
    n: usize,
    seed: u64,
) -> Result<OptimReport> {
    if m_breakpoints < k as usize + 1 {
        return Err(Error::Validation(format!(
            "need at least k + 1 = {} breakpoints, got {m_breakpoints}",
            k + 1
        )));
    }
    let grading = default_grading(alpha);
    let mut xs: Vec<f64> = if init.breakpoints().len() == m_breakpoints {
        init.breakpoints().iter().map(|p| p.0).collect()
    } else {
        (0..m_breakpoints)
            .map(|j| j as f64 / (m_breakpoints - 1) as f64)
            .collect()
    };
    let mut ys = project_concave(&xs, &xs.iter().map(|&x| init.eval(x)).collect::<Vec<_>>())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let eval = |xs: &[f64], ys: &[f64]| -> Result<(PiecewiseLinearProfile, f64, SpectralSolution)> {
        let h = profile_from_ordinates(xs, ys)?;
        let w = sample_weight(&h, alpha, n, grading)?;
        let sol = mu_k(&w, k)?;
        Ok((h, sol.mu, sol))
    };
    // Candidate from a step of size `s` along the slope-space direction
    // (d0, dslope): the same weighted-slope geometry the PAV projection
    // uses, so small steps ascend. Rebuild ordinates, then project.
    let candidate = |xs: &[f64], ys: &[f64], d0: f64, dslope: &[f64], s: f64| -> Result<Vec<f64>> {
        let m = xs.len();
        let mut y = Vec::with_capacity(m);
        y.push(ys[0] + s * d0);
        for i in 0..m - 1 {
            let seg = xs[i + 1] - xs[i];
            let slope = (ys[i + 1] - ys[i]) / seg + s * dslope[i];
            let prev = *y.last().unwrap();
            y.push(prev + slope * seg);
        }
        project_concave(xs, &y)
    };

    let (mut h, mut mu_cur, mut sol_cur) = eval(&xs, &ys)?;
    let mut trajectory = vec![(0usize, mu_cur)];
    let mut endpoint_history = vec![(ys[0], ys[m_breakpoints - 1])];
    let mut converged = false;
    let mut termination = format!("step budget of {steps} exhausted");
    let mut accepted_steps = 0usize;

    for _ in 0..steps {
        // gradient of mu with respect to each breakpoint ordinate
        let w = sample_weight(&h, alpha, n, grading)?;
        match check_simple_eigenvalue(&w, k) {
            Ok(_) => {}
            Err(_) => {
                // multiplicity: tiny seeded perturbation and one retry
                let mut fixed = false;
                for _ in 0..5 {
                    let mut ytry = ys.clone();
                    for v in ytry.iter_mut() {
                        *v = (*v + rng.random_range(-1e-4..1e-4)).clamp(0.0, 1.0);
                    }
                    if let Ok(yp) = project_concave(&xs, &ytry) {
                        if let Ok((hp, mp, sp)) = eval(&xs, &yp) {
                            let wp = sample_weight(&hp, alpha, n, grading)?;
                            if check_simple_eigenvalue(&wp, k).is_ok() {
                                ys = yp;
                                h = hp;
                                mu_cur = mp;
                                sol_cur = sp;
                                fixed = true;
                                break;
                            }
                        }
                    }
                }
                if !fixed {
                    termination =
                        "persistent eigenvalue multiplicity; stopped at the last iterate".into();
                    break;
                }
            }
        }
        let grad: Vec<f64> = (0..m_breakpoints)
            .map(|j| {
                let left = if j == 0 { xs[0] } else { xs[j - 1] };
                let right = if j + 1 == m_breakpoints {
                    xs[m_breakpoints - 1]
                } else {
                    xs[j + 1]
                };
                let phi: Vec<f64> = w
                    .grid
                    .iter()
                    .map(|&x| hat_value(x, left, xs[j], right))
                    .collect();
                let dir = direction_values(&h, alpha, &w.grid, &phi);
                let (stiff, mass) = energy_products(&w.grid, &dir, &sol_cur.u);
                stiff - mu_cur * mass
            })
            .collect();
        let gnorm = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < GRAD_TOL {
            converged = true;
            termination = format!("gradient norm {gnorm:.2e} below {GRAD_TOL:.0e}");
            break;
        }
        // chain rule to (y0, slopes): the step must live in the same
        // weighted-slope metric as the projection or it loses the ascent
        // guarantee; there the gradient components are the tail sums
        let mut dslope = vec![0.0; m_breakpoints - 1];
        let mut tail = 0.0;
        for i in (0..m_breakpoints - 1).rev() {
            tail += grad[i + 1];
            dslope[i] = tail;
        }
        let d0: f64 = grad.iter().sum();
        let gmax = dslope.iter().fold(d0.abs(), |m, g| m.max(g.abs()));
        let d0n = d0 / gmax;
        let dsn: Vec<f64> = dslope.iter().map(|g| g / gmax).collect();

        let mut step = STEP_INIT;
        let mut accepted: Option<(Vec<f64>, f64)> = None;
        for _ in 0..MAX_HALVINGS {
            if let Ok(proj) = candidate(&xs, &ys, d0n, &dsn, step) {
                if let Ok((_, mc, _)) = eval(&xs, &proj) {
                    if mc > mu_cur {
                        accepted = Some((proj, mc));
                        break;
                    }
                }
            }
            step *= 0.5;
        }
        // grow the step while it keeps paying off
        if let Some((_, mut best_mu)) = accepted.clone() {
            let mut s = step;
            for _ in 0..8 {
                s *= 2.0;
                match candidate(&xs, &ys, d0n, &dsn, s) {
                    Ok(proj) => match eval(&xs, &proj) {
                        Ok((_, mc, _)) if mc > best_mu => {
                            best_mu = mc;
                            accepted = Some((proj, mc));
                        }
                        _ => break,
                    },
                    Err(_) => break,
                }
            }
        }
        if accepted.is_none() {
            // the projected gradient direction is blocked by the active
            // constraints; probe single-ordinate feasible moves before
            // touching the lattice
            'probe: for &delta in &[0.02, 0.005, 0.001] {
                for j in 0..m_breakpoints {
                    for sgn in [1.0, -1.0] {
                        let mut cand = ys.clone();
                        cand[j] = (cand[j] + sgn * delta).clamp(0.0, 1.0);
                        if let Ok(proj) = project_concave(&xs, &cand) {
                            if let Ok((_, mc, _)) = eval(&xs, &proj) {
                                if mc > mu_cur + 1e-12 * mu_cur.abs() {
                                    accepted = Some((proj, mc));
                                    break 'probe;
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut moved_lattice = false;
        if accepted.is_none() {
            // ordinate moves are exhausted: the optimum may need breakpoint
            // abscissas off the current lattice (the maximizer family has at
            // most M breakpoints, wherever they lie), so probe those too
            'xprobe: for &delta in &[0.05, 0.02, 0.008, 0.003] {
                for j in 1..m_breakpoints - 1 {
                    for sgn in [-1.0, 1.0] {
                        let mut nxs = xs.clone();
                        let lo = nxs[j - 1] + 1.0e-3;
                        let hi = nxs[j + 1] - 1.0e-3;
                        if lo >= hi {
                            continue;
                        }
                        nxs[j] = (nxs[j] + sgn * delta).clamp(lo, hi);
                        if (nxs[j] - xs[j]).abs() < 1e-12 {
                            continue;
                        }
                        if let Ok(proj) = project_concave(&nxs, &ys) {
                            if let Ok((_, mc, _)) = eval(&nxs, &proj) {
                                if mc > mu_cur + 1e-12 * mu_cur.abs() {
                                    xs = nxs;
                                    accepted = Some((proj, mc));
                                    moved_lattice = true;
                                    break 'xprobe;
                                }
                            }
                        }
                    }
                }
            }
        }
        match accepted {
            Some((proj, _)) => {
                let (hc, mc, sc) = eval(&xs, &proj)?;
                ys = proj;
                h = hc;
                mu_cur = mc;
                sol_cur = sc;
            }
            None => {
                converged = true;
                termination =
                    "no ascent direction found (projected stationary point)".into();
                break;
            }
        }
        let _ = moved_lattice;
        accepted_steps += 1;
        trajectory.push((accepted_steps, mu_cur));
        endpoint_history.push((ys[0], ys[m_breakpoints - 1]));
    }
    if trajectory.len() == steps + 1 {
        // ran the whole budget while still ascending
        converged = true;
    }

    let vertex_diagnostics = vertex_diagnostics(&h, &sol_cur);
    let pieces = piece_integrals(&h, &sol_cur, alpha)?;
    Ok(OptimReport {
        alpha,
        k,
        n,
        seed,
        trajectory,
        final_profile: h,
        final_mu: mu_cur,
        vertex_diagnostics,
        piece_integrals: pieces,
        converged,
        termination,
        endpoint_history,
    })
}

fn vertex_diagnostics(h: &PiecewiseLinearProfile, s: &SpectralSolution) -> Vec<VertexDiagnostic> {
    let mut out = Vec::new();
    for bp in h.breakpoints() {
        let x = bp.0;
        if x <= 0.0 || x >= 1.0 {
            continue;
        }
        // locate the grid node and use one-sided element slopes
        let i = match s
            .grid
            .binary_search_by(|g| g.partial_cmp(&x).unwrap())
        {
            Ok(i) => i,
            Err(i) => i.min(s.grid.len() - 1),
        };
        let u = s.u[i];
        let left = if i > 0 {
            (s.u[i] - s.u[i - 1]) / (s.grid[i] - s.grid[i - 1])
        } else {
            0.0
        };
        let right = if i + 1 < s.grid.len() {
            (s.u[i + 1] - s.u[i]) / (s.grid[i + 1] - s.grid[i])
        } else {
            0.0
        };
        out.push(VertexDiagnostic {
            x,
            u,
            u_prime: 0.5 * (left + right),
        });
    }
    out
}

/// True when the converged profile vanishes (within 0.05) at both endpoints.
/// Meaningful only for reports with `converged == true`.
pub fn endpoint_check(report: &OptimReport) -> bool {
    report.final_profile.eval(0.0) <= 0.05 && report.final_profile.eval(1.0) <= 0.05
}

/// Default optimizer seed profile: a slightly asymmetric roof.
pub fn default_init(m_breakpoints: usize) -> PiecewiseLinearProfile {
    let m = m_breakpoints.max(3);
    let pts: Vec<(f64, f64)> = (0..m)
        .map(|j| {
            let x = j as f64 / (m - 1) as f64;
            (x, (x / 0.45).min((1.0 - x) / 0.55).min(1.0))
        })
        .collect();
    make_profile(&pts).expect("default init is concave")
}
