//! Profile functions on `[0, 1]`: the concave class (piecewise-linear,
//! values in `[0, 1]`, max 1), its powers sampled on FEM grids, the analytic
//! maximizer profiles for each `(alpha, k)`, and the plateau-exponential
//! profile used by the unboundedness example.

use crate::bessel::{bessel_zero, BesselOrder};
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Slope increases up to this size are treated as roundoff and flattened.
const CONCAVITY_TOL: f64 = 1.0e-12;

/// Grid layout for sampled weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Grading {
    Uniform,
    /// Nodes concentrated near both endpoints by a power-2 map; the right
    /// choice when the weight vanishes to high order at the ends.
    EndpointGraded,
}

/// A concave piecewise-affine function `h: [0,1] -> [0,1]`.
///
/// Breakpoints are the single source of truth; evaluation anywhere in `[0,1]`
/// is linear interpolation between them.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileJson", into = "ProfileJson")]
pub struct PiecewiseLinearProfile {
    breakpoints: Vec<(f64, f64)>,
    normalized: bool,
}

#[derive(Serialize, Deserialize, Clone)]
struct ProfileJson {
    breakpoints: Vec<(f64, f64)>,
    normalized: bool,
}

impl From<PiecewiseLinearProfile> for ProfileJson {
    fn from(p: PiecewiseLinearProfile) -> Self {
        ProfileJson {
            breakpoints: p.breakpoints,
            normalized: p.normalized,
        }
    }
}

impl TryFrom<ProfileJson> for PiecewiseLinearProfile {
    type Error = Error;
    fn try_from(j: ProfileJson) -> Result<Self> {
        make_profile(&j.breakpoints)
    }
}

impl PiecewiseLinearProfile {
    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    /// True when `max h = 1`, i.e. the profile is a representative of the
    /// normalized concave class.
    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Linear interpolation at `x` (clamped to `[0, 1]`).
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        let pts = &self.breakpoints;
        let idx = match pts.binary_search_by(|p| p.0.partial_cmp(&x).unwrap()) {
            Ok(i) => return pts[i].1,
            Err(i) => i,
        };
        // x strictly between pts[idx-1].0 and pts[idx].0
        let (x0, y0) = pts[idx - 1];
        let (x1, y1) = pts[idx];
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn max_value(&self) -> f64 {
        self.breakpoints.iter().map(|p| p.1).fold(0.0, f64::max)
    }

    /// Abscissa of (the first) maximum ordinate.
    pub fn peak_x(&self) -> f64 {
        let mut best = self.breakpoints[0];
        for &p in &self.breakpoints {
            if p.1 > best.1 {
                best = p;
            }
        }
        best.0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Validation(format!("profile JSON: {e}")))
    }
}

/// Validate breakpoints and build a profile.
///
/// Requirements: first abscissa 0, last 1, strictly increasing abscissas,
/// ordinates in `[0, 1]`, non-increasing slopes. Violations within 1e-12 are
/// snapped/flattened; larger ones are reported with the first offending
/// breakpoint index.
pub fn make_profile(points: &[(f64, f64)]) -> Result<PiecewiseLinearProfile> {
    if points.len() < 2 {
        return Err(Error::Validation(
            "profile needs at least two breakpoints".into(),
        ));
    }
    let mut pts = points.to_vec();
    for (i, p) in pts.iter().enumerate() {
        if !p.0.is_finite() || !p.1.is_finite() {
            return Err(Error::Validation(format!(
                "breakpoint {i}: non-finite coordinate"
            )));
        }
    }
    if pts[0].0.abs() > CONCAVITY_TOL {
        return Err(Error::Validation(format!(
            "breakpoint 0: first abscissa must be 0, got {}",
            pts[0].0
        )));
    }
    pts[0].0 = 0.0;
    let last = pts.len() - 1;
    if (pts[last].0 - 1.0).abs() > CONCAVITY_TOL {
        return Err(Error::Validation(format!(
            "breakpoint {last}: last abscissa must be 1, got {}",
            pts[last].0
        )));
    }
    pts[last].0 = 1.0;

    for i in 1..pts.len() {
        if pts[i].0 <= pts[i - 1].0 {
            return Err(Error::Validation(format!(
                "breakpoint {i}: abscissas must increase strictly ({} after {})",
                pts[i].0,
                pts[i - 1].0
            )));
        }
    }
    for (i, p) in pts.iter_mut().enumerate() {
        if p.1 < -CONCAVITY_TOL || p.1 > 1.0 + CONCAVITY_TOL {
            return Err(Error::Validation(format!(
                "breakpoint {i}: ordinate {} outside [0, 1]",
                p.1
            )));
        }
        p.1 = p.1.clamp(0.0, 1.0);
    }

    // Concavity sweep: flatten roundoff-level slope increases, reject others.
    for i in 1..pts.len() - 1 {
        let s_prev = (pts[i].1 - pts[i - 1].1) / (pts[i].0 - pts[i - 1].0);
        let s_next = (pts[i + 1].1 - pts[i].1) / (pts[i + 1].0 - pts[i].0);
        let tol = CONCAVITY_TOL * s_prev.abs().max(s_next.abs()).max(1.0);
        if s_next > s_prev + tol {
            return Err(Error::Validation(format!(
                "breakpoint {i}: slope increases from {s_prev} to {s_next} (not concave)"
            )));
        }
        if s_next > s_prev {
            // Pull the next ordinate down to restore exact concavity.
            pts[i + 1].1 = (pts[i].1 + s_prev * (pts[i + 1].0 - pts[i].0)).clamp(0.0, 1.0);
        }
    }

    let max_y = pts.iter().map(|p| p.1).fold(0.0, f64::max);
    let normalized = (max_y - 1.0).abs() <= CONCAVITY_TOL;
    if normalized {
        for p in pts.iter_mut() {
            if (p.1 - 1.0).abs() <= CONCAVITY_TOL {
                p.1 = 1.0;
            }
        }
    }
    Ok(PiecewiseLinearProfile {
        breakpoints: pts,
        normalized,
    })
}

/// The maximizer of `mu_k(h^alpha)` over the normalized concave class.
///
/// Branches: for `alpha < 2` the roof (k = 1) or the trapezoid with vertex
/// abscissa `j_{nu,1} / (2 j_{nu,1} + (k-1) pi)` (k >= 2); for `alpha > 2`
/// the roof (k odd) or the asymmetric roof with peak
/// `j_{nu,k/2} / (j_{nu,k/2} + j_{nu,(k+2)/2})` (k even), `nu = (alpha-1)/2`.
/// For `alpha = 2` the maximizer is not unique (any concave polygon vanishing
/// at 0 and 1 with vertices on the grid `i/(k+1)` attains the optimum, see
/// [`alpha_two_vertex_family`]); this returns the roof for odd k and the
/// two-segment profile with peak `(k/2)/(k+1)` for even k.
pub fn optimal_profile(alpha: f64, k: u32) -> Result<PiecewiseLinearProfile> {
    if !alpha.is_finite() || alpha < 1.0 {
        return Err(Error::Domain(format!(
            "optimal_profile requires alpha >= 1, got {alpha}"
        )));
    }
    if k < 1 {
        return Err(Error::Domain("optimal_profile requires k >= 1".into()));
    }
    let roof = vec![(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)];
    let nu = BesselOrder::new((alpha - 1.0) / 2.0)?;
    let pts = if alpha < 2.0 {
        if k == 1 {
            roof
        } else {
            let j1 = bessel_zero(nu, 1)?.value;
            let xa = j1 / (2.0 * j1 + (k - 1) as f64 * std::f64::consts::PI);
            vec![(0.0, 0.0), (xa, 1.0), (1.0 - xa, 1.0), (1.0, 0.0)]
        }
    } else if alpha == 2.0 {
        if k % 2 == 1 {
            roof
        } else {
            let peak = (k / 2) as f64 / (k + 1) as f64;
            vec![(0.0, 0.0), (peak, 1.0), (1.0, 0.0)]
        }
    } else if k % 2 == 1 {
        roof
    } else {
        let j_lo = bessel_zero(nu, k / 2)?.value;
        let j_hi = bessel_zero(nu, k / 2 + 1)?.value;
        let peak = j_lo / (j_lo + j_hi);
        vec![(0.0, 0.0), (peak, 1.0), (1.0, 0.0)]
    };
    make_profile(&pts)
}

/// Interior vertex abscissas `i/(k+1)` shared by the whole family of
/// `alpha = 2` maximizers.
pub fn alpha_two_vertex_family(k: u32) -> Vec<f64> {
    (1..=k).map(|i| i as f64 / (k + 1) as f64).collect()
}

/// A weight `h^alpha` sampled on a grid of `[0, 1]`, ready for assembly.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampledWeight {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Exponent used to produce the values (provenance only).
    pub exponent_tag: f64,
}

impl SampledWeight {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, exponent_tag: f64) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Validation(format!(
                "grid ({}) and values ({}) lengths differ",
                grid.len(),
                values.len()
            )));
        }
        if grid.len() < 2 {
            return Err(Error::Validation("weight needs at least two nodes".into()));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Validation(
                "weight grid must be strictly increasing".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::Validation(
                "weight values must be finite and nonnegative".into(),
            ));
        }
        if values.iter().all(|v| *v == 0.0) {
            return Err(Error::Validation("weight is identically zero".into()));
        }
        Ok(SampledWeight {
            grid,
            values,
            exponent_tag,
        })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

fn graded_map(t: f64) -> f64 {
    if t <= 0.5 {
        2.0 * t * t
    } else {
        1.0 - 2.0 * (1.0 - t) * (1.0 - t)
    }
}

/// Sample `h(x)^alpha` on an `n`-node grid that always contains every
/// breakpoint of `h` (so the weight is exactly the linear interpolant of the
/// profile between nodes when `alpha = 1`).
pub fn sample_weight(
    h: &PiecewiseLinearProfile,
    alpha: f64,
    n: usize,
    grading: Grading,
) -> Result<SampledWeight> {
    if !alpha.is_finite() || alpha < 1.0 {
        return Err(Error::Domain(format!(
            "sample_weight requires alpha >= 1, got {alpha}"
        )));
    }
    if n < 2 {
        return Err(Error::Validation("node count must be at least 2".into()));
    }
    let mut grid: Vec<f64> = (0..n)
        .map(|j| {
            let t = j as f64 / (n - 1) as f64;
            match grading {
                Grading::Uniform => t,
                Grading::EndpointGraded => graded_map(t),
            }
        })
        .collect();
    grid.extend(h.breakpoints().iter().map(|p| p.0));
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid.dedup_by(|a, b| (*a - *b).abs() < 1.0e-13);
    *grid.first_mut().unwrap() = 0.0;
    *grid.last_mut().unwrap() = 1.0;

    let values: Vec<f64> = grid
        .iter()
        .map(|&x| {
            let v = h.eval(x);
            if alpha == 1.0 {
                v
            } else {
                v.powf(alpha)
            }
        })
        .collect();
    SampledWeight::new(grid, values, alpha)
}

/// Plateau-exponential profile: `exp(2w(x-a))` on `[0,a)`, `1` on
/// `[a, 1-a]`, mirrored on `(1-a, 1]`; symmetric about `1/2` by construction
/// (the grid and values are built on `[0, 1/2]` and reflected exactly).
#[derive(Clone, Copy, Debug)]
pub struct ExpProfile {
    pub a: f64,
    pub w: f64,
}

impl ExpProfile {
    pub fn new(a: f64, w: f64) -> Result<Self> {
        if !(a > 0.0 && a < 0.5) {
            return Err(Error::Domain(format!(
                "plateau half-width a must lie in (0, 1/2), got {a}"
            )));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Domain(format!("rate w must be positive, got {w}")));
        }
        Ok(ExpProfile { a, w })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.min(1.0 - x); // symmetry about 1/2
        if x < self.a {
            (2.0 * self.w * (x - self.a)).exp()
        } else {
            1.0
        }
    }
}

/// Sample the plateau-exponential profile on a symmetric `~n`-node grid
/// containing `a` and `1 - a`.
pub fn exp_profile(a: f64, w: f64, n: usize) -> Result<SampledWeight> {
    let g = ExpProfile::new(a, w)?;
    if n < 4 {
        return Err(Error::Validation("node count must be at least 4".into()));
    }
    let half = n / 2;
    let mut left: Vec<f64> = (0..=half)
        .map(|j| 0.5 * j as f64 / half as f64)
        .collect();
    left.push(a);
    left.sort_by(|x, y| x.partial_cmp(y).unwrap());
    left.dedup_by(|x, y| (*x - *y).abs() < 1.0e-13);

    let mut grid: Vec<f64> = left.clone();
    let mut vals: Vec<f64> = left.iter().map(|&x| g.eval(x)).collect();
    for (&x, &v) in left.iter().zip(vals.clone().iter()).rev() {
        let xr = 1.0 - x;
        if xr > *grid.last().unwrap() + 1.0e-13 {
            grid.push(xr);
            vals.push(v);
        }
    }
    SampledWeight::new(grid, vals, 1.0)
}

/// Draw a uniformly-spread random member of the normalized concave class:
/// jittered breakpoint abscissas, sorted non-increasing random slopes, shift
/// to nonnegativity, rescale to max 1. Concavity is exact by construction.
pub fn random_concave_profile<R: Rng>(rng: &mut R, segments: usize) -> PiecewiseLinearProfile {
    let segments = segments.max(2);
    let mut xs = Vec::with_capacity(segments + 1);
    xs.push(0.0);
    for i in 1..segments {
        let jitter: f64 = rng.random_range(0.1..0.9);
        xs.push((i as f64 - 0.5 + jitter) / segments as f64);
    }
    xs.push(1.0);

    let mut slopes: Vec<f64> = (0..segments).map(|_| rng.random_range(-3.0..3.0)).collect();
    slopes.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let y0: f64 = rng.random_range(0.0..1.0);
    let mut ys = vec![y0];
    for i in 0..segments {
        let dy = slopes[i] * (xs[i + 1] - xs[i]);
        ys.push(ys[i] + dy);
    }
    let min = ys.iter().cloned().fold(f64::INFINITY, f64::min).min(0.0);
    let shifted: Vec<f64> = ys.iter().map(|y| y - min).collect();
    let max = shifted.iter().cloned().fold(0.0, f64::max);
    let scale = if max > 0.0 { 1.0 / max } else { 1.0 };
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(shifted.iter())
        .map(|(&x, &y)| (x, (y * scale).clamp(0.0, 1.0)))
        .collect();
    make_profile(&pts).expect("generator output is concave by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{bessel_zero, BesselOrder};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn zero(nu: f64, m: u32) -> f64 {
        bessel_zero(BesselOrder::new(nu).unwrap(), m).unwrap().value
    }

    #[test]
    fn roof_is_valid() {
        let p = make_profile(&[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]).unwrap();
        assert!(p.is_normalized());
        assert_abs_diff_eq!(p.eval(0.25), 0.5);
        assert_abs_diff_eq!(p.eval(0.75), 0.5);
    }

    #[test]
    fn constant_is_valid() {
        let p = make_profile(&[(0.0, 1.0), (1.0, 1.0)]).unwrap();
        assert!(p.is_normalized());
        assert_eq!(p.eval(0.3), 1.0);
    }

    #[test]
    fn convex_points_rejected() {
        let err = make_profile(&[(0.0, 0.0), (0.5, 0.2), (1.0, 1.0)]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("breakpoint 1"), "got: {msg}");
    }

    #[test]
    fn bad_endpoints_rejected() {
        assert!(make_profile(&[(0.1, 0.0), (1.0, 1.0)]).is_err());
        assert!(make_profile(&[(0.0, 0.0), (0.9, 1.0)]).is_err());
        assert!(make_profile(&[(0.0, 0.0), (0.5, 1.5), (1.0, 0.0)]).is_err());
        assert!(make_profile(&[(0.0, 0.0), (0.5, 1.0), (0.4, 1.0), (1.0, 0.0)]).is_err());
    }

    #[test]
    fn roundoff_concavity_flattened() {
        let p = make_profile(&[(0.0, 0.0), (0.5, 0.5), (1.0, 1.0 + 4.0e-13)]).unwrap();
        let s1 = (p.breakpoints()[1].1 - p.breakpoints()[0].1) / 0.5;
        let s2 = (p.breakpoints()[2].1 - p.breakpoints()[1].1) / 0.5;
        assert!(s2 <= s1);
    }

    #[test]
    fn optimal_roof_for_k1() {
        let p = optimal_profile(1.0, 1).unwrap();
        assert_eq!(p.breakpoints(), &[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)]);
    }

    #[test]
    fn optimal_trapezoid_alpha1_k2() {
        let p = optimal_profile(1.0, 2).unwrap();
        let xa = zero(0.0, 1) / (2.0 * zero(0.0, 1) + PI);
        assert_eq!(p.breakpoints().len(), 4);
        assert_abs_diff_eq!(p.breakpoints()[1].0, xa, epsilon = 1e-12);
        assert_abs_diff_eq!(p.breakpoints()[2].0, 1.0 - xa, epsilon = 1e-12);
        assert_abs_diff_eq!(xa, 0.30245, epsilon = 1e-5);
    }

    #[test]
    fn optimal_asymmetric_alpha3_k2() {
        let p = optimal_profile(3.0, 2).unwrap();
        let peak = zero(1.0, 1) / (zero(1.0, 1) + zero(1.0, 2));
        assert_eq!(p.breakpoints().len(), 3);
        assert_abs_diff_eq!(p.peak_x(), peak, epsilon = 1e-12);
        assert_abs_diff_eq!(peak, 0.35324, epsilon = 1e-5);
    }

    #[test]
    fn optimal_alpha2_representatives() {
        assert_abs_diff_eq!(optimal_profile(2.0, 3).unwrap().peak_x(), 0.5);
        assert_abs_diff_eq!(optimal_profile(2.0, 2).unwrap().peak_x(), 1.0 / 3.0);
        assert_eq!(alpha_two_vertex_family(2), vec![1.0 / 3.0, 2.0 / 3.0]);
    }

    #[test]
    fn optimal_profiles_validate_and_vanish_at_ends() {
        for &alpha in &[1.0, 1.5, 2.0, 3.0, 4.0] {
            for k in 1..=5u32 {
                let p = optimal_profile(alpha, k).unwrap();
                assert!(make_profile(p.breakpoints()).is_ok());
                assert_eq!(p.eval(0.0), 0.0);
                assert_eq!(p.eval(1.0), 0.0);
                let interior = p
                    .breakpoints()
                    .iter()
                    .filter(|p| p.0 > 0.0 && p.0 < 1.0)
                    .count();
                assert!(interior <= 2, "more than 3 segments for ({alpha}, {k})");
            }
        }
        assert!(optimal_profile(0.5, 1).is_err());
    }

    #[test]
    fn sample_weight_roof_small_grid() {
        let roof = optimal_profile(1.0, 1).unwrap();
        let w = sample_weight(&roof, 1.0, 3, Grading::Uniform).unwrap();
        assert_eq!(w.grid, vec![0.0, 0.5, 1.0]);
        assert_eq!(w.values, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn sample_weight_constant_and_square() {
        let c = make_profile(&[(0.0, 1.0), (1.0, 1.0)]).unwrap();
        let w = sample_weight(&c, 3.0, 17, Grading::Uniform).unwrap();
        assert!(w.values.iter().all(|&v| v == 1.0));

        let roof = optimal_profile(1.0, 1).unwrap();
        let w2 = sample_weight(&roof, 2.0, 5, Grading::Uniform).unwrap();
        let i = w2.grid.iter().position(|&x| x == 0.25).unwrap();
        assert_abs_diff_eq!(w2.values[i], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn sample_weight_grid_contains_breakpoints() {
        let p = optimal_profile(1.0, 2).unwrap();
        let w = sample_weight(&p, 1.0, 64, Grading::EndpointGraded).unwrap();
        for bp in p.breakpoints() {
            assert!(
                w.grid.iter().any(|&x| (x - bp.0).abs() < 1e-12),
                "breakpoint {} missing from grid",
                bp.0
            );
        }
        assert!(w.grid.windows(2).all(|w| w[1] > w[0]));
        // graded grids are denser near the ends
        assert!(w.grid[1] - w.grid[0] < 1.0 / 63.0);
    }

    #[test]
    fn weight_monotone_in_alpha() {
        let roof = optimal_profile(1.0, 1).unwrap();
        let w1 = sample_weight(&roof, 1.5, 33, Grading::Uniform).unwrap();
        let w2 = sample_weight(&roof, 3.0, 33, Grading::Uniform).unwrap();
        for i in 0..w1.len() {
            let h = roof.eval(w1.grid[i]);
            if h > 0.0 && h < 1.0 {
                assert!(w2.values[i] < w1.values[i]);
            }
        }
    }

    #[test]
    fn exp_profile_plateau_and_symmetry() {
        let a = 0.3;
        let w = 5.0;
        let s = exp_profile(a, w, 64).unwrap();
        let at = |x: f64| {
            let i = s.grid.iter().position(|&g| (g - x).abs() < 1e-13).unwrap();
            s.values[i]
        };
        assert_eq!(at(a), 1.0);
        assert_eq!(at(1.0 - a), 1.0);
        assert_abs_diff_eq!(at(0.0), (-2.0 * w * a).exp(), epsilon = 1e-15);
        // exact mirror symmetry of the sampled grid and values
        let n = s.len();
        for i in 0..n {
            let xr = 1.0 - s.grid[n - 1 - i];
            assert_abs_diff_eq!(s.grid[i], xr, epsilon = 1e-15);
            assert_eq!(s.values[i], s.values[n - 1 - i]);
        }
        assert!(exp_profile(0.6, w, 64).is_err());
        assert!(exp_profile(0.0, w, 64).is_err());
    }

    #[test]
    fn profile_json_round_trip() {
        let p = optimal_profile(1.0, 2).unwrap();
        let s = p.to_json();
        assert!(s.contains("\"breakpoints\""));
        assert!(s.contains("\"normalized\":true"));
        let q = PiecewiseLinearProfile::from_json(&s).unwrap();
        assert_eq!(p, q);
        // stored decimals round-trip exactly
        assert_eq!(q.to_json(), s);
    }

    #[test]
    fn random_profiles_are_valid_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let p = random_concave_profile(&mut rng, 6);
            assert!(make_profile(p.breakpoints()).is_ok());
            assert!(p.is_normalized());
            assert!(p.breakpoints().iter().all(|b| (0.0..=1.0).contains(&b.1)));
        }
    }
}
