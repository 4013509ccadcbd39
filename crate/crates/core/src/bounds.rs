//! Sharp constants for diameter-normalized Neumann eigenvalues, the
//! transcendental characteristic equations of the piecewise-affine maximizer
//! profiles, their closed-form eigenfunctions, and the plateau-exponential
//! construction showing the constants blow up without a concavity exponent.

use crate::bessel::{self, bessel_j, bessel_zero, BesselOrder};
use crate::error::{Error, Result};
use crate::profile::{sample_weight, Grading, PiecewiseLinearProfile};
use crate::sturm::mu_k;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Which formula of the sharp bound applies at a given `(alpha, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundBranch {
    AlphaLt2,
    AlphaEq2,
    AlphaGt2Odd,
    AlphaGt2Even,
}

/// A sharp constant `sup D^2 mu_k` for profiles whose `1/alpha` power is
/// concave (diameter normalized to 1, squared-frequency units).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BoundValue {
    pub alpha: f64,
    pub k: u32,
    pub value: f64,
    pub branch: BoundBranch,
}

fn jzero(nu: f64, m: u32) -> Result<f64> {
    Ok(bessel_zero(BesselOrder::new(nu)?, m)?.value)
}

/// The sharp constant for `(alpha, k)`:
/// `(2 j_{nu,1} + (k-1) pi)^2` for `alpha < 2`, `((k+1) pi)^2` at
/// `alpha = 2`, `4 j_{nu,(k+1)/2}^2` (k odd) or
/// `(j_{nu,k/2} + j_{nu,(k+2)/2})^2` (k even) for `alpha > 2`, with
/// `nu = (alpha-1)/2`.
pub fn bound_value(alpha: f64, k: u32) -> Result<BoundValue> {
    if !alpha.is_finite() || alpha < 1.0 {
        return Err(Error::Domain(format!(
            "bound_value requires alpha >= 1, got {alpha}"
        )));
    }
    if k < 1 {
        return Err(Error::Domain("bound_value requires k >= 1".into()));
    }
    let nu = (alpha - 1.0) / 2.0;
    let (value, branch) = if alpha < 2.0 {
        let j1 = jzero(nu, 1)?;
        (
            (2.0 * j1 + (k - 1) as f64 * PI).powi(2),
            BoundBranch::AlphaLt2,
        )
    } else if alpha == 2.0 {
        (((k + 1) as f64 * PI).powi(2), BoundBranch::AlphaEq2)
    } else if k % 2 == 1 {
        let j = jzero(nu, (k + 1) / 2)?;
        (4.0 * j * j, BoundBranch::AlphaGt2Odd)
    } else {
        let j_lo = jzero(nu, k / 2)?;
        let j_hi = jzero(nu, k / 2 + 1)?;
        ((j_lo + j_hi).powi(2), BoundBranch::AlphaGt2Even)
    };
    Ok(BoundValue {
        alpha,
        k,
        value,
        branch,
    })
}

/// The convex-domain bound in dimension `d`: the `(alpha, k)` constant at
/// `alpha = d - 1`, since slices of a convex body give a `1/(d-1)`-concave
/// profile.
pub fn kroger_bound(d: u32, k: u32) -> Result<BoundValue> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "convex-domain bound requires dimension d >= 2, got {d}"
        )));
    }
    bound_value((d - 1) as f64, k)
}

/// Geometry of a 3-segment profile: first segment of length `a` rising to
/// the plateau, last of length `b` falling from it (`a + b <= 1`; equality
/// means no plateau), with exponent `alpha` applied to the profile.
#[derive(Clone, Copy, Debug)]
pub struct CharacteristicProblem {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
}

impl CharacteristicProblem {
    pub fn new(a: f64, b: f64, alpha: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::Validation(format!(
                "segment lengths must be positive, got a = {a}, b = {b}"
            )));
        }
        if a + b > 1.0 + 1.0e-12 {
            return Err(Error::Validation(format!(
                "segment lengths must satisfy a + b <= 1, got {}",
                a + b
            )));
        }
        if !alpha.is_finite() || alpha < 1.0 {
            return Err(Error::Domain(format!("alpha must be >= 1, got {alpha}")));
        }
        Ok(CharacteristicProblem { a, b, alpha })
    }

    /// Build the matching problem from a profile's first/last interior
    /// breakpoints.
    pub fn from_profile(h: &PiecewiseLinearProfile, alpha: f64) -> Result<Self> {
        let pts = h.breakpoints();
        let interior: Vec<f64> = pts
            .iter()
            .map(|p| p.0)
            .filter(|&x| x > 0.0 && x < 1.0)
            .collect();
        if interior.is_empty() {
            return Err(Error::Validation(
                "profile has no interior breakpoints".into(),
            ));
        }
        CharacteristicProblem::new(interior[0], 1.0 - interior[interior.len() - 1], alpha)
    }
}

/// `x^{-nu} J_nu(w x)` and its x-derivative `-w x^{-nu} J_{nu+1}(w x)`:
/// the radial factor of the rising/falling-segment eigenfunction.
fn psi_and_slope(nu: f64, w: f64, x: f64) -> Result<(f64, f64)> {
    let ord = BesselOrder::new(nu)?;
    let ord1 = BesselOrder::new(nu + 1.0)?;
    let scale = x.powf(-nu);
    let psi = scale * bessel_j(ord, w * x)?;
    let slope = -w * scale * bessel_j(ord1, w * x)?;
    Ok((psi, slope))
}

/// Limit of `x^{-nu} J_nu(w x)` as `x -> 0+`.
fn psi_at_origin(nu: f64, w: f64) -> f64 {
    (0.5 * w).powf(nu) / bessel::gamma(nu + 1.0)
}

/// The C^1-connection determinant of the piecewise eigenfunction
/// (Bessel-type on the end segments, trigonometric on the plateau), in
/// product form so it has no poles: its zeros in `w` are exactly the
/// eigenfrequencies of the 3-segment profile. With `L = 1 - a - b`,
/// `psi(x) = x^{-nu} J_nu(wx)` and `p(x) = -w x^{-nu} J_{nu+1}(wx)`:
///
/// `D(w) = sin(wL) [p(a)p(b) - w^2 psi(a)psi(b)]
///        + w cos(wL) [psi(a)p(b) + p(a)psi(b)]`,
///
/// degenerating to `psi(a)p(b) + p(a)psi(b)` when the plateau is empty. For
/// `alpha = 1` the zero set reproduces the tangent-form matching condition
/// `tan(wL) = [J_1(wa)J_0(wb) + J_1(wb)J_0(wa)] /
///            [J_1(wa)J_1(wb) - J_0(wb)J_0(wa)]`.
pub fn characteristic_det(p: &CharacteristicProblem, w: f64) -> Result<f64> {
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::Domain(format!("w must be positive, got {w}")));
    }
    let nu = (p.alpha - 1.0) / 2.0;
    let (psi_a, slope_a) = psi_and_slope(nu, w, p.a)?;
    let (psi_b, slope_b) = psi_and_slope(nu, w, p.b)?;
    let plateau = 1.0 - p.a - p.b;
    let cross = psi_a * slope_b + slope_a * psi_b;
    if plateau <= 1.0e-12 {
        return Ok(cross);
    }
    let (s, c) = (w * plateau).sin_cos();
    Ok(s * (slope_a * slope_b - w * w * psi_a * psi_b) + w * c * cross)
}

/// The `which`-th positive zero of the connection determinant in `w`,
/// located by scanning with step `pi / (8(1-a-b) + 8)` and refined by
/// bisection to 1e-10 absolute accuracy.
pub fn solve_characteristic(p: &CharacteristicProblem, which: u32) -> Result<f64> {
    if which < 1 {
        return Err(Error::Domain("which must be >= 1".into()));
    }
    let step = PI / (8.0 * (1.0 - p.a - p.b) + 8.0);
    let ceiling = 20.0 + 8.0 * which as f64;
    let mut found = 0;
    let mut w_prev = 1.0e-3;
    let mut f_prev = characteristic_det(p, w_prev)?;
    let mut w = w_prev;
    while w < ceiling {
        w = w_prev + step;
        let f = characteristic_det(p, w)?;
        if f == 0.0 || f_prev.signum() != f.signum() {
            found += 1;
            if found == which {
                let (mut lo, mut hi) = (w_prev, w);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    let fm = characteristic_det(p, mid)?;
                    if fm == 0.0 {
                        return Ok(mid);
                    }
                    if fm.signum() == f_prev.signum() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo < 1.0e-11 {
                        break;
                    }
                }
                return Ok(0.5 * (lo + hi));
            }
        }
        w_prev = w;
        f_prev = f;
    }
    Err(Error::Numerical(format!(
        "characteristic-equation scan reached its ceiling {ceiling} before zero {which}"
    )))
}

/// Closed-form eigenfunction of the optimal profile for `(alpha, k)`:
/// `x^{-nu} J_nu(w x)` on the rising segment (coefficient 1), a trigonometric
/// continuation on the plateau, and a mirrored Bessel form on the falling
/// segment, all joined C^1.
#[derive(Clone, Debug)]
pub struct ClosedFormEigenfunction {
    pub alpha: f64,
    pub k: u32,
    pub w: f64,
    nu: f64,
    xa: f64,
    xb: f64,
    psi_a: f64,
    slope_a: f64,
    c_right: f64,
}

impl ClosedFormEigenfunction {
    pub fn new(alpha: f64, k: u32) -> Result<Self> {
        let profile = crate::profile::optimal_profile(alpha, k)?;
        let bound = bound_value(alpha, k)?;
        let w = bound.value.sqrt();
        let nu = (alpha - 1.0) / 2.0;
        let interior: Vec<f64> = profile
            .breakpoints()
            .iter()
            .map(|p| p.0)
            .filter(|&x| x > 0.0 && x < 1.0)
            .collect();
        let (xa, xb) = (interior[0], interior[interior.len() - 1]);
        let (psi_a, slope_a) = psi_and_slope(nu, w, xa)?;
        // plateau value/derivative carried to xb
        let (s, c) = (w * (xb - xa)).sin_cos();
        let val_b = psi_a * c + slope_a / w * s;
        let der_b = -psi_a * w * s + slope_a * c;
        let b = 1.0 - xb;
        let (psi_b, slope_b) = psi_and_slope(nu, w, b)?;
        // u(x) = c_right * psi(1-x) right of the plateau; match whichever
        // of value/derivative is better conditioned (the other vanishes at
        // an exact eigenfrequency).
        let c_right = if psi_b.abs() * w >= slope_b.abs() {
            val_b / psi_b
        } else {
            -der_b / slope_b
        };
        Ok(ClosedFormEigenfunction {
            alpha,
            k,
            w,
            nu,
            xa,
            xb,
            psi_a,
            slope_a,
            c_right,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("x must lie in [0, 1], got {x}")));
        }
        if x < self.xa {
            if x == 0.0 {
                return Ok(psi_at_origin(self.nu, self.w));
            }
            return Ok(psi_and_slope(self.nu, self.w, x)?.0);
        }
        if x <= self.xb {
            let (s, c) = (self.w * (x - self.xa)).sin_cos();
            return Ok(self.psi_a * c + self.slope_a / self.w * s);
        }
        if x == 1.0 {
            return Ok(self.c_right * psi_at_origin(self.nu, self.w));
        }
        Ok(self.c_right * psi_and_slope(self.nu, self.w, 1.0 - x)?.0)
    }
}

/// Evaluate the closed-form eigenfunction of the optimal `(alpha, k)`
/// profile at `x`.
pub fn closed_form_eigenfunction(alpha: f64, k: u32, x: f64) -> Result<f64> {
    ClosedFormEigenfunction::new(alpha, k)?.eval(x)
}

/// First positive root of `tan(x(1/2 - a)) = 1 + 1/(a x)`, the frequency of
/// the plateau-exponential weight with plateau `[a, 1-a]`.
///
/// The root always lies between `pi/(4(1/2-a))` (where the left side equals
/// 1 while the right exceeds 1) and the tangent pole `pi/(2(1/2-a))`; the
/// scan-and-bisect below needs nothing more. For `a` above roughly 0.283 the
/// root in fact lies below `pi/(3(1/2-a))`.
pub fn solve_wa(a: f64) -> Result<f64> {
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::Domain(format!(
            "plateau half-width a must lie in (0, 1/2), got {a}"
        )));
    }
    let half = 0.5 - a;
    let f = |x: f64| (x * half).tan() - 1.0 - 1.0 / (a * x);
    let lo0 = PI / (4.0 * half);
    let pole = PI / (2.0 * half);
    let mut lo = lo0;
    let mut hi = pole * (1.0 - 1.0e-9);
    // march toward the pole until the sign flips (f(lo) < 0, f -> +inf)
    let mut t = lo;
    let steps = 256;
    for i in 1..=steps {
        let x = lo0 + (hi - lo0) * i as f64 / steps as f64;
        if f(x) > 0.0 {
            lo = t;
            hi = x;
            break;
        }
        t = x;
    }
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1.0e-12 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Secular mismatch for candidate frequencies below `w_a` of the
/// plateau-exponential weight:
/// `x tan(x(1/2-a)) - w_a - sqrt(w_a^2-x^2)/tanh(a sqrt(w_a^2-x^2))`.
/// Strictly negative on `(0, w_a)` exactly when `w_a^2` is the first nonzero
/// eigenvalue.
pub fn exp_profile_secular(a: f64, w_a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0 && a < 0.5) {
        return Err(Error::Domain(format!("a must lie in (0, 1/2), got {a}")));
    }
    if !(x > 0.0 && x < w_a) {
        return Err(Error::Domain(format!("x must lie in (0, w_a), got {x}")));
    }
    let r = (w_a * w_a - x * x).sqrt();
    Ok(x * (x * (0.5 - a)).tan() - w_a - r / (a * r).tanh())
}

/// Result of checking a profile against the sharp constant.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundCheckReport {
    pub alpha: f64,
    pub k: u32,
    pub mu: f64,
    pub bound: f64,
    pub ratio: f64,
    pub pass: bool,
    pub n: usize,
    pub grading: Grading,
}

/// Discretization slack allowed on top of the sharp constant: FEM
/// convergence degrades for strongly degenerate endpoint weights.
pub fn discretization_tolerance(alpha: f64) -> f64 {
    if alpha <= 2.0 {
        0.005
    } else {
        0.01
    }
}

/// Default grid layout for a given exponent.
pub fn default_grading(alpha: f64) -> Grading {
    if alpha > 2.0 {
        Grading::EndpointGraded
    } else {
        Grading::Uniform
    }
}

/// Compute `mu_k(h^alpha)` by FEM and compare it against the sharp constant.
pub fn check_bound(
    h: &PiecewiseLinearProfile,
    alpha: f64,
    k: u32,
    n: usize,
) -> Result<BoundCheckReport> {
    let grading = default_grading(alpha);
    let w = sample_weight(h, alpha, n, grading)?;
    let sol = mu_k(&w, k)?;
    let bound = bound_value(alpha, k)?;
    let ratio = sol.mu / bound.value;
    Ok(BoundCheckReport {
        alpha,
        k,
        mu: sol.mu,
        bound: bound.value,
        ratio,
        pass: ratio <= 1.0 + discretization_tolerance(alpha),
        n,
        grading,
    })
}
