//! Bessel functions of the first and second kind with real nonnegative order,
//! and their positive zeros.
//!
//! Evaluation strategy: ascending power series for `x < 2` (the terms decrease
//! monotonically there, so the alternating sum suffers no cancellation) and a
//! continued-fraction evaluation (CF1 for `J'/J`, complex CF2 for
//! `(J'+iY')/(J+iY)`, combined through the Wronskian) for `x >= 2`. `Y` at
//! small argument uses the reflection formula for non-integer order and the
//! logarithmic series at (near-)integer order, switching within
//! `|nu - round(nu)| < 1e-6`.

use crate::error::{Error, Result};
use std::f64::consts::PI;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// Series/continued-fraction split point.
const SMALL_X: f64 = 2.0;
const CF_EPS: f64 = 1.0e-16;
const CF_FPMIN: f64 = 1.0e-300;
const CF_MAXIT: usize = 20_000;
/// Orders closer than this to an integer are evaluated by the integer-order
/// limiting series of `Y` (the reflection formula cancels there).
const INTEGER_SWITCH: f64 = 1.0e-6;

/// Real nonnegative order of a Bessel function.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu < 0.0 {
            return Err(Error::Domain(format!(
                "Bessel order must be finite and >= 0, got {nu}"
            )));
        }
        Ok(BesselOrder(nu))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// The `m`-th positive zero of `J_nu`.
#[derive(Clone, Copy, Debug)]
pub struct BesselZero {
    pub nu: BesselOrder,
    pub m: u32,
    pub value: f64,
}

/// `J_nu(x)` for `nu >= 0`, `x >= 0`.
pub fn bessel_j(nu: BesselOrder, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "bessel_j requires finite x >= 0, got {x}"
        )));
    }
    let v = nu.get();
    if x == 0.0 {
        return Ok(if v == 0.0 { 1.0 } else { 0.0 });
    }
    if x < SMALL_X {
        Ok(j_series(v, x))
    } else {
        Ok(jy_steed(v, x)?.j)
    }
}

/// `J'_nu(x)`.
pub fn bessel_j_prime(nu: BesselOrder, x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!(
            "bessel_j_prime requires finite x >= 0, got {x}"
        )));
    }
    let v = nu.get();
    if x == 0.0 {
        return match v {
            v if v == 0.0 => Ok(0.0),
            v if v == 1.0 => Ok(0.5),
            v if v > 1.0 => Ok(0.0),
            _ => Err(Error::Domain(format!(
                "J'_nu is singular at x = 0 for 0 < nu < 1 (nu = {v})"
            ))),
        };
    }
    if x < SMALL_X {
        Ok((v / x) * j_series(v, x) - j_series(v + 1.0, x))
    } else {
        Ok(jy_steed(v, x)?.jp)
    }
}

/// `Y_nu(x)` for `x > 0`; logarithmic/power singularity at the origin.
pub fn bessel_y(nu: BesselOrder, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "bessel_y requires finite x > 0, got {x}"
        )));
    }
    let v = nu.get();
    if x < SMALL_X {
        Ok(y_small(v, x))
    } else {
        Ok(jy_steed(v, x)?.y)
    }
}

/// `Y'_nu(x)` for `x > 0`.
pub fn bessel_y_prime(nu: BesselOrder, x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "bessel_y_prime requires finite x > 0, got {x}"
        )));
    }
    let v = nu.get();
    if x < SMALL_X {
        Ok((v / x) * y_small(v, x) - y_small(v + 1.0, x))
    } else {
        Ok(jy_steed(v, x)?.yp)
    }
}

/// The `m`-th positive zero of `J_nu`, to absolute accuracy better than 1e-10.
///
/// Brackets by scanning with step 1.5 (< pi/2 below the minimal spacing of
/// consecutive zeros over all nu >= 0) from a lower bound >= nu, then refines
/// by Newton iterations safeguarded by bisection.
pub fn bessel_zero(nu: BesselOrder, m: u32) -> Result<BesselZero> {
    if m < 1 {
        return Err(Error::Domain("zero index m must be >= 1".into()));
    }
    let v = nu.get();
    let step = 1.5;
    let ceiling = v + 2.0 * PI * (m as f64 + 2.0) + 10.0;

    let mut x_prev = v.max(0.0);
    let mut f_prev = bessel_j(nu, x_prev)?;
    if f_prev == 0.0 {
        // J_nu(nu) > 0 analytically; nudge off a rounded-to-zero start.
        x_prev += 1e-9;
        f_prev = bessel_j(nu, x_prev)?;
    }
    let mut found = 0u32;
    let mut x = x_prev;
    while x < ceiling {
        x = x_prev + step;
        let f = bessel_j(nu, x)?;
        if f == 0.0 || f_prev.signum() != f.signum() {
            found += 1;
            if found == m {
                let value = refine_zero(nu, x_prev, x)?;
                return Ok(BesselZero { nu, m, value });
            }
        }
        x_prev = x;
        f_prev = f;
    }
    Err(Error::Numerical(format!(
        "bessel_zero scan ceiling {ceiling} reached before zero {m} of J_{v}"
    )))
}

struct JY {
    j: f64,
    jp: f64,
    y: f64,
    yp: f64,
}

/// Gamma function, Lanczos approximation (g = 7, 9 terms).
pub(crate) fn gamma(z: f64) -> f64 {
    const COEF: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z < 0.5 {
        // Reflection; returns +-inf at nonpositive integer poles, which the
        // series code relies on (1/Gamma -> 0).
        PI / ((PI * z).sin() * gamma(1.0 - z))
    } else {
        let z = z - 1.0;
        let mut a = COEF[0];
        for (i, c) in COEF.iter().enumerate().skip(1) {
            a += c / (z + i as f64);
        }
        let t = z + 7.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a
    }
}

fn factorial(m: usize) -> f64 {
    let mut f = 1.0;
    for i in 2..=m {
        f *= i as f64;
    }
    f
}

/// Harmonic-number form of the digamma function at positive integers.
fn psi_int(m: usize) -> f64 {
    let mut s = -EULER_GAMMA;
    for j in 1..m {
        s += 1.0 / j as f64;
    }
    s
}

/// Ascending series for `J_nu(x)`, valid for small `x` and any real order
/// that is not a negative integer (near-negative-integer orders pass through
/// the Gamma poles smoothly via 1/Gamma -> 0 on individual terms).
fn j_series(nu: f64, x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let half = 0.5 * x;
    let q = half * half;
    let p_nu = half.powf(nu);
    let mut sum = 0.0;
    let mut q_pow = 1.0;
    let mut sign = 1.0;
    for m in 0..200 {
        let term = sign * q_pow / (factorial(m) * gamma(m as f64 + 1.0 + nu)) * p_nu;
        sum += term;
        // For negative orders the early terms sit near Gamma poles and can be
        // tiny before the series ramps up; only stop once past that region.
        if m >= 1 && term.abs() <= 1e-18 * (sum.abs() + 1e-300) && (m as f64 + 1.0 + nu) > 1.0 {
            break;
        }
        q_pow *= q;
        sign = -sign;
    }
    sum
}

/// `Y_nu` for `x < SMALL_X`: reflection formula, or the integer-order
/// logarithmic series within `INTEGER_SWITCH` of an integer.
fn y_small(nu: f64, x: f64) -> f64 {
    let n = nu.round();
    if (nu - n).abs() < INTEGER_SWITCH {
        yn_series(n as usize, x)
    } else {
        let c = (nu * PI).cos();
        let s = (nu * PI).sin();
        (j_series(nu, x) * c - j_series(-nu, x)) / s
    }
}

/// Logarithmic ascending series for integer-order `Y_n(x)`, small `x`.
fn yn_series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let jn = j_series(n as f64, x);
    let mut y = (2.0 / PI) * half.ln() * jn;

    // Finite part: sum_{m=0}^{n-1} (n-1-m)!/m! * (x/2)^(2m-n)
    let mut finite = 0.0;
    for m in 0..n {
        finite += factorial(n - 1 - m) / factorial(m) * half.powi(2 * m as i32 - n as i32);
    }
    y -= finite / PI;

    // Digamma part: sum_m (-1)^m (psi(m+1)+psi(m+n+1)) / (m!(m+n)!) (x/2)^(2m+n)
    let mut sum = 0.0;
    let mut q_pow = half.powi(n as i32);
    let mut sign = 1.0;
    for m in 0..200 {
        let term =
            sign * (psi_int(m + 1) + psi_int(m + n + 1)) / (factorial(m) * factorial(m + n))
                * q_pow;
        sum += term;
        if m >= 1 && term.abs() <= 1e-18 * (sum.abs() + 1e-300) {
            break;
        }
        q_pow *= q;
        sign = -sign;
    }
    y - sum / PI
}

/// Steed-style continued-fraction evaluation of `J, J', Y, Y'` for `x >= 2`.
fn jy_steed(nu: f64, x: f64) -> Result<JY> {
    debug_assert!(x >= SMALL_X && nu >= 0.0);
    let xi = 1.0 / x;
    let xi2 = 2.0 * xi;
    let wron = xi2 / PI;

    // CF1 for f = J'_nu/J_nu, tracking the sign of J_nu in `isign`.
    let mut isign = 1.0f64;
    let mut h = (nu * xi).max(CF_FPMIN);
    let mut b = xi2 * nu;
    let mut d = 0.0;
    let mut c = h;
    let mut converged = false;
    for _ in 0..CF_MAXIT {
        b += xi2;
        d = b - d;
        if d.abs() < CF_FPMIN {
            d = CF_FPMIN;
        }
        c = b - 1.0 / c;
        if c.abs() < CF_FPMIN {
            c = CF_FPMIN;
        }
        d = 1.0 / d;
        let del = c * d;
        h *= del;
        if d < 0.0 {
            isign = -isign;
        }
        if (del - 1.0).abs() < CF_EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Bessel CF1 failed to converge at nu = {nu}, x = {x}"
        )));
    }

    // Downward recurrence from nu to mu = nu - nl with mu <= x (CF2 region).
    let nl = ((nu - x + 1.5).floor() as i64).max(0) as usize;
    let mu = nu - nl as f64;
    let rjl_saved = isign * CF_FPMIN;
    let rjpl_saved = h * rjl_saved;
    let mut rjl = rjl_saved;
    let mut rjpl = rjpl_saved;
    let mut fact = nu * xi;
    for _ in 0..nl {
        let rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
    }
    if rjl == 0.0 {
        rjl = CF_EPS;
    }
    let f = rjpl / rjl;

    // CF2: p + i q = (J' + i Y')/(J + i Y) at order mu.
    let a0 = 0.25 - mu * mu;
    let mut p = -0.5 * xi;
    let mut q = 1.0;
    let br = 2.0 * x;
    let mut bi = 2.0;
    let mut fct = a0 * xi / (p * p + q * q);
    let mut cr = br + q * fct;
    let mut ci = bi + p * fct;
    let mut den = br * br + bi * bi;
    let mut dr = br / den;
    let mut di = -bi / den;
    let dlr0 = cr * dr - ci * di;
    let dli0 = cr * di + ci * dr;
    let temp = p * dlr0 - q * dli0;
    q = p * dli0 + q * dlr0;
    p = temp;
    let mut a = a0;
    converged = false;
    for i in 2..CF_MAXIT {
        a += 2.0 * (i as f64 - 1.0);
        bi += 2.0;
        dr = a * dr + br;
        di = a * di + bi;
        if dr.abs() + di.abs() < CF_FPMIN {
            dr = CF_FPMIN;
        }
        fct = a / (cr * cr + ci * ci);
        cr = br + cr * fct;
        ci = bi - ci * fct;
        if cr.abs() + ci.abs() < CF_FPMIN {
            cr = CF_FPMIN;
        }
        den = dr * dr + di * di;
        dr /= den;
        di = -di / den;
        let dlr = cr * dr - ci * di;
        let dli = cr * di + ci * dr;
        let tmp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = tmp;
        if (dlr - 1.0).abs() + dli.abs() < CF_EPS {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "Bessel CF2 failed to converge at nu = {nu}, x = {x}"
        )));
    }

    let gam = (p - f) / q;
    let mut rjmu = (wron / ((p - f) * gam + q)).sqrt();
    rjmu = rjmu.copysign(rjl);
    let rymu = rjmu * gam;
    let rymup = rymu * (p + q / gam);
    let mut ry1 = mu * xi * rymu - rymup;
    let mut rymu_cur = rymu;

    let fct_norm = rjmu / rjl;
    let j = rjl_saved * fct_norm;
    let jp = rjpl_saved * fct_norm;

    // Upward recurrence for Y back to order nu.
    for i in 1..=nl {
        let rytemp = (mu + i as f64) * xi2 * ry1 - rymu_cur;
        rymu_cur = ry1;
        ry1 = rytemp;
    }
    let y = rymu_cur;
    let yp = nu * xi * y - ry1;
    Ok(JY { j, jp, y, yp })
}

/// Newton refinement of a bracketed zero of `J_nu`, with bisection fallback.
fn refine_zero(nu: BesselOrder, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut f_lo = bessel_j(nu, lo)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    let f_hi = bessel_j(nu, hi)?;
    if f_hi == 0.0 {
        return Ok(hi);
    }
    debug_assert!(f_lo.signum() != f_hi.signum());
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = bessel_j(nu, x)?;
        let fp = bessel_j_prime(nu, x)?;
        if f == 0.0 {
            return Ok(x);
        }
        // Shrink the bracket around the sign change.
        if f.signum() == f_lo.signum() {
            lo = x;
            f_lo = f;
        } else {
            hi = x;
        }
        let newton = x - f / fp;
        let next = if fp != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() < 1e-14 * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    if hi - lo < 1e-10 {
        return Ok(0.5 * (lo + hi));
    }
    Err(Error::Numerical(format!(
        "Bessel zero refinement stalled on [{lo}, {hi}] for nu = {}",
        nu.get()
    )))
}
