//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one PASS/FAIL line (visible with `cargo test --test acceptance --
//! --nocapture`). Criteria run sequentially so the wall-clock budgets are
//! meaningful; the test fails at the end if any criterion failed.

use neumann_bounds::bessel::{bessel_j, bessel_j_prime, bessel_y, bessel_y_prime, bessel_zero, BesselOrder};
use neumann_bounds::bounds::{
    bound_value, check_bound, default_grading, solve_wa, CharacteristicProblem,
    solve_characteristic,
};
use neumann_bounds::fem2d::{build_ridge_mesh, collapse_study, neumann_eigs_2d};
use neumann_bounds::optim::{
    default_init, eigen_derivative, maximize_mu, switching_function, Perturbation,
};
use neumann_bounds::profile::{
    exp_profile, make_profile, optimal_profile, random_concave_profile, sample_weight, Grading,
    SampledWeight,
};
use neumann_bounds::sturm::mu_k;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::Instant;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        let verdict = if pass { "PASS" } else { "FAIL" };
        println!("{verdict} {name}: {detail}");
        if !pass {
            self.failures.push(format!("{name}: {detail}"));
        }
    }
}

fn jz(nu: f64, m: u32) -> f64 {
    bessel_zero(BesselOrder::new(nu).unwrap(), m).unwrap().value
}

fn fem_mu(h: &neumann_bounds::profile::PiecewiseLinearProfile, alpha: f64, k: u32, n: usize) -> f64 {
    let w = sample_weight(h, alpha, n, default_grading(alpha)).unwrap();
    mu_k(&w, k).unwrap().mu
}

#[test]
fn acceptance() {
    let mut gate = Gate {
        failures: Vec::new(),
    };
    let g = &mut gate;

    // 1. sharp constant alpha=1, k=1 at n=4096 within 0.5%, under 1 s
    {
        let t0 = Instant::now();
        let mu = fem_mu(&optimal_profile(1.0, 1).unwrap(), 1.0, 1, 4096);
        let elapsed = t0.elapsed();
        let target = (2.0 * jz(0.0, 1)).powi(2);
        let rel = (mu - target).abs() / target;
        g.check(
            "criterion 1 (sharp constant alpha=1 k=1)",
            rel < 0.005 && elapsed.as_secs_f64() < 1.0,
            format!("mu={mu:.6} target={target:.6} rel={rel:.2e} time={elapsed:.2?}"),
        );
    }

    // 2. sharp constants alpha=1, k=2..4 at n=8192 within 0.5%, under 5 s
    {
        let t0 = Instant::now();
        let mut worst = 0.0f64;
        for k in 2..=4u32 {
            let mu = fem_mu(&optimal_profile(1.0, k).unwrap(), 1.0, k, 8192);
            let target = (2.0 * jz(0.0, 1) + (k - 1) as f64 * PI).powi(2);
            worst = worst.max((mu - target).abs() / target);
        }
        let elapsed = t0.elapsed();
        g.check(
            "criterion 2 (sharp constants alpha=1 k=2..4)",
            worst < 0.005 && elapsed.as_secs_f64() < 5.0,
            format!("worst rel={worst:.2e} time={elapsed:.2?}"),
        );
    }

    // 3. alpha=2 family within 0.5% for k <= 4
    {
        let mut worst = 0.0f64;
        for k in 1..=4u32 {
            let mu = fem_mu(&optimal_profile(2.0, k).unwrap(), 2.0, k, 8192);
            let target = ((k + 1) as f64 * PI).powi(2);
            worst = worst.max((mu - target).abs() / target);
        }
        g.check(
            "criterion 3 (alpha=2 family k<=4)",
            worst < 0.005,
            format!("worst rel={worst:.2e}"),
        );
    }

    // 4. alpha=3: k=1 within 1%, k=2 within 1% at n=8192 graded
    {
        let mu1 = fem_mu(&optimal_profile(3.0, 1).unwrap(), 3.0, 1, 8192);
        let t1 = 4.0 * jz(1.0, 1).powi(2);
        let mu2 = fem_mu(&optimal_profile(3.0, 2).unwrap(), 3.0, 2, 8192);
        let t2 = (jz(1.0, 1) + jz(1.0, 2)).powi(2);
        let r1 = (mu1 - t1).abs() / t1;
        let r2 = (mu2 - t2).abs() / t2;
        g.check(
            "criterion 4 (alpha=3 odd/even branches)",
            r1 < 0.01 && r2 < 0.01,
            format!("k=1 rel={r1:.2e}, k=2 rel={r2:.2e}"),
        );
    }

    // 5. domination: 200 random concave profiles x alpha x k<=3, under 60 s
    {
        let t0 = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut violations = 0usize;
        let mut worst_ratio = 0.0f64;
        for _ in 0..200 {
            let h = random_concave_profile(&mut rng, 6);
            for &alpha in &[1.0, 1.5, 2.0, 3.0] {
                for k in 1..=3u32 {
                    let r = check_bound(&h, alpha, k, 2048).unwrap();
                    worst_ratio = worst_ratio.max(r.ratio);
                    if !r.pass {
                        violations += 1;
                    }
                }
            }
        }
        let elapsed = t0.elapsed();
        g.check(
            "criterion 5 (domination over 200 random profiles)",
            violations == 0 && elapsed.as_secs_f64() < 60.0,
            format!("violations={violations} worst ratio={worst_ratio:.6} time={elapsed:.2?}"),
        );
    }

    // 6. derivative formula vs central differences, 20 random cases, 1e-3
    {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let alphas = [1.0, 1.5, 2.0, 3.0];
        let n = 1024;
        let mut done = 0usize;
        let mut worst = 0.0f64;
        let mut attempts = 0usize;
        while done < 20 && attempts < 200 {
            attempts += 1;
            let h = random_concave_profile(&mut rng, 5);
            let alpha = alphas[rng.random_range(0..alphas.len())];
            let k = rng.random_range(1..=3u32);
            let c: f64 = rng.random_range(0.2..0.8);
            let half: f64 = rng.random_range(0.05..0.15);
            let (lo, hi) = ((c - half).max(0.01), (c + half).min(0.99));
            let w = sample_weight(&h, alpha, n, default_grading(alpha)).unwrap();
            let phi = Perturbation::hat(&w.grid, lo, c, hi);
            let d = match eigen_derivative(&h, alpha, k, &phi, n) {
                Ok(d) => d,
                Err(_) => continue, // redraw on near-degenerate eigenvalues
            };
            let t = 1e-5;
            let mu_at = |t: f64| {
                let vals: Vec<f64> = w
                    .grid
                    .iter()
                    .map(|&x| {
                        let hv = h.eval(x)
                            + t * Perturbation::hat(&[x], lo, c, hi).values[0];
                        hv.max(0.0).powf(alpha)
                    })
                    .collect();
                let wt = SampledWeight::new(w.grid.clone(), vals, alpha).unwrap();
                mu_k(&wt, k).unwrap().mu
            };
            let fd = (mu_at(t) - mu_at(-t)) / (2.0 * t);
            let rel = (d - fd).abs() / fd.abs().max(1e-9);
            worst = worst.max(rel);
            done += 1;
        }
        g.check(
            "criterion 6 (derivative vs finite differences)",
            done == 20 && worst < 1e-3,
            format!("cases={done} worst rel={worst:.2e}"),
        );
    }

    // 7. optimizer recovery for (1,1) and (1,2), each under 120 s
    {
        let t0 = Instant::now();
        let r1 = maximize_mu(1.0, 1, 9, &default_init(9), 300, 1024, 42).unwrap();
        let e1 = t0.elapsed();
        let target1 = (2.0 * jz(0.0, 1)).powi(2);
        let peak = r1.final_profile.peak_x();
        let ok1 = r1.final_mu >= 0.995 * target1
            && (peak - 0.5).abs() <= 0.02
            && e1.as_secs_f64() < 120.0;
        g.check(
            "criterion 7a (optimizer recovery alpha=1 k=1)",
            ok1,
            format!(
                "mu={:.5} ({:.2}% of {target1:.4}) peak={peak:.4} time={e1:.2?}",
                r1.final_mu,
                100.0 * r1.final_mu / target1
            ),
        );
        let t0 = Instant::now();
        let r2 = maximize_mu(1.0, 2, 9, &default_init(9), 300, 1024, 42).unwrap();
        let e2 = t0.elapsed();
        let target2 = (2.0 * jz(0.0, 1) + PI).powi(2);
        let ok2 = r2.final_mu >= 0.99 * target2 && e2.as_secs_f64() < 120.0;
        g.check(
            "criterion 7b (optimizer recovery alpha=1 k=2)",
            ok2,
            format!(
                "mu={:.5} ({:.2}% of {target2:.4}) time={e2:.2?}",
                r2.final_mu,
                100.0 * r2.final_mu / target2
            ),
        );
    }

    // 8. optimality diagnostics at the analytic optima
    {
        let mut vertex_ok = true;
        let mut vertex_detail = String::new();
        for &(alpha, k) in &[(1.0, 2u32), (1.0, 3), (1.0, 4)] {
            let h = optimal_profile(alpha, k).unwrap();
            let w = sample_weight(&h, alpha, 8192, Grading::Uniform).unwrap();
            let s = mu_k(&w, k).unwrap();
            let umax = s.u.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            for bp in h.breakpoints() {
                if bp.0 <= 0.0 || bp.0 >= 1.0 {
                    continue;
                }
                let i = w.grid.iter().position(|&x| (x - bp.0).abs() < 1e-12).unwrap();
                if s.u[i].abs() > 1e-3 * umax {
                    vertex_ok = false;
                    vertex_detail = format!("u({}) = {:.2e} at ({alpha},{k})", bp.0, s.u[i]);
                }
            }
        }
        let mut zeros_ok = true;
        let mut zero_counts = Vec::new();
        for k in 1..=4u32 {
            let h = optimal_profile(1.0, k).unwrap();
            let w = sample_weight(&h, 1.0, 8192, Grading::Uniform).unwrap();
            let s = mu_k(&w, k).unwrap();
            let sw = switching_function(&s).unwrap();
            zero_counts.push(sw.total_zeros);
            if sw.total_zeros != 2 * k as usize {
                zeros_ok = false;
            }
        }
        g.check(
            "criterion 8 (vertex and switching-function diagnostics)",
            vertex_ok && zeros_ok,
            format!(
                "interior vertices vanish: {vertex_ok}{}; switching zeros for k=1..4: {zero_counts:?}",
                if vertex_detail.is_empty() {
                    String::new()
                } else {
                    format!(" ({vertex_detail})")
                }
            ),
        );
    }

    // 9. collapse verification on the roof, nx=512, under 120 s
    {
        let t0 = Instant::now();
        let roof = optimal_profile(1.0, 1).unwrap();
        let study = collapse_study(&roof, 1, &[0.2, 0.1, 0.05], 512, 8, 4096).unwrap();
        let elapsed = t0.elapsed();
        let bound_ok = study
            .rows
            .iter()
            .all(|r| r.d2mu <= 23.1327 * 1.02);
        g.check(
            "criterion 9 (collapse verification)",
            bound_ok && study.gap_decreasing && elapsed.as_secs_f64() < 120.0,
            format!(
                "D2mu = {:?}, gap decreasing = {}, time={elapsed:.2?}",
                study.rows.iter().map(|r| r.d2mu).collect::<Vec<_>>(),
                study.gap_decreasing
            ),
        );
    }

    // 10. unit-square FEM sanity
    {
        let one = make_profile(&[(0.0, 1.0), (1.0, 1.0)]).unwrap();
        let mesh = build_ridge_mesh(&one, 1.0, 96, 96).unwrap();
        let eigs = neumann_eigs_2d(&mesh, 2).unwrap();
        let exact = PI * PI;
        let r1 = (eigs[0] - exact).abs() / exact;
        let split = (eigs[0] - eigs[1]).abs() / eigs[0];
        g.check(
            "criterion 10 (unit-square sanity)",
            r1 < 0.005 && split < 0.005,
            format!("mu_1 rel={r1:.2e}, degeneracy split={split:.2e}"),
        );
    }

    // 11. unboundedness example
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut prev_sq = 0.0;
        for &a in &[0.3, 0.4, 0.45] {
            let wa = solve_wa(a).unwrap();
            let lower = PI / (4.0 * (0.5 - a));
            let upper = PI / (3.0 * (0.5 - a));
            let weight = exp_profile(a, wa, 2048).unwrap();
            let fem = mu_k(&weight, 1).unwrap().mu;
            let rel = (fem - wa * wa).abs() / (wa * wa);
            let inside = wa > lower && wa < upper;
            let increasing = wa * wa > prev_sq;
            if !(inside && rel < 0.01 && increasing) {
                ok = false;
            }
            detail.push_str(&format!("a={a}: w={wa:.4} in=({inside}) rel={rel:.1e}; "));
            prev_sq = wa * wa;
        }
        g.check("criterion 11 (unboundedness example)", ok, detail);
    }

    // 12. Bessel suite: spacing laws, recurrence, Wronskian
    {
        let mut ok = true;
        let mut detail = String::new();
        for &nu in &[0.0, 0.25, 0.5, 1.0, 2.5] {
            let zeros: Vec<f64> = (1..=21).map(|m| jz(nu, m)).collect();
            let gaps: Vec<f64> = zeros.windows(2).map(|w| w[1] - w[0]).collect();
            for i in 0..gaps.len() - 1 {
                let (lawful, monotone) = if nu >= 0.5 {
                    (gaps[i] >= PI - 1e-9, gaps[i] >= gaps[i + 1] - 1e-9)
                } else {
                    (gaps[i] <= PI + 1e-9, gaps[i] <= gaps[i + 1] + 1e-9)
                };
                if !(lawful && monotone) {
                    ok = false;
                    detail = format!("spacing law broken at nu={nu}, gap {i}");
                }
            }
        }
        let mut worst_rec = 0.0f64;
        let mut worst_wr = 0.0f64;
        for &nu in &[1.0, 1.5, 2.5, 4.0] {
            for &x in &[0.5, 2.0, 7.0, 20.0, 50.0] {
                let o = BesselOrder::new(nu).unwrap();
                let lhs = bessel_j(BesselOrder::new(nu - 1.0).unwrap(), x).unwrap()
                    + bessel_j(BesselOrder::new(nu + 1.0).unwrap(), x).unwrap();
                let rhs = 2.0 * nu / x * bessel_j(o, x).unwrap();
                worst_rec = worst_rec.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-30));
                let wr = bessel_j(o, x).unwrap() * bessel_y_prime(o, x).unwrap()
                    - bessel_j_prime(o, x).unwrap() * bessel_y(o, x).unwrap();
                let expect = 2.0 / (PI * x);
                worst_wr = worst_wr.max((wr - expect).abs() / expect);
            }
        }
        if worst_rec >= 1e-9 || worst_wr >= 1e-9 {
            ok = false;
        }
        g.check(
            "criterion 12 (Bessel suite)",
            ok,
            format!("recurrence worst={worst_rec:.1e}, Wronskian worst={worst_wr:.1e} {detail}"),
        );
    }

    // 13. cross-method agreement: characteristic equation vs FEM, 0.5%
    {
        let mut ok = true;
        let mut detail = String::new();
        for &alpha in &[1.0, 3.0] {
            for k in 1..=3u32 {
                let h = optimal_profile(alpha, k).unwrap();
                let p = CharacteristicProblem::from_profile(&h, alpha).unwrap();
                let w = solve_characteristic(&p, k).unwrap();
                let mu = fem_mu(&h, alpha, k, 8192);
                let rel = (w * w - mu).abs() / mu;
                if rel >= 0.005 {
                    ok = false;
                }
                detail.push_str(&format!("({alpha},{k}): {rel:.1e}; "));
            }
        }
        g.check("criterion 13 (characteristic equation vs FEM)", ok, detail);
    }

    assert!(
        gate.failures.is_empty(),
        "acceptance criteria failed:\n{}",
        gate.failures.join("\n")
    );
}
