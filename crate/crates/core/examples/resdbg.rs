use neumann_bounds::profile::{optimal_profile, sample_weight, Grading};
use neumann_bounds::sturm::{assemble, mu_k};

fn main() {
    let h = optimal_profile(3.0, 3).unwrap();
    let w = sample_weight(&h, 3.0, 4096, Grading::EndpointGraded).unwrap();
    let p = assemble(&w).unwrap();
    let s = mu_k(&w, 3).unwrap();
    println!("mu={} residual={:.2e} nodal={}", s.mu, s.residual, s.nodal_intervals);
    let umax = s.u.iter().fold(0.0f64, |m,&x| m.max(x.abs()));
    println!("umax = {umax}");
    println!("first 14 nodes:");
    for i in 0..14 {
        println!("  x={:.3e} u={:+.6e} u/umax={:+.2e} m_diag={:.3e}", s.grid[i], s.u[i], s.u[i]/umax, p.m_diag[i]);
    }
    println!("last 8 nodes:");
    let n = s.grid.len();
    for i in n-8..n {
        println!("  x={:.6} u={:+.6e} u/umax={:+.2e} m_diag={:.3e}", s.grid[i], s.u[i], s.u[i]/umax, p.m_diag[i]);
    }
    // where are the sign runs?
    let thresh = 1e-8*umax;
    let mut last = 0i8;
    for i in 0..n {
        let x = s.u[i];
        if x.abs() <= thresh { continue; }
        let sgn = if x > 0.0 {1} else {-1};
        if sgn != last { println!("run boundary at i={i} x={:.6e} u={:+.3e}", s.grid[i], s.u[i]); last = sgn; }
    }
}
