//! Command-line front end: sharp constants, weighted eigenvalue solves,
//! profile optimization, collapse studies, and the unboundedness sweep, with
//! machine-readable JSON/CSV output. Exit codes: 0 success, 2 validation
//! error, 3 numerical failure.

use clap::{Parser, Subcommand, ValueEnum};
use neumann_bounds::bounds::{
    bound_value, default_grading, kroger_bound, solve_wa, BoundBranch, BoundValue,
};
use neumann_bounds::error::Error;
use neumann_bounds::fem2d::collapse_study;
use neumann_bounds::optim::{default_init, maximize_mu};
use neumann_bounds::profile::{
    alpha_two_vertex_family, exp_profile, sample_weight, Grading, PiecewiseLinearProfile,
};
use neumann_bounds::sturm::mu_k;
use serde_json::json;
use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "neumann-bounds",
    version,
    about = "Sharp diameter bounds for Neumann eigenvalues: weighted Sturm-Liouville \
             solves, optimal concave profiles, profile optimization, and collapsing-domain \
             verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum GradingArg {
    /// Pick by exponent: endpoint-graded for alpha > 2, uniform otherwise.
    #[default]
    Auto,
    Uniform,
    Graded,
}

impl GradingArg {
    fn resolve(self, alpha: f64) -> Grading {
        match self {
            GradingArg::Auto => default_grading(alpha),
            GradingArg::Uniform => Grading::Uniform,
            GradingArg::Graded => Grading::EndpointGraded,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Sharp constant for (alpha, k), or the convex-domain bound via --d.
    Bound {
        /// Concavity exponent (the profile's 1/alpha power is concave).
        #[arg(long, conflicts_with = "d", required_unless_present = "d")]
        alpha: Option<f64>,
        /// Eigenvalue index (1-based, zero mode excluded).
        #[arg(long)]
        k: u32,
        /// Space dimension for the convex-domain (profile exponent d-1) bound.
        #[arg(long)]
        d: Option<u32>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Also write the result (JSON) to this file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Weighted eigenvalue mu_k(h^alpha) of a profile file by P1 FEM.
    Mu {
        /// Profile JSON file: {"breakpoints": [[x,y],...], "normalized": bool}.
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        #[arg(long)]
        k: u32,
        /// Grid node count.
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        grading: GradingArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Maximize mu_k(h^alpha) by projected gradient ascent.
    Optimize {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        k: u32,
        /// Breakpoint count of the optimized profile.
        #[arg(long, default_value_t = 9)]
        breakpoints: usize,
        #[arg(long, default_value_t = 300)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// FEM resolution used inside the optimizer.
        #[arg(long, default_value_t = 1024)]
        n: usize,
        /// Initial profile JSON (default: slightly asymmetric roof).
        #[arg(long)]
        init: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Collapse study: D^2 mu_k of ridge domains over shrinking thickness.
    Collapse {
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Strictly decreasing thicknesses, e.g. 0.2,0.1,0.05.
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.1, 0.05])]
        epsilons: Vec<f64>,
        #[arg(long, default_value_t = 512)]
        nx: usize,
        #[arg(long, default_value_t = 8)]
        ny: usize,
        /// 1D reference resolution for mu_k(h).
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Plateau-exponential frequencies w_a and their FEM verification.
    Unbounded {
        /// Plateau half-widths in (0, 1/2), e.g. 0.3,0.4,0.45.
        #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.4, 0.45])]
        a: Vec<f64>,
        /// FEM resolution for the verification column.
        #[arg(long, default_value_t = 2048)]
        n: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

fn load_profile(path: &PathBuf) -> Result<PiecewiseLinearProfile, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
    PiecewiseLinearProfile::from_json(&text)
}

fn write_output(path: &Option<PathBuf>, contents: &str) -> Result<(), Error> {
    if let Some(p) = path {
        fs::write(p, contents)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(())
}

fn branch_name(b: BoundBranch) -> &'static str {
    match b {
        BoundBranch::AlphaLt2 => "alpha_lt_2",
        BoundBranch::AlphaEq2 => "alpha_eq_2",
        BoundBranch::AlphaGt2Odd => "alpha_gt_2_odd",
        BoundBranch::AlphaGt2Even => "alpha_gt_2_even",
    }
}

fn run(cmd: Cmd) -> Result<(), Error> {
    match cmd {
        Cmd::Bound {
            alpha,
            k,
            d,
            format,
            output,
        } => {
            let (value, config): (BoundValue, _) = match d {
                Some(dim) => (
                    kroger_bound(dim, k)?,
                    json!({"command": "bound", "d": dim, "k": k}),
                ),
                None => {
                    let a = alpha.expect("clap enforces alpha xor d");
                    (
                        bound_value(a, k)?,
                        json!({"command": "bound", "alpha": a, "k": k}),
                    )
                }
            };
            let payload = json!({
                "config": config,
                "alpha": value.alpha,
                "k": value.k,
                "value": value.value,
                "branch": branch_name(value.branch),
            });
            let jtext = serde_json::to_string_pretty(&payload).unwrap();
            match format {
                Format::Pretty => {
                    println!("config: {config}");
                    println!(
                        "sharp constant for alpha = {}, k = {}: {}",
                        value.alpha, value.k, value.value
                    );
                    println!("branch: {}", branch_name(value.branch));
                    if value.branch == BoundBranch::AlphaEq2 {
                        println!(
                            "note: at alpha = 2 the maximizer is non-unique; any concave \
                             polygon vanishing at 0 and 1 with vertices among x = {:?} attains it",
                            alpha_two_vertex_family(value.k)
                        );
                    }
                }
                Format::Json => println!("{jtext}"),
                Format::Csv => {
                    eprintln!("config: {config}");
                    println!("alpha,k,value,branch");
                    println!(
                        "{},{},{},{}",
                        value.alpha,
                        value.k,
                        value.value,
                        branch_name(value.branch)
                    );
                }
            }
            write_output(&output, &jtext)
        }
        Cmd::Mu {
            profile,
            alpha,
            k,
            n,
            grading,
            format,
            output,
        } => {
            let h = load_profile(&profile)?;
            let g = grading.resolve(alpha);
            let w = sample_weight(&h, alpha, n, g)?;
            let sol = mu_k(&w, k)?;
            let config = json!({
                "command": "mu", "profile": profile.display().to_string(),
                "alpha": alpha, "k": k, "n": n, "grading": g,
            });
            let payload = json!({
                "config": config,
                "mu": sol.mu,
                "k": sol.k,
                "residual": sol.residual,
                "nodal_intervals": sol.nodal_intervals,
            });
            let jtext = serde_json::to_string_pretty(&payload).unwrap();
            match format {
                Format::Pretty => {
                    println!("config: {config}");
                    println!("mu_{k} = {}", sol.mu);
                    println!(
                        "residual = {:.3e}, nodal intervals = {}",
                        sol.residual, sol.nodal_intervals
                    );
                }
                Format::Json => println!("{jtext}"),
                Format::Csv => {
                    eprintln!("config: {config}");
                    println!("alpha,k,n,mu,residual,nodal_intervals");
                    println!(
                        "{alpha},{k},{n},{},{},{}",
                        sol.mu, sol.residual, sol.nodal_intervals
                    );
                }
            }
            write_output(&output, &jtext)
        }
        Cmd::Optimize {
            alpha,
            k,
            breakpoints,
            steps,
            seed,
            n,
            init,
            format,
            output,
        } => {
            let init_profile = match &init {
                Some(p) => load_profile(p)?,
                None => default_init(breakpoints),
            };
            let report = maximize_mu(alpha, k, breakpoints, &init_profile, steps, n, seed)?;
            let bound = bound_value(alpha, k)?.value;
            let config = json!({
                "command": "optimize", "alpha": alpha, "k": k,
                "breakpoints": breakpoints, "steps": steps, "seed": seed, "n": n,
                "init": init.map(|p| p.display().to_string()),
            });
            let payload = json!({
                "config": config,
                "report": report,
                "bound": bound,
            });
            let jtext = serde_json::to_string_pretty(&payload).unwrap();
            match format {
                Format::Pretty => {
                    println!("config: {config}");
                    println!(
                        "final mu = {} ({} accepted steps, converged = {})",
                        report.final_mu,
                        report.trajectory.len() - 1,
                        report.converged
                    );
                    println!("termination: {}", report.termination);
                    println!(
                        "sharp constant {} -> ratio {:.6}",
                        bound,
                        report.final_mu / bound
                    );
                    println!("final profile: {}", report.final_profile.to_json());
                }
                Format::Json => println!("{jtext}"),
                Format::Csv => {
                    eprintln!("config: {config}");
                    println!("step,mu");
                    for (i, mu) in &report.trajectory {
                        println!("{i},{mu}");
                    }
                }
            }
            write_output(&output, &jtext)
        }
        Cmd::Collapse {
            profile,
            k,
            epsilons,
            nx,
            ny,
            n,
            format,
            output,
        } => {
            let h = load_profile(&profile)?;
            let study = collapse_study(&h, k, &epsilons, nx, ny, n)?;
            let config = json!({
                "command": "collapse", "profile": profile.display().to_string(),
                "k": k, "epsilons": epsilons, "nx": nx, "ny": ny, "n": n,
            });
            let mut csv = String::from("epsilon,D,mu_k,D2mu,target,ratio\n");
            for r in &study.rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.epsilon, r.diameter, r.mu_k, r.d2mu, r.target, r.ratio
                ));
            }
            match format {
                Format::Pretty => {
                    println!("config: {config}");
                    println!("target mu_{k}(h) = {}", study.target);
                    println!(
                        "{:>8} {:>10} {:>12} {:>12} {:>10}",
                        "epsilon", "D", "mu_k", "D2mu", "ratio"
                    );
                    for r in &study.rows {
                        println!(
                            "{:>8} {:>10.6} {:>12.6} {:>12.6} {:>10.6}",
                            r.epsilon, r.diameter, r.mu_k, r.d2mu, r.ratio
                        );
                    }
                    println!(
                        "upper bound ok: {}, gap decreasing: {}",
                        study.upper_bound_ok, study.gap_decreasing
                    );
                }
                Format::Json => {
                    let payload = json!({"config": config, "study": study});
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                }
                Format::Csv => {
                    eprintln!("config: {config}");
                    print!("{csv}");
                }
            }
            write_output(&output, &csv)
        }
        Cmd::Unbounded {
            a,
            n,
            format,
            output,
        } => {
            for &ai in &a {
                if !(ai > 0.0 && ai < 0.5) {
                    return Err(Error::Domain(format!(
                        "plateau half-width a must lie in (0, 1/2), got {ai}"
                    )));
                }
            }
            let config = json!({"command": "unbounded", "a": a, "n": n});
            let mut rows = Vec::new();
            for &ai in &a {
                let wa = solve_wa(ai)?;
                let weight = exp_profile(ai, wa, n)?;
                let fem = mu_k(&weight, 1)?.mu;
                let lower = PI / (4.0 * (0.5 - ai));
                let upper = PI / (3.0 * (0.5 - ai));
                rows.push((ai, wa, wa * wa, fem, lower, upper));
            }
            let mut csv = String::from("a,w_a,w_a_sq,fem_mu_1,lower,upper\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.0, r.1, r.2, r.3, r.4, r.5
                ));
            }
            match format {
                Format::Pretty => {
                    println!("config: {config}");
                    println!(
                        "{:>6} {:>12} {:>12} {:>12} {:>10} {:>10}",
                        "a", "w_a", "w_a^2", "fem_mu_1", "lower", "upper"
                    );
                    for r in &rows {
                        println!(
                            "{:>6} {:>12.6} {:>12.4} {:>12.4} {:>10.4} {:>10.4}",
                            r.0, r.1, r.2, r.3, r.4, r.5
                        );
                    }
                }
                Format::Json => {
                    let payload = json!({
                        "config": config,
                        "rows": rows.iter().map(|r| json!({
                            "a": r.0, "w_a": r.1, "w_a_sq": r.2,
                            "fem_mu_1": r.3, "lower": r.4, "upper": r.5,
                        })).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                }
                Format::Csv => {
                    eprintln!("config: {config}");
                    print!("{csv}");
                }
            }
            write_output(&output, &csv)
        }
    }
}
