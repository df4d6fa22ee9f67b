//! Command implementations behind the `fresnel` binary: evaluate, tabulate,
//! plan, clothoid export, self-test and the branch-balance benchmark.
//!
//! Numbers are printed with Rust's shortest round-trip formatting, so
//! parsing an emitted value back yields the identical f64. CSV output uses
//! LF line endings and `.` decimals regardless of locale.

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{FresnelError, Result};
use crate::evaluator::{clothoid_sample, fresnel_g, Branch};
use crate::kernels::{asym_bound, asym_eval, taylor_bound, taylor_eval, trap_eval};
use crate::oracle;
use crate::planner::{default_double_plan, plan, HybridPlan};

/// Environment variable naming a JSON plan file to load when `--eps` is not
/// given.
pub const PLAN_FILE_ENV: &str = "FRESNEL_PLAN_FILE";

#[derive(Debug, Parser)]
#[command(
    name = "fresnel",
    about = "Fresnel integrals C(x), S(x) with planned accuracy",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonFlags,
}

#[derive(Debug, Args)]
pub struct CommonFlags {
    /// Target absolute accuracy; replans instead of using the pinned
    /// double-precision plan (or the FRESNEL_PLAN_FILE plan).
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate C(x) and S(x) at one point.
    #[command(allow_negative_numbers = true)]
    Eval { x: f64 },
    /// CSV table of n evaluations, uniformly spaced over [a, b].
    #[command(allow_negative_numbers = true)]
    Table { a: f64, b: f64, n: usize },
    /// Print the active plan as JSON.
    Plan,
    /// CSV clothoid samples `s,C,S` over [s0, s1].
    #[command(allow_negative_numbers = true)]
    Clothoid { s0: f64, s1: f64, n: usize },
    /// Validate the build against the high-precision oracle.
    Selftest {
        /// Override the Taylor cut-off without replanning (validation hook:
        /// a tampered cut-off must make the self-test fail).
        #[arg(long, hide = true)]
        inject_x1: Option<f64>,
    },
    /// Measure per-branch evaluation time and the balance ratio.
    Bench {
        /// Evaluations per branch per repetition.
        #[arg(long, default_value_t = 1_000_000)]
        evals: usize,
        /// Repetitions; the median is reported.
        #[arg(long, default_value_t = 5)]
        reps: usize,
    },
}

/// One evaluated point as carried to the JSON output: the value, the branch
/// that produced it and that branch's bound at x (which the plan guarantees
/// is at most eps).
#[derive(Debug, Clone, Serialize)]
pub struct EvalRecord {
    pub x: f64,
    pub c: f64,
    pub s: f64,
    pub branch: Branch,
    pub bound: f64,
}

impl EvalRecord {
    pub fn compute(x: f64, plan: &HybridPlan) -> Result<Self> {
        let (g, tag) = fresnel_g(x, plan)?;
        let bound = match tag.branch {
            Branch::Taylor => taylor_bound(x.abs(), plan.n_taylor)?,
            Branch::Trapezoid => plan.achieved[1],
            Branch::Asymptotic => asym_bound(x.abs(), plan.n_asym)?,
        };
        Ok(Self {
            x,
            c: g.re,
            s: g.im,
            branch: tag.branch,
            bound,
        })
    }
}

/// Resolve the active plan: --eps beats FRESNEL_PLAN_FILE beats the pinned
/// double-precision default.
pub fn resolve_plan(eps: Option<f64>) -> Result<HybridPlan> {
    if let Some(e) = eps {
        return plan(e);
    }
    if let Ok(path) = std::env::var(PLAN_FILE_ENV) {
        if !path.is_empty() {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                FresnelError::InvalidInput(format!("cannot read {PLAN_FILE_ENV}={path}: {e}"))
            })?;
            return serde_json::from_str(&text).map_err(|e| {
                FresnelError::InvalidInput(format!("bad plan file {path}: {e}"))
            });
        }
    }
    Ok(default_double_plan())
}

/// Dispatch a parsed command line. Returns the process exit code: 0 on
/// success, 1 for a failed self-test, 2 for domain/usage errors.
pub fn run(cli: Cli, out: &mut dyn Write) -> i32 {
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let io_err = |e: std::io::Error| FresnelError::InvalidInput(format!("io error: {e}"));
    match cli.command {
        Command::Eval { x } => {
            let plan = resolve_plan(cli.common.eps)?;
            let rec = EvalRecord::compute(x, &plan)?;
            if cli.common.json {
                writeln!(out, "{}", serde_json::to_string(&rec).unwrap()).map_err(io_err)?;
            } else {
                writeln!(out, "{} {}", rec.c, rec.s).map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Table { a, b, n } => {
            let plan = resolve_plan(cli.common.eps)?;
            if a.is_nan() || b.is_nan() || a >= b || n < 2 {
                return Err(FresnelError::Domain(format!(
                    "table requires a < b and n >= 2, got [{a}, {b}], n = {n}"
                )));
            }
            writeln!(out, "x,C,S,branch").map_err(io_err)?;
            let step = (b - a) / (n - 1) as f64;
            for k in 0..n {
                let x = if k == 0 {
                    a
                } else if k == n - 1 {
                    b
                } else {
                    a + k as f64 * step
                };
                let rec = EvalRecord::compute(x, &plan)?;
                writeln!(out, "{},{},{},{}", rec.x, rec.c, rec.s, rec.branch).map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Plan => {
            let plan = resolve_plan(cli.common.eps)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&plan).unwrap()).map_err(io_err)?;
            Ok(0)
        }
        Command::Clothoid { s0, s1, n } => {
            let plan = resolve_plan(cli.common.eps)?;
            let pts = clothoid_sample(s0, s1, n, &plan)?;
            writeln!(out, "s,C,S").map_err(io_err)?;
            for p in pts {
                writeln!(out, "{},{},{}", p.s, p.c, p.sv).map_err(io_err)?;
            }
            Ok(0)
        }
        Command::Selftest { inject_x1 } => {
            let mut plan = resolve_plan(cli.common.eps)?;
            if let Some(x1) = inject_x1 {
                plan.x1 = x1;
            }
            let report = run_selftest(&plan);
            if cli.common.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap())
                    .map_err(io_err)?;
            } else {
                for c in &report.checks {
                    writeln!(
                        out,
                        "{} {:<55} max {:.3e} (limit {:.3e})",
                        if c.passed { "PASS" } else { "FAIL" },
                        c.name,
                        c.max_error,
                        c.threshold
                    )
                    .map_err(io_err)?;
                }
                writeln!(out, "{}", if report.passed { "all checks passed" } else { "FAILURES PRESENT" })
                    .map_err(io_err)?;
            }
            Ok(if report.passed { 0 } else { 1 })
        }
        Command::Bench { evals, reps } => {
            let plan = resolve_plan(cli.common.eps)?;
            let report = run_bench(&plan, evals, reps);
            if cli.common.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap())
                    .map_err(io_err)?;
            } else {
                for b in &report.branches {
                    writeln!(out, "{:<12} {:8.2} ns/eval", b.branch.as_str(), b.ns_per_eval)
                        .map_err(io_err)?;
                }
                writeln!(out, "max/min ratio: {:.3}", report.ratio).map_err(io_err)?;
            }
            Ok(0)
        }
    }
}

// ---------------------------------------------------------------------------
// self-test

#[derive(Debug, Clone, Serialize)]
pub struct SelftestCheck {
    pub name: String,
    pub passed: bool,
    pub max_error: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<SelftestCheck>,
    pub passed: bool,
}

fn ulp_of(v: f64) -> f64 {
    let a = v.abs();
    if a == 0.0 {
        f64::MIN_POSITIVE
    } else {
        a.next_up() - a
    }
}

/// Reduced-size validation of the whole stack against the oracle: the
/// per-branch bound-validity suites, exact oddness, branch continuity, the
/// end-to-end accuracy samples and the plan's own bound invariants,
/// 100 points per suite.
pub fn run_selftest(plan: &HybridPlan) -> SelftestReport {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xF2E5);

    // oracle internal validation
    for e in oracle::oracle_selfcheck().entries {
        checks.push(SelftestCheck {
            name: format!("oracle: {}", e.name),
            passed: e.passed,
            max_error: e.max_error,
            threshold: e.threshold,
        });
    }

    // plan bound invariants (catches tampered cut-offs directly)
    {
        let t = taylor_bound(plan.x1, plan.n_taylor).unwrap_or(f64::INFINITY);
        let q = asym_bound(plan.x2, plan.n_asym).unwrap_or(f64::INFINITY);
        let g = plan.achieved[1];
        let worst = (t / plan.eps).max(q / plan.eps).max(g / plan.eps);
        checks.push(SelftestCheck {
            name: "plan invariants: branch bounds at cut-offs <= eps".into(),
            passed: worst <= 1.0,
            max_error: worst,
            threshold: 1.0,
        });
    }

    // Taylor bound validity over [0, x1]
    {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let x: f64 = rng.gen_range(0.0..=plan.x1);
            let reference = match oracle::oracle_g(x) {
                Ok(g) => g,
                Err(_) => {
                    worst = f64::INFINITY;
                    break;
                }
            };
            let got = taylor_eval(x, &plan.taylor_coeffs);
            let err = complex_err(got, &reference);
            let budget = taylor_bound(x, plan.n_taylor).unwrap() + 4.0 * ulp_of(got.norm());
            worst = worst.max(err / budget);
        }
        checks.push(SelftestCheck {
            name: "bound validity: taylor over [0, x1]".into(),
            passed: worst <= 1.0,
            max_error: worst,
            threshold: 1.0,
        });
    }

    // trapezoid bound validity over (x1, x2)
    {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let x: f64 = rng.gen_range(plan.x1..plan.x2);
            let reference = match oracle::oracle_g(x) {
                Ok(g) => g,
                Err(_) => {
                    worst = f64::INFINITY;
                    break;
                }
            };
            let got = match trap_eval(x, &plan.trap_coeffs) {
                Ok(g) => g,
                Err(_) => {
                    worst = f64::INFINITY;
                    break;
                }
            };
            let err = complex_err(got, &reference);
            let budget = plan.achieved[1] + 1e-16;
            worst = worst.max(err / budget);
        }
        checks.push(SelftestCheck {
            name: "bound validity: trapezoid over (x1, x2)".into(),
            passed: worst <= 1.0,
            max_error: worst,
            threshold: 1.0,
        });
    }

    // asymptotic bound validity over [x2, 100]
    {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let x: f64 = rng.gen_range(plan.x2..100.0);
            let reference = match oracle::oracle_g(x) {
                Ok(g) => g,
                Err(_) => {
                    worst = f64::INFINITY;
                    break;
                }
            };
            let got = match asym_eval(x, &plan.asym_coeffs) {
                Ok(g) => g,
                Err(_) => {
                    worst = f64::INFINITY;
                    break;
                }
            };
            let err = complex_err(got, &reference);
            let budget = asym_bound(x, plan.n_asym).unwrap() + 4.0 * ulp_of(got.norm());
            worst = worst.max(err / budget);
        }
        checks.push(SelftestCheck {
            name: "bound validity: asymptotic over [x2, 100]".into(),
            passed: worst <= 1.0,
            max_error: worst,
            threshold: 1.0,
        });
    }

    // exact oddness
    {
        let mut ok = true;
        for _ in 0..100 {
            let x: f64 = rng.gen_range(0.0..15.0);
            match (fresnel_g(x, plan), fresnel_g(-x, plan)) {
                (Ok((a, _)), Ok((b, _))) => {
                    if a.re.to_bits() != (-b.re).to_bits() || a.im.to_bits() != (-b.im).to_bits() {
                        ok = false;
                    }
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        checks.push(SelftestCheck {
            name: "exact oddness of fresnel_g".into(),
            passed: ok,
            max_error: if ok { 0.0 } else { 1.0 },
            threshold: 0.0,
        });
    }

    // branch continuity at the cut-offs
    {
        let mut worst = 0.0f64;
        for x in [plan.x1, plan.x2] {
            if let (Ok((a, _)), Ok((b, _))) = (fresnel_g(x, plan), fresnel_g(x.next_up(), plan)) {
                worst = worst.max((a - b).norm());
            } else {
                worst = f64::INFINITY;
            }
        }
        checks.push(SelftestCheck {
            name: "branch continuity at x1, x2".into(),
            passed: worst <= 1e-15,
            max_error: worst,
            threshold: 1e-15,
        });
    }

    // end-to-end accuracy per subinterval
    {
        let mut worst = 0.0f64;
        let spans = [(0.0, plan.x1), (plan.x1, plan.x2), (plan.x2, 15.0)];
        'outer: for (lo, hi) in spans {
            for _ in 0..100 {
                let x: f64 = rng.gen_range(lo..hi);
                let reference = match oracle::oracle_g(x) {
                    Ok(g) => g,
                    Err(_) => {
                        worst = f64::INFINITY;
                        break 'outer;
                    }
                };
                match fresnel_g(x, plan) {
                    Ok((g, _)) => worst = worst.max(complex_err(g, &reference)),
                    Err(_) => {
                        worst = f64::INFINITY;
                        break 'outer;
                    }
                }
            }
        }
        checks.push(SelftestCheck {
            name: "end-to-end |G - oracle| over [0, 15]".into(),
            passed: worst <= 1e-15,
            max_error: worst,
            threshold: 1e-15,
        });
    }

    let passed = checks.iter().all(|c| c.passed);
    SelftestReport { checks, passed }
}

fn complex_err(got: Complex64, reference: &oracle::DdComplex) -> f64 {
    let dr = reference.re.add_f64(-got.re).to_f64();
    let di = reference.im.add_f64(-got.im).to_f64();
    dr.hypot(di)
}

// ---------------------------------------------------------------------------
// benchmark

#[derive(Debug, Clone, Serialize)]
pub struct BranchTiming {
    pub branch: Branch,
    pub ns_per_eval: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub branches: Vec<BranchTiming>,
    /// Max over min of the three per-branch means.
    pub ratio: f64,
}

/// Time each branch over uniform random arguments drawn inside its own
/// subinterval; the asymptotic branch samples [x2, 15]. Median of `reps`
/// repetitions of `evals` evaluations each, after one warm-up pass.
///
/// Each evaluation's input carries a data dependency on the previous
/// result, so the loop measures the true per-evaluation latency rather
/// than how deeply the CPU happens to overlap independent calls.
pub fn run_bench(plan: &HybridPlan, evals: usize, reps: usize) -> BenchReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0xBE7C);
    let spans = [
        (Branch::Taylor, 0.0, plan.x1),
        (Branch::Trapezoid, plan.x1 + 1e-9, plan.x2),
        (Branch::Asymptotic, plan.x2, 15.0),
    ];
    let mut branches = Vec::new();
    for (branch, lo, hi) in spans {
        let xs: Vec<f64> = (0..4096).map(|_| rng.gen_range(lo..hi)).collect();
        let time_pass = |count: usize| -> f64 {
            let start = Instant::now();
            let mut dep = 0.0f64;
            for i in 0..count {
                let x = xs[i & 4095] + dep * 0.0;
                let (g, _) = fresnel_g(x, plan).unwrap();
                dep = g.re;
            }
            std::hint::black_box(dep);
            start.elapsed().as_nanos() as f64 / count as f64
        };
        time_pass(evals / 4 + 1); // warm-up
        let mut times: Vec<f64> = (0..reps.max(1)).map(|_| time_pass(evals.max(1))).collect();
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median = times[times.len() / 2];
        branches.push(BranchTiming {
            branch,
            ns_per_eval: median,
        });
    }
    let min = branches.iter().map(|b| b.ns_per_eval).fold(f64::INFINITY, f64::min);
    let max = branches.iter().map(|b| b.ns_per_eval).fold(0.0, f64::max);
    BenchReport {
        branches,
        ratio: max / min,
    }
}
