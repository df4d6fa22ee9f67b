//! Measure per-branch evaluation latency, as the CLI `bench` command does.
//! All three branches should land within a small factor of each other; the
//! point of the cut-off construction is uniform cost and accuracy over the
//! whole real line.
//!
//! ```bash
//! cargo run --release --example branch_timing
//! ```

use fresnel::cli::run_bench;
use fresnel::default_double_plan;

fn main() {
    let plan = default_double_plan();
    let report = run_bench(&plan, 400_000, 3);
    for b in &report.branches {
        println!("{:<12} {:8.2} ns/eval", b.branch.as_str(), b.ns_per_eval);
    }
    println!("max/min ratio: {:.3}", report.ratio);
}
