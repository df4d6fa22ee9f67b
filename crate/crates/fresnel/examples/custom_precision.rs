//! Plan the three-branch scheme for a caller-chosen target accuracy.
//!
//! The planner picks the trapezoid order from its global bound, balances
//! the Taylor/asymptotic orders against it, and inverts the two
//! x-dependent bounds for the cut-offs, rounding in the safe direction.
//!
//! ```bash
//! cargo run --release --example custom_precision
//! ```

use fresnel::planner::plan;
use fresnel::fresnel_c;

fn main() {
    for eps in [1e-4, 1e-8, 1e-12, 2f64.powi(-52)] {
        let p = plan(eps).unwrap();
        println!(
            "eps = {eps:8.1e}: orders ({:2}, {:2}, {:2}), cut-offs ({:5}, {:5}), achieved bounds ({:.2e}, {:.2e}, {:.2e})",
            p.n_taylor, p.n_trap, p.n_asym, p.x1, p.x2, p.achieved[0], p.achieved[1], p.achieved[2]
        );
    }

    // a coarse plan is cheaper per evaluation and still honest about its error
    let coarse = plan(1e-6).unwrap();
    let fine = plan(2f64.powi(-52)).unwrap();
    let x = 1.234;
    println!("\nC({x}) at eps=1e-6 : {}", fresnel_c(x, &coarse).unwrap());
    println!("C({x}) at eps=2^-52: {}", fresnel_c(x, &fine).unwrap());

    // plans serialize to JSON (the CLI's `plan` command prints the same)
    println!("\n{}", serde_json::to_string_pretty(&coarse).unwrap());
}
