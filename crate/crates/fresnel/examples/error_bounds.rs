//! Compare each branch's analytic error bound with the error actually
//! observed against the high-precision oracle.
//!
//! The bounds are certificates: the observed error must sit below them at
//! every point (the test suite asserts this over thousands of samples; here
//! a handful of points is printed for inspection).
//!
//! ```bash
//! cargo run --release --example error_bounds
//! ```

use fresnel::kernels::{asym_bound, taylor_bound};
use fresnel::oracle::oracle_g;
use fresnel::{default_double_plan, fresnel_g, Branch};

fn main() {
    let plan = default_double_plan();
    println!(
        "{:>7} | {:<11} | {:>12} | {:>12}",
        "x", "branch", "bound", "actual err"
    );
    println!("{:-^7}-+-{:-^11}-+-{:-^12}-+-{:-^12}", "", "", "", "");
    for x in [0.2, 0.5, 0.688, 1.0, 2.5, 4.0, 6.0, 6.725, 9.0, 14.0] {
        let (g, tag) = fresnel_g(x, &plan).unwrap();
        let bound = match tag.branch {
            Branch::Taylor => taylor_bound(x, plan.n_taylor).unwrap(),
            Branch::Trapezoid => plan.achieved[1],
            Branch::Asymptotic => asym_bound(x, plan.n_asym).unwrap(),
        };
        let reference = oracle_g(x).unwrap();
        let dr = reference.re.add_f64(-g.re).to_f64();
        let di = reference.im.add_f64(-g.im).to_f64();
        let err = dr.hypot(di);
        println!(
            "{x:>7} | {:<11} | {bound:>12.3e} | {err:>12.3e}",
            tag.branch.as_str()
        );
    }
    println!("\n(actual error may exceed the truncation bound by round-off, a few 1e-17)");
}
