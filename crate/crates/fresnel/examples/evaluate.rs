//! Basic evaluation of the Fresnel integrals with the default
//! double-precision plan.
//!
//! ```bash
//! cargo run --release --example evaluate
//! ```

use fresnel::{default_double_plan, fresnel_g};

fn main() {
    let plan = default_double_plan();

    println!("{:>8} | {:>22} | {:>22} | branch", "x", "C(x)", "S(x)");
    println!("{:->8}-+-{:->22}-+-{:->22}-+-----------", "", "", "");
    for x in [0.0, 0.5, 1.0, 2.0, 5.0, 6.725, 10.0, 100.0, -1.5] {
        let (g, tag) = fresnel_g(x, &plan).unwrap();
        println!("{x:>8} | {:>22} | {:>22} | {}", g.re, g.im, tag.branch);
    }

    // both integrals approach 1/2 as x grows
    let (g, _) = fresnel_g(1e9, &plan).unwrap();
    println!("\nC(1e9) = {}, S(1e9) = {}", g.re, g.im);
    println!("distance from the (1/2, 1/2) limit: {:.3e}", (g - fresnel::G_LIMIT_AT_INFINITY).norm());
}
