//! Sample a clothoid (Euler spiral) segment at uniform arc length and emit
//! CSV ready for plotting: the curve (C(s), S(s)) has curvature growing
//! linearly with s, which is what makes it the standard transition curve.
//!
//! ```bash
//! cargo run --release --example clothoid > spiral.csv
//! ```

use fresnel::{clothoid_sample, default_double_plan};

fn main() {
    let plan = default_double_plan();
    let points = clothoid_sample(-8.0, 8.0, 2001, &plan).unwrap();
    println!("s,C,S");
    for p in &points {
        println!("{},{},{}", p.s, p.c, p.sv);
    }
    eprintln!(
        "wrote {} points; endpoints ({}, {}) and ({}, {})",
        points.len(),
        points[0].c,
        points[0].sv,
        points[points.len() - 1].c,
        points[points.len() - 1].sv,
    );
}
