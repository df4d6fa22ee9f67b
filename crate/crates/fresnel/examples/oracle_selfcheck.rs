//! Run the oracle's internal validation: cross-checks between its three
//! independent routes, the derivative identity, and the large-argument
//! limit. The same report backs the CLI's `selftest` command.
//!
//! ```bash
//! cargo run --release --example oracle_selfcheck
//! ```

use fresnel::oracle::oracle_selfcheck;

fn main() {
    let report = oracle_selfcheck();
    for e in &report.entries {
        println!(
            "{} {:<55} max {:9.3e} (limit {:.0e})",
            if e.passed { "PASS" } else { "FAIL" },
            e.name,
            e.max_error,
            e.threshold
        );
    }
    std::process::exit(if report.passed() { 0 } else { 1 });
}
