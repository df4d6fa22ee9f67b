//! Property tests for the formula-level invariants: parity, bound
//! monotonicity, safe cut-off rounding, print/parse round-trips.

use fresnel::kernels::{asym_bound, taylor_bound, trap_constants};
use fresnel::oracle::{parse_dd, to_decimal_string, DoubleDouble};
use fresnel::planner::{default_double_plan, solve_x1, solve_x2};
use fresnel::{clothoid_sample, fresnel_g};
use proptest::prelude::*;

proptest! {
    #[test]
    fn parity_is_bit_exact(x in -1.0e9..1.0e9f64) {
        let plan = default_double_plan();
        let (p, _) = fresnel_g(x, &plan).unwrap();
        let (m, _) = fresnel_g(-x, &plan).unwrap();
        prop_assert_eq!(p.re.to_bits(), (-m.re).to_bits());
        prop_assert_eq!(p.im.to_bits(), (-m.im).to_bits());
    }

    #[test]
    fn taylor_bound_increases_in_x(x in 0.01..0.99f64, n in 0usize..20) {
        let lo = taylor_bound(x, n).unwrap();
        let hi = taylor_bound(x * 1.001, n).unwrap();
        prop_assert!(hi > lo);
    }

    #[test]
    fn taylor_bound_decreases_in_order(x in 0.05..1.0f64, n in 2usize..20) {
        prop_assert!(taylor_bound(x, n + 1).unwrap() < taylor_bound(x, n).unwrap());
    }

    #[test]
    fn asym_bound_decreases_in_x(x in 3.0..100.0f64, n in 0usize..13) {
        let hi = asym_bound(x, n).unwrap();
        let lo = asym_bound(x * 1.001, n).unwrap();
        prop_assert!(lo < hi);
    }

    #[test]
    fn asym_bound_decreases_in_order(x in 3.0..100.0f64, n in 0usize..12) {
        prop_assert!(asym_bound(x, n + 1).unwrap() < asym_bound(x, n).unwrap());
    }

    #[test]
    fn cutoff_rounding_is_safe(exp in -14.0..-3.0f64, n1 in 3usize..18, n3 in 2usize..14) {
        let eps = 10f64.powf(exp);
        let x1 = solve_x1(n1, eps).unwrap();
        let x2 = solve_x2(n3, eps).unwrap();
        prop_assert!(taylor_bound(x1, n1).unwrap() <= eps);
        prop_assert!(asym_bound(x2, n3).unwrap() <= eps);
    }

    #[test]
    fn printed_values_roundtrip_bitwise(x in -20.0..20.0f64) {
        let plan = default_double_plan();
        let (g, _) = fresnel_g(x, &plan).unwrap();
        let c_back: f64 = format!("{}", g.re).parse().unwrap();
        let s_back: f64 = format!("{}", g.im).parse().unwrap();
        prop_assert_eq!(c_back.to_bits(), g.re.to_bits());
        prop_assert_eq!(s_back.to_bits(), g.im.to_bits());
    }

    #[test]
    fn dd_add_sub_roundtrip(a in 0.5..2.0f64, b in 0.5..2.0f64) {
        let da = DoubleDouble::from_f64(a);
        let db = DoubleDouble::from_f64(b);
        let back = (da + db) - db;
        let rel = (back - da).to_f64().abs() / a;
        prop_assert!(rel < 1e-30, "rel = {:e}", rel);
    }

    #[test]
    fn dd_decimal_roundtrip(a in -1.0e6..1.0e6f64, lo_scale in -1.0..1.0f64) {
        let v = DoubleDouble::from_f64(a) + DoubleDouble::from_f64(lo_scale * 1e-20 * a.abs().max(1e-3));
        let s = to_decimal_string(v, 30);
        let back = parse_dd(&s).unwrap();
        let scale = v.to_f64().abs().max(1e-30);
        prop_assert!((back - v).to_f64().abs() / scale < 1e-28);
    }

    #[test]
    fn clothoid_grid_shape(s0 in -5.0..0.0f64, len in 0.1..5.0f64, n in 2usize..50) {
        let plan = default_double_plan();
        let pts = clothoid_sample(s0, s0 + len, n, &plan).unwrap();
        prop_assert_eq!(pts.len(), n);
        prop_assert_eq!(pts[0].s, s0);
        prop_assert_eq!(pts[n - 1].s, s0 + len);
        for w in pts.windows(2) {
            prop_assert!(w[1].s > w[0].s);
        }
    }

    #[test]
    fn trap_tables_are_deterministic(n in 1usize..20) {
        let a = trap_constants(n).unwrap();
        let b = trap_constants(n).unwrap();
        prop_assert_eq!(a, b);
    }
}
