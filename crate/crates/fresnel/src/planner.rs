//! Turns a target absolute accuracy into orders and cut-offs for the three
//! branches.
//!
//! The trapezoid order is the smallest N whose global bound clears the
//! target; the Taylor and asymptotic orders follow from a cost-balance rule;
//! the cut-offs invert the two x-dependent bounds and round in the safe
//! direction. The double-precision plan of record is pinned verbatim in
//! [`default_double_plan`] and never re-derived.

use serde::{Deserialize, Serialize};

use crate::error::{FresnelError, Result};
use crate::kernels::{
    asym_bound, taylor_bound, trap_bound, trap_constants, AsymCoefficients, TaylorCoefficients,
    TrapCoefficients,
};

/// Smallest supported target accuracy. The planner formulas are
/// precision-agnostic, but the kernels run in f64: plans tighter than about
/// 2⁻⁵² describe what a wider working precision would need, and the planner
/// refuses targets the bound formulas themselves cannot express below 2⁻⁷⁵.
pub const EPS_MIN: f64 = 1.0 / 37778931862957161709568.0; // 2^-75, exact
/// Largest supported target accuracy.
pub const EPS_MAX: f64 = 1e-2;

/// Picks (n_taylor, n_asym) for a trapezoid order.
pub type OrderBalance = fn(n_trap: usize) -> (usize, usize);

/// Default cost balance: N₃ = N₂ and N₁ = ceil(7 N₂ / 6).
///
/// Taylor terms cost less per term than trapezoid terms once the tables are
/// precomputed, which justifies a slightly higher Taylor order; the rule
/// reproduces the published double-precision choice (14, 12) at N₂ = 12 and
/// scales linearly elsewhere. Swap in a measured cost model through
/// [`plan_with_balance`] if the target hardware says otherwise.
pub fn default_order_balance(n_trap: usize) -> (usize, usize) {
    ((7 * n_trap).div_ceil(6), n_trap)
}

/// A complete evaluation plan: orders, cut-offs and coefficient tables.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridPlan {
    /// Target absolute error.
    pub eps: f64,
    pub n_taylor: usize,
    pub n_trap: usize,
    pub n_asym: usize,
    /// Taylor/trapezoid switch; the Taylor branch owns [0, x1].
    pub x1: f64,
    /// Trapezoid/asymptotic switch; the asymptotic branch owns [x2, inf).
    pub x2: f64,
    pub taylor_coeffs: TaylorCoefficients,
    pub trap_coeffs: TrapCoefficients,
    pub asym_coeffs: AsymCoefficients,
    /// (taylor_bound(x1, n_taylor), trap_bound(n_trap), asym_bound(x2, n_asym)).
    pub achieved: [f64; 3],
}

/// The serialized face of a plan; tables rebuild from the orders.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct PlanSummary {
    eps: f64,
    n_taylor: usize,
    n_trap: usize,
    n_asym: usize,
    x1: f64,
    x2: f64,
    achieved: [f64; 3],
}

impl Serialize for HybridPlan {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlanSummary {
            eps: self.eps,
            n_taylor: self.n_taylor,
            n_trap: self.n_trap,
            n_asym: self.n_asym,
            x1: self.x1,
            x2: self.x2,
            achieved: self.achieved,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HybridPlan {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = PlanSummary::deserialize(d)?;
        HybridPlan::from_parts(s.eps, s.n_taylor, s.n_trap, s.n_asym, s.x1, s.x2)
            .map_err(serde::de::Error::custom)
    }
}

impl HybridPlan {
    /// Assemble a plan from explicit parameters, building the tables and
    /// checking every invariant.
    pub fn from_parts(
        eps: f64,
        n_taylor: usize,
        n_trap: usize,
        n_asym: usize,
        x1: f64,
        x2: f64,
    ) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(FresnelError::Domain(format!("eps must be in (0, 1), got {eps}")));
        }
        if !(x1 > 0.0 && x2 > x1) {
            return Err(FresnelError::Domain(format!(
                "cut-offs must satisfy 0 < x1 < x2, got x1 = {x1}, x2 = {x2}"
            )));
        }
        let achieved = [
            taylor_bound(x1, n_taylor)?,
            trap_bound(n_trap)?,
            asym_bound(x2, n_asym)?,
        ];
        for (i, b) in achieved.iter().enumerate() {
            if *b > eps {
                return Err(FresnelError::Domain(format!(
                    "branch {i} bound {b:e} exceeds target {eps:e}"
                )));
            }
        }
        Ok(Self {
            eps,
            n_taylor,
            n_trap,
            n_asym,
            x1,
            x2,
            taylor_coeffs: TaylorCoefficients::new(n_taylor),
            trap_coeffs: trap_constants(n_trap)?,
            asym_coeffs: AsymCoefficients::new(n_asym),
            achieved,
        })
    }
}

/// The double-precision plan of record: orders (14, 12, 12), cut-offs
/// 0.688 and 6.725, target 2⁻⁵². Pinned verbatim; never re-derived from the
/// search, so it stays stable even where the bound formulas and their
/// published roundings disagree.
pub fn default_double_plan() -> HybridPlan {
    HybridPlan::from_parts(2f64.powi(-52), 14, 12, 12, 0.688, 6.725)
        .expect("pinned double plan satisfies its own invariants")
}

/// Smallest N >= 1 with trap_bound(N) <= eps, by upward scan.
///
/// The bound decays like exp(-pi N), so the scan stays short for any
/// representable target.
pub fn min_trap_order(eps: f64) -> Result<usize> {
    check_eps(eps)?;
    let mut n = 1;
    while trap_bound(n)? > eps {
        n += 1;
        debug_assert!(n < 100);
    }
    Ok(n)
}

/// The x where taylor_bound(x, N) crosses eps, bisected to 1e-12 relative
/// and rounded *down* to 3 decimals so the bound at the returned cut-off
/// stays at or below eps.
pub fn solve_x1(n: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let crossing = bisect(|x| taylor_bound(x, n).unwrap_or(f64::INFINITY), eps, true)?;
    let mut x1 = (crossing * 1000.0).floor() / 1000.0;
    // float grid snapping can land a hair past the crossing; step back if so
    while x1 > 0.0 && taylor_bound(x1, n)? > eps {
        x1 = ((x1 - 0.001) * 1000.0).round() / 1000.0;
    }
    Ok(x1)
}

/// The x where asym_bound(x, N) crosses eps, bisected and rounded *up* to
/// 3 decimals so the bound at the returned cut-off stays at or below eps.
pub fn solve_x2(n: usize, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let crossing = bisect(|x| asym_bound(x, n).unwrap_or(f64::INFINITY), eps, false)?;
    let mut x2 = (crossing * 1000.0).ceil() / 1000.0;
    while asym_bound(x2, n)? > eps {
        x2 = ((x2 + 0.001) * 1000.0).round() / 1000.0;
    }
    Ok(x2)
}

/// Plan for an arbitrary in-range target with the default cost balance.
pub fn plan(eps: f64) -> Result<HybridPlan> {
    plan_with_balance(eps, default_order_balance)
}

/// Plan with a caller-supplied order-balance rule.
pub fn plan_with_balance(eps: f64, balance: OrderBalance) -> Result<HybridPlan> {
    check_eps(eps)?;
    let n_trap = min_trap_order(eps)?;
    let (n_taylor, n_asym) = balance(n_trap);
    let x1 = solve_x1(n_taylor, eps)?;
    let x2 = solve_x2(n_asym, eps)?;
    HybridPlan::from_parts(eps, n_taylor, n_trap, n_asym, x1, x2)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(EPS_MIN..=EPS_MAX).contains(&eps) {
        return Err(FresnelError::EpsOutOfRange(eps));
    }
    Ok(())
}

/// Bisection for bound(x) = eps on a monotone bound. `increasing` selects
/// the direction. The crossing is unique: both bounds are strictly monotone
/// power-law-like in x.
fn bisect(bound: impl Fn(f64) -> f64, eps: f64, increasing: bool) -> Result<f64> {
    // bracket by doubling/halving from 1
    let above = |x: f64| bound(x) > eps;
    let (mut lo, mut hi);
    if increasing {
        lo = 1.0;
        while above(lo) {
            lo *= 0.5;
            if lo < 1e-12 {
                return Err(FresnelError::Domain("taylor cut-off bracket collapsed".into()));
            }
        }
        hi = lo;
        while !above(hi) {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(FresnelError::Domain("taylor cut-off bracket diverged".into()));
            }
        }
    } else {
        hi = 1.0;
        while above(hi) {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(FresnelError::Domain("asym cut-off bracket diverged".into()));
            }
        }
        lo = hi * 0.5;
        while !above(lo) {
            lo *= 0.5;
            if lo < 1e-12 {
                return Err(FresnelError::Domain("asym cut-off bracket collapsed".into()));
            }
        }
    }
    // invariant now: exactly one side of [lo, hi] is above eps
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let mid_above = above(mid);
        if increasing == mid_above {
            hi = mid;
        } else {
            lo = mid;
        }
        if (hi - lo) <= 1e-12 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
