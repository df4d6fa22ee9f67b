//! Fresnel integrals over the whole real line.
//!
//! Computes C(x) = ∫₀ˣ cos(πt²/2) dt, S(x) = ∫₀ˣ sin(πt²/2) dt and their
//! complex combination G(x) = C(x) + iS(x) by a three-regime scheme:
//!
//! * a truncated Taylor series near zero,
//! * a modified trapezoid rule with an x-independent error bound mid-range,
//! * an asymptotic expansion for large arguments,
//!
//! with cut-offs chosen analytically so every branch sits below a target
//! absolute error. The default plan reaches double precision (2⁻⁵²) with
//! orders (14, 12, 12) and cut-offs 0.688 / 6.725; [`planner::plan`] derives
//! a plan for any target in [2⁻⁷⁵, 1e-2] from the bound formulas alone.
//!
//! ```
//! use fresnel::{default_double_plan, fresnel_c, fresnel_s};
//!
//! let plan = default_double_plan();
//! let c = fresnel_c(1.0, &plan).unwrap();
//! let s = fresnel_s(1.0, &plan).unwrap();
//! assert!((c - 0.7798934003768228).abs() < 1e-15);
//! assert!((s - 0.4382591473903548).abs() < 1e-15);
//! ```
//!
//! The `oracle` module holds an independent double-double reference
//! implementation (series, panel quadrature, asymptotic — none of them the
//! production formulas) used by the test suite and the CLI self-test to
//! certify the error claims. The `fresnel` binary exposes evaluation,
//! tabulation, planning, clothoid sampling, self-test and a branch-balance
//! benchmark; see the examples directory for library usage.

pub mod cli;
mod error;
pub mod evaluator;
pub mod kernels;
pub mod oracle;
pub mod planner;

pub use error::{FresnelError, Result};
pub use evaluator::{
    clothoid_sample, fresnel_c, fresnel_g, fresnel_s, Branch, BranchTag, ClothoidPoint,
    G_LIMIT_AT_INFINITY,
};
pub use num_complex::Complex64;
pub use planner::{default_double_plan, plan, HybridPlan};
