//! The three stateless approximants and their analytic error bounds.
//!
//! Each branch comes as a coefficient table plus an evaluation routine and a
//! bound function:
//!
//! * [`taylor_eval`] / [`taylor_bound`] — truncated Taylor series, small x;
//! * [`trap_eval`] / [`trap_bound`] — modified trapezoid rule, mid-range x,
//!   with an x-independent global bound;
//! * [`asym_eval`] / [`asym_bound`] — asymptotic expansion, large x.
//!
//! All operations are pure; tables are immutable after construction and safe
//! to share across threads.

mod asymptotic;
pub(crate) mod fp;
mod taylor;
mod trapezoid;

pub use asymptotic::{asym_bound, asym_eval, double_factorial, AsymCoefficients};
pub use taylor::{taylor_bound, taylor_eval, TaylorCoefficients};
pub use trapezoid::{trap_bound, trap_constants, trap_eval, TrapCoefficients};
