//! The user-facing piecewise evaluation of G(x) for all real x, plus the
//! C/S projections and uniform clothoid sampling.
//!
//! Dispatch follows the plan's cut-offs with the boundary closure of the
//! piecewise definition: x1 belongs to the Taylor branch, x2 to the
//! asymptotic branch. Parity is applied outside the kernels — evaluate at
//! |x|, then flip both components' signs — which keeps oddness bit-exact
//! and the kernel preconditions one-sided.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{FresnelError, Result};
use crate::kernels::{asym_eval, taylor_eval, trap_eval};
use crate::planner::HybridPlan;

/// Limit of G(x) as x → +∞; negate for −∞. Infinite inputs are rejected by
/// [`fresnel_g`] rather than silently mapped here.
pub const G_LIMIT_AT_INFINITY: Complex64 = Complex64::new(0.5, 0.5);

/// Which approximant produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Taylor,
    Trapezoid,
    Asymptotic,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Taylor => "taylor",
            Branch::Trapezoid => "trapezoid",
            Branch::Asymptotic => "asymptotic",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Branch plus the sign correction parity applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BranchTag {
    pub branch: Branch,
    /// True when the argument was negative and the result was negated.
    pub negated: bool,
}

/// One sample of the clothoid (Euler spiral): (C(s), S(s)) at arc length s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClothoidPoint {
    pub s: f64,
    pub c: f64,
    pub sv: f64,
}

/// G(x) = C(x) + iS(x) under the given plan, with the branch that fired.
///
/// NaN and ±∞ are errors: silently returning the (documented) limit would
/// mask caller bugs.
pub fn fresnel_g(x: f64, plan: &HybridPlan) -> Result<(Complex64, BranchTag)> {
    if x.is_nan() {
        return Err(FresnelError::InvalidInput("fresnel_g: NaN argument".into()));
    }
    if x.is_infinite() {
        return Err(FresnelError::InvalidInput(
            "fresnel_g: infinite argument; the limit is ±(1+i)/2 (G_LIMIT_AT_INFINITY)".into(),
        ));
    }
    let a = x.abs();
    let (g, branch) = if a <= plan.x1 {
        (taylor_eval(a, &plan.taylor_coeffs), Branch::Taylor)
    } else if a < plan.x2 {
        (trap_eval(a, &plan.trap_coeffs)?, Branch::Trapezoid)
    } else {
        (asym_eval(a, &plan.asym_coeffs)?, Branch::Asymptotic)
    };
    // sign test catches -0.0 too, keeping oddness bit-exact at the origin
    let negated = x.is_sign_negative();
    let g = if negated {
        Complex64::new(-g.re, -g.im)
    } else {
        g
    };
    Ok((g, BranchTag { branch, negated }))
}

/// C(x): real part of [`fresnel_g`].
pub fn fresnel_c(x: f64, plan: &HybridPlan) -> Result<f64> {
    Ok(fresnel_g(x, plan)?.0.re)
}

/// S(x): imaginary part of [`fresnel_g`].
pub fn fresnel_s(x: f64, plan: &HybridPlan) -> Result<f64> {
    Ok(fresnel_g(x, plan)?.0.im)
}

/// `n` clothoid points at uniform arc length over [s0, s1], endpoints exact.
pub fn clothoid_sample(s0: f64, s1: f64, n: usize, plan: &HybridPlan) -> Result<Vec<ClothoidPoint>> {
    if !(s0.is_finite() && s1.is_finite()) {
        return Err(FresnelError::InvalidInput(
            "clothoid_sample: endpoints must be finite".into(),
        ));
    }
    if s0.is_nan() || s1.is_nan() || s0 >= s1 {
        return Err(FresnelError::Domain(format!(
            "clothoid_sample requires s0 < s1, got [{s0}, {s1}]"
        )));
    }
    if n < 2 {
        return Err(FresnelError::Domain(format!(
            "clothoid_sample requires n >= 2, got {n}"
        )));
    }
    let step = (s1 - s0) / (n - 1) as f64;
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let s = if k == 0 {
            s0
        } else if k == n - 1 {
            s1
        } else {
            s0 + k as f64 * step
        };
        let (g, _) = fresnel_g(s, plan)?;
        out.push(ClothoidPoint { s, c: g.re, sv: g.im });
    }
    Ok(out)
}
