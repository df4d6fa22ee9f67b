//! Gauss-Legendre nodes and weights on [-1, 1], refined to double-double
//! precision at first use.
//!
//! Nodes start from the usual Chebyshev-based initial guesses, converge in
//! plain f64 Newton iterations, then take two Newton steps in double-double
//! arithmetic. Two steps square the residual twice, which takes the ~1e-16
//! seeds to well below the 2^-104 working precision.

use std::sync::OnceLock;

use super::dd::DoubleDouble;

/// Quadrature order used by the oracle's panel integrator.
pub const GL_ORDER: usize = 32;

pub struct GaussLegendre {
    pub nodes: Vec<DoubleDouble>,
    pub weights: Vec<DoubleDouble>,
}

/// Legendre P_n and its derivative at `x`, by the three-term recurrence.
fn legendre_pair(n: usize, x: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let mut p_prev = DoubleDouble::ONE;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        // (2k-1) and (k-1) are exact; divide by k in dd, not beforehand
        let next = (x * p.mul_f64(2.0 * kf - 1.0) - p_prev.mul_f64(kf - 1.0)).div_f64(kf);
        p_prev = p;
        p = next;
    }
    // P'_n(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = (x * p - p_prev).mul_f64(n as f64);
    let den = x * x - DoubleDouble::ONE;
    (p, num / den)
}

fn compute(n: usize) -> GaussLegendre {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // initial guess, then f64 Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..20 {
            let (p, dp) = legendre_pair_f64(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        // two dd Newton steps
        let mut xd = DoubleDouble::from_f64(x);
        for _ in 0..2 {
            let (p, dp) = legendre_pair(n, xd);
            xd = xd - p / dp;
        }
        let (_, dp) = legendre_pair(n, xd);
        // w = 2 / ((1 - x^2) P'_n(x)^2)
        let one_minus = DoubleDouble::ONE - xd * xd;
        let w = DoubleDouble::from_f64(2.0) / (one_minus * dp * dp);
        nodes.push(xd);
        weights.push(w);
    }
    GaussLegendre { nodes, weights }
}

fn legendre_pair_f64(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * x * p - (kf - 1.0) * p_prev) / kf;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// The shared order-32 rule.
pub fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| compute(GL_ORDER))
}
