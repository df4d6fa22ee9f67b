//! Truncated Taylor series of G(x) about zero and its truncation bound.

use num_complex::Complex64;

use super::fp::Pair;
use crate::error::{FresnelError, Result};

/// Precomputed complex coefficients of the series: coeffs[k] is the factor
/// of x^(2k+1), namely (i pi)^k / (2^k (2k+1) k!).
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorCoefficients {
    pub order: usize,
    pub coeffs: Vec<Complex64>,
}

impl TaylorCoefficients {
    /// Build the table up to the given order by the running-ratio
    /// recurrence, carried in hi/lo pairs so every stored double is the
    /// correctly rounded value of its term.
    pub fn new(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        // p_k = (pi / 2)^k / k! with the i^k rotation tracked separately
        let mut p = Pair::ONE;
        coeffs.push(Complex64::new(1.0, 0.0));
        for k in 1..=order {
            p = p.mul(Pair::PI).div_f64(2.0 * k as f64);
            let mag = p.div_f64(2.0 * k as f64 + 1.0).to_f64();
            coeffs.push(match k % 4 {
                0 => Complex64::new(mag, 0.0),
                1 => Complex64::new(0.0, mag),
                2 => Complex64::new(-mag, 0.0),
                _ => Complex64::new(0.0, -mag),
            });
        }
        Self { order, coeffs }
    }
}

/// T_N(x): Horner evaluation in x^2 of the precomputed table, times x.
///
/// The k = 0 coefficient is exactly 1, so the sum is evaluated as
/// x + x*(u*Q(u)) with Q the Horner tail: the leading term then enters
/// through a single final addition that rounds at the result's own ulp
/// instead of at magnitude one.
///
/// Only odd powers of x appear, so the parity T_N(-x) = -T_N(x) holds
/// bit-for-bit: (-x)*(-x) equals x*x exactly and the final factor flips sign.
pub fn taylor_eval(x: f64, coeffs: &TaylorCoefficients) -> Complex64 {
    let u = x * x;
    if coeffs.order == 0 {
        return Complex64::new(x, 0.0);
    }
    let mut acc = coeffs.coeffs[coeffs.order];
    for k in (1..coeffs.order).rev() {
        acc = Complex64::new(
            acc.re * u + coeffs.coeffs[k].re,
            acc.im * u + coeffs.coeffs[k].im,
        );
    }
    let xu = x * u;
    Complex64::new(x + xu * acc.re, xu * acc.im)
}

/// Truncation bound E_TN(x): the magnitudes of the two next terms,
///
///   pi^(N+1) x^(2N+3) / (2^(N+1) (2N+3) (N+1)!)
/// + pi^(N+2) x^(2N+5) / (2^(N+2) (2N+5) (N+2)!).
///
/// Built by a running product, so no intermediate factorial or power
/// overflows on its own; for x large enough that the bound itself exceeds
/// the f64 range the result is +inf, which is still a valid upper bound.
/// Strictly increasing in x for x > 0.
pub fn taylor_bound(x: f64, n: usize) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(FresnelError::Domain(format!(
            "taylor_bound requires x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    // q_k = x (pi x^2 / 2)^k / k!, accumulated to k = N+2
    let p = std::f64::consts::PI * x * x / 2.0;
    let mut q = x;
    for k in 1..=n + 1 {
        q *= p / k as f64;
    }
    let t1 = q / (2.0 * n as f64 + 3.0);
    q *= p / (n as f64 + 2.0);
    let t2 = q / (2.0 * n as f64 + 5.0);
    Ok(t1 + t2)
}
