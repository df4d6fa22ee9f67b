//! Large-argument asymptotic expansion Q_N(x) and its truncation bound.

use num_complex::Complex64;

use super::fp::{sincos_pi_half_x2, Pair};
use crate::error::{FresnelError, Result};

/// Coefficients of the expansion: coeffs[k] = (2k-1)!! (-i)^(k+1) / pi^(k+1),
/// the factor of x^-(2k+1). Uses the convention (-1)!! = 1, which is what
/// makes the k = 0 term equal -i/(pi x) and matches the integration-by-parts
/// derivation at N = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymCoefficients {
    pub order: usize,
    pub coeffs: Vec<Complex64>,
}

impl AsymCoefficients {
    /// Running-ratio build in hi/lo pairs: the stored doubles are the
    /// correctly rounded magnitudes, rotated by (-i)^(k+1).
    pub fn new(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut mag = Pair::PI.recip(); // 1/pi
        coeffs.push(Complex64::new(0.0, -mag.to_f64()));
        for k in 1..=order {
            // multiply by (2k-1)/pi; rotation by -i handled by the cycle
            mag = mag.mul_f64(2.0 * k as f64 - 1.0).mul(Pair::PI.recip());
            let m = mag.to_f64();
            coeffs.push(match k % 4 {
                0 => Complex64::new(0.0, -m),
                1 => Complex64::new(-m, 0.0),
                2 => Complex64::new(0.0, m),
                _ => Complex64::new(m, 0.0),
            });
        }
        Self { order, coeffs }
    }
}

/// Q_N(x) = (1+i)/2 + exp(i pi x^2/2) * (1/x) * Horner(coeffs, 1/x^2).
///
/// Finite for every positive x: once x^2 overflows the series collapses to
/// its limit (1+i)/2, which is correct to far below working precision there.
pub fn asym_eval(x: f64, coeffs: &AsymCoefficients) -> Result<Complex64> {
    if x.is_nan() || x <= 0.0 {
        return Err(FresnelError::Domain(format!(
            "asym_eval requires x > 0, got {x}"
        )));
    }
    let x2 = x * x;
    if !x2.is_finite() {
        // |series| <= 1/(pi x) < 1e-150 here; the limit is exact to f64
        return Ok(Complex64::new(0.5, 0.5));
    }
    let v = 1.0 / x2;
    let mut acc = coeffs.coeffs[coeffs.order];
    for k in (0..coeffs.order).rev() {
        acc = Complex64::new(
            acc.re * v + coeffs.coeffs[k].re,
            acc.im * v + coeffs.coeffs[k].im,
        );
    }
    let (s, c) = sincos_pi_half_x2(x);
    let (s, c) = (s.to_f64(), c.to_f64());
    let inv_x = 1.0 / x;
    Ok(Complex64::new(
        0.5 + (c * acc.re - s * acc.im) * inv_x,
        0.5 + (s * acc.re + c * acc.im) * inv_x,
    ))
}

/// Truncation bound E_QN(x) = (2N-1)!! / (pi^(N+1) x^(2N+1)), with
/// (-1)!! = 1. Strictly decreasing in x; built by a running product so no
/// intermediate overflows spuriously (for x small enough that the bound
/// itself leaves the f64 range, +inf comes back, still a valid bound).
pub fn asym_bound(x: f64, n: usize) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(FresnelError::Domain(format!(
            "asym_bound requires x > 0, got {x}"
        )));
    }
    let pix2 = std::f64::consts::PI * x * x;
    let mut b = 1.0 / (std::f64::consts::PI * x);
    for k in 1..=n {
        b *= (2.0 * k as f64 - 1.0) / pix2;
    }
    Ok(b)
}

/// m!! as a real, with (-1)!! = 1; errors on even or sub--1 input.
pub fn double_factorial(m: i64) -> Result<f64> {
    if m < -1 || m % 2 == 0 {
        return Err(FresnelError::Domain(format!(
            "double factorial needs odd m >= -1, got {m}"
        )));
    }
    let mut acc = 1.0f64;
    let mut k = m;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn leading_coefficient_is_minus_i_over_pi() {
        let a = AsymCoefficients::new(5);
        assert_eq!(a.coeffs[0].re, 0.0);
        assert_relative_eq!(a.coeffs[0].im, -1.0 / std::f64::consts::PI, max_relative = 1e-16);
    }

    #[test]
    fn coefficient_ratio_matches_recurrence() {
        let a = AsymCoefficients::new(12);
        for k in 0..12 {
            let ratio = a.coeffs[k + 1].norm() / a.coeffs[k].norm();
            let expect = (2.0 * k as f64 + 1.0) / std::f64::consts::PI;
            assert_relative_eq!(ratio, expect, max_relative = 1e-14);
        }
    }

    #[test]
    fn coefficients_match_direct_computation() {
        let a = AsymCoefficients::new(12);
        for k in 0..=12usize {
            // direct route: exact double factorial over pair pi^(k+1)
            let mut denom = Pair::PI;
            for _ in 0..k {
                denom = denom.mul(Pair::PI);
            }
            let mag = denom
                .recip()
                .mul_f64(double_factorial(2 * k as i64 - 1).unwrap())
                .to_f64();
            // (-i)^(k+1) cycles -i, -1, i, 1
            let direct = match k % 4 {
                0 => Complex64::new(0.0, -mag),
                1 => Complex64::new(-mag, 0.0),
                2 => Complex64::new(0.0, mag),
                _ => Complex64::new(mag, 0.0),
            };
            let got = a.coeffs[k];
            assert_relative_eq!(got.re, direct.re, max_relative = 2e-15, epsilon = 1e-300);
            assert_relative_eq!(got.im, direct.im, max_relative = 2e-15, epsilon = 1e-300);
        }
    }

    #[test]
    fn single_term_expansion_at_one() {
        // Q_0(1) = (1+i)/2 + exp(i pi/2) (-i/pi) = (1/2 + 1/pi) + i/2
        let a = AsymCoefficients::new(0);
        let g = asym_eval(1.0, &a).unwrap();
        assert_relative_eq!(g.re, 0.5 + 1.0 / std::f64::consts::PI, max_relative = 2e-16);
        assert_relative_eq!(g.im, 0.5, max_relative = 2e-16);
    }

    #[test]
    fn matches_reference_at_cutoff() {
        // oracle G(6.725); budget: bound at the cutoff plus a few ulp
        let a = AsymCoefficients::new(12);
        let g = asym_eval(6.725, &a).unwrap();
        let d = (g - Complex64::new(0.5444996124990749, 0.5161114746819422)).norm();
        assert!(d <= 2.2118e-16 + 5.6e-16, "|Q_12(6.725) - G| = {d:e}");
    }

    #[test]
    fn limit_at_huge_arguments() {
        let a = AsymCoefficients::new(12);
        for &x in &[1e9, 1e12, 1e200] {
            let g = asym_eval(x, &a).unwrap();
            assert!(g.re.is_finite() && g.im.is_finite());
            assert!((g - Complex64::new(0.5, 0.5)).norm() <= 2.0 / (std::f64::consts::PI * x) + 1e-18);
        }
    }

    #[test]
    fn eval_rejects_nonpositive() {
        let a = AsymCoefficients::new(4);
        assert!(asym_eval(0.0, &a).is_err());
        assert!(asym_eval(-3.0, &a).is_err());
    }

    #[test]
    fn bound_reference_values() {
        assert_relative_eq!(
            asym_bound(6.725, 12).unwrap(),
            2.2118373946368442e-16,
            max_relative = 1e-13
        );
        assert!((asym_bound(6.725, 12).unwrap() / 2.212e-16 - 1.0).abs() < 0.005);
        assert_relative_eq!(asym_bound(1.0, 0).unwrap(), 1.0 / std::f64::consts::PI, max_relative = 1e-16);
        // 23!! / (pi^13 10^25)
        assert_relative_eq!(asym_bound(10.0, 12).unwrap(), 1.0890815808817777e-20, max_relative = 1e-13);
    }

    #[test]
    fn bound_monotone_decreasing_in_x() {
        let mut prev = f64::INFINITY;
        for i in 1..=60 {
            let x = 2.0 + i as f64 * 0.5;
            let b = asym_bound(x, 8).unwrap();
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn bound_rejects_nonpositive_x() {
        assert!(asym_bound(0.0, 3).is_err());
        assert!(asym_bound(-1.0, 3).is_err());
    }

    #[test]
    fn double_factorial_values() {
        assert_eq!(double_factorial(-1).unwrap(), 1.0);
        assert_eq!(double_factorial(1).unwrap(), 1.0);
        assert_eq!(double_factorial(5).unwrap(), 15.0);
        assert_eq!(double_factorial(23).unwrap(), 316234143225.0);
        assert!(double_factorial(4).is_err());
        assert!(double_factorial(-3).is_err());
    }
}
