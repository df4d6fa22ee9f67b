//! Error-free transformations and pair-precision helpers for the evaluation
//! kernels.
//!
//! The kernels run in plain f64, but two places need more care than naive
//! arithmetic gives:
//!
//! * the oscillatory factor exp(i pi x^2 / 2): the phase must be formed from
//!   the exact x^2 and reduced mod 2 before multiplying by pi, or the factor
//!   drifts by ~x^2 ulps;
//! * the trapezoid-rule sum, whose error budget (the global bound plus 1e-16
//!   of round-off slack) is under one ulp of the result.
//!
//! A `Pair` is an unevaluated hi + lo sum like the oracle's double-double,
//! but renormalized sloppily (good to ~1e-31 relative, not a full dd type);
//! it never crosses a public API.

/// a + b with exact error, no magnitude precondition (Knuth).
#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Dekker split of a into 26-bit halves.
#[inline]
pub(crate) fn split(a: f64) -> (f64, f64) {
    const SPLIT: f64 = 134217729.0; // 2^27 + 1
    let t = SPLIT * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

/// a * b with exact error, operand splits supplied by the caller (lets
/// constants and repeated factors skip the split).
#[inline]
pub(crate) fn two_prod_split(a: f64, asp: (f64, f64), b: f64, bsp: (f64, f64)) -> (f64, f64) {
    let p = a * b;
    let err = ((asp.0 * bsp.0 - p) + asp.0 * bsp.1 + asp.1 * bsp.0) + asp.1 * bsp.1;
    (p, err)
}

/// a * b with exact error (Dekker, portable: no FMA requirement).
#[inline]
pub(crate) fn two_prod(a: f64, b: f64) -> (f64, f64) {
    two_prod_split(a, split(a), b, split(b))
}

/// a^2 with exact error; one split instead of two.
#[inline]
pub(crate) fn two_sqr(a: f64) -> (f64, f64) {
    let s = split(a);
    two_prod_split(a, s, a, s)
}

/// Unevaluated hi + lo, sloppy normalization.
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub(crate) struct Pair {
    pub hi: f64,
    pub lo: f64,
}

impl Pair {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const PI: Self = Self::new(std::f64::consts::PI, 1.2246467991473532e-16);
    pub const LN2: Self = Self::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
    pub const SQRT2_OVER_2: Self = Self::new(std::f64::consts::FRAC_1_SQRT_2, -4.833646656726457e-17);
    /// Dekker halves of PI.hi and SQRT2_OVER_2.hi, precomputed.
    const PI_SPLIT: (f64, f64) = (3.1415926814079285, -2.781813535079891e-08);
    const H_SPLIT: (f64, f64) = (0.7071067839860916, -2.7995440410322203e-09);

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    /// Quotient a / b of plain doubles, with one EFT correction digit.
    #[inline]
    pub fn from_div(a: f64, b: f64) -> Self {
        let q = a / b;
        let (p, e) = two_prod(q, b);
        let lo = ((a - p) - e) / b;
        Self { hi: q, lo }
    }

    /// EFT square root of a plain double pair (ah + al).
    #[inline]
    pub fn from_sqrt(ah: f64, al: f64) -> Self {
        let r = ah.sqrt();
        let (p, e) = two_prod(r, r);
        let lo = (((ah - p) - e) + al) / (2.0 * r);
        Self { hi: r, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }

    #[inline]
    pub fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        Self::new(s, e + self.lo + o.lo)
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        Self::new(s, e + self.lo)
    }

    #[inline]
    pub fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        Self::new(p, e + self.hi * o.lo + self.lo * o.hi)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Self::new(p, e + self.lo * b)
    }

    #[inline]
    pub fn sqr(self) -> Self {
        let (p, e) = two_prod(self.hi, self.hi);
        Self::new(p, e + 2.0 * self.hi * self.lo)
    }

    /// self times a pair constant whose hi split is precomputed.
    #[inline]
    pub fn mul_cpair(self, chi: f64, csp: (f64, f64), clo: f64) -> Self {
        let (p, e) = two_prod_split(chi, csp, self.hi, split(self.hi));
        Self::new(p, e + chi * self.lo + clo * self.hi)
    }

    /// self / b for a plain-double divisor.
    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        let q = self.hi / b;
        let (p, e) = two_prod(q, b);
        let lo = (((self.hi - p) - e) + self.lo) / b;
        Self::new(q, lo)
    }

    /// 1 / self.
    #[inline]
    pub fn recip(self) -> Self {
        let q = 1.0 / self.hi;
        let (p, e) = two_prod(q, self.hi);
        let lo = (((1.0 - p) - e) - q * self.lo) / self.hi;
        Self::new(q, lo)
    }
}

/// exp(x) to pair precision for x in [-750, 0]; used only when building
/// coefficient tables, never per evaluation.
pub(crate) fn exp_pair(x: f64) -> Pair {
    if x < -746.0 {
        return Pair::ZERO;
    }
    let n = (x / Pair::LN2.hi).round();
    // r = x - n ln2 in pair precision
    let r = Pair::from_prod(n, -Pair::LN2.hi)
        .add_f64(x)
        .add(Pair::from_prod(n, -Pair::LN2.lo));
    // Taylor: |r| <= 0.347, 18 terms reach ~1e-22 relative
    let mut sum = Pair::ONE;
    let mut term = Pair::ONE;
    for k in 1..=18 {
        term = term.mul(r).div_f64(k as f64);
        sum = sum.add(term);
    }
    let scale = n.exp2();
    Pair::new(sum.hi * scale, sum.lo * scale)
}

/// (sin, cos) of pi * x^2 / 2 in pair precision.
///
/// The half-phase tau = x^2 / 2 is formed exactly with a two-product and
/// reduced mod 2 exactly (fmod by 2 is exact on each component), so the
/// result is faithful for any x with finite x^2. Errors stay near 1e-18
/// absolute — far below one ulp of the factor.
#[inline]
pub(crate) fn sincos_pi_half_x2(x: f64) -> (Pair, Pair) {
    let (x2h, x2l) = two_sqr(x);
    sincos_pi_half_x2_parts(x2h, x2l)
}

/// Nearest integer for |t| < 2^51, round-to-nearest mode; avoids the
/// round/fmod libcalls on targets without SSE4.1.
#[inline]
fn fast_nearest(t: f64) -> f64 {
    const MAGIC: f64 = 6755399441055744.0; // 1.5 * 2^52
    (t + MAGIC) - MAGIC
}

/// Same, reusing an exact x^2 = x2h + x2l the caller already has.
pub(crate) fn sincos_pi_half_x2_parts(x2h: f64, x2l: f64) -> (Pair, Pair) {
    // tau in half-turns; subtracting twice the nearest integer of tau/2 is
    // exact (both live on tau's ulp grid), leaving |th| <= 1
    let (tau_h, tau_l) = (0.5 * x2h, 0.5 * x2l);
    let (th, tl) = if tau_h.abs() < 4.5e15 {
        // fast path: |tau_l| <= 1/2 ulp(tau_h) < 1 needs no reduction
        (tau_h - 2.0 * fast_nearest(0.5 * tau_h), tau_l)
    } else {
        // beyond 2^52 the nearest-integer trick saturates; fmod is exact
        (tau_h % 2.0, tau_l % 2.0)
    };
    let (rh, rl) = two_sum(th, tl);
    // octant split: tau = m/4 + r, |r| <= 1/8 (+ a few ulp)
    let m = fast_nearest(4.0 * rh);
    let r = Pair::new(rh - 0.25 * m, rl); // exact: rh and m/4 share the grid
    let u = r.mul_cpair(Pair::PI.hi, Pair::PI_SPLIT, Pair::PI.lo); // |u| <= pi/8
    let (su, cu) = sincos_taylor(u);
    let mm = ((m as i64) % 8 + 8) % 8;
    if mm % 2 == 0 {
        return match mm {
            0 => (su, cu),
            2 => (cu, su.neg()),
            4 => (su.neg(), cu.neg()),
            _ => (cu.neg(), su),
        };
    }
    // odd octants: sin/cos are ±(cu ± su)/sqrt(2)
    let h = Pair::SQRT2_OVER_2;
    let a = cu.add(su).mul_cpair(h.hi, Pair::H_SPLIT, h.lo);
    let b = cu.add(su.neg()).mul_cpair(h.hi, Pair::H_SPLIT, h.lo);
    match mm {
        1 => (a, b),
        3 => (b, a.neg()),
        5 => (a.neg(), b.neg()),
        _ => (b.neg(), a),
    }
}

/// Taylor sin/cos for |u| <= ~0.40. Only the leading terms need pair
/// treatment: the u^3 and u^4 tails sit below 1.1e-2 and 1.4e-3, so plain
/// f64 evaluation keeps them within ~5e-18 absolute, a twentieth of an ulp
/// of the unit-magnitude result. Tails run in Estrin form to shorten the
/// dependency chains.
#[inline]
fn sincos_taylor(u: Pair) -> (Pair, Pair) {
    let x = u.hi * u.hi;
    let x2 = x * x;
    // sin(u) = u + u^3 (-1/6 + u^2 P(u^2))
    let ps = (-1.0 / 6.0 + x * (1.0 / 120.0))
        + x2 * ((-1.0 / 5040.0 + x * (1.0 / 362880.0))
            + x2 * (-1.0 / 39916800.0 + x * (1.0 / 6227020800.0)));
    let tail_s = u.hi * x * ps;
    let (sh, sl) = two_sum(u.hi, u.lo + tail_s);
    // cos(u) = 1 - u^2/2 + u^4 (1/24 + u^2 Q(u^2)); 1 - u^2/2 kept as an
    // exact pair, the rest in f64
    let qc = (1.0 / 24.0 + x * (-1.0 / 720.0))
        + x2 * ((1.0 / 40320.0 + x * (-1.0 / 3628800.0))
            + x2 * (1.0 / 479001600.0 + x * (-1.0 / 87178291200.0)));
    let half_u2 = 0.5 * x;
    let (ch, cl) = two_sum(1.0, -half_u2);
    let tail_c = x * (x * qc) - u.hi * u.lo; // d(u^2/2) correction folded in
    let (ch, cl) = two_sum(ch, cl + tail_c);
    (Pair::new(sh, sl), Pair::new(ch, cl))
}

/// Plain-f64 (sin, cos) of pi * tau for |tau| < 2^51, good to a few ulp.
/// Serves the Fermi factor in the trapezoid rule, whose magnitude never
/// exceeds ~7e-4 on the rule's range, so full pair accuracy would be
/// wasted there.
#[inline]
pub(crate) fn sincos_pi_f64(tau: f64) -> (f64, f64) {
    let v = tau - 2.0 * fast_nearest(0.5 * tau);
    let m = fast_nearest(4.0 * v);
    let u = std::f64::consts::PI * (v - 0.25 * m);
    let x = u * u;
    let x2 = x * x;
    let ps = (-1.0 / 6.0 + x * (1.0 / 120.0))
        + x2 * ((-1.0 / 5040.0 + x * (1.0 / 362880.0))
            + x2 * (-1.0 / 39916800.0 + x * (1.0 / 6227020800.0)));
    let su = u + u * x * ps;
    let qc = (-1.0 / 720.0 + x * (1.0 / 40320.0)) + x2 * (-1.0 / 3628800.0 + x * (1.0 / 479001600.0));
    let cu = 1.0 - 0.5 * x + x * x * (1.0 / 24.0 + x * qc);
    let mm = ((m as i64) % 8 + 8) % 8;
    if mm % 2 == 0 {
        return match mm {
            0 => (su, cu),
            2 => (cu, -su),
            4 => (-su, -cu),
            _ => (-cu, su),
        };
    }
    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;
    let a = H * (cu + su);
    let b = H * (cu - su);
    match mm {
        1 => (a, b),
        3 => (b, -a),
        5 => (-a, -b),
        _ => (-b, a),
    }
}

/// Plain-f64 exp(-phi) for phi in [0, ~700], good to a couple of ulp;
/// cosh/sinh split keeps the polynomial chains short.
#[inline]
pub(crate) fn exp_neg_f64(phi: f64) -> f64 {
    const LN2_HI: f64 = 0.693_147_180_369_123_8;
    const LN2_LO: f64 = 1.9082149292705877e-10;
    let n = fast_nearest(phi * std::f64::consts::LOG2_E);
    let r = -((phi - n * LN2_HI) - n * LN2_LO); // |r| <= 0.347
    let z = r * r;
    let z2 = z * z;
    // e^r = cosh r + sinh r, both chains in z, Estrin form
    let cosh = (1.0 + z * (1.0 / 2.0))
        + z2 * ((1.0 / 24.0 + z * (1.0 / 720.0))
            + z2 * (1.0 / 40320.0 + z * (1.0 / 3628800.0) + z2 * (1.0 / 479001600.0)));
    let sinh_over_r = (1.0 + z * (1.0 / 6.0))
        + z2 * ((1.0 / 120.0 + z * (1.0 / 5040.0))
            + z2 * (1.0 / 362880.0 + z * (1.0 / 39916800.0) + z2 * (1.0 / 6227020800.0)));
    let e_r = cosh + r * sinh_over_r;
    // scale by 2^-n; n <= 1010 for phi <= 700, so the factor stays normal
    let scale = f64::from_bits(((1023 - n as i64) as u64) << 52);
    e_r * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_prod_is_exact() {
        let (p, e) = two_prod(1.0 + 2f64.powi(-30), 1.0 + 2f64.powi(-30));
        // (1 + 2^-30)^2 = 1 + 2^-29 + 2^-60; the last bit lands in e
        assert_eq!(p, 1.0 + 2f64.powi(-29));
        assert_eq!(e, 2f64.powi(-60));
    }

    #[test]
    fn pair_div_identity() {
        let q = Pair::from_div(1.0, 3.0);
        let back = q.mul_f64(3.0);
        assert!((back.to_f64() - 1.0).abs() < 1e-30);
        assert!((back.hi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exp_pair_matches_libm_to_sub_ulp() {
        for &x in &[-0.5, -1.0, -3.25, -10.0, -33.24] {
            let p = exp_pair(x);
            let rel = (p.to_f64() - x.exp()).abs() / x.exp();
            assert!(rel < 1e-15, "x={x}, rel={rel:e}");
        }
    }

    #[test]
    fn oscillatory_factor_at_quarter_phases() {
        // x = 1: phase pi/2, sin = 1, cos = 0
        let (s, c) = sincos_pi_half_x2(1.0);
        assert!((s.to_f64() - 1.0).abs() < 1e-17);
        assert!(c.to_f64().abs() < 1e-17);
        // x = 2: phase 2 pi, sin = 0, cos = 1
        let (s, c) = sincos_pi_half_x2(2.0);
        assert!(s.to_f64().abs() < 1e-17);
        assert!((c.to_f64() - 1.0).abs() < 1e-17);
    }

    #[test]
    fn oscillatory_factor_has_unit_magnitude() {
        for i in 0..500 {
            let x = 0.01 + i as f64 * 0.173;
            let (s, c) = sincos_pi_half_x2(x);
            let m = s.to_f64().hypot(c.to_f64());
            assert!((m - 1.0).abs() < 1e-15, "x={x}, |osc|-1 = {:e}", m - 1.0);
        }
    }

    #[test]
    fn oscillatory_factor_huge_argument_exact_case() {
        // x = 1e9: x^2/2 = 5e17 is an even integer, so the factor is exactly 1
        let (s, c) = sincos_pi_half_x2(1e9);
        assert_eq!(s.to_f64(), 0.0);
        assert_eq!(c.to_f64(), 1.0);
    }
}
