//! Double-word ("double-double") arithmetic used by the reference oracle.
//!
//! A value is carried as an unevaluated sum `hi + lo` of two `f64`, with
//! `|lo| <= 1/2 ulp(hi)` after every operation, giving roughly 31 significant
//! decimal digits. The building blocks are the classical error-free
//! transformations (Knuth two-sum, Dekker split/product); the compound
//! operations follow the layout used by the qd family of libraries and keep
//! the relative error of each operation at a few units of 2^-104.
//!
//! Only the operations the oracle actually needs live here; this is not a
//! general multiprecision library.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Splitting constant for Dekker's product, 2^27 + 1.
const SPLIT: f64 = 134217729.0;

/// `a + b` with exact rounding error, no precondition on magnitudes.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// `a + b` with exact rounding error, valid for `|a| >= |b|`.
#[inline]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// Dekker split of `a` into high and low 26-bit halves.
#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLIT * a;
    let hi = t - (t - a);
    let lo = a - hi;
    (hi, lo)
}

/// `a * b` with exact rounding error (Dekker product, no FMA required).
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

/// Unevaluated sum of two doubles, `hi + lo`, `|lo| <= 1/2 ulp(hi)`.
#[derive(Copy, Clone, Debug, Default, PartialEq, PartialOrd)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    pub const PI: Self = Self::new(std::f64::consts::PI, 1.2246467991473532e-16);
    pub const PI_HALF: Self = Self::new(std::f64::consts::FRAC_PI_2, 6.123233995736766e-17);
    pub const PI_QUARTER: Self = Self::new(std::f64::consts::FRAC_PI_4, 3.061616997868383e-17);
    pub const TWO_PI: Self = Self::new(std::f64::consts::TAU, 2.4492935982947064e-16);
    pub const LN2: Self = Self::new(std::f64::consts::LN_2, 2.3190468138462996e-17);
    pub const SQRT2_OVER_2: Self = Self::new(std::f64::consts::FRAC_1_SQRT_2, -4.833646656726457e-17);

    #[inline]
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    #[inline]
    pub fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    /// Exact product of two doubles.
    #[inline]
    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    /// Exact sum of two doubles.
    #[inline]
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    /// Scale by an exact power of two.
    #[inline]
    pub fn ldexp(self, n: i32) -> Self {
        let f = (n as f64).exp2();
        Self::new(self.hi * f, self.lo * f)
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Self { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        Self { hi, lo }
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Self {
        let q0 = self.hi / b;
        let (p, e) = two_prod(q0, b);
        // residual of self - q0*b, then one correction digit
        let (dh, dl) = two_sum(self.hi, -p);
        let q1 = (dh + (dl + (self.lo - e))) / b;
        let (hi, lo) = quick_two_sum(q0, q1);
        Self { hi, lo }
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    /// Square root by one double step plus one double-double Newton step.
    pub fn sqrt(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Self::ZERO;
        }
        let y = self.hi.sqrt();
        // y + (self - y^2) / (2y)
        let y2 = Self::from_prod(y, y);
        let r = (self - y2).div_f64(2.0 * y);
        r.add_f64(y)
    }

    /// Integer power by repeated squaring.
    pub fn powi(self, n: u32) -> Self {
        let mut base = self;
        let mut n = n;
        let mut acc = Self::ONE;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.hi, -self.lo)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        // Knuth-style accurate addition
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2b) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2b + t2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        // long division with two correction digits
        let q0 = self.hi / b.hi;
        let r = self - b.mul_f64(q0);
        let q1 = r.hi / b.hi;
        let r = r - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q0, q1);
        Self::from_sum(s, e + q2)
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: f64) -> Self {
        self.add_f64(b)
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: f64) -> Self {
        self.mul_f64(b)
    }
}

/// exp(a) for `a` in roughly [-700, 700], relative error a few units of 2^-104.
pub fn exp(a: DoubleDouble) -> DoubleDouble {
    if a.hi == 0.0 && a.lo == 0.0 {
        return DoubleDouble::ONE;
    }
    if a.hi < -746.0 {
        return DoubleDouble::ZERO;
    }
    // a = n ln2 + r, |r| <= ln2 / 2
    let n = (a.hi / DoubleDouble::LN2.hi).round();
    let r = a - DoubleDouble::LN2.mul_f64(n);
    // Taylor sum of exp(r); |r| <= 0.347 so ~26 terms reach 2^-110
    let mut sum = DoubleDouble::ONE;
    let mut term = DoubleDouble::ONE;
    for k in 1..=26 {
        term = (term * r).div_f64(k as f64);
        sum = sum + term;
        if term.hi.abs() < 1e-35 * sum.hi.abs() {
            break;
        }
    }
    sum.ldexp(n as i32)
}

/// (sin, cos) of pi*tau, where `tau` is the phase in half-turns.
///
/// The caller supplies tau already reduced enough that `tau.hi % 2.0` is
/// meaningful (any finite tau works; the reduction below is exact because
/// fmod by 2 is exact on each component).
pub fn sincos_pi(tau: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    // reduce tau mod 2 exactly, component-wise
    let (rh, rl) = two_sum(tau.hi % 2.0, tau.lo % 2.0);
    let red = DoubleDouble::new(rh, rl);
    // octant index: tau = m/4 + r with r in [-1/8, 1/8] half-turns
    let m = (4.0 * red.hi).round();
    let r = DoubleDouble::from_sum(red.hi - m * 0.25, red.lo);
    let u = DoubleDouble::PI * r; // |u| <= pi/8 + slack
    let (su, cu) = sincos_taylor(u);
    // assemble sin/cos(pi*m/4 + u) from the exact table values
    let h = DoubleDouble::SQRT2_OVER_2;
    let mm = ((m as i64) % 8 + 8) % 8;
    let (sm, cm): (DoubleDouble, DoubleDouble) = match mm {
        0 => (DoubleDouble::ZERO, DoubleDouble::ONE),
        1 => (h, h),
        2 => (DoubleDouble::ONE, DoubleDouble::ZERO),
        3 => (h, -h),
        4 => (DoubleDouble::ZERO, -DoubleDouble::ONE),
        5 => (-h, -h),
        6 => (-DoubleDouble::ONE, DoubleDouble::ZERO),
        _ => (-h, h),
    };
    let s = sm * cu + cm * su;
    let c = cm * cu - sm * su;
    (s, c)
}

/// Taylor sin/cos for |u| <= ~0.41, accurate to ~1e-33 absolute.
fn sincos_taylor(u: DoubleDouble) -> (DoubleDouble, DoubleDouble) {
    let u2 = u * u;
    // sin(u)/u = sum_{k} (-1)^k u^(2k) / (2k+1)!
    let mut s = DoubleDouble::ONE;
    let mut c = DoubleDouble::ONE;
    let mut term_s = DoubleDouble::ONE;
    let mut term_c = DoubleDouble::ONE;
    for k in 1..=16 {
        let tk = 2.0 * k as f64;
        term_c = -(term_c * u2).div_f64(tk * (tk - 1.0));
        term_s = -(term_s * u2).div_f64(tk * (tk + 1.0));
        c = c + term_c;
        s = s + term_s;
        if term_s.hi.abs() < 1e-34 && term_c.hi.abs() < 1e-34 {
            break;
        }
    }
    (s * u, c)
}
