//! Modified trapezoid rule G_N(x) for mid-range arguments, with its
//! x-independent global error bound.
//!
//! The rule is
//!
//!   G_N(x) = (1+i)/2 - (1+i)/(exp((1-i) pi A_N x) + 1)
//!            - (2 i x exp(i pi x^2/2) / (pi A_N))
//!              * sum_{k=1..N} w_k / (x^2 + i d_k),
//!
//! with A_N = sqrt(N + 1/2), w_k = exp(-pi (k-1/2)^2 / A_N^2) and
//! d_k = 2 (k-1/2)^2 / A_N^2. The Fermi factor is evaluated in the decaying
//! form (1+i) E / (1 + E), E = exp(-(1-i) pi A_N x), which underflows
//! gracefully instead of overflowing for large arguments.
//!
//! The error budget certified by the tests (global bound + 1e-16 round-off
//! slack) sits below one ulp of the result, so the sum, the oscillatory
//! factor and the assembly are carried in hi/lo pairs and rounded once per
//! component at the end. Build-time constants are refined the same way; the
//! per-call cost stays within a small factor of the other two branches.

use num_complex::Complex64;

use super::fp::{exp_neg_f64, exp_pair, sincos_pi_f64, sincos_pi_half_x2_parts, two_prod, two_sqr, two_sum, Pair};
use crate::error::{FresnelError, Result};

/// Largest exp argument accepted by the evaluation guard.
const MAX_EXP_ARG: f64 = 709.78;
/// Beyond this the Fermi factor is below 1.6e-18 (1.5% of the validity
/// slack) and is dropped.
const FERMI_CUTOFF: f64 = 41.5;

/// Precomputed constants of G_N for one order N.
#[derive(Debug, Clone, PartialEq)]
pub struct TrapCoefficients {
    /// Order N >= 1.
    pub order: usize,
    /// A_N = sqrt(N + 1/2).
    pub a_n: f64,
    /// beta = 1 - 1/sqrt(2) - (2 sqrt(2) + 1)/16.
    pub beta: f64,
    /// c_N of the global bound.
    pub c_n: f64,
    /// w_k = exp(-pi (k-1/2)^2 A_N^-2), k = 1..N.
    pub weights: Vec<f64>,
    /// d_k = 2 (k-1/2)^2 A_N^-2, k = 1..N.
    pub denoms: Vec<f64>,
    // pair-precision shadows of the table, used by trap_eval
    w_lo: Vec<f64>,
    inv_w: Vec<f64>,
    d_lo: Vec<f64>,
    dsq_pair: Vec<Pair>,
    /// Terms beyond the first three, merged three at a time over a common
    /// cubic denominator in y = x^4: [c2, c1, c0, n2, n1, n0, m2, m1, m0]
    /// for den = y^3 + c2 y^2 + c1 y + c0, num1 = n2 y^2 + n1 y + n0,
    /// num2 likewise with w d weights. One division per chunk instead of
    /// three; the merged terms never carry more than ~2% of either sum.
    tail_chunks: Vec<[f64; 9]>,
    /// 2 / (pi A_N) in pair precision.
    pref: Pair,
    /// pi * A_N, plain; only scales the small Fermi term.
    pi_an: f64,
}

/// Build the coefficient table for order `n >= 1`.
///
/// All quantities derive from N + 1/2 directly (exactly representable), so
/// the stored doubles are correctly rounded or within one ulp of the printed
/// formulas; the pair shadows carry the residuals.
pub fn trap_constants(n: usize) -> Result<TrapCoefficients> {
    if n < 1 {
        return Err(FresnelError::Domain(format!(
            "trap_constants requires N >= 1, got {n}"
        )));
    }
    let a2 = n as f64 + 0.5;
    let a_pair = Pair::from_sqrt(a2, 0.0);
    let a_n = a_pair.hi;

    let sqrt2 = std::f64::consts::SQRT_2;
    let beta = 1.0 - 1.0 / sqrt2 - (2.0 * sqrt2 + 1.0) / 16.0;

    let pi = std::f64::consts::PI;
    let c_n = {
        let exp_mh = (-pi / 2.0).exp();
        let gap = 1.0 - (-2.0 * pi * a2).exp();
        let t1 = 20.0 * sqrt2 * exp_mh / (9.0 * pi * gap);
        let bracket = 1.0 + 2.0 * pi.sqrt() * (-beta * pi * a2).exp();
        let t2 = (2.0 * pi + 1.0) * exp_mh / (2.0 * sqrt2 * pi.powf(1.5));
        t1 * bracket + t2
    };

    let mut weights = Vec::with_capacity(n);
    let mut denoms = Vec::with_capacity(n);
    let mut w_lo = Vec::with_capacity(n);
    let mut inv_w = Vec::with_capacity(n);
    let mut d_lo = Vec::with_capacity(n);
    let mut dsq_pair = Vec::with_capacity(n);
    for k in 1..=n {
        let t = k as f64 - 0.5;
        let t2 = t * t; // exact for any realistic k
        // argument -pi t^2 / a2 in pair precision, then pair exp
        let num = Pair::PI.mul_f64(t2);
        let arg = num.div_f64(a2);
        let w = exp_pair(-arg.hi).mul(Pair::ONE.add_f64(-arg.lo));
        let (wh, wl) = two_sum(w.hi, w.lo); // normalize: wh correctly rounded
        let d = Pair::from_div(2.0 * t2, a2);
        weights.push(wh);
        w_lo.push(wl);
        inv_w.push(1.0 / wh);
        denoms.push(d.hi);
        d_lo.push(d.lo);
        dsq_pair.push(d.sqr());
    }

    // merge the small tail terms (k > 3) into cubic-denominator chunks,
    // padding with weight-zero terms so every chunk is uniform
    let mut tail_chunks = Vec::new();
    let mut k = 3;
    while k < n {
        let mut ws = [0.0f64; 3];
        let mut wds = [0.0f64; 3];
        let mut ds = [1.0f64; 3]; // neutral pad factor (y + 1)
        for j in 0..3 {
            if k + j < n {
                ws[j] = weights[k + j];
                wds[j] = weights[k + j] * denoms[k + j];
                ds[j] = dsq_pair[k + j].hi;
            }
        }
        let c2 = ds[0] + ds[1] + ds[2];
        let c1 = ds[0] * ds[1] + ds[0] * ds[2] + ds[1] * ds[2];
        let c0 = ds[0] * ds[1] * ds[2];
        let chunk_num = |w: [f64; 3]| -> (f64, f64, f64) {
            // sum_j w_j * prod_{i != j} (y + ds_i)
            let n2 = w[0] + w[1] + w[2];
            let n1 = w[0] * (ds[1] + ds[2]) + w[1] * (ds[0] + ds[2]) + w[2] * (ds[0] + ds[1]);
            let n0 = w[0] * ds[1] * ds[2] + w[1] * ds[0] * ds[2] + w[2] * ds[0] * ds[1];
            (n2, n1, n0)
        };
        let (n2, n1, n0) = chunk_num(ws);
        let (m2, m1, m0) = chunk_num(wds);
        tail_chunks.push([c2, c1, c0, n2, n1, n0, m2, m1, m0]);
        k += 3;
    }

    // 2 / (pi A_N) in pair precision
    let pi_a = Pair::PI.mul(a_pair);
    let pref = pi_a.recip().mul_f64(2.0);
    let pi_an = pi_a.to_f64();

    Ok(TrapCoefficients {
        order: n,
        a_n,
        beta,
        c_n,
        weights,
        denoms,
        w_lo,
        inv_w,
        d_lo,
        dsq_pair,
        tail_chunks,
        pref,
        pi_an,
    })
}

/// Global bound E_GN = 2 sqrt(2) c_N exp(-pi N) / (2N + 1).
///
/// Independent of x. Note this evaluates the bound formula literally; the
/// values it produces for N = 11, 12 sit a factor of ~5 below the rounded
/// figures commonly quoted for those orders (see the tests, which pin both).
pub fn trap_bound(n: usize) -> Result<f64> {
    if n < 1 {
        return Err(FresnelError::Domain(format!(
            "trap_bound requires N >= 1, got {n}"
        )));
    }
    let tc = trap_constants(n)?;
    let pi = std::f64::consts::PI;
    Ok(2.0 * std::f64::consts::SQRT_2 * tc.c_n * (-pi * n as f64).exp() / (2.0 * n as f64 + 1.0))
}

/// G_N(x) for x > 0 with pi A_N x inside the exp guard.
///
/// The evaluator only calls this on (x1, x2); the rule itself is valid for
/// any positive x but increasingly exposed to round-off outside mid-range.
pub fn trap_eval(x: f64, tc: &TrapCoefficients) -> Result<Complex64> {
    if x.is_nan() || x <= 0.0 {
        return Err(FresnelError::Domain(format!(
            "trap_eval requires x > 0, got {x}"
        )));
    }
    let phi = tc.pi_an * x;
    if phi.is_nan() || phi >= MAX_EXP_ARG {
        return Err(FresnelError::Domain(format!(
            "trap_eval: pi A_N x = {phi} exceeds the exp range"
        )));
    }

    // exact x^2 and near-exact x^4
    let (x2h, x2l) = two_sqr(x);
    let (x4h, e4) = two_sqr(x2h);
    let x4l = e4 + 2.0 * x2h * x2l;

    // sum1 = sum w_k / (x^4 + d_k^2), sum2 = sum w_k d_k / (x^4 + d_k^2).
    //
    // The weights fall off like exp(-pi k^2 / A^2): terms beyond the first
    // three never carry more than ~2% of either sum, so they run in plain
    // f64 (their rounding lands below 1e-17 after the prefactor scaling).
    // The three dominant terms keep the denominator residue, the weight
    // residue and two_sum compensation; the per-term division rounding
    // stays uncompensated, with a weighted worst case of a few 1e-17
    // against the 1e-16 budget — confirmed by the validity suite.
    let n = tc.order;
    let eft_terms = n.min(3);
    let y = x4h;
    let mut p1 = 0.0f64;
    let mut p2 = 0.0f64;
    for ch in tc.tail_chunks.iter().rev() {
        let den = ((y + ch[0]) * y + ch[1]) * y + ch[2];
        let r = 1.0 / den;
        p1 += ((ch[3] * y + ch[4]) * y + ch[5]) * r;
        p2 += ((ch[6] * y + ch[7]) * y + ch[8]) * r;
    }
    let mut s1 = p1;
    let mut c1 = 0.0f64;
    let mut s2 = p2;
    let mut c2 = 0.0f64;
    for k in (0..eft_terms).rev() {
        let dsq = tc.dsq_pair[k];
        let (dh, de) = two_sum(x4h, dsq.hi);
        let dl = de + x4l + dsq.lo;
        let q = tc.weights[k] / dh;
        // first-order correction: (w_lo - q dl) / dh, with 1/dh ~ q/w
        let qc = (tc.w_lo[k] - q * dl) * (q * tc.inv_w[k]);
        let (s, e) = two_sum(s1, q);
        s1 = s;
        c1 += e + qc;
        let qd = q * tc.denoms[k];
        let qdc = q * tc.d_lo[k] + qc * tc.denoms[k];
        let (s, e) = two_sum(s2, qd);
        s2 = s;
        c2 += e + qdc;
    }
    let sum1 = Pair::new(s1, c1);
    let sum2 = Pair::new(s2, c2);
    // T = x^2 * sum1 - i * sum2
    let (trh, tre) = two_prod(x2h, sum1.hi);
    let t_re = Pair::new(trh, tre + x2h * sum1.lo + x2l * sum1.hi);
    let t_im = sum2.neg();

    // oscillatory factor and prefactor p = 2x / (pi A_N), folded together
    // before the sums land so the tail of the dependency chain stays short
    let (s_osc, c_osc) = sincos_pi_half_x2_parts(x2h, x2l);
    let px = tc.pref.mul_f64(x);
    let px_s = px.mul(s_osc);
    let px_c = px.mul(c_osc);
    // L = px * (i e^{i theta}) * T, with i e^{i theta} = -s + i c
    let l_re = px_s.mul(t_re).add(px_c.mul(t_im)).neg();
    let l_im = px_c.mul(t_re).add(px_s.mul(t_im).neg());

    // Fermi term (1+i) E / (1 + E); small everywhere on the rule's range
    // (|E| < 7e-4), so f64-grade exp and sincos carry it
    let (f_re, f_im) = if phi > FERMI_CUTOFF {
        (0.0, 0.0)
    } else {
        let m = exp_neg_f64(phi);
        let (sp, cp) = sincos_pi_f64(tc.a_n * x);
        let e_re = m * cp;
        let e_im = m * sp;
        let den = (1.0 + e_re) * (1.0 + e_re) + e_im * e_im;
        let num_re = e_re - e_im;
        let num_im = e_re + e_im;
        (
            (num_re * (1.0 + e_re) + num_im * e_im) / den,
            (num_im * (1.0 + e_re) - num_re * e_im) / den,
        )
    };

    // assemble 1/2 - F - L per component, rounding once
    let (rh, re) = two_sum(0.5, -l_re.hi);
    let out_re = rh + ((re - l_re.lo) - f_re);
    let (ih, ie) = two_sum(0.5, -l_im.hi);
    let out_im = ih + ((ie - l_im.lo) - f_im);
    Ok(Complex64::new(out_re, out_im))
}
