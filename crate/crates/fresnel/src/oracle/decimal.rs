//! Decimal conversion for double-double values, used by the golden-fixture
//! file (30 significant digits per value).

use super::dd::DoubleDouble;

/// 10^k as a double-double, exact for |k| <= 22 and within ~1e-32 beyond.
fn pow10(k: i32) -> DoubleDouble {
    if k == 0 {
        return DoubleDouble::ONE;
    }
    let mag = k.unsigned_abs();
    let mut acc = DoubleDouble::ONE;
    let mut rem = mag;
    while rem > 0 {
        let chunk = rem.min(22);
        acc = acc * DoubleDouble::from_f64(10f64.powi(chunk as i32));
        rem -= chunk;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Render `v` with `ndigits` significant digits as `d.ddd...e±k`.
pub fn to_decimal_string(v: DoubleDouble, ndigits: usize) -> String {
    if v.hi == 0.0 && v.lo == 0.0 {
        return "0".to_string();
    }
    let neg = v.hi < 0.0;
    let mut m = v.abs();
    let mut e10 = m.hi.abs().log10().floor() as i32;
    m = m * pow10(-e10);
    // settle the leading digit into [1, 10)
    while m.hi >= 10.0 {
        m = m.div_f64(10.0);
        e10 += 1;
    }
    while m.hi < 1.0 {
        m = m.mul_f64(10.0);
        e10 -= 1;
    }
    // extract one guard digit beyond the request
    let n = ndigits + 1;
    let mut digits = vec![0i32; n];
    for d in digits.iter_mut() {
        let dig = m.hi.floor();
        *d = dig as i32;
        m = (m.add_f64(-dig)).mul_f64(10.0);
    }
    // fix stray digits outside [0, 9]
    for i in (1..n).rev() {
        if digits[i] < 0 {
            digits[i] += 10;
            digits[i - 1] -= 1;
        } else if digits[i] > 9 {
            digits[i] -= 10;
            digits[i - 1] += 1;
        }
    }
    // round on the guard digit
    if digits[n - 1] >= 5 {
        let mut i = n - 2;
        loop {
            digits[i] += 1;
            if digits[i] < 10 {
                break;
            }
            digits[i] = 0;
            if i == 0 {
                // 9.99... rolled over to 10.0...
                digits[0] = 1;
                e10 += 1;
                break;
            }
            i -= 1;
        }
    }
    digits.truncate(ndigits);
    let mut out = String::with_capacity(ndigits + 8);
    if neg {
        out.push('-');
    }
    out.push(char::from_digit(digits[0] as u32, 10).unwrap());
    out.push('.');
    for &d in &digits[1..] {
        out.push(char::from_digit(d as u32, 10).unwrap());
    }
    out.push('e');
    out.push_str(&e10.to_string());
    out
}

/// Parse a decimal string (plain or scientific) into a double-double.
pub fn parse_dd(s: &str) -> Option<DoubleDouble> {
    let s = s.trim();
    let (neg, rest) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (mantissa_str, exp) = match rest.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (rest, 0),
    };
    let mut acc = DoubleDouble::ZERO;
    let mut frac_digits = 0i32;
    let mut seen_point = false;
    let mut seen_digit = false;
    let mut used = 0;
    for ch in mantissa_str.chars() {
        match ch {
            '0'..='9' => {
                seen_digit = true;
                if used < 34 {
                    acc = acc.mul_f64(10.0).add_f64((ch as u8 - b'0') as f64);
                    used += 1;
                    if seen_point {
                        frac_digits += 1;
                    }
                } else if !seen_point {
                    // digits beyond precision before the point still shift magnitude
                    frac_digits -= 1;
                }
            }
            '.' if !seen_point => seen_point = true,
            _ => return None,
        }
    }
    if !seen_digit {
        return None;
    }
    let v = acc * pow10(exp - frac_digits);
    Some(if neg { -v } else { v })
}
