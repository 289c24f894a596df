//! Exact decimal rendering of binary values, truncated (never rounded) to a
//! number of significant digits.

use alloc::string::String;

use super::real::Real;

const LOG10_2: f64 = 0.301_029_995_663_981_2;

/// Decimal digits that `bits` of precision can support after a 16-bit
/// safety margin.
pub fn digits_for_bits(bits: usize) -> usize {
    ((bits.saturating_sub(16)) as f64 * LOG10_2).floor().max(1.0) as usize
}

/// Bits needed to print `digits` decimal digits: `ceil(digits·log2 10) + 16`.
pub fn bits_for_digits(digits: usize) -> usize {
    (digits as f64 / LOG10_2).ceil() as usize + 16
}

impl Real {
    /// Decimal expansion with `digits` significant digits, truncated toward
    /// zero. Plain notation is used for decimal exponents in `-6..21`,
    /// scientific (`d.ddde-N`) otherwise.
    pub fn to_decimal(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if !self.is_finite() {
            return String::from("NaN");
        }
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        if self.is_negative() {
            out.push('-');
        }
        let (mantissa_digits, exp10) = significant_digits(&self.abs(), digits);
        let plain = (-6..21).contains(&exp10);
        if plain {
            if exp10 < 0 {
                out.push_str("0.");
                for _ in 0..(-exp10 - 1) {
                    out.push('0');
                }
                out.push_str(&mantissa_digits);
            } else {
                let int_len = (exp10 + 1) as usize;
                if mantissa_digits.len() <= int_len {
                    out.push_str(&mantissa_digits);
                    for _ in mantissa_digits.len()..int_len {
                        out.push('0');
                    }
                } else {
                    out.push_str(&mantissa_digits[..int_len]);
                    out.push('.');
                    out.push_str(&mantissa_digits[int_len..]);
                }
            }
        } else {
            out.push_str(&mantissa_digits[..1]);
            if mantissa_digits.len() > 1 {
                out.push('.');
                out.push_str(&mantissa_digits[1..]);
            }
            out.push('e');
            out.push_str(&alloc::format!("{exp10}"));
        }
        out
    }
}

/// Returns the first `n` decimal digits of `x > 0` and the decimal exponent
/// of the leading digit. All scaling is exact.
fn significant_digits(x: &Real, n: usize) -> (String, i64) {
    let one = Real::one(64);
    if x >= &one {
        let (digits, int_len) = split_digits(x, n);
        return (digits, int_len as i64 - 1);
    }
    // x·10^k lands in [1, 20) for k = -floor((e-1)·log10 2)
    let e2 = x.exponent().unwrap_or(0);
    let k = -(((e2 - 1) as f64 * LOG10_2).floor() as i64);
    let p = x.prec() + 4 * k as usize + 64;
    let scaled = x.with_prec(p).mul_prec(&Real::from_i64(10, p).powi(k as u64), p);
    let (digits, int_len) = split_digits(&scaled, n);
    (digits, int_len as i64 - 1 - k)
}

/// Digits of `y >= 1`: all integer digits, then fraction digits until `n`
/// digits are produced. Returns the digits and the integer digit count.
fn split_digits(y: &Real, n: usize) -> (String, usize) {
    let int_part = y.floor();
    let int_digits = integer_digits(&int_part);
    let int_len = int_digits.len();
    if int_len >= n {
        return (String::from(&int_digits[..n]), int_len);
    }
    let mut s = int_digits;
    let ten = Real::from_i64(10, 64);
    let mut frac = y.sub_prec(&int_part, y.prec());
    for _ in int_len..n {
        let p = frac.prec() + 8;
        frac = frac.mul_prec(&ten, p);
        let d = frac.floor();
        s.push(char::from(b'0' + d.to_i64().unwrap_or(0).clamp(0, 9) as u8));
        frac = frac.sub_prec(&d, p);
    }
    (s, int_len)
}

/// Decimal digits of a non-negative integer value.
fn integer_digits(v: &Real) -> String {
    if v.is_zero() {
        return String::from("0");
    }
    let ten = Real::from_i64(10, 64);
    let mut rev = alloc::vec::Vec::new();
    let mut cur = v.clone();
    while !cur.is_zero() {
        let p = cur.exponent().unwrap_or(1).max(1) as usize + 16;
        let q = cur.div_prec(&ten, p.max(cur.prec())).floor();
        let r = cur.sub_prec(&q.mul_prec(&ten, p + 8), p + 8);
        rev.push(b'0' + r.to_i64().unwrap_or(0).clamp(0, 9) as u8);
        cur = q;
    }
    rev.reverse();
    String::from_utf8(rev).unwrap_or_default()
}
