//! Elementary functions on [`Real`].
//!
//! Every kernel works internally with guard bits and rounds once to the
//! requested precision, which keeps results within a few ulps. The
//! methods take an explicit target precision; the free functions at the
//! bottom are the context-driven suite (`exp`, `ln`, `sin`, `pow`,
//! `nth_root`, `pi`) that rounds to `ctx.bits()`.

use crate::error::{domain_err, Error, Result};

use super::consts;
use super::context::PrecisionContext;
use super::real::Real;

const GUARD: usize = 24;

/// Number of bits needed to hold `|n|`.
fn bit_len(n: i64) -> usize {
    (64 - n.unsigned_abs().leading_zeros()) as usize
}

fn check_finite(x: &Real, op: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(alloc::format!("{op} of a non-finite argument")))
    }
}

impl Real {
    /// `e^self`.
    pub fn exp(&self, prec: usize) -> Result<Real> {
        check_finite(self, "exp")?;
        if self.is_zero() {
            return Ok(Real::one(prec));
        }
        let xf = self.to_f64();
        if xf.abs() > 1.0e15 {
            return Err(Error::NonFinite("exp argument out of range".into()));
        }
        let n = (xf / core::f64::consts::LN_2).round() as i64;
        if n == 0 {
            let q = prec + GUARD;
            return Ok(expm1_reduced(&self.with_prec(q.max(self.prec())), q).add_int(1).with_prec(prec));
        }
        let q = prec + GUARD + bit_len(n);
        let ln2 = consts::ln2(q + 64);
        let r = self.sub_prec(&ln2.mul_int(n), q + 64).with_prec(q);
        let em1 = expm1_reduced(&r, q);
        Ok(em1.add_int(1).mul_pow2(n).with_prec(prec))
    }

    /// `e^self - 1`, accurate relative to the result for small arguments.
    pub fn exp_m1(&self, prec: usize) -> Result<Real> {
        check_finite(self, "expm1")?;
        if self.is_zero() {
            return Ok(Real::zero(prec));
        }
        if self.abs() < Real::ratio(1, 2, 64) {
            let q = prec + GUARD;
            return Ok(expm1_reduced(&self.with_prec(q.max(self.prec())), q).with_prec(prec));
        }
        let q = prec + GUARD;
        Ok(self.exp(q)?.add_int(-1).with_prec(prec))
    }

    /// Natural logarithm; `self > 0`.
    pub fn ln(&self, prec: usize) -> Result<Real> {
        check_finite(self, "ln")?;
        if !self.is_positive() {
            return Err(domain_err!("ln requires a positive argument"));
        }
        let mut e = self.exponent().unwrap_or(0);
        let mut m = self.mul_pow2(-e);
        // m in [1/2, 1); move to [1/sqrt2, sqrt2)
        if m.to_f64() < core::f64::consts::FRAC_1_SQRT_2 {
            m = m.mul_pow2(1);
            e -= 1;
        }
        let q = prec + GUARD + bit_len(e);
        let m = m.with_prec(q.max(m.prec()));
        let ln_m = ln_near_one(&m, q)?;
        if e == 0 {
            return Ok(ln_m.with_prec(prec));
        }
        let head = consts::ln2(q + 8).mul_int(e);
        Ok(head.add_prec(&ln_m, q).with_prec(prec))
    }

    /// `ln(1 + self)`, accurate relative to the result for small arguments.
    pub fn ln_1p(&self, prec: usize) -> Result<Real> {
        check_finite(self, "ln1p")?;
        if self.is_zero() {
            return Ok(Real::zero(prec));
        }
        let minus_one = Real::from_i64(-1, 64);
        if self <= &minus_one {
            return Err(domain_err!("ln1p requires an argument above -1"));
        }
        let q = prec + GUARD;
        if self.exponent().unwrap_or(0) <= -8 {
            return Ok(ln1p_series(&self.with_prec(q.max(self.prec())), q).with_prec(prec));
        }
        let one_plus = self.add_prec(&Real::one(64), q + 16);
        one_plus.ln(prec)
    }

    /// Sine of `self` (radians).
    pub fn sin(&self, prec: usize) -> Result<Real> {
        let (s, c, quadrant) = self.sin_cos_reduced(prec)?;
        let v = match quadrant {
            0 => s,
            1 => c,
            2 => -s,
            _ => -c,
        };
        Ok(v.with_prec(prec))
    }

    /// Cosine of `self` (radians).
    pub fn cos(&self, prec: usize) -> Result<Real> {
        let (s, c, quadrant) = self.sin_cos_reduced(prec)?;
        let v = match quadrant {
            0 => c,
            1 => -s,
            2 => -c,
            _ => s,
        };
        Ok(v.with_prec(prec))
    }

    /// Returns `(sin r, cos r, n mod 4)` with `self = n·π/2 + r`, `|r| <= π/4`.
    fn sin_cos_reduced(&self, prec: usize) -> Result<(Real, Real, u8)> {
        check_finite(self, "sin")?;
        let q = prec + GUARD;
        if self.is_zero() {
            return Ok((Real::zero(q), Real::one(q), 0));
        }
        let mag = self.exponent().unwrap_or(0).max(0) as usize;
        if mag > 1 << 20 {
            return Err(domain_err!("trigonometric argument too large"));
        }
        let xf = self.to_f64();
        let n = (xf / core::f64::consts::FRAC_PI_2).round() as i64;
        let r = if n == 0 {
            self.with_prec(q.max(self.prec()))
        } else {
            let wide = q + mag + bit_len(n) + 16;
            let half_pi = consts::pi(wide).mul_pow2(-1);
            self.sub_prec(&half_pi.mul_int(n), wide).with_prec(q)
        };
        let (s, c) = sin_cos_small(&r, q);
        Ok((s, c, n.rem_euclid(4) as u8))
    }

    /// `self^y`. Integer `y` is handled by repeated squaring and allows a
    /// negative base; otherwise `self > 0` is required (`0^y = 0` for `y > 0`).
    pub fn pow(&self, y: &Real, prec: usize) -> Result<Real> {
        check_finite(self, "pow")?;
        check_finite(y, "pow")?;
        if let Some(n) = y.to_i64().filter(|n| n.unsigned_abs() <= 1 << 24) {
            return self.powi_signed(n, prec);
        }
        if self.is_zero() {
            return if y.is_positive() {
                Ok(Real::zero(prec))
            } else {
                Err(domain_err!("0 raised to a non-positive power"))
            };
        }
        if self.is_negative() {
            return Err(domain_err!("negative base with non-integer exponent"));
        }
        let lnx = self.ln(prec + GUARD)?;
        let t = y.mul_prec(&lnx, prec + GUARD);
        let extra = t.exponent().unwrap_or(0).max(0) as usize;
        let lnx = self.ln(prec + GUARD + extra)?;
        y.mul_prec(&lnx, prec + GUARD + extra).exp(prec)
    }

    /// `self^n` for any integer `n`.
    pub fn powi_signed(&self, n: i64, prec: usize) -> Result<Real> {
        if n == 0 {
            return Ok(Real::one(prec));
        }
        if self.is_zero() {
            return if n > 0 {
                Ok(Real::zero(prec))
            } else {
                Err(domain_err!("division by zero in integer power"))
            };
        }
        let q = prec + GUARD + bit_len(n);
        let v = self.with_prec(q.max(self.prec())).powi(n.unsigned_abs());
        let v = if n < 0 { v.recip() } else { v };
        Ok(v.with_prec(prec))
    }

    /// Real `n`-th root for `self >= 0`, by Newton iteration on the
    /// inverse root with precision doubling.
    pub fn nth_root(&self, n: u32, prec: usize) -> Result<Real> {
        check_finite(self, "nth_root")?;
        if n == 0 {
            return Err(domain_err!("zeroth root"));
        }
        if self.is_negative() {
            return Err(domain_err!("root of a negative number"));
        }
        if self.is_zero() {
            return Ok(Real::zero(prec));
        }
        if n == 1 {
            return Ok(self.with_prec(prec));
        }
        let q = prec + GUARD;
        let n64 = i64::from(n);
        let e = self.exponent().unwrap_or(0);
        let shift = e.div_euclid(n64);
        let rem = e.rem_euclid(n64);
        // self = m * 2^(n*shift + rem), m in [1/2, 1)
        let m = self.mul_pow2(-e);
        let seed = (m.to_f64() * (rem as f64).exp2()).powf(-1.0 / f64::from(n));
        let scaled = self.mul_pow2(-n64 * shift);
        let mut y = Real::from_f64(seed, 64);
        let mut precs = alloc::vec::Vec::new();
        let mut p = q;
        while p > 48 {
            precs.push(p);
            p = p / 2 + 1;
        }
        for &p in precs.iter().rev() {
            let x = scaled.with_prec(p.max(64));
            let y_p = y.with_prec(p.max(64));
            let t = Real::one(64).sub_prec(&x.mul_prec(&y_p.powi(u64::from(n)), p), p);
            y = y_p.add_prec(&y_p.mul_prec(&t, p).div_int(n64), p);
        }
        let x = scaled.with_prec(q);
        let root = x.mul_prec(&y.with_prec(q).powi(u64::from(n - 1)), q);
        Ok(root.mul_pow2(shift).with_prec(prec))
    }

    pub fn sqrt(&self, prec: usize) -> Result<Real> {
        self.nth_root(2, prec)
    }
}

/// `e^r - 1` for `|r| <~ 1/2`, relative accuracy about `2^-q`.
fn expm1_reduced(r: &Real, q: usize) -> Real {
    let Some(er) = r.exponent() else {
        return Real::zero(q);
    };
    if er < -(q as i64) - 4 {
        return r.with_prec(q);
    }
    let target = ((q as f64 / 2.0).sqrt().ceil() as i64).max(4);
    let halvings = (target + er).max(0);
    let wp = q + 8 + halvings as usize;
    let y = r.with_prec(wp).mul_pow2(-halvings);
    let ey = y.exponent().unwrap_or(0);
    let mut sum = y.clone();
    let mut term = y.clone();
    let stop = ey - wp as i64 - 4;
    let mut k = 2;
    loop {
        term = term.mul_prec(&y, wp).div_int(k);
        if term.exponent().map_or(true, |e| e < stop) {
            break;
        }
        sum = sum.add_prec(&term, wp);
        k += 1;
    }
    for _ in 0..halvings {
        // e^(2y) - 1 = (e^y - 1)(e^y - 1 + 2)
        sum = sum.mul_prec(&sum.add_int(2), wp);
    }
    sum.with_prec(q)
}

/// `ln(1+z)` by the odd series of `2·atanh(z/(2+z))`; meant for `|z| < 2^-8`.
fn ln1p_series(z: &Real, q: usize) -> Real {
    let wp = q + 8;
    let z = z.with_prec(wp);
    let w = z.div_prec(&z.add_int(2), wp);
    let Some(ew) = w.exponent() else {
        return Real::zero(q);
    };
    let w2 = w.mul_prec(&w, wp);
    let mut power = w.clone();
    let mut sum = w.clone();
    let stop = ew - wp as i64 - 4;
    let mut k = 3;
    loop {
        power = power.mul_prec(&w2, wp);
        let term = power.div_int(k);
        if term.exponent().map_or(true, |e| e < stop) {
            break;
        }
        sum = sum.add_prec(&term, wp);
        k += 2;
    }
    sum.mul_pow2(1).with_prec(q)
}

/// `ln m` for `m` in `[1/sqrt2, sqrt2)`.
fn ln_near_one(m: &Real, q: usize) -> Result<Real> {
    let z = m.sub_prec(&Real::one(64), m.prec().max(q));
    if z.is_zero() {
        return Ok(Real::zero(q));
    }
    if z.exponent().unwrap_or(0) <= -8 {
        return Ok(ln1p_series(&z, q));
    }
    // one correction step from a double-precision estimate:
    // ln m = y0 + ln(m·e^-y0), the second argument being 1 + O(2^-50)
    let y0 = Real::from_f64(m.to_f64().ln(), 64);
    let wp = q + 8;
    let corr = m.mul_prec(&(-&y0).exp(wp)?, wp).add_int(-1);
    let tail = ln1p_series(&corr, wp);
    Ok(y0.add_prec(&tail, q))
}

/// `(sin r, cos r)` for `|r| <= π/4`, via half-angle reduction and the
/// doubling rules `sin 2y = 2 s (1 - v)`, `1 - cos 2y = 2 s^2`.
fn sin_cos_small(r: &Real, q: usize) -> (Real, Real) {
    let Some(er) = r.exponent() else {
        return (Real::zero(q), Real::one(q));
    };
    let target = ((q as f64 / 2.0).sqrt().ceil() as i64).max(4);
    let halvings = (target + er).max(0);
    let wp = q + 8 + 2 * halvings as usize;
    let y = r.with_prec(wp).mul_pow2(-halvings);
    let y2 = y.mul_prec(&y, wp);
    let ey = y.exponent().unwrap_or(0);
    // sin y
    let mut s = y.clone();
    let mut term = y.clone();
    let mut k = 1i64;
    let stop = ey - wp as i64 - 4;
    loop {
        term = -term.mul_prec(&y2, wp).div_int((k + 1) * (k + 2));
        k += 2;
        if term.exponent().map_or(true, |e| e < stop) {
            break;
        }
        s = s.add_prec(&term, wp);
    }
    // v = 1 - cos y
    let mut v = y2.mul_pow2(-1);
    let mut term = v.clone();
    let mut k = 2i64;
    let stop_v = v.exponent().unwrap_or(0) - wp as i64 - 4;
    loop {
        term = -term.mul_prec(&y2, wp).div_int((k + 1) * (k + 2));
        k += 2;
        if term.exponent().map_or(true, |e| e < stop_v) {
            break;
        }
        v = v.add_prec(&term, wp);
    }
    for _ in 0..halvings {
        let s_new = s.mul_prec(&Real::one(64).sub_prec(&v, wp), wp).mul_pow2(1);
        v = s.mul_prec(&s, wp).mul_pow2(1);
        s = s_new;
    }
    let c = Real::one(64).sub_prec(&v, wp);
    (s.with_prec(q), c.with_prec(q))
}

/// `e^x` rounded to `ctx.bits()`.
pub fn exp(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    x.exp(ctx.bits())
}

/// Natural logarithm rounded to `ctx.bits()`; `x > 0`.
pub fn ln(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    x.ln(ctx.bits())
}

/// Sine rounded to `ctx.bits()`.
pub fn sin(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    x.sin(ctx.bits())
}

/// Cosine rounded to `ctx.bits()`.
pub fn cos(x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    x.cos(ctx.bits())
}

/// `x^y` rounded to `ctx.bits()`.
pub fn pow(x: &Real, y: &Real, ctx: &PrecisionContext) -> Result<Real> {
    x.pow(y, ctx.bits())
}

/// `x^(1/n)` rounded to `ctx.bits()`; `x >= 0`.
pub fn nth_root(x: &Real, n: u32, ctx: &PrecisionContext) -> Result<Real> {
    x.nth_root(n, ctx.bits())
}

/// π rounded to `ctx.bits()`.
pub fn pi(ctx: &PrecisionContext) -> Real {
    consts::pi(ctx.bits())
}
