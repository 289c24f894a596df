use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{domain_err, Error, Result};
use crate::mpnum::{sum_ordered, PrecisionContext, Real};

/// Terms summed before giving up.
pub const MAX_TERMS: usize = 1_000_000;

/// Gauss hypergeometric series `Σ (a)_n (b)_n / ((c)_n n!) x^n` for
/// `0 <= x < 1`.
///
/// Summation stops once a term drops below `2^(-bits-8)·(1 - x)`, which
/// also bounds the geometric tail.
pub fn hyp2f1(a: &Real, b: &Real, c: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    Ok(ctx.finish(&hyp2f1_work(a, b, c, x, ctx)?))
}

pub(crate) fn hyp2f1_work(a: &Real, b: &Real, c: &Real, x: &Real, ctx: &PrecisionContext) -> Result<Real> {
    if c.is_integer() && !c.is_positive() {
        return Err(domain_err!("c must not be a non-positive integer"));
    }
    if !x.is_finite() || x.is_negative() || x >= &Real::one(64) {
        return Err(domain_err!("series argument must lie in [0, 1), got {x}"));
    }
    let wp = ctx.work_bits();
    if x.is_zero() {
        return Ok(Real::one(wp));
    }
    let one_minus = Real::one(64).sub_prec(x, wp);
    let cutoff = ctx.series_cutoff().mul_prec(&one_minus, 64);
    // past this index every term ratio is below 1 in magnitude
    let settled = (a.abs() + b.abs() + c.abs()).to_f64().ceil() as usize + 1;
    let mut terms: Vec<Real> = Vec::new();
    let mut term = Real::one(wp);
    for n in 0..MAX_TERMS {
        let small = term.abs() < cutoff;
        terms.push(term.clone());
        if term.is_zero() || (small && n >= settled) {
            return Ok(sum_ordered(&terms, wp));
        }
        let nn = n as i64;
        let num = a.add_int(nn).mul_prec(&b.add_int(nn), wp);
        let den = c.add_int(nn).mul_int(nn + 1);
        term = term.mul_prec(&num, wp).div_prec(&den, wp).mul_prec(x, wp);
    }
    Err(Error::NonConvergence(
        "hypergeometric series did not reach its cutoff within the term cap".to_string(),
    ))
}
