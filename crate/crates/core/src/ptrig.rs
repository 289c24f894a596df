//! Generalized trigonometric functions on the first quarter period.
//!
//! `arcsin_p x = ∫_0^x (1 - t^p)^(-1/p) dt`, `sin_p` is its inverse on
//! `[0, π_p/2]` and `cos_p = (1 - sin_p^p)^(1/p)`. For `p = 2` these are the
//! ordinary functions.

use alloc::string::ToString;

use crate::error::{domain_err, Error, Result};
use crate::mpnum::{consts, integrate_abscissa, PrecisionContext, Real};
use crate::pelliptic::hypergeom::hyp2f1_work;

/// Integer exponents up to this size use root/power kernels instead of `exp`/`ln`.
const MAX_INT_EXPONENT: i64 = 64;

/// An exponent `p > 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PExponent {
    p: Real,
    int: Option<u32>,
}

impl PExponent {
    pub fn new(p: Real) -> Result<Self> {
        if !p.is_finite() || p <= Real::one(64) {
            return Err(domain_err!("exponent must satisfy p > 1, got {p}"));
        }
        let int = p
            .to_i64()
            .filter(|n| *n <= MAX_INT_EXPONENT)
            .map(|n| n as u32);
        Ok(PExponent { p, int })
    }

    pub fn int(n: u32) -> Result<Self> {
        Self::new(Real::from_u64(u64::from(n), 64))
    }

    pub fn value(&self) -> &Real {
        &self.p
    }

    /// `Some(n)` when `p` is a small integer.
    pub fn as_int(&self) -> Option<u32> {
        self.int
    }

    /// `x^p` for `x >= 0`.
    pub(crate) fn pow(&self, x: &Real, wp: usize) -> Result<Real> {
        match self.int {
            Some(n) => Ok(x.with_prec(wp.max(x.prec())).powi(u64::from(n)).with_prec(wp)),
            None if x.is_zero() => Ok(Real::zero(wp)),
            None => x.pow(&self.p, wp),
        }
    }

    /// `x^(1/p)` for `x >= 0`.
    pub(crate) fn root(&self, x: &Real, wp: usize) -> Result<Real> {
        match self.int {
            Some(n) => x.nth_root(n, wp),
            None if x.is_zero() => Ok(Real::zero(wp)),
            None => {
                let l = x.ln(wp + 8)?;
                l.div_prec(&self.p, wp + 8).exp(wp)
            }
        }
    }

    /// `(t^p, 1 - t^p)` for `t` in `[0, 1]` given both `t` and `d = 1 - t`.
    /// Neither component loses relative accuracy near the ends.
    pub(crate) fn power_and_complement(&self, t: &Real, d: &Real, wp: usize) -> Result<(Real, Real)> {
        match self.int {
            Some(n) => {
                let tp = t.with_prec(wp.max(t.prec())).powi(u64::from(n)).with_prec(wp);
                // 1 - t^n = d·(1 + t + ... + t^(n-1))
                let mut geo = Real::one(wp);
                for _ in 1..n {
                    geo = geo.mul_prec(t, wp).add_int(1);
                }
                Ok((tp, d.mul_prec(&geo, wp)))
            }
            None => {
                if t.is_zero() {
                    return Ok((Real::zero(wp), Real::one(wp)));
                }
                let q = wp + 16;
                if t < &Real::ratio(1, 2, 64) {
                    let tp = self.p.mul_prec(&t.ln(q)?, q).exp(q)?;
                    let b = Real::one(64).sub_prec(&tp, wp);
                    Ok((tp.with_prec(wp), b))
                } else {
                    let lt = (-d.with_prec(q)).ln_1p(q)?;
                    let b = -self.p.mul_prec(&lt, q).exp_m1(q)?;
                    let tp = Real::one(64).sub_prec(&b, wp);
                    Ok((tp, b.with_prec(wp)))
                }
            }
        }
    }
}

/// `π_p = 2π / (p·sin(π/p))` at precision `wp`.
pub(crate) fn pi_p_at(p: &PExponent, wp: usize) -> Result<Real> {
    let q = wp + 16;
    let pi = consts::pi(q);
    if p.as_int() == Some(2) {
        return Ok(pi.with_prec(wp));
    }
    let s = pi.div_prec(&p.p, q).sin(q)?;
    Ok(pi.mul_pow2(1).div_prec(&p.p.mul_prec(&s, q), wp))
}

/// The generalized half period `π_p = 2·arcsin_p(1)`.
pub fn pi_p(p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    Ok(ctx.finish(&pi_p_at(p, ctx.work_bits())?))
}

fn check_unit(x: &Real) -> Result<()> {
    if x.is_finite() && !x.is_negative() && x <= &Real::one(64) {
        Ok(())
    } else {
        Err(domain_err!("argument must lie in [0, 1], got {x}"))
    }
}

/// `arcsin_p x` at working precision, by quadrature of the defining integral.
pub(crate) fn arcsin_p_work(x: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    if x.is_zero() {
        return Ok(Real::zero(ctx.work_bits()));
    }
    let wp = ctx.work_bits();
    let gap = Real::one(64).sub_prec(x, wp);
    let r = integrate_abscissa(
        |a| {
            let d = gap.add_prec(&a.to_hi, wp);
            let (_, b) = p.power_and_complement(&a.from_lo, &d, wp)?;
            Ok(p.root(&b, wp)?.recip())
        },
        &Real::zero(wp),
        &x.with_prec(wp.max(x.prec())),
        ctx,
    )?;
    Ok(r.value)
}

/// `arcsin_p x` for `x` in `[0, 1]`.
pub fn arcsin_p(x: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    check_unit(x)?;
    Ok(ctx.finish(&arcsin_p_work(x, p, ctx)?))
}

/// `arcsin_p x = x·F(1/p, 1/p; 1 + 1/p; x^p)`, restricted to `x^p <= 1/2`
/// where the series converges quickly. Used as an independent check of
/// [`arcsin_p`].
pub fn arcsin_p_series(x: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    check_unit(x)?;
    let wp = ctx.work_bits();
    let xp = p.pow(x, wp)?;
    if xp > Real::ratio(1, 2, 64) {
        return Err(domain_err!("series form needs x^p <= 1/2"));
    }
    let inv = Real::one(wp).div_prec(&p.p, wp);
    let f = hyp2f1_work(&inv, &inv, &inv.add_int(1), &xp, ctx)?;
    Ok(ctx.finish(&f.mul_prec(x, wp)))
}

/// `sin_p θ` for `θ` in `[0, π_p/2]`.
///
/// Newton's method on `g(s) = arcsin_p(s) - θ`, kept inside a bisection
/// bracket since `g'` blows up at `s = 1`. Precision is doubled from 64 bits
/// up to the context's, so only the last two quadratures run at full cost.
pub fn sin_p(theta: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.work_bits();
    let half = pi_p_at(p, wp)?.mul_pow2(-1);
    if !theta.is_finite() || theta.is_negative() {
        return Err(domain_err!("sin_p needs 0 <= θ <= π_p/2, got {theta}"));
    }
    if theta.is_zero() {
        return Ok(Real::zero(ctx.bits()));
    }
    if theta >= &half {
        // a rounded-up π_p/2 is still the endpoint
        let slack = half.mul_prec(&ctx.ulp_scaled(2), wp);
        if theta.sub_prec(&half, wp) > slack {
            return Err(domain_err!("sin_p needs 0 <= θ <= π_p/2, got {theta}"));
        }
        return Ok(Real::one(ctx.bits()));
    }

    let ratio = theta.to_f64() / half.to_f64();
    let mut s = Real::from_f64((ratio * core::f64::consts::FRAC_PI_2).sin().clamp(0.0, 1.0), 64);
    let mut lo = Real::zero(64);
    let mut hi = Real::one(64);

    let mut ladder = alloc::vec![ctx.bits()];
    while let Some(&b) = ladder.last() {
        if b / 2 < 64 {
            break;
        }
        ladder.push(b / 2);
    }
    ladder.reverse();

    let pi_p = half.mul_pow2(1);
    for (stage, &bits) in ladder.iter().enumerate() {
        let last = stage + 1 == ladder.len();
        let c = ctx.with_bits(bits)?;
        let swp = c.work_bits();
        let tol = pi_p.mul_prec(&c.ulp_scaled(8), swp);
        let mut converged = false;
        for _ in 0..ctx.max_iters() {
            let s_w = s.with_prec(swp);
            let g = arcsin_p_work(&s_w, p, &c)?.sub_prec(&theta.with_prec(swp.max(theta.prec())), swp);
            if g.abs() < tol {
                converged = true;
                break;
            }
            if g.is_negative() {
                lo = s_w.clone();
            } else {
                hi = s_w.clone();
            }
            let d = Real::one(64).sub_prec(&s_w, swp);
            let (_, b) = p.power_and_complement(&s_w, &d, swp)?;
            let newton = s_w.sub_prec(&g.mul_prec(&p.root(&b, swp)?, swp), swp);
            s = if newton > lo && newton < hi {
                newton
            } else {
                lo.add_prec(&hi, swp).mul_pow2(-1)
            };
            if !last && (&hi - &lo).abs() < tol {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence(
                "sin_p Newton iteration hit the iteration cap".to_string(),
            ));
        }
    }
    Ok(ctx.finish(&s))
}

/// `cos_p θ = (1 - sin_p^p θ)^(1/p)` for `θ` in `[0, π_p/2]`.
pub fn cos_p(theta: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.work_bits();
    let s = sin_p(theta, p, ctx)?.with_prec(wp);
    let d = Real::one(64).sub_prec(&s, wp);
    let (_, b) = p.power_and_complement(&s, &d, wp)?;
    Ok(ctx.finish(&p.root(&b, wp)?))
}
