//! Finite-difference checks of the derivative formulas and of the two
//! second-order equations satisfied by the complete integrals:
//!
//! ```text
//! y ∈ {K(k), K(k')}:      k(1-k^p) y'' + (1-(p+1)k^p) y' - (p-1)k^(p-1) y = 0
//! y ∈ {E(k), E(k')-K(k')}: k(1-k^p) y'' + (1-k^p) y'       + k^(p-1) y     = 0
//! ```
//!
//! `y'` comes from the closed-form derivatives and `y''` from a central
//! difference of `y'` with step `h = 2^(-⌊bits/3⌋)`, so every check here is
//! good to `O(h²)` only.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain_err, Result};
use crate::mpnum::{PrecisionContext, Real};
use crate::ptrig::PExponent;

use super::{de_from, dk_from, e_p_work, k_p_work, IdentityId, IdentityReport, Modulus};

/// Error constant `C` in the `C·h²` tolerance, calibrated on `p = 2` over
/// `k ∈ {0.1, 0.3, ..., 0.9}`: the largest observed `|residual|/h²` there is
/// about `1.0e3` (the `K(k')` equation at `k = 0.1`, where the truncation
/// term grows like `1/k³`), rounded up with a factor of four.
pub const ODE_CONSTANT: i64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OdeFunction {
    K,
    Kprime,
    E,
    EprimeMinusKprime,
}

impl OdeFunction {
    pub fn id(self) -> IdentityId {
        match self {
            OdeFunction::K => IdentityId::OdeK,
            OdeFunction::Kprime => IdentityId::OdeKprime,
            OdeFunction::E => IdentityId::OdeE,
            OdeFunction::EprimeMinusKprime => IdentityId::OdeEprimeMinusKprime,
        }
    }
}

/// Finite-difference step `2^(-⌊bits/3⌋)`.
pub fn fd_step(ctx: &PrecisionContext) -> Real {
    Real::pow2(-((ctx.bits() / 3) as i64), 64)
}

/// `C·h²`.
pub fn ode_tolerance(ctx: &PrecisionContext) -> Real {
    fd_step(ctx).square().mul_int(ODE_CONSTANT)
}

/// `(K, E, K', E')` at modulus `k`.
fn values(p: &PExponent, k: &Real, ctx: &PrecisionContext) -> Result<(Modulus, [Real; 4])> {
    let m = Modulus::new(p.clone(), k, ctx)?;
    let mc = m.complement();
    let v = [k_p_work(&m, ctx)?, e_p_work(&m, ctx)?, k_p_work(&mc, ctx)?, e_p_work(&mc, ctx)?];
    Ok((m, v))
}

const ORDER: [OdeFunction; 4] = [OdeFunction::K, OdeFunction::Kprime, OdeFunction::E, OdeFunction::EprimeMinusKprime];

impl OdeFunction {
    fn index(self) -> usize {
        match self {
            OdeFunction::K => 0,
            OdeFunction::Kprime => 1,
            OdeFunction::E => 2,
            OdeFunction::EprimeMinusKprime => 3,
        }
    }
}

/// `(y, y')` at modulus `k` for every function, in [`ORDER`].
fn slopes(p: &PExponent, k: &Real, ctx: &PrecisionContext) -> Result<[(Real, Real); 4]> {
    let wp = ctx.work_bits();
    let (m, [kk, ee, kc, ec]) = values(p, k, ctx)?;
    let k_kcp = m.k().mul_prec(m.k_comp_pow(), wp);
    // d/dk K(k') = -(E' - k^p K') / (k k'^p)
    let dkc = -ec.sub_prec(&m.k_pow().mul_prec(&kc, wp), wp).div_prec(&k_kcp, wp);
    Ok([
        (kk.clone(), dk_from(&m, &kk, &ee, wp)),
        (kc.clone(), dkc),
        (ee.clone(), de_from(&m, &kk, &ee, wp)),
        (ec.sub_prec(&kc, wp), ec.div_prec(m.k(), wp)),
    ])
}

fn check_fd_domain(k: &Real, ctx: &PrecisionContext) -> Result<()> {
    let margin = Real::pow2(-((ctx.bits() / 4) as i64), 64);
    let upper = Real::one(64).sub_prec(&margin, 64);
    if k.is_finite() && k >= &margin && k <= &upper {
        Ok(())
    } else {
        Err(domain_err!("modulus must lie in [2^(-bits/4), 1 - 2^(-bits/4)], got {k}"))
    }
}

/// Samples at `k - h`, `k`, `k + h`.
struct Stencil {
    k: Real,
    h: Real,
    lo: [(Real, Real); 4],
    mid: [(Real, Real); 4],
    hi: [(Real, Real); 4],
}

impl Stencil {
    fn new(p: &PExponent, k: &Real, ctx: &PrecisionContext) -> Result<Self> {
        check_fd_domain(k, ctx)?;
        let wp = ctx.work_bits();
        let k = k.with_prec(wp.max(k.prec()));
        let h = fd_step(ctx);
        Ok(Stencil {
            lo: slopes(p, &k.sub_prec(&h, wp), ctx)?,
            mid: slopes(p, &k, ctx)?,
            hi: slopes(p, &k.add_prec(&h, wp), ctx)?,
            k,
            h,
        })
    }

    fn residual(&self, which: OdeFunction, p: &PExponent, ctx: &PrecisionContext) -> Result<IdentityReport> {
        let wp = ctx.work_bits();
        let i = which.index();
        let (y, dy) = &self.mid[i];
        let d2y = self.hi[i].1.sub_prec(&self.lo[i].1, wp).div_prec(&self.h.mul_pow2(1), wp);
        let k = &self.k;
        let kp = p.pow(k, wp)?;
        let kcp = Real::one(64).sub_prec(&kp, wp);
        let kpm1 = kp.div_prec(k, wp);
        let lead = k.mul_prec(&kcp, wp).mul_prec(&d2y, wp);
        let residual = match which {
            OdeFunction::K | OdeFunction::Kprime => {
                let c1 = Real::one(64).sub_prec(&p.value().add_int(1).mul_prec(&kp, wp), wp);
                let c0 = p.value().add_int(-1).mul_prec(&kpm1, wp);
                lead.add_prec(&c1.mul_prec(dy, wp), wp).sub_prec(&c0.mul_prec(y, wp), wp)
            }
            OdeFunction::E | OdeFunction::EprimeMinusKprime => lead
                .add_prec(&kcp.mul_prec(dy, wp), wp)
                .add_prec(&kpm1.mul_prec(y, wp), wp),
        };
        Ok(IdentityReport::new(
            which.id(),
            vec![("p", p.value().clone()), ("k", ctx.finish(k)), ("h", self.h.clone())],
            ctx.finish(&residual),
            Real::zero(ctx.bits()),
            ode_tolerance(ctx),
        ))
    }

    fn derivative(&self, second_kind: bool, p: &PExponent, ctx: &PrecisionContext) -> IdentityReport {
        let wp = ctx.work_bits();
        let i = if second_kind { OdeFunction::E } else { OdeFunction::K }.index();
        let fd = self.hi[i].0.sub_prec(&self.lo[i].0, wp).div_prec(&self.h.mul_pow2(1), wp);
        let id = if second_kind { IdentityId::DerivativeE } else { IdentityId::DerivativeK };
        IdentityReport::new(
            id,
            vec![("p", p.value().clone()), ("k", ctx.finish(&self.k)), ("h", self.h.clone())],
            ctx.finish(&self.mid[i].1),
            ctx.finish(&fd),
            ode_tolerance(ctx),
        )
    }
}

/// Residual of the second-order equation for `which` at modulus `k`,
/// checked against `C·h²`.
pub fn ode_residual(which: OdeFunction, p: &PExponent, k: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    Stencil::new(p, k, ctx)?.residual(which, p, ctx)
}

/// Compares the closed-form `dK/dk` (or `dE/dk`) with a central difference
/// of `K` (or `E`), tolerance `C·h²`.
pub fn derivative_check(second_kind: bool, p: &PExponent, k: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    Ok(Stencil::new(p, k, ctx)?.derivative(second_kind, p, ctx))
}

/// All four residuals followed by the `dK/dk` and `dE/dk` checks at one
/// modulus; the twelve quadratures are shared.
pub fn ode_suite(p: &PExponent, k: &Real, ctx: &PrecisionContext) -> Result<Vec<IdentityReport>> {
    let st = Stencil::new(p, k, ctx)?;
    let mut out = Vec::with_capacity(6);
    for which in ORDER {
        out.push(st.residual(which, p, ctx)?);
    }
    out.push(st.derivative(false, p, ctx));
    out.push(st.derivative(true, p, ctx));
    Ok(out)
}
