//! Complete p-elliptic integrals and the identities they satisfy.
//!
//! Every θ-integral is evaluated after the substitution `t = sin_p θ`, which
//! turns `dθ` into `(1 - t^p)^(-1/p) dt`:
//!
//! ```text
//! I_p(a, b) = ∫_0^1 A^(1/p - 1) (1 - t^p)^(-1/p) dt
//! J_p(a, b) = ∫_0^1 A^(1/p)     (1 - t^p)^(-1/p) dt
//! A         = a^p (1 - t^p) + b^p t^p
//! ```
//!
//! with `K_p(k) = I_p(1, k')` and `E_p(k) = J_p(1, k')`. The factor
//! `1 - t^p` is always formed from the exact distance `1 - t` handed over by
//! the quadrature, so the endpoint singularity costs no precision.

pub mod hypergeom;
mod landen;
mod ode;

use alloc::vec;

use crate::error::{domain_err, Result};
use crate::mpnum::{integrate_abscissa, PrecisionContext, Real};
use crate::ptrig::{pi_p_at, PExponent};

pub use crate::report::{IdentityId, IdentityReport};
pub use hypergeom::hyp2f1;
pub use landen::{landen_check, ramanujan_defect, Landen};
pub use ode::{derivative_check, fd_step, ode_residual, ode_suite, ode_tolerance, OdeFunction, ODE_CONSTANT};

/// A modulus `k` in `[0, 1]` for exponent `p`, with its complement
/// `k' = (1 - k^p)^(1/p)`. Both `k^p` and `k'^p` are stored so that
/// transformations with known exact complements keep them exact.
#[derive(Clone, Debug)]
pub struct Modulus {
    p: PExponent,
    k: Real,
    k_comp: Real,
    k_pow: Real,
    k_comp_pow: Real,
}

impl Modulus {
    pub fn new(p: PExponent, k: &Real, ctx: &PrecisionContext) -> Result<Self> {
        if !k.is_finite() || k.is_negative() || k > &Real::one(64) {
            return Err(domain_err!("modulus must lie in [0, 1], got {k}"));
        }
        let wp = ctx.work_bits();
        let k_pow = p.pow(k, wp)?;
        let k_comp_pow = Real::one(64).sub_prec(&k_pow, wp);
        Self::from_powers(p, k_pow, k_comp_pow, ctx)
    }

    /// Modulus given `k^p` and `k'^p` directly; they must be non-negative.
    pub(crate) fn from_powers(p: PExponent, k_pow: Real, k_comp_pow: Real, ctx: &PrecisionContext) -> Result<Self> {
        if k_pow.is_negative() || k_comp_pow.is_negative() {
            return Err(domain_err!("modulus must lie in [0, 1]"));
        }
        let wp = ctx.work_bits();
        let k = p.root(&k_pow, wp)?;
        let k_comp = p.root(&k_comp_pow, wp)?;
        Ok(Modulus { p, k, k_comp, k_pow, k_comp_pow })
    }

    /// The modulus `k'`, whose complement is `k`.
    pub fn complement(&self) -> Modulus {
        Modulus {
            p: self.p.clone(),
            k: self.k_comp.clone(),
            k_comp: self.k.clone(),
            k_pow: self.k_comp_pow.clone(),
            k_comp_pow: self.k_pow.clone(),
        }
    }

    pub fn p(&self) -> &PExponent {
        &self.p
    }

    pub fn k(&self) -> &Real {
        &self.k
    }

    pub fn k_comp(&self) -> &Real {
        &self.k_comp
    }

    /// `k^p`
    pub fn k_pow(&self) -> &Real {
        &self.k_pow
    }

    /// `k'^p = 1 - k^p`
    pub fn k_comp_pow(&self) -> &Real {
        &self.k_comp_pow
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    First,
    Second,
}

/// `I_p` or `J_p` with `a^p = alpha`, `b^p = beta`, at working precision.
fn weighted(kind: Kind, alpha: &Real, beta: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.work_bits();
    let inv_p = Real::one(wp).div_prec(p.value(), wp);
    let int = p.as_int();
    let r = integrate_abscissa(
        |x| {
            let (tp, b) = p.power_and_complement(&x.from_lo, &x.to_hi, wp)?;
            let a = alpha.mul_prec(&b, wp).add_prec(&beta.mul_prec(&tp, wp), wp);
            match (kind, int) {
                (Kind::First, Some(n)) => {
                    let inner = a.powi(u64::from(n - 1)).mul_prec(&b, wp);
                    Ok(inner.nth_root(n, wp)?.recip())
                }
                (Kind::Second, Some(n)) => a.div_prec(&b, wp).nth_root(n, wp),
                (Kind::First, None) => {
                    let la = a.ln(wp)?;
                    let lb = b.ln(wp)?;
                    la.sub_prec(&la.mul_prec(&inv_p, wp), wp)
                        .add_prec(&lb.mul_prec(&inv_p, wp), wp)
                        .exp(wp)
                        .map(|v| v.recip())
                }
                (Kind::Second, None) => {
                    let l = a.div_prec(&b, wp).ln(wp)?;
                    l.mul_prec(&inv_p, wp).exp(wp)
                }
            }
        },
        &Real::zero(wp),
        &Real::one(wp),
        ctx,
    )?;
    Ok(r.value)
}

fn check_positive(name: &str, v: &Real) -> Result<()> {
    if v.is_finite() && v.is_positive() {
        Ok(())
    } else {
        Err(domain_err!("{name} must be positive, got {v}"))
    }
}

pub(crate) fn i_p_work(a: &Real, b: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    let wp = ctx.work_bits();
    weighted(Kind::First, &p.pow(a, wp)?, &p.pow(b, wp)?, p, ctx)
}

pub(crate) fn j_p_work(a: &Real, b: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    let wp = ctx.work_bits();
    weighted(Kind::Second, &p.pow(a, wp)?, &p.pow(b, wp)?, p, ctx)
}

pub(crate) fn k_p_work(m: &Modulus, ctx: &PrecisionContext) -> Result<Real> {
    if !m.k_comp_pow.is_positive() {
        return Err(domain_err!("K_p diverges at k = 1"));
    }
    weighted(Kind::First, &Real::one(64), &m.k_comp_pow, &m.p, ctx)
}

pub(crate) fn e_p_work(m: &Modulus, ctx: &PrecisionContext) -> Result<Real> {
    weighted(Kind::Second, &Real::one(64), &m.k_comp_pow, &m.p, ctx)
}

/// `I_p(a, b) = ∫_0^{π_p/2} (a^p cos_p^p θ + b^p sin_p^p θ)^(1/p - 1) dθ`
pub fn i_p(a: &Real, b: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    Ok(ctx.finish(&i_p_work(a, b, p, ctx)?))
}

/// `J_p(a, b) = ∫_0^{π_p/2} (a^p cos_p^p θ + b^p sin_p^p θ)^(1/p) dθ`
pub fn j_p(a: &Real, b: &Real, p: &PExponent, ctx: &PrecisionContext) -> Result<Real> {
    Ok(ctx.finish(&j_p_work(a, b, p, ctx)?))
}

/// Complete integral of the first kind, `K_p(k) = I_p(1, k')`; needs `k < 1`.
pub fn k_p(m: &Modulus, ctx: &PrecisionContext) -> Result<Real> {
    Ok(ctx.finish(&k_p_work(m, ctx)?))
}

/// Complete integral of the second kind, `E_p(k) = J_p(1, k')`; `k = 1` allowed.
pub fn e_p(m: &Modulus, ctx: &PrecisionContext) -> Result<Real> {
    Ok(ctx.finish(&e_p_work(m, ctx)?))
}

fn check_interior(m: &Modulus) -> Result<()> {
    if m.k.is_positive() && m.k_comp_pow.is_positive() {
        Ok(())
    } else {
        Err(domain_err!("modulus must lie in (0, 1), got {}", m.k))
    }
}

/// `dK_p/dk = (E_p - k'^p K_p) / (k k'^p)` from given `K_p`, `E_p`.
pub(crate) fn dk_from(m: &Modulus, k: &Real, e: &Real, wp: usize) -> Real {
    let num = e.sub_prec(&m.k_comp_pow.mul_prec(k, wp), wp);
    num.div_prec(&m.k.mul_prec(&m.k_comp_pow, wp), wp)
}

/// `dE_p/dk = (E_p - K_p) / k` from given `K_p`, `E_p`.
pub(crate) fn de_from(m: &Modulus, k: &Real, e: &Real, wp: usize) -> Real {
    e.sub_prec(k, wp).div_prec(&m.k, wp)
}

/// `dK_p/dk` for `0 < k < 1`.
pub fn dk_dk(m: &Modulus, ctx: &PrecisionContext) -> Result<Real> {
    check_interior(m)?;
    let k = k_p_work(m, ctx)?;
    let e = e_p_work(m, ctx)?;
    Ok(ctx.finish(&dk_from(m, &k, &e, ctx.work_bits())))
}

/// `dE_p/dk` for `0 < k < 1`.
pub fn de_dk(m: &Modulus, ctx: &PrecisionContext) -> Result<Real> {
    check_interior(m)?;
    let k = k_p_work(m, ctx)?;
    let e = e_p_work(m, ctx)?;
    Ok(ctx.finish(&de_from(m, &k, &e, ctx.work_bits())))
}

/// Defect of `K_p(k')E_p(k) + K_p(k)E_p(k') - K_p(k)K_p(k') = π_p/2`,
/// tolerance `8·quad_tol`.
pub fn legendre_defect(p: &PExponent, k: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let m = Modulus::new(p.clone(), k, ctx)?;
    check_interior(&m)?;
    let wp = ctx.work_bits();
    let mc = m.complement();
    let kk = k_p_work(&m, ctx)?;
    let ek = e_p_work(&m, ctx)?;
    let kc = k_p_work(&mc, ctx)?;
    let ec = e_p_work(&mc, ctx)?;
    let lhs = kc
        .mul_prec(&ek, wp)
        .add_prec(&kk.mul_prec(&ec, wp), wp)
        .sub_prec(&kk.mul_prec(&kc, wp), wp);
    let rhs = pi_p_at(p, wp)?.mul_pow2(-1);
    Ok(IdentityReport::new(
        IdentityId::Legendre,
        vec![("p", p.value().clone()), ("k", k.clone())],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        ctx.quad_tol().mul_int(8),
    ))
}

/// Compares the quadrature value of `K_p(k)` or `E_p(k)` with
/// `(π_p/2)·F(1/p, 1 ∓ 1/p; 1; k^p)`; needs `k^p <= 3/4`. Tolerance is
/// `8·max(quad_tol, series tolerance)`.
pub fn hypergeometric_check(second_kind: bool, m: &Modulus, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if m.k_pow > Real::ratio(3, 4, 64) {
        return Err(domain_err!("series check needs k^p <= 3/4"));
    }
    let wp = ctx.work_bits();
    let inv = Real::one(wp).div_prec(m.p.value(), wp);
    let b = if second_kind { -inv.clone() } else { Real::one(wp).sub_prec(&inv, wp) };
    let f = hypergeom::hyp2f1_work(&inv, &b, &Real::one(wp), &m.k_pow, ctx)?;
    let rhs = pi_p_at(&m.p, wp)?.mul_pow2(-1).mul_prec(&f, wp);
    let (id, lhs) = if second_kind {
        (IdentityId::HypergeometricE, e_p_work(m, ctx)?)
    } else {
        (IdentityId::HypergeometricK, k_p_work(m, ctx)?)
    };
    let tol = ctx.quad_tol().max(&ctx.series_tol()).mul_int(8);
    Ok(IdentityReport::new(
        id,
        vec![("p", m.p.value().clone()), ("k", m.k.clone())],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        tol,
    ))
}
