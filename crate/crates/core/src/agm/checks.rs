//! Identities tying the mean iterations to the integrals `I_p`, `J_p`, `K_p`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{domain_err, Result};
use crate::mpnum::{sum_ordered, PrecisionContext, Real};
use crate::pelliptic::{i_p_work, j_p_work, k_p_work, IdentityId, IdentityReport, Modulus};
use crate::ptrig::{pi_p_at, PExponent};

use super::{run, run_until, step, AgmTrace, MeanKind};

fn exponent(kind: MeanKind) -> Result<PExponent> {
    PExponent::int(kind.p())
}

/// `M(ca, cb) = c·M(a, b)`, tolerance `2^(8-bits)·c·M(a, b)`.
pub fn homogeneity_check(kind: MeanKind, a: &Real, b: &Real, c: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if !(c.is_finite() && c.is_positive()) {
        return Err(domain_err!("scale must be positive, got {c}"));
    }
    let wp = ctx.work_bits();
    let base = run(kind, a, b, ctx)?;
    let scaled = run(kind, &a.mul_prec(c, wp), &b.mul_prec(c, wp), ctx)?;
    let rhs = base.limit().mul_prec(c, wp);
    let tol = ctx.ulp_scaled(8).mul_prec(&rhs, 64);
    Ok(IdentityReport::new(
        IdentityId::Homogeneity,
        vec![("a", a.clone()), ("b", b.clone()), ("c", c.clone())],
        ctx.finish(scaled.limit()),
        ctx.finish(&rhs),
        tol,
    ))
}

/// `w_n·I_p(a_n, b_n)` with weight `1`, `a_n` or `a_n²` for `P2`, `P3`, `P4`.
fn conserved(kind: MeanKind, a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<Real> {
    let wp = ctx.work_bits();
    let i = i_p_work(a, b, &exponent(kind)?, ctx)?;
    Ok(match kind {
        MeanKind::P2 => i,
        MeanKind::P3 => a.mul_prec(&i, wp),
        MeanKind::P4 => a.square().mul_prec(&i, wp),
    })
}

/// The weighted integral `w_n·I_p(a_n, b_n)` is the same at `n = 0` and
/// `n = n_steps`; tolerance `8·quad_tol`.
pub fn invariance_check(kind: MeanKind, a: &Real, b: &Real, n_steps: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if n_steps == 0 {
        return Err(domain_err!("need at least one step"));
    }
    let wp = ctx.work_bits();
    let (mut an, mut bn) = (a.with_prec(wp), b.with_prec(wp));
    for _ in 0..n_steps {
        (an, bn) = step(kind, &an, &bn, wp)?;
    }
    let lhs = conserved(kind, &an, &bn, ctx)?;
    let rhs = conserved(kind, a, b, ctx)?;
    Ok(IdentityReport::new(
        IdentityId::Invariance,
        vec![("a", a.clone()), ("b", b.clone()), ("n", Real::from_u64(u64::from(n_steps), 64))],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        ctx.quad_tol().mul_int(8),
    ))
}

/// `a_(n+1)² - b_(n+1)² <= (a_n² - b_n²)/4` along a `P4` trace.
///
/// `lhs` is the largest excess of the left side over the right side,
/// clamped at zero, so the report passes iff every step satisfies the
/// bound within `2^(8-bits)`. A single-row trace passes trivially.
pub fn contraction_check(trace: &AgmTrace) -> Result<IdentityReport> {
    if trace.kind() != MeanKind::P4 {
        return Err(domain_err!("contraction bound applies to P4 traces"));
    }
    let rows = trace.rows();
    let prec = rows[0].a.prec();
    let mut worst = Real::zero(prec);
    for w in rows.windows(2) {
        let gap = |r: &super::AgmRow| r.a.square().sub_prec(&r.b.square(), prec);
        let excess = gap(&w[1]).sub_prec(&gap(&w[0]).mul_pow2(-2), prec);
        if &excess > &worst {
            worst = excess;
        }
    }
    let bits = prec.saturating_sub(crate::mpnum::GUARD_BITS).max(64);
    let scale = rows[0].a.square();
    let tol = Real::pow2(8 - bits as i64, 64).mul_prec(&scale, 64);
    Ok(IdentityReport::new(
        IdentityId::Contraction,
        vec![("a", rows[0].a.with_prec(bits)), ("b", rows[0].b.with_prec(bits))],
        worst.with_prec(bits),
        Real::zero(bits),
        tol,
    ))
}

/// `2J(a_(n+1), b_(n+1)) - J(a_n, b_n) = a_n² b_n² I(a_n, b_n)` at `p = 4`,
/// tolerance `8·quad_tol`.
pub fn lemma_ij_check(a: &Real, b: &Real, n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let wp = ctx.work_bits();
    let p4 = PExponent::int(4)?;
    let (mut an, mut bn) = (a.with_prec(wp), b.with_prec(wp));
    for _ in 0..n {
        (an, bn) = step(MeanKind::P4, &an, &bn, wp)?;
    }
    let (a1, b1) = step(MeanKind::P4, &an, &bn, wp)?;
    let j1 = j_p_work(&a1, &b1, &p4, ctx)?;
    let j0 = j_p_work(&an, &bn, &p4, ctx)?;
    let i0 = i_p_work(&an, &bn, &p4, ctx)?;
    let lhs = j1.mul_pow2(1).sub_prec(&j0, wp);
    let rhs = an.mul_prec(&bn, wp).square().mul_prec(&i0, wp);
    Ok(IdentityReport::new(
        IdentityId::LemmaIJ,
        vec![("a", a.clone()), ("b", b.clone()), ("n", Real::from_u64(u64::from(n), 64))],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        ctx.quad_tol().mul_int(8),
    ))
}

/// `J(a, b) = (a⁴ - a²·Σ_(n>=1) 2^n c_n²)·I(a, b)` at `p = 4`, tolerance
/// `16·quad_tol`. The series stops at the first term below `2^(4-bits)·a⁴`.
pub fn prop_ek_check(a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let wp = ctx.work_bits();
    let p4 = PExponent::int(4)?;
    let a4 = a.with_prec(wp).powi(4);
    let threshold = a4.mul_prec(&ctx.ulp_scaled(4), wp);
    let term = |n: u32, c: &Real| c.square().mul_pow2(i64::from(n));
    let trace = run_until(MeanKind::P4, a, b, ctx, |row| row.n >= 1 && term(row.n, &row.c) < threshold)?;
    let terms: Vec<Real> = trace.rows()[1..].iter().map(|r| term(r.n, &r.c)).collect();
    let s = sum_ordered(&terms, wp);
    let factor = a4.sub_prec(&a.square().mul_prec(&s, wp), wp);
    let lhs = j_p_work(a, b, &p4, ctx)?;
    let rhs = factor.mul_prec(&i_p_work(a, b, &p4, ctx)?, wp);
    Ok(IdentityReport::new(
        IdentityId::PropEK,
        vec![("a", a.clone()), ("b", b.clone())],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        ctx.quad_tol().mul_int(16),
    ))
}

/// Quadrature `K_p(k)` against `(π_p/2) / M_p(1, k')`, tolerance `8·quad_tol`.
pub fn gauss_check(kind: MeanKind, k: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let wp = ctx.work_bits();
    let p = exponent(kind)?;
    let m = Modulus::new(p.clone(), k, ctx)?;
    let lhs = k_p_work(&m, ctx)?;
    let trace = run(kind, &Real::one(wp), m.k_comp(), ctx)?;
    let rhs = pi_p_at(&p, wp)?.mul_pow2(-1).div_prec(trace.limit(), wp);
    let id = match kind {
        MeanKind::P2 => IdentityId::GaussP2,
        MeanKind::P3 => IdentityId::GaussP3,
        MeanKind::P4 => IdentityId::GaussP4,
    };
    Ok(IdentityReport::new(
        id,
        vec![("k", k.clone())],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        ctx.quad_tol().mul_int(8),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128).unwrap()
    }

    fn quartic_root_half() -> Real {
        Real::ratio(1, 2, 256).nth_root(4, 256).unwrap()
    }

    fn pairs() -> [(Real, Real); 3] {
        [
            (Real::one(64), quartic_root_half()),
            (Real::one(64), Real::ratio(1, 2, 64)),
            (Real::from_f64(1.5, 64), Real::ratio(1, 2, 64)),
        ]
    }

    #[test]
    fn homogeneity() {
        let c = ctx();
        let one = Real::one(64);
        let r = homogeneity_check(MeanKind::P4, &one, &Real::ratio(1, 2, 64), &one, &c).unwrap();
        assert!(r.abs_defect.is_zero());
        let r = homogeneity_check(MeanKind::P4, &one, &Real::ratio(1, 2, 64), &Real::from_i64(2, 64), &c).unwrap();
        assert!(r.pass);
        let r = homogeneity_check(MeanKind::P3, &one, &Real::from_f64(0.9, 64), &Real::from_i64(3, 64), &c).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn invariance() {
        let c = ctx();
        let one = Real::one(64);
        assert!(invariance_check(MeanKind::P2, &one, &one, 2, &c).unwrap().pass);
        assert!(invariance_check(MeanKind::P4, &one, &quartic_root_half(), 3, &c).unwrap().pass);
        assert!(invariance_check(MeanKind::P3, &one, &Real::from_f64(0.6, 64), 2, &c).unwrap().pass);
        assert!(invariance_check(MeanKind::P2, &one, &Real::from_f64(0.3, 64), 4, &c).unwrap().pass);
        assert!(invariance_check(MeanKind::P2, &one, &one, 0, &c).is_err());
    }

    #[test]
    fn invariance_across_composed_steps() {
        let c = ctx();
        let (a, b) = (Real::one(64), Real::ratio(1, 2, 64));
        let r1 = invariance_check(MeanKind::P4, &a, &b, 2, &c).unwrap();
        let r2 = invariance_check(MeanKind::P4, &a, &b, 4, &c).unwrap();
        assert!((&r1.lhs - &r2.lhs).abs() <= c.quad_tol().mul_int(8));
    }

    #[test]
    fn contraction() {
        let c = ctx();
        for (a, b) in pairs().into_iter().chain([(Real::from_i64(2, 64), Real::one(64)), (Real::one(64), Real::one(64))]) {
            let t = run(MeanKind::P4, &a, &b, &c).unwrap();
            assert!(contraction_check(&t).unwrap().pass);
        }
        let t = run(MeanKind::P2, &Real::one(64), &Real::ratio(1, 2, 64), &c).unwrap();
        assert!(contraction_check(&t).is_err());
    }

    #[test]
    fn iteration_identities() {
        let c = ctx();
        let one = Real::one(64);
        assert!(lemma_ij_check(&one, &one, 0, &c).unwrap().pass);
        assert!(prop_ek_check(&one, &one, &c).unwrap().pass);
        for (a, b) in pairs() {
            for n in [0, 1] {
                let r = lemma_ij_check(&a, &b, n, &c).unwrap();
                assert!(r.pass, "lemma ({a}, {b}) n = {n}: {r:?}");
            }
            let r = prop_ek_check(&a, &b, &c).unwrap();
            assert!(r.pass, "prop ({a}, {b}): {r:?}");
        }
    }

    #[test]
    fn gauss_formulas() {
        let c = ctx();
        for kind in [MeanKind::P2, MeanKind::P3, MeanKind::P4] {
            for k in [0.1, 0.5, 0.9] {
                let r = gauss_check(kind, &Real::from_f64(k, 64), &c).unwrap();
                assert!(r.pass, "{kind} k = {k}: {r:?}");
            }
        }
    }
}
