//! Quadratic transformations of `K_4` and `E_4`, and the hypergeometric
//! identity equivalent to the second of them.
//!
//! With `m = (8(1+k²)k² / (1+3k²)²)^(1/4)` and
//! `ℓ = ((1-k'²)/(1+3k'²))^(1/2)`:
//!
//! ```text
//! (i)   K(k) = K(m) / √(1+3k²)
//! (ii)  K(k) = 2 K(ℓ) / √(1+3k'²)
//! (iii) E(k) = √(1+3k²)/2 · E(m) + (1-k²)/2 · K(k)
//! (iv)  E(k) = √(1+3k'²) · E(ℓ) - k'² K(k)
//! ```
//!
//! Both transformed moduli come with closed forms for their complements,
//! `1 - m⁴ = ((1-k²)/(1+3k²))²` and `1 - ℓ⁴ = 8k'²(1+k'²)/(1+3k'²)²`, which
//! are used directly so that `K(m)` stays accurate as `m → 1`.

use alloc::vec;

use crate::error::{domain_err, Result};
use crate::mpnum::{PrecisionContext, Real};
use crate::ptrig::PExponent;

use super::hypergeom::hyp2f1_work;
use super::{e_p_work, k_p_work, IdentityId, IdentityReport, Modulus};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Landen {
    I,
    II,
    III,
    IV,
}

impl Landen {
    pub fn id(self) -> IdentityId {
        match self {
            Landen::I => IdentityId::LandenI,
            Landen::II => IdentityId::LandenII,
            Landen::III => IdentityId::LandenIII,
            Landen::IV => IdentityId::LandenIV,
        }
    }
}

/// Checks one of the four transformations at `p = 4`, `0 <= k < 1`, with
/// tolerance `8·quad_tol`.
pub fn landen_check(which: Landen, k: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if !k.is_finite() || k.is_negative() || k >= &Real::one(64) {
        return Err(domain_err!("modulus must lie in [0, 1), got {k}"));
    }
    let wp = ctx.work_bits();
    let p4 = PExponent::int(4)?;
    let m = Modulus::new(p4.clone(), k, ctx)?;
    let k_val = k_p_work(&m, ctx)?;
    let (lhs, rhs) = match which {
        Landen::I | Landen::III => {
            let k2 = k.with_prec(wp).square();
            let s = k2.mul_int(3).add_int(1);
            let s2 = s.square();
            let mp = k2.add_int(1).mul_prec(&k2, wp).mul_int(8).div_prec(&s2, wp);
            let mcp = Real::one(64).sub_prec(&k2, wp).div_prec(&s, wp).square();
            let moved = Modulus::from_powers(p4, mp, mcp, ctx)?;
            let root_s = s.sqrt(wp)?;
            if which == Landen::I {
                (k_val, k_p_work(&moved, ctx)?.div_prec(&root_s, wp))
            } else {
                let e_moved = e_p_work(&moved, ctx)?;
                let first = root_s.mul_prec(&e_moved, wp).mul_pow2(-1);
                let second = Real::one(64).sub_prec(&k2, wp).mul_prec(&k_val, wp).mul_pow2(-1);
                (e_p_work(&m, ctx)?, first.add_prec(&second, wp))
            }
        }
        Landen::II | Landen::IV => {
            // k'² = √(1 - k⁴) and 1 - k'² = k⁴ / (1 + k'²)
            let kc2 = m.k_comp_pow().sqrt(wp)?;
            let one_minus = m.k_pow().div_prec(&kc2.add_int(1), wp);
            let s = kc2.mul_int(3).add_int(1);
            let s2 = s.square();
            let lp = one_minus.div_prec(&s, wp).square();
            let lcp = kc2.add_int(1).mul_prec(&kc2, wp).mul_int(8).div_prec(&s2, wp);
            let moved = Modulus::from_powers(p4, lp, lcp, ctx)?;
            let root_s = s.sqrt(wp)?;
            if which == Landen::II {
                (k_val, k_p_work(&moved, ctx)?.mul_pow2(1).div_prec(&root_s, wp))
            } else {
                let first = root_s.mul_prec(&e_p_work(&moved, ctx)?, wp);
                (e_p_work(&m, ctx)?, first.sub_prec(&kc2.mul_prec(&k_val, wp), wp))
            }
        }
    };
    Ok(IdentityReport::new(
        which.id(),
        vec![("k", k.clone())],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        ctx.quad_tol().mul_int(8),
    ))
}

/// Defect of `F(1/4, 3/4; 1; 1 - ((1-x)/(1+3x))²) = √(1+3x)·F(1/4, 3/4; 1; x²)`
/// for `0 <= x <= 1/2`, tolerance `2^(8-bits)`.
pub fn ramanujan_defect(x: &Real, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if !x.is_finite() || x.is_negative() || x > &Real::ratio(1, 2, 64) {
        return Err(domain_err!("x must lie in [0, 1/2], got {x}"));
    }
    let wp = ctx.work_bits();
    let x = x.with_prec(wp.max(x.prec()));
    let a = Real::ratio(1, 4, wp);
    let b = Real::ratio(3, 4, wp);
    let one = Real::one(wp);
    let s = x.mul_int(3).add_int(1);
    // 1 - ((1-x)/(1+3x))² = 8x(1+x)/(1+3x)²
    let arg = x.add_int(1).mul_prec(&x, wp).mul_int(8).div_prec(&s.square(), wp);
    let lhs = hyp2f1_work(&a, &b, &one, &arg, ctx)?;
    let rhs = s.sqrt(wp)?.mul_prec(&hyp2f1_work(&a, &b, &one, &x.square(), ctx)?, wp);
    Ok(IdentityReport::new(
        IdentityId::Ramanujan,
        vec![("x", x.with_prec(ctx.bits()))],
        ctx.finish(&lhs),
        ctx.finish(&rhs),
        ctx.series_tol(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_at_zero() {
        let c = PrecisionContext::new(128).unwrap();
        let r = landen_check(Landen::II, &Real::zero(64), &c).unwrap();
        assert!(r.pass, "{r:?}");
        assert!(landen_check(Landen::I, &Real::one(64), &c).is_err());
    }

    #[test]
    fn all_transformations_hold() {
        let c = PrecisionContext::new(128).unwrap();
        for which in [Landen::I, Landen::II, Landen::III, Landen::IV] {
            for k in [0.1, 0.5, 0.7, 0.9] {
                let r = landen_check(which, &Real::from_f64(k, 64), &c).unwrap();
                assert!(r.pass, "{which:?} k = {k}: {r:?}");
            }
        }
    }

    #[test]
    fn ramanujan_grid() {
        let c = PrecisionContext::new(128).unwrap();
        for i in 0..=5 {
            let r = ramanujan_defect(&Real::ratio(i, 10, 64), &c).unwrap();
            assert!(r.pass, "x = {i}/10: {r:?}");
        }
        assert!(ramanujan_defect(&Real::from_f64(0.6, 64), &c).is_err());
    }
}
