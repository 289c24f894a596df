//! The three mean iterations and their traces.
//!
//! ```text
//! P2: a' = (a + b)/2,            b' = √(ab)
//! P3: a' = (a + 2b)/3,           b' = ∛((a² + ab + b²) b / 3)
//! P4: a' = √((a² + 3b²)/4),      b' = ⁴√((a² + b²) b² / 2)
//! ```
//!
//! Each trace row also carries `c_n = (a_n^p - b_n^p)^(1/p)`. Only `c_0` is
//! taken from that definition; later rows use the equivalent recurrences
//!
//! ```text
//! P2: c_(n+1) = (a_n - b_n)/2
//! P3: c_(n+1) = (a_n - b_n)/3
//! P4: c_(n+1) = √((a_n - b_n)(a_n + b_n))/2
//! ```
//!
//! which stay accurate after `a_n^p - b_n^p` has cancelled to nothing.

mod checks;

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{domain_err, Error, Result};
use crate::mpnum::{PrecisionContext, Real};

pub use checks::{contraction_check, gauss_check, homogeneity_check, invariance_check, lemma_ij_check, prop_ek_check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeanKind {
    P2,
    P3,
    P4,
}

impl MeanKind {
    /// The exponent `p` the iteration belongs to.
    pub fn p(self) -> u32 {
        match self {
            MeanKind::P2 => 2,
            MeanKind::P3 => 3,
            MeanKind::P4 => 4,
        }
    }

    pub fn from_p(p: u32) -> Option<Self> {
        match p {
            2 => Some(MeanKind::P2),
            3 => Some(MeanKind::P3),
            4 => Some(MeanKind::P4),
            _ => None,
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p{}", self.p())
    }
}

fn check_pair(a: &Real, b: &Real) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || !b.is_positive() || a < b {
        return Err(domain_err!("mean iteration needs a >= b > 0, got a = {a}, b = {b}"));
    }
    Ok(())
}

/// One step of the selected iteration at precision `prec`.
pub fn step(kind: MeanKind, a: &Real, b: &Real, prec: usize) -> Result<(Real, Real)> {
    check_pair(a, b)?;
    let q = prec + 8;
    let (a1, b1) = match kind {
        MeanKind::P2 => (a.add_prec(b, q).mul_pow2(-1), a.mul_prec(b, q).sqrt(q)?),
        MeanKind::P3 => {
            let a1 = a.add_prec(&b.mul_pow2(1), q).div_int(3);
            let s = a.mul_prec(a, q).add_prec(&a.mul_prec(b, q), q).add_prec(&b.mul_prec(b, q), q);
            (a1, s.mul_prec(b, q).div_int(3).nth_root(3, q)?)
        }
        MeanKind::P4 => {
            let a2 = a.mul_prec(a, q);
            let b2 = b.mul_prec(b, q);
            let a1 = a2.add_prec(&b2.mul_int(3), q).mul_pow2(-2).sqrt(q)?;
            let b1 = a2.add_prec(&b2, q).mul_prec(&b2, q).mul_pow2(-1).nth_root(4, q)?;
            (a1, b1)
        }
    };
    let (a1, b1) = (a1.with_prec(prec), b1.with_prec(prec));
    // rounding may push a converged pair out of order by an ulp
    if a1 < b1 {
        return Ok((a1.clone(), a1));
    }
    Ok((a1, b1))
}

/// `c` for the pair `(a, b)` from its definition.
fn c_direct(kind: MeanKind, a: &Real, b: &Real, prec: usize) -> Result<Real> {
    let q = prec + 8;
    let n = kind.p();
    let ap = a.with_prec(q.max(a.prec())).powi(u64::from(n));
    let bp = b.with_prec(q.max(b.prec())).powi(u64::from(n));
    Ok(ap.sub_prec(&bp, q).nth_root(n, q)?.with_prec(prec))
}

/// `c_(n+1)` from `(a_n, b_n)`.
pub(crate) fn c_next(kind: MeanKind, a: &Real, b: &Real, prec: usize) -> Result<Real> {
    let q = prec + 8;
    let d = a.sub_prec(b, q);
    Ok(match kind {
        MeanKind::P2 => d.mul_pow2(-1),
        MeanKind::P3 => d.div_int(3),
        MeanKind::P4 => d.mul_prec(&a.add_prec(b, q), q).sqrt(q)?.mul_pow2(-1),
    }
    .with_prec(prec))
}

#[derive(Clone, Debug)]
pub struct AgmRow {
    pub n: u32,
    pub a: Real,
    pub b: Real,
    pub c: Real,
}

/// Every iterate of a mean iteration and its limit.
#[derive(Clone, Debug)]
pub struct AgmTrace {
    kind: MeanKind,
    rows: Vec<AgmRow>,
    limit: Real,
    iterations: u32,
}

impl AgmTrace {
    pub fn kind(&self) -> MeanKind {
        self.kind
    }

    pub fn rows(&self) -> &[AgmRow] {
        &self.rows
    }

    /// `M_p(a_0, b_0)`, taken as the last `a_n`.
    pub fn limit(&self) -> &Real {
        &self.limit
    }

    /// Steps taken until `a_n - b_n < 2^(4-bits)·a_0`.
    pub fn iterations(&self) -> u32 {
        self.iterations
    }

    /// `κ_n = c_n / a_n = (1 - (b_n/a_n)^4)^(1/4)` for a `P4` trace.
    pub fn kappa(&self, n: usize, prec: usize) -> Option<Real> {
        let row = self.rows.get(n)?;
        (self.kind == MeanKind::P4).then(|| row.c.div_prec(&row.a, prec))
    }

    /// `κ'_n = b_n / a_n`.
    pub fn kappa_prime(&self, n: usize, prec: usize) -> Option<Real> {
        let row = self.rows.get(n)?;
        Some(row.b.div_prec(&row.a, prec))
    }
}

/// Iterates from `(a, b)` until `a_n - b_n < 2^(4-bits)·a` (at most
/// `max_iters` steps), at working precision.
pub fn run(kind: MeanKind, a: &Real, b: &Real, ctx: &PrecisionContext) -> Result<AgmTrace> {
    run_until(kind, a, b, ctx, |_| true)
}

/// Like [`run`], but keeps stepping past the stopping rule until `done`
/// accepts the latest row. Series built on the `c_n` need this: their terms
/// can lag behind `a_n - b_n` by one step. [`AgmTrace::iterations`] still
/// counts the steps the stopping rule needed.
pub fn run_until<F>(kind: MeanKind, a: &Real, b: &Real, ctx: &PrecisionContext, mut done: F) -> Result<AgmTrace>
where
    F: FnMut(&AgmRow) -> bool,
{
    check_pair(a, b)?;
    let wp = ctx.work_bits();
    let a = a.with_prec(wp.max(a.prec())).with_prec(wp);
    let b = b.with_prec(wp.max(b.prec())).with_prec(wp);
    let threshold = a.mul_prec(&ctx.ulp_scaled(4), wp);
    let mut rows = alloc::vec![AgmRow { n: 0, c: c_direct(kind, &a, &b, wp)?, a, b }];
    let mut iterations = None;
    loop {
        let last = rows.last().expect("trace has a first row");
        let close = last.a.sub_prec(&last.b, wp) < threshold;
        if close && iterations.is_none() {
            iterations = Some(last.n);
        }
        if close && done(last) {
            break;
        }
        if last.n >= ctx.max_iters() {
            return Err(Error::NonConvergence(
                "mean iteration hit the iteration cap".to_string(),
            ));
        }
        let (a1, b1) = step(kind, &last.a, &last.b, wp)?;
        let c1 = c_next(kind, &last.a, &last.b, wp)?;
        let n = last.n + 1;
        rows.push(AgmRow { n, a: a1, b: b1, c: c1 });
    }
    let limit = rows.last().expect("trace has a first row").a.clone();
    Ok(AgmTrace { kind, rows, limit, iterations: iterations.unwrap_or(0) })
}

#[cfg(test)]
mod tests {
    use super::*;

    const KINDS: [MeanKind; 3] = [MeanKind::P2, MeanKind::P3, MeanKind::P4];

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(256).unwrap()
    }

    #[test]
    fn fixed_points() {
        let one = Real::one(128);
        for kind in KINDS {
            let (a, b) = step(kind, &one, &one, 128).unwrap();
            assert_eq!((a, b), (one.clone(), one.clone()));
            let t = run(kind, &Real::from_i64(3, 64), &Real::from_i64(3, 64), &ctx()).unwrap();
            assert_eq!(t.iterations(), 0);
            assert_eq!(t.limit(), &Real::from_i64(3, 64));
        }
    }

    #[test]
    fn first_quartic_step() {
        let p = 256;
        let b = Real::ratio(1, 2, p).nth_root(4, p).unwrap();
        let (a1, b1) = step(MeanKind::P4, &Real::one(p), &b, p).unwrap();
        let r2 = Real::from_i64(2, p).sqrt(p).unwrap();
        let want_a = Real::one(p).add_prec(&r2.recip().mul_int(3), p).mul_pow2(-2).sqrt(p).unwrap();
        let inner = Real::one(p).add_prec(&r2.recip(), p).div_prec(&r2.mul_pow2(1), p);
        let want_b = inner.nth_root(4, p).unwrap();
        let tol = Real::pow2(-250, 64);
        assert!((&a1 - &want_a).abs() < tol && (&b1 - &want_b).abs() < tol);
    }

    #[test]
    fn step_rejects_bad_pairs() {
        let one = Real::one(64);
        let half = Real::ratio(1, 2, 64);
        assert!(step(MeanKind::P2, &half, &one, 64).is_err());
        assert!(step(MeanKind::P3, &one, &Real::zero(64), 64).is_err());
        assert!(run(MeanKind::P4, &half, &one, &ctx()).is_err());
    }

    #[test]
    fn traces_are_sandwiched() {
        let c = ctx();
        for kind in KINDS {
            for (a, b) in [(1.0, 0.5), (1.5, 0.5), (2.0, 1.0), (1.0, 0.01)] {
                let t = run(kind, &Real::from_f64(a, 64), &Real::from_f64(b, 64), &c).unwrap();
                let lim = t.limit();
                for w in t.rows().windows(2) {
                    let (r0, r1) = (&w[0], &w[1]);
                    assert!(r0.b <= r1.b && r1.b <= *lim && *lim <= r1.a && r1.a <= r0.a, "{kind} ({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn stored_c_matches_definition() {
        let c = ctx();
        let wp = c.work_bits();
        for kind in KINDS {
            let t = run(kind, &Real::one(64), &Real::ratio(1, 2, 64), &c).unwrap();
            for row in &t.rows()[..3] {
                let direct = c_direct(kind, &row.a, &row.b, wp).unwrap();
                assert!((&direct - &row.c).abs() < Real::pow2(-200, 64), "{kind} n = {}", row.n);
            }
        }
    }

    #[test]
    fn quartic_c_and_kappa_consistency() {
        let c = ctx();
        let wp = c.work_bits();
        let b0 = Real::ratio(1, 2, wp).nth_root(4, wp).unwrap();
        let t = run(MeanKind::P4, &Real::one(wp), &b0, &c).unwrap();
        let tol = c.ulp_scaled(8);
        for (n, w) in t.rows().windows(2).enumerate() {
            let (r0, r1) = (&w[0], &w[1]);
            // squares of wp-bit values are exact at 2·wp bits
            let wide = 2 * wp + 8;
            let diff = r0.a.mul_prec(&r0.a, wide).sub_prec(&r0.b.mul_prec(&r0.b, wide), wide);
            let want = diff.sqrt(wp).unwrap().mul_pow2(-1);
            assert!((&want - &r1.c).abs() <= tol);
            let kp = t.kappa_prime(n, wp).unwrap();
            let k2 = kp.square();
            // 1 - κ'² = (a² - b²)/a², with the exact difference from above
            let one_minus = diff.div_prec(&r0.a.square(), wp);
            let next = one_minus.sqrt(wp).unwrap()
                .div_prec(&k2.mul_int(3).add_int(1).sqrt(wp).unwrap(), wp);
            assert!((&next - &t.kappa(n + 1, wp).unwrap()).abs() <= tol, "n = {n}");
        }
        assert!(run(MeanKind::P2, &Real::one(64), &b0, &c).unwrap().kappa(0, wp).is_none());
    }

    #[test]
    fn digits_double_once_close() {
        let c = PrecisionContext::new(512).unwrap();
        let wp = c.work_bits();
        let b0 = Real::ratio(1, 2, wp).nth_root(4, wp).unwrap();
        for kind in [MeanKind::P2, MeanKind::P4] {
            let t = run(kind, &Real::one(wp), &b0, &c).unwrap();
            let digits: Vec<f64> = t
                .rows()
                .iter()
                .map(|r| r.a.sub_prec(&r.b, wp))
                .take_while(|d| !d.is_zero())
                .map(|d| -(d.exponent().unwrap() as f64) * core::f64::consts::LOG10_2)
                .collect();
            for w in digits.windows(2) {
                if w[0] > 4.0 && w[1] < 140.0 {
                    assert!(w[1] >= 2.0 * w[0] - 1.0, "{kind}: {digits:?}");
                }
            }
        }
    }

    #[test]
    fn homogeneous_traces() {
        let c = ctx();
        let t1 = run(MeanKind::P3, &Real::one(64), &Real::ratio(1, 2, 64), &c).unwrap();
        let t2 = run(MeanKind::P3, &Real::from_i64(2, 64), &Real::one(64), &c).unwrap();
        assert_eq!(t1.rows().len(), t2.rows().len());
        for (r1, r2) in t1.rows().iter().zip(t2.rows()) {
            assert_eq!(r1.a.mul_pow2(1), r2.a);
            assert_eq!(r1.b.mul_pow2(1), r2.b);
        }
    }
}
