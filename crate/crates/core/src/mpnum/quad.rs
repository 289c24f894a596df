//! Tanh-sinh (double-exponential) quadrature.
//!
//! The interval is mapped to `(-1, 1)` and the substitution
//! `s = tanh(π/2 · sinh t)` is applied; the transformed integrand decays
//! double-exponentially in `t`, so the trapezoidal rule with step `h = 2^-level`
//! converges very fast even for algebraic endpoint singularities. Each level
//! adds only the odd multiples of the new step, and the error estimate is the
//! difference between consecutive levels.
//!
//! Integrands that blow up at an endpoint must not form `hi - x` themselves
//! (it cancels to zero near the end); [`integrate_abscissa`] hands them the
//! distances to both endpoints computed from the node tables directly.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use spin::Mutex;

use crate::error::{Error, Result};

use super::consts;
use super::context::PrecisionContext;
use super::real::Real;

/// Levels below this are never accepted as converged.
const MIN_LEVEL: u32 = 3;

/// Node tables extend until `1 - s < 2^-(NODE_SPAN * precision)`.
const NODE_SPAN: i64 = 16;

/// Outcome of [`integrate`].
#[derive(Clone, Debug)]
pub struct QuadResult {
    pub value: Real,
    /// `|S_L - S_(L-1)|` at the final level `L`.
    pub err_estimate: Real,
    pub levels_used: u32,
    pub evaluations: usize,
}

/// A quadrature point: `x` together with its exact distances to both ends.
#[derive(Clone, Debug)]
pub struct Abscissa {
    pub x: Real,
    pub from_lo: Real,
    pub to_hi: Real,
}

#[derive(Debug)]
struct Node {
    /// `tanh(π/2 · sinh t)`
    s: Real,
    one_minus: Real,
    one_plus: Real,
    /// `π/2 · cosh t · sech²(π/2 · sinh t)`
    weight: Real,
}

#[derive(Debug)]
struct Level {
    /// Node at `t = 0` (level 0 only).
    center: Option<Node>,
    /// Nodes with `t > 0`, increasing.
    nodes: Vec<Node>,
}

/// Node tables keyed by (precision, level).
#[derive(Default)]
pub(crate) struct NodeCache {
    tables: Mutex<BTreeMap<(usize, u32), Arc<Level>>>,
}

impl NodeCache {
    fn level(&self, prec: usize, level: u32) -> Result<Arc<Level>> {
        if let Some(l) = self.tables.lock().get(&(prec, level)) {
            return Ok(l.clone());
        }
        // computed outside the lock; a concurrent duplicate is bit-identical
        let built = Arc::new(build_level(prec, level)?);
        Ok(self.tables.lock().entry((prec, level)).or_insert(built).clone())
    }
}

fn build_node(t: &Real, prec: usize) -> Result<Node> {
    let q = prec + 16;
    let half_pi = consts::pi(q).mul_pow2(-1);
    let et = t.exp(q)?;
    let emt = et.recip();
    let sinh = et.sub_prec(&emt, q).mul_pow2(-1);
    let cosh = et.add_prec(&emt, q).mul_pow2(-1);
    // E = e^(2u), u = π/2 · sinh t
    let big = half_pi.mul_prec(&sinh, q).mul_pow2(1).exp(q)?;
    let denom = big.add_int(1);
    let one_minus = Real::from_i64(2, q).div_prec(&denom, q);
    let one_plus = big.mul_pow2(1).div_prec(&denom, q);
    let s = big.add_int(-1).div_prec(&denom, q);
    let weight = half_pi
        .mul_prec(&cosh, q)
        .mul_prec(&one_minus, q)
        .mul_prec(&one_plus, q);
    Ok(Node {
        s: s.with_prec(prec),
        one_minus: one_minus.with_prec(prec),
        one_plus: one_plus.with_prec(prec),
        weight: weight.with_prec(prec),
    })
}

fn build_level(prec: usize, level: u32) -> Result<Level> {
    let limit = -NODE_SPAN * prec as i64;
    let mut nodes = Vec::new();
    let center = if level == 0 {
        Some(Node {
            s: Real::zero(prec),
            one_minus: Real::one(prec),
            one_plus: Real::one(prec),
            weight: consts::pi(prec).mul_pow2(-1),
        })
    } else {
        None
    };
    // level 0: t = 1, 2, 3, ...; level l: t = (2j+1)·2^-l
    let (start, stride) = if level == 0 { (1i64, 1i64) } else { (1, 2) };
    let mut j = start;
    loop {
        let t = Real::from_i64(j, prec).mul_pow2(-i64::from(level));
        let node = build_node(&t, prec)?;
        let done = node.one_minus.exponent().map_or(true, |e| e < limit);
        nodes.push(node);
        if done {
            break;
        }
        j += stride;
    }
    Ok(Level { center, nodes })
}

/// Integrates `f` over `[lo, hi]`.
pub fn integrate<F>(mut f: F, lo: &Real, hi: &Real, ctx: &PrecisionContext) -> Result<QuadResult>
where
    F: FnMut(&Real) -> Result<Real>,
{
    integrate_abscissa(|a| f(&a.x), lo, hi, ctx)
}

/// Integrates `f` over `[lo, hi]`, passing each point with its endpoint
/// distances so that singular factors like `(hi - x)^(-α)` can be evaluated
/// without cancellation.
pub fn integrate_abscissa<F>(mut f: F, lo: &Real, hi: &Real, ctx: &PrecisionContext) -> Result<QuadResult>
where
    F: FnMut(&Abscissa) -> Result<Real>,
{
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::InvalidDomain("integration requires lo < hi".to_string()));
    }
    let wp = ctx.work_bits();
    let center = lo.add_prec(hi, wp).mul_pow2(-1);
    let half = hi.sub_prec(lo, wp).mul_pow2(-1);
    let tol = ctx.quad_tol().clone();
    // tail cut-off, well below the accuracy target
    let cutoff = tol.mul_pow2(-24);

    let mut eval = |s_mag: &Real, toward_hi: bool, near: &Real, far: &Real| -> Result<Real> {
        let offset = half.mul_prec(s_mag, wp);
        let (x, from_lo, to_hi) = if toward_hi {
            (center.add_prec(&offset, wp), half.mul_prec(far, wp), half.mul_prec(near, wp))
        } else {
            (center.sub_prec(&offset, wp), half.mul_prec(near, wp), half.mul_prec(far, wp))
        };
        let y = f(&Abscissa { x, from_lo, to_hi })?;
        if !y.is_finite() {
            return Err(Error::NonFinite("integrand returned a non-finite value".to_string()));
        }
        Ok(y)
    };

    let mut total = Real::zero(wp);
    let mut evaluations = 0usize;
    let mut previous: Option<Real> = None;
    for level in 0..=ctx.max_quad_level() {
        let table = ctx.nodes().level(wp, level)?;
        let mut level_sum = Real::zero(wp);
        if let Some(c) = &table.center {
            let y = eval(&c.s, true, &c.one_minus, &c.one_plus)?;
            evaluations += 1;
            level_sum = level_sum.add_prec(&c.weight.mul_prec(&y, wp), wp);
        }
        for toward_hi in [true, false] {
            for node in &table.nodes {
                let y = eval(&node.s, toward_hi, &node.one_minus, &node.one_plus)?;
                evaluations += 1;
                let term = node.weight.mul_prec(&y, wp);
                level_sum = level_sum.add_prec(&term, wp);
                let scaled = half.mul_prec(&term, wp).abs();
                if node.weight < cutoff && scaled < cutoff {
                    break;
                }
            }
        }
        total = total.add_prec(&level_sum, wp);
        let estimate = half.mul_prec(&total, wp).mul_pow2(-i64::from(level));
        if let Some(prev) = previous.replace(estimate.clone()) {
            let err = estimate.sub_prec(&prev, wp).abs();
            if level >= MIN_LEVEL && err < tol {
                return Ok(QuadResult {
                    value: ctx.finish(&estimate),
                    err_estimate: ctx.finish(&err),
                    levels_used: level,
                    evaluations,
                });
            }
            if level == ctx.max_quad_level() {
                return Err(Error::NonConvergence(alloc::format!(
                    "tanh-sinh quadrature stalled at level {level}, error estimate 2^{}",
                    err.exponent().unwrap_or(0)
                )));
            }
        }
    }
    unreachable!("loop returns at the level cap")
}
