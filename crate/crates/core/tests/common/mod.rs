//! Property checks shared by the proptest suite and the acceptance binary.
//! Each returns `Err` with a description of the first violation.

#![allow(dead_code)]

use pell_core::agm::{homogeneity_check, run, MeanKind};
use pell_core::mpnum::{integrate, integrate_abscissa};
use pell_core::pelliptic::{i_p, j_p, ode_tolerance};
use pell_core::ptrig::{arcsin_p, cos_p, pi_p, sin_p};
use pell_core::{PExponent, PrecisionContext, Real};

pub type Check = Result<(), String>;

pub fn exponent(p: f64) -> PExponent {
    PExponent::new(Real::from_f64(p, 64)).unwrap()
}

fn within(what: &str, got: &Real, want: &Real, tol: &Real) -> Check {
    let d = (got - want).abs();
    if &d <= tol {
        Ok(())
    } else {
        Err(format!("{what}: |{got:.30} - {want:.30}| = {d:.3} > {tol:.3}"))
    }
}

fn err(e: pell_core::Error) -> String {
    e.to_string()
}

/// `θ = frac·π_p/2`.
fn angle(p: &PExponent, frac: f64, ctx: &PrecisionContext) -> Result<Real, String> {
    let half = pi_p(p, ctx).map_err(err)?.mul_pow2(-1);
    Ok(half.mul_prec(&Real::from_f64(frac, 64), ctx.work_bits()))
}

/// `sin_p^p θ + cos_p^p θ = 1` within `2^(16-bits)`.
pub fn pythagorean(p: f64, frac: f64, ctx: &PrecisionContext) -> Check {
    let e = exponent(p);
    let wp = ctx.work_bits();
    let theta = angle(&e, frac, ctx)?;
    let s = sin_p(&theta, &e, ctx).map_err(err)?;
    let c = cos_p(&theta, &e, ctx).map_err(err)?;
    let power = |x: &Real| if x.is_zero() { Ok(Real::zero(64)) } else { x.pow(e.value(), wp).map_err(err) };
    let sum = power(&s)?.add_prec(&power(&c)?, wp);
    within(&format!("pythagorean p={p} θ/half={frac}"), &sum, &Real::one(64), &ctx.ulp_scaled(16))
}

/// `arcsin_p(sin_p θ) = θ` within `2^(16-bits)·π_p` on `n` evenly spaced
/// angles in `[0, π_p/2]`, with `sin_p` strictly increasing along them.
pub fn round_trip_grid(p: f64, n: u32, ctx: &PrecisionContext) -> Check {
    let e = exponent(p);
    let wp = ctx.work_bits();
    let pi = pi_p(&e, ctx).map_err(err)?;
    let tol = ctx.ulp_scaled(16).mul_prec(&pi, wp);
    let mut prev: Option<Real> = None;
    for i in 0..=n {
        let theta = pi.mul_pow2(-1).mul_prec(&Real::ratio(i64::from(i), i64::from(n), wp), wp);
        let s = sin_p(&theta, &e, ctx).map_err(err)?;
        let back = arcsin_p(&s, &e, ctx).map_err(err)?;
        within(&format!("round trip p={p} i={i}"), &back, &theta, &tol)?;
        if let Some(q) = &prev {
            if &s <= q {
                return Err(format!("sin_p not increasing at p={p} i={i}"));
            }
        }
        prev = Some(s);
    }
    Ok(())
}

/// `(sin_p)' = cos_p` by a central difference with `h = 2^(-⌊bits/3⌋)`.
pub fn sin_derivative(p: f64, frac: f64, ctx: &PrecisionContext) -> Check {
    let e = exponent(p);
    let wp = ctx.work_bits();
    let theta = angle(&e, frac, ctx)?;
    let h = Real::pow2(-((ctx.bits() / 3) as i64), 64);
    let up = sin_p(&theta.add_prec(&h, wp), &e, ctx).map_err(err)?;
    let down = sin_p(&theta.sub_prec(&h, wp), &e, ctx).map_err(err)?;
    let fd = up.sub_prec(&down, wp).div_prec(&h.mul_pow2(1), wp);
    let c = cos_p(&theta, &e, ctx).map_err(err)?;
    within(&format!("sin_p' p={p} θ/half={frac}"), &fd, &c, &ode_tolerance(ctx))
}

/// `e^t·cos 3t`, smooth on any interval.
fn smooth(t: &Real, wp: usize) -> pell_core::Result<Real> {
    Ok(t.exp(wp)?.mul_prec(&t.mul_int(3).cos(wp)?, wp))
}

/// `∫_0^1 = ∫_0^s + ∫_s^1` within `4·quad_tol`.
pub fn quad_additivity(split: f64, ctx: &PrecisionContext) -> Check {
    let wp = ctx.work_bits();
    let s = Real::from_f64(split, 64);
    let (zero, one) = (Real::zero(64), Real::one(64));
    let q = |lo: &Real, hi: &Real| integrate(|t| smooth(t, wp), lo, hi, ctx).map(|r| r.value).map_err(err);
    let whole = q(&zero, &one)?;
    let parts = q(&zero, &s)?.add_prec(&q(&s, &one)?, wp);
    within(&format!("additivity split={split}"), &parts, &whole, &ctx.quad_tol().mul_int(4))
}

/// An odd polynomial times `cos t` integrates to zero on `[-w, w]`.
pub fn quad_odd(c1: f64, c3: f64, w: f64, ctx: &PrecisionContext) -> Check {
    let wp = ctx.work_bits();
    let (c1, c3) = (Real::from_f64(c1, 64), Real::from_f64(c3, 64));
    let w = Real::from_f64(w, 64);
    let f = |t: &Real| -> pell_core::Result<Real> {
        let poly = c1.mul_prec(t, wp).add_prec(&c3.mul_prec(&t.powi(3), wp), wp);
        Ok(poly.mul_prec(&t.cos(wp)?, wp))
    };
    let r = integrate(f, &-&w, &w, ctx).map_err(err)?;
    within("odd integrand", &r.value, &Real::zero(64), ctx.quad_tol())
}

/// Two identical quadratures agree bit for bit.
pub fn quad_determinism(ctx: &PrecisionContext) -> Check {
    let wp = ctx.work_bits();
    let f = |t: &Real| smooth(t, wp);
    let a = integrate(f, &Real::zero(64), &Real::from_i64(2, 64), ctx).map_err(err)?;
    let b = integrate(f, &Real::zero(64), &Real::from_i64(2, 64), ctx).map_err(err)?;
    if a.value.bit_eq(&b.value) && a.evaluations == b.evaluations {
        Ok(())
    } else {
        Err("repeated quadrature differs".into())
    }
}

/// Error of `∫_0^1 (1-t²)^(-1/2) = π/2` does not grow as precision doubles.
pub fn quad_refinement(bits: &[usize]) -> Check {
    let mut last: Option<Real> = None;
    for &b in bits {
        let ctx = PrecisionContext::new(b).map_err(err)?;
        let wp = ctx.work_bits();
        let r = integrate_abscissa(
            |n| Ok(n.to_hi.mul_prec(&n.x.add_int(1), wp).sqrt(wp)?.recip()),
            &Real::zero(64),
            &Real::one(64),
            &ctx,
        )
        .map_err(err)?;
        let exact = pell_core::mpnum::consts::pi(4 * b).mul_pow2(-1);
        let e = (&r.value - &exact).abs();
        if let Some(prev) = &last {
            if &e > prev {
                return Err(format!("error grew at {b} bits: {e:.3} > {prev:.3}"));
            }
        }
        last = Some(e);
    }
    Ok(())
}

/// `I_p(ca, cb) = c^(1-p)·I_p(a, b)` and `J_p(ca, cb) = c·J_p(a, b)` for
/// `c ∈ {1/2, 2}`, within `4·quad_tol` relative to the larger side.
pub fn ij_homogeneity(p: f64, a: f64, b: f64, ctx: &PrecisionContext) -> Check {
    let e = exponent(p);
    let wp = ctx.work_bits();
    let (a, b) = (Real::from_f64(a, 64), Real::from_f64(b, 64));
    let i0 = i_p(&a, &b, &e, ctx).map_err(err)?;
    let j0 = j_p(&a, &b, &e, ctx).map_err(err)?;
    for c in [Real::ratio(1, 2, 64), Real::from_i64(2, 64)] {
        let (ca, cb) = (&a * &c, &b * &c);
        let scale = c.pow(&(Real::one(64) - e.value()), wp).map_err(err)?;
        let i_want = i0.mul_prec(&scale, wp);
        let j_want = j0.mul_prec(&c, wp);
        let rel = |v: &Real| ctx.quad_tol().mul_int(4).mul_prec(&v.abs().max(&Real::one(64)), wp);
        within(&format!("I homogeneity p={p} c={c:.3}"), &i_p(&ca, &cb, &e, ctx).map_err(err)?, &i_want, &rel(&i_want))?;
        within(&format!("J homogeneity p={p} c={c:.3}"), &j_p(&ca, &cb, &e, ctx).map_err(err)?, &j_want, &rel(&j_want))?;
    }
    Ok(())
}

pub fn kind(p: u32) -> MeanKind {
    MeanKind::from_p(p).unwrap()
}

/// `M(ca, cb) = c·M(a, b)`.
pub fn mean_homogeneity(p: u32, a: f64, b: f64, c: f64, ctx: &PrecisionContext) -> Check {
    let (a, b) = (Real::from_f64(a.max(b), 64), Real::from_f64(a.min(b), 64));
    let r = homogeneity_check(kind(p), &a, &b, &Real::from_f64(c, 64), ctx).map_err(err)?;
    if r.pass {
        Ok(())
    } else {
        Err(format!("mean homogeneity p={p}: defect {:.3} > {:.3}", r.abs_defect, r.tol))
    }
}

/// `b_n <= b_(n+1) <= M <= a_(n+1) <= a_n` along the whole trace.
pub fn sandwich(p: u32, a: f64, b: f64, ctx: &PrecisionContext) -> Check {
    let (a, b) = (Real::from_f64(a.max(b), 64), Real::from_f64(a.min(b), 64));
    let trace = run(kind(p), &a, &b, ctx).map_err(err)?;
    let m = trace.limit();
    for w in trace.rows().windows(2) {
        let (r, s) = (&w[0], &w[1]);
        if !(r.b <= s.b && &s.b <= m && m <= &s.a && s.a <= r.a) {
            return Err(format!("sandwich broken at p={p} n={}", r.n));
        }
    }
    Ok(())
}
