//! Quadratically convergent formulas for π, π_3 and π_4, and an
//! arctangent oracle that shares no code with them.
//!
//! ```text
//! π   = 4 M_2(1, 1/√2)² / (1 - Σ 2^(n+1) c_n²)
//! π_3 = 2 M_3(1, 1/∛2)² / (1 - 2 Σ 3^n (a_n + c_n) c_n)
//! π_4 = 2 M_4(1, 1/⁴√2)² / (1 - Σ 2^(n+1) c_n²)
//! π   = √2 · π_4
//! ```
//!
//! All sums run over `n >= 1` and stop at the first term below `2^(4-bits)`.

use alloc::vec::Vec;
use core::fmt;

use crate::agm::{c_next, run_until, step, AgmRow, AgmTrace, MeanKind};
use crate::error::{domain_err, Error, Result};
use crate::mpnum::{digits_for_bits, sum_ordered, PrecisionContext, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Machin,
    SalaminBrent,
    Pi3,
    Pi4,
    PiViaPi4,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Machin => "MACHIN",
            Method::SalaminBrent => "SALAMIN_BRENT",
            Method::Pi3 => "PI3",
            Method::Pi4 => "PI4",
            Method::PiViaPi4 => "PI_VIA_PI4",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A computed constant with the bookkeeping of how it was obtained.
#[derive(Clone, Debug)]
pub struct DigitsResult {
    pub value: Real,
    /// Decimal digits the context's precision supports.
    pub requested_digits: usize,
    /// Mean-iteration steps performed, including any needed to finish the series.
    pub iterations_used: u32,
    pub trace: Option<AgmTrace>,
    pub method: Method,
}

/// `atan(1/x)` by its Taylor series, terms dropped below `cutoff`.
fn atan_inv(x: i64, wp: usize, cutoff: &Real) -> Real {
    let x2 = x * x;
    let mut power = Real::one(wp).div_int(x);
    let mut terms = Vec::new();
    let mut k = 0i64;
    while power >= *cutoff {
        let t = power.div_int(2 * k + 1);
        terms.push(if k % 2 == 0 { t } else { -t });
        power = power.div_int(x2);
        k += 1;
    }
    sum_ordered(&terms, wp)
}

/// π from `16·atan(1/5) - 4·atan(1/239)`.
pub fn machin_pi(ctx: &PrecisionContext) -> Real {
    let wp = ctx.work_bits();
    let cutoff = ctx.series_cutoff();
    let a = atan_inv(5, wp, &cutoff).mul_int(16);
    let b = atan_inv(239, wp, &cutoff).mul_int(4);
    ctx.finish(&a.sub_prec(&b, wp))
}

struct Formula {
    kind: MeanKind,
    /// numerator factor in front of `M²`
    scale: Real,
    method: Method,
}

impl Formula {
    fn new(method: Method, wp: usize) -> Result<Self> {
        let (kind, scale) = match method {
            Method::SalaminBrent => (MeanKind::P2, Real::from_i64(4, wp)),
            Method::Pi3 => (MeanKind::P3, Real::from_i64(2, wp)),
            Method::Pi4 => (MeanKind::P4, Real::from_i64(2, wp)),
            Method::PiViaPi4 => (MeanKind::P4, Real::from_i64(8, wp).sqrt(wp)?),
            Method::Machin => return Err(domain_err!("Machin's formula has no mean iteration")),
        };
        Ok(Formula { kind, scale, method })
    }

    /// `b_0 = 2^(-1/p)`.
    fn start(&self, wp: usize) -> Result<Real> {
        Real::ratio(1, 2, wp).nth_root(self.kind.p(), wp)
    }

    /// The `n`-th series term, `n >= 1`.
    fn term(&self, row: &AgmRow, wp: usize) -> Real {
        let n = i64::from(row.n);
        match self.kind {
            MeanKind::P2 | MeanKind::P4 => row.c.square().mul_pow2(n + 1),
            MeanKind::P3 => {
                let three_n = Real::from_i64(3, 64).powi(row.n as u64);
                row.a.add_prec(&row.c, wp).mul_prec(&row.c, wp).mul_prec(&three_n, wp).mul_pow2(1)
            }
        }
    }

    /// `scale·M² / (1 - Σ terms)`.
    fn finish(&self, m: &Real, terms: &[Real], wp: usize) -> Result<Real> {
        let d = Real::one(64).sub_prec(&sum_ordered(terms, wp), wp);
        if d <= Real::ratio(1, 2, 64) {
            return Err(Error::NumericalFailure(alloc::format!(
                "{} denominator {d} is not above 1/2",
                self.method
            )));
        }
        Ok(self.scale.mul_prec(&m.square(), wp).div_prec(&d, wp))
    }

    fn evaluate(&self, ctx: &PrecisionContext) -> Result<DigitsResult> {
        let wp = ctx.work_bits();
        let threshold = ctx.ulp_scaled(4);
        let trace = run_until(self.kind, &Real::one(wp), &self.start(wp)?, ctx, |row| {
            row.n >= 1 && self.term(row, wp) < threshold
        })?;
        let terms: Vec<Real> = trace.rows()[1..].iter().map(|r| self.term(r, wp)).collect();
        let value = self.finish(trace.limit(), &terms, wp)?;
        Ok(DigitsResult {
            value: ctx.finish(&value),
            requested_digits: digits_for_bits(ctx.bits()),
            iterations_used: trace.rows().len() as u32 - 1,
            trace: Some(trace),
            method: self.method,
        })
    }

    /// Keeps `m` series terms and takes `M ≈ a_(m+1)`.
    fn partial(&self, m: u32, ctx: &PrecisionContext) -> Result<Real> {
        if m == 0 {
            return Err(domain_err!("need at least one series term"));
        }
        let wp = ctx.work_bits();
        let (mut a, mut b) = (Real::one(wp), self.start(wp)?);
        let mut terms = Vec::new();
        for n in 1..=m {
            let c = c_next(self.kind, &a, &b, wp)?;
            (a, b) = step(self.kind, &a, &b, wp)?;
            terms.push(self.term(&AgmRow { n, a: a.clone(), b: b.clone(), c }, wp));
        }
        let (a_next, _) = step(self.kind, &a, &b, wp)?;
        Ok(ctx.finish(&self.finish(&a_next, &terms, wp)?))
    }
}

/// π by the Gauss–Legendre (Salamin–Brent) formula.
pub fn salamin_brent_pi(ctx: &PrecisionContext) -> Result<DigitsResult> {
    Formula::new(Method::SalaminBrent, ctx.work_bits())?.evaluate(ctx)
}

/// π_3 from the cubic mean iteration.
pub fn pi3_formula(ctx: &PrecisionContext) -> Result<DigitsResult> {
    Formula::new(Method::Pi3, ctx.work_bits())?.evaluate(ctx)
}

/// π_4 from the quartic mean iteration.
pub fn pi4_formula(ctx: &PrecisionContext) -> Result<DigitsResult> {
    Formula::new(Method::Pi4, ctx.work_bits())?.evaluate(ctx)
}

/// π as `2√2·M_4² / D`, the quartic formula scaled by `√2`.
pub fn pi_via_pi4(ctx: &PrecisionContext) -> Result<DigitsResult> {
    Formula::new(Method::PiViaPi4, ctx.work_bits())?.evaluate(ctx)
}

/// Any of the mean-iteration formulas truncated after `m >= 1` series terms.
pub fn partial_formula(method: Method, m: u32, ctx: &PrecisionContext) -> Result<Real> {
    Formula::new(method, ctx.work_bits())?.partial(m, ctx)
}

/// Runs `method` and returns its result; `Machin` carries no trace.
pub fn compute(method: Method, ctx: &PrecisionContext) -> Result<DigitsResult> {
    if method == Method::Machin {
        return Ok(DigitsResult {
            value: machin_pi(ctx),
            requested_digits: digits_for_bits(ctx.bits()),
            iterations_used: 0,
            trace: None,
            method,
        });
    }
    Formula::new(method, ctx.work_bits())?.evaluate(ctx)
}

impl DigitsResult {
    /// The value truncated to `digits` significant digits.
    pub fn digits(&self, digits: usize) -> alloc::string::String {
        self.value.to_decimal(digits)
    }
}

/// Fails unless `ctx` can carry `digits` decimal digits.
pub fn check_digits(digits: usize, ctx: &PrecisionContext) -> Result<()> {
    if digits == 0 || digits > digits_for_bits(ctx.bits()) {
        return Err(domain_err!("{digits} digits need more than {} bits", ctx.bits()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpnum::consts;

    fn ctx(bits: usize) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    #[test]
    fn machin_matches_constant() {
        for bits in [64, 256, 512] {
            let c = ctx(bits);
            let m = machin_pi(&c);
            assert!((&m - &consts::pi(bits + 64)).abs() <= c.ulp_scaled(8), "{bits}");
        }
        assert!(machin_pi(&ctx(64)).to_decimal(19).starts_with("3.14159265358979323"));
        let lo = machin_pi(&ctx(128)).to_decimal(30);
        let hi = machin_pi(&ctx(256)).to_decimal(30);
        assert_eq!(lo, hi);
    }

    #[test]
    fn methods_agree_with_oracle() {
        for bits in [128, 256, 512] {
            let c = ctx(bits);
            let pi = machin_pi(&c);
            let tol = c.ulp_scaled(12);
            let sb = salamin_brent_pi(&c).unwrap();
            assert!((&sb.value - &pi).abs() <= tol);
            let via = pi_via_pi4(&c).unwrap();
            assert!((&via.value - &pi).abs() <= tol);
            let wp = c.work_bits();
            let pi4 = pi.div_prec(&Real::from_i64(2, wp).sqrt(wp).unwrap(), wp);
            assert!((&pi4_formula(&c).unwrap().value - &pi4).abs() <= tol);
            let bound = (bits as f64).log2().ceil() as u32 + 2;
            assert!(sb.iterations_used <= bound, "{bits}: {}", sb.iterations_used);
        }
    }

    #[test]
    fn cubic_formula() {
        let c = ctx(256);
        let r = pi3_formula(&c).unwrap();
        let wp = c.work_bits();
        let want = consts::pi(wp).mul_int(4).div_prec(&Real::from_i64(27, wp).sqrt(wp).unwrap(), wp);
        assert!((&r.value - &want).abs() <= c.ulp_scaled(12));
        assert!(r.digits(10).starts_with("2.418399152"));
        // terms are non-negative and shrink until they vanish
        let trace = r.trace.unwrap();
        let f = Formula::new(Method::Pi3, wp).unwrap();
        let terms: Vec<Real> = trace.rows()[1..].iter().map(|row| f.term(row, wp)).collect();
        assert!(terms[0].is_positive() && terms.iter().all(|t| !t.is_negative()));
        assert!(terms.windows(2).all(|w| w[1] < w[0] || w[1].is_zero()));
    }

    #[test]
    fn scaled_quartic_is_root_two_times_quartic() {
        let c = ctx(256);
        let wp = c.work_bits();
        let a = pi_via_pi4(&c).unwrap().value;
        let b = pi4_formula(&c).unwrap().value.mul_prec(&Real::from_i64(2, wp).sqrt(wp).unwrap(), wp);
        assert!((&a - &b).abs() <= c.ulp_scaled(2));
        assert!(pi4_formula(&c).unwrap().digits(10).starts_with("2.221441469"));
    }

    #[test]
    fn truncated_series() {
        let c = ctx(256);
        let one = partial_formula(Method::SalaminBrent, 1, &c).unwrap();
        assert!(one.to_decimal(5).starts_with("3.140"));
        for method in [Method::SalaminBrent, Method::Pi3, Method::Pi4] {
            let vals: Vec<Real> = (1..=5).map(|m| partial_formula(method, m, &c).unwrap()).collect();
            let diffs: Vec<Real> = vals.windows(2).map(|w| (&w[1] - &w[0]).abs()).collect();
            for w in diffs.windows(2) {
                assert!(w[1] < w[0] || w[1].is_zero(), "{method}");
            }
        }
        assert!(partial_formula(Method::Machin, 1, &c).is_err());
        assert!(partial_formula(Method::Pi4, 0, &c).is_err());
    }

    #[test]
    fn digit_budget() {
        let c = ctx(256);
        assert!(check_digits(70, &c).is_ok());
        assert!(check_digits(80, &c).is_err());
        assert!(check_digits(0, &c).is_err());
        let r = compute(Method::Machin, &c).unwrap();
        assert!(r.trace.is_none());
        assert!(r.requested_digits as f64 * 10f64.log2() + 16.0 <= 256.0);
    }
}
