//! The arbitrary-precision real number used throughout the crate.
//!
//! A [`Real`] carries its own binary precision. Binary operators round their
//! result to the larger of the two operand precisions (ties to even), so a
//! computation seeded with values at the working precision stays there.
//! Explicit-precision variants (`add_prec`, `mul_prec`, ...) exist for the
//! places that need to widen or narrow on purpose.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, WORD_BIT_SIZE};

use crate::error::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Arbitrary-precision binary floating-point value.
#[derive(Clone)]
pub struct Real(pub(crate) BigFloat);

impl Real {
    pub fn zero(prec: usize) -> Self {
        Real(BigFloat::new(prec))
    }

    pub fn one(prec: usize) -> Self {
        Real(BigFloat::from_u8(1, prec))
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Real(BigFloat::from_i64(v, prec))
    }

    pub fn from_u64(v: u64, prec: usize) -> Self {
        Real(BigFloat::from_u64(v, prec))
    }

    /// Exact binary value of `v` (every finite `f64` is representable).
    pub fn from_f64(v: f64, prec: usize) -> Self {
        Real(BigFloat::from_f64(v, prec.max(64)))
    }

    /// `num / den` rounded to `prec` bits.
    pub fn ratio(num: i64, den: i64, prec: usize) -> Self {
        let n = BigFloat::from_i64(num, 64);
        let d = BigFloat::from_i64(den, 64);
        Real(n.div(&d, prec, RM))
    }

    /// `2^e`, exact.
    pub fn pow2(e: i64, prec: usize) -> Self {
        Real::one(prec).mul_pow2(e)
    }

    /// Parses a decimal literal such as `0.5`, `-3`, `1e-3`.
    pub fn parse(s: &str, prec: usize) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse(s.into()));
        }
        let mut cc = Consts::new().map_err(|_| Error::Parse(s.into()))?;
        let v = BigFloat::parse(trimmed, Radix::Dec, prec, RM, &mut cc);
        if v.is_nan() || v.is_inf() {
            return Err(Error::Parse(s.into()));
        }
        Ok(Real(v))
    }

    /// Precision in bits (a multiple of the machine word size).
    pub fn prec(&self) -> usize {
        self.0.mantissa_max_bit_len().unwrap_or(WORD_BIT_SIZE)
    }

    /// Rounds (or exactly widens) to `prec` bits.
    pub fn with_prec(&self, prec: usize) -> Self {
        let mut v = self.0.clone();
        if v.set_precision(prec, RM).is_err() {
            return Real(BigFloat::nan(None));
        }
        Real(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.0.is_nan() || self.0.is_inf())
    }

    /// Strictly greater than zero.
    pub fn is_positive(&self) -> bool {
        self.is_finite() && !self.is_zero() && self.0.is_positive()
    }

    /// Strictly less than zero.
    pub fn is_negative(&self) -> bool {
        self.is_finite() && !self.is_zero() && self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Real(self.0.abs())
    }

    pub fn is_integer(&self) -> bool {
        self.is_finite() && self.0.is_int()
    }

    /// Binary exponent `e` with `2^(e-1) <= |self| < 2^e`; `None` for zero
    /// and non-finite values.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() || !self.is_finite() {
            return None;
        }
        self.0.exponent().map(i64::from)
    }

    /// `self * 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        match self.exponent() {
            None => self.clone(),
            Some(e) => {
                let target = e + k;
                if target > i64::from(astro_float::EXPONENT_MAX)
                    || target < i64::from(astro_float::EXPONENT_MIN)
                {
                    return Real(BigFloat::nan(None));
                }
                let mut v = self.0.clone();
                v.set_exponent(target as i32);
                Real(v)
            }
        }
    }

    /// Nearest `f64` (truncated to 64 leading bits first); saturates to
    /// `0.0` / infinity outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf() {
            return if self.0.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let Some((words, _, sign, e, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        if self.is_zero() {
            return 0.0;
        }
        let top = *words.last().unwrap_or(&0) as f64;
        let mag = if e > 1100 {
            f64::INFINITY
        } else if e < -1200 {
            0.0
        } else {
            top * pow2_f64(e - WORD_BIT_SIZE as i32)
        };
        if sign == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> Self {
        Real(self.0.floor())
    }

    /// Value as `i64` when it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        if self.is_zero() {
            return Some(0);
        }
        let e = self.exponent()?;
        if e > 62 {
            return None;
        }
        let (words, _, sign, _, _) = self.0.as_raw_parts()?;
        let top = *words.last()? as u64;
        let mag = (top >> (WORD_BIT_SIZE as i64 - e)) as i64;
        Some(if sign == Sign::Neg { -mag } else { mag })
    }

    pub fn add_prec(&self, o: &Real, prec: usize) -> Self {
        Real(self.0.add(&o.0, prec, RM))
    }

    pub fn sub_prec(&self, o: &Real, prec: usize) -> Self {
        Real(self.0.sub(&o.0, prec, RM))
    }

    pub fn mul_prec(&self, o: &Real, prec: usize) -> Self {
        Real(self.0.mul(&o.0, prec, RM))
    }

    pub fn div_prec(&self, o: &Real, prec: usize) -> Self {
        Real(self.0.div(&o.0, prec, RM))
    }

    pub fn recip(&self) -> Self {
        Real(self.0.reciprocal(self.prec(), RM))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Real(self.0.mul(&BigFloat::from_i64(k, 64), self.prec(), RM))
    }

    pub fn div_int(&self, k: i64) -> Self {
        Real(self.0.div(&BigFloat::from_i64(k, 64), self.prec(), RM))
    }

    pub fn add_int(&self, k: i64) -> Self {
        Real(self.0.add(&BigFloat::from_i64(k, 64), self.prec(), RM))
    }

    pub fn square(&self) -> Self {
        Real(self.0.mul(&self.0, self.prec(), RM))
    }

    /// `self^n` by repeated squaring at the precision of `self`.
    pub fn powi(&self, n: u64) -> Self {
        if n == 0 {
            return Real::one(self.prec());
        }
        Real(self.0.powi(n as usize, self.prec(), RM))
    }

    pub fn min<'a>(&'a self, o: &'a Real) -> &'a Real {
        if o < self {
            o
        } else {
            self
        }
    }

    pub fn max<'a>(&'a self, o: &'a Real) -> &'a Real {
        if o > self {
            o
        } else {
            self
        }
    }

    /// Bit-level identity: same sign, exponent, precision and mantissa.
    pub fn bit_eq(&self, o: &Real) -> bool {
        match (self.0.as_raw_parts(), o.0.as_raw_parts()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.0.is_nan() == o.0.is_nan() && self.0.sign() == o.0.sign(),
            _ => false,
        }
    }
}

fn pow2_f64(e: i32) -> f64 {
    // two steps keep the intermediate inside the f64 exponent range
    let half = e / 2;
    f64_exp2(half) * f64_exp2(e - half)
}

fn f64_exp2(e: i32) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (e + 1074))
    }
}

impl PartialEq for Real {
    fn eq(&self, o: &Self) -> bool {
        self.partial_cmp(o) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        self.0.cmp(&o.0).map(|c| c.cmp(&0))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self)
    }
}

/// At most 20 significant digits unless a precision is given (`{:.50}`).
impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or_else(|| super::decimal::digits_for_bits(self.prec()).min(20));
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<'a> $tr<&'a Real> for &'a Real {
            type Output = Real;
            fn $m(self, o: &'a Real) -> Real {
                Real(self.0.$inner(&o.0, self.prec().max(o.prec()), RM))
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Real> for Real {
            type Output = Real;
            fn $m(self, o: &'a Real) -> Real {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<Real> for &'a Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.neg())
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(self.0.clone().neg())
    }
}
