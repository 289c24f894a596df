use alloc::sync::Arc;
use core::fmt;

use crate::error::{domain_err, Result};

use super::quad::NodeCache;
use super::real::Real;

/// Extra bits carried by internal arithmetic on top of [`PrecisionContext::bits`].
pub const GUARD_BITS: usize = 32;

pub const MIN_BITS: usize = 64;
pub const DEFAULT_MAX_QUAD_LEVEL: u32 = 12;
pub const DEFAULT_MAX_ITERS: u32 = 64;

/// Working precision plus the tolerances every operation is run against.
///
/// Cloning is cheap; clones (and contexts derived with [`with_bits`])
/// share one quadrature node cache.
///
/// [`with_bits`]: PrecisionContext::with_bits
#[derive(Clone)]
pub struct PrecisionContext {
    bits: usize,
    quad_tol: Real,
    max_quad_level: u32,
    max_iters: u32,
    nodes: Arc<NodeCache>,
}

impl PrecisionContext {
    /// Context with `bits` of precision and default tolerances
    /// (`quad_tol = 2^(10-bits)`, 12 quadrature levels, 64 iterations).
    pub fn new(bits: usize) -> Result<Self> {
        Self::with_cache(bits, Arc::new(NodeCache::default()))
    }

    fn with_cache(bits: usize, nodes: Arc<NodeCache>) -> Result<Self> {
        if bits < MIN_BITS {
            return Err(domain_err!("precision must be at least {MIN_BITS} bits, got {bits}"));
        }
        Ok(PrecisionContext {
            bits,
            quad_tol: Real::pow2(10 - bits as i64, 64),
            max_quad_level: DEFAULT_MAX_QUAD_LEVEL,
            max_iters: DEFAULT_MAX_ITERS,
            nodes,
        })
    }

    /// Same limits and node cache, different precision (tolerance reset to
    /// its default for the new precision).
    pub fn with_bits(&self, bits: usize) -> Result<Self> {
        let mut ctx = Self::with_cache(bits, self.nodes.clone())?;
        ctx.max_quad_level = self.max_quad_level;
        ctx.max_iters = self.max_iters;
        Ok(ctx)
    }

    pub fn with_quad_tol(mut self, tol: Real) -> Result<Self> {
        if !(tol.is_positive() && tol < Real::one(64)) {
            return Err(domain_err!("quadrature tolerance must lie in (0, 1)"));
        }
        self.quad_tol = tol;
        Ok(self)
    }

    pub fn with_max_quad_level(mut self, level: u32) -> Result<Self> {
        if !(1..=24).contains(&level) {
            return Err(domain_err!("quadrature level cap must lie in 1..=24"));
        }
        self.max_quad_level = level;
        Ok(self)
    }

    pub fn with_max_iters(mut self, iters: u32) -> Result<Self> {
        if iters == 0 {
            return Err(domain_err!("iteration cap must be positive"));
        }
        self.max_iters = iters;
        Ok(self)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Precision used for internal arithmetic.
    pub fn work_bits(&self) -> usize {
        self.bits + GUARD_BITS
    }

    pub fn quad_tol(&self) -> &Real {
        &self.quad_tol
    }

    pub fn max_quad_level(&self) -> u32 {
        self.max_quad_level
    }

    pub fn max_iters(&self) -> u32 {
        self.max_iters
    }

    /// `2^(offset - bits)`, the unit most tolerances are phrased in.
    pub fn ulp_scaled(&self, offset: i64) -> Real {
        Real::pow2(offset - self.bits as i64, 64)
    }

    /// Truncation threshold for hypergeometric and arctangent series.
    pub fn series_cutoff(&self) -> Real {
        Real::pow2(-(self.bits as i64) - 8, 64)
    }

    /// Accuracy claimed for series evaluations: `2^(8 - bits)`.
    pub fn series_tol(&self) -> Real {
        self.ulp_scaled(8)
    }

    /// Integer at working precision.
    pub fn int(&self, v: i64) -> Real {
        Real::from_i64(v, self.work_bits())
    }

    /// `num/den` at working precision.
    pub fn frac(&self, num: i64, den: i64) -> Real {
        Real::ratio(num, den, self.work_bits())
    }

    /// Exact binary value of `v` at working precision.
    pub fn float(&self, v: f64) -> Real {
        Real::from_f64(v, self.work_bits())
    }

    /// Decimal literal at working precision.
    pub fn parse(&self, s: &str) -> Result<Real> {
        Real::parse(s, self.work_bits())
    }

    /// Rounds a working value to the public precision.
    pub fn finish(&self, v: &Real) -> Real {
        v.with_prec(self.bits)
    }

    pub(crate) fn nodes(&self) -> &NodeCache {
        &self.nodes
    }
}

impl fmt::Debug for PrecisionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PrecisionContext")
            .field("bits", &self.bits)
            .field("quad_tol_log2", &self.quad_tol.exponent().map(|e| e - 1))
            .field("max_quad_level", &self.max_quad_level)
            .field("max_iters", &self.max_iters)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let ctx = PrecisionContext::new(256).unwrap();
        assert_eq!(ctx.quad_tol(), &Real::pow2(-246, 64));
        assert_eq!(ctx.max_quad_level(), 12);
        assert_eq!(ctx.max_iters(), 64);
        assert_eq!(ctx.work_bits(), 288);
    }

    #[test]
    fn rejects_bad_settings() {
        assert!(PrecisionContext::new(32).is_err());
        let ctx = PrecisionContext::new(128).unwrap();
        assert!(ctx.clone().with_quad_tol(Real::one(64)).is_err());
        assert!(ctx.clone().with_quad_tol(Real::zero(64)).is_err());
        assert!(ctx.clone().with_max_iters(0).is_err());
        assert!(ctx.with_max_quad_level(0).is_err());
    }
}
