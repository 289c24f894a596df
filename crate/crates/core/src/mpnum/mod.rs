//! Arbitrary-precision numerics: the [`Real`] type, precision context,
//! elementary functions, compensated summation and tanh-sinh quadrature.

pub mod consts;
pub mod context;
pub mod decimal;
pub mod elem;
pub mod quad;
pub mod real;
pub mod sum;

pub use context::{PrecisionContext, GUARD_BITS};
pub use decimal::{bits_for_digits, digits_for_bits};
pub use quad::{integrate, integrate_abscissa, Abscissa, QuadResult};
pub use real::Real;
pub use sum::sum_ordered;
