//! Complete p-elliptic integrals, generalized trigonometric functions and
//! the AGM-type mean iterations for `p = 2, 3, 4`, in arbitrary precision.
//!
//! The crate is `no_std` (it needs `alloc`). Every operation takes a
//! [`PrecisionContext`] and is deterministic for a given context and input.

#![no_std]

extern crate alloc;

pub mod agm;
pub mod error;
pub mod mpnum;
pub mod pelliptic;
pub mod piformulas;
pub mod ptrig;
pub mod report;

pub use error::{Error, Result};
pub use mpnum::{PrecisionContext, Real};
pub use ptrig::PExponent;
pub use report::{IdentityId, IdentityReport};
