//! Detecting functions whose Fourier transform changes sign, from samples of the
//! function alone.

// NaN must fail every range check, so checks are written as `!(x > 0.0)`;
// matrix code indexes several arrays per loop.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod basis;
pub mod bochner;
pub mod error;
pub mod harness;
pub mod oracle;
pub mod poisson;
pub mod specialfn;
pub mod verdict;

pub use error::{Error, Result};
