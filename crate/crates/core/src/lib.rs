#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod arith;
pub mod config;
pub mod constants;
pub mod empirical;
pub mod error;
pub mod gaps;
pub mod interval;
pub mod optimize;
pub mod poly;
pub mod quad;
pub mod perron;
pub mod weights;
pub mod zeta;

pub use error::{Error, Result};
pub use interval::Interval;
