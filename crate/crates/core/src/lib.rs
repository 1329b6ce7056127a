//! Constructive machinery for codes defined by planar Tanner graphs.
//!
//! The crate builds the check graph of an embedded Tanner graph, its check
//! inverse and planar dual, enumerates complete 3-graphs in the dual and uses
//! them to locate codeword-supporting check sets. Every certified distance
//! bound carries an explicit low-weight codeword.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod bound;
pub mod check;
pub mod dual;
pub mod embed;
mod error;
pub mod gf2;
pub mod placement;
pub mod rational;
pub mod tanner;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
pub use rational::Ratio;
pub use tanner::{CodeSummary, TannerGraph};
