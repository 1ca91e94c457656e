//! Numerical core for Curie-Weiss type random matrix experiments.
//!
//! Everything in this crate is deterministic given its inputs: samplers take
//! an explicit counter-based RNG, quadrature and eigensolvers are pure, and
//! no IO happens here. The companion `cwsc` crate carries the CLI, file
//! formats and the parallel experiment runner.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod mixing;
pub mod quad;
pub mod rng;

pub use error::Error;
pub use num_complex::Complex64;

pub type Result<T> = core::result::Result<T, Error>;
