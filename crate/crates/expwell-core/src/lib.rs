//! Bound states of the one-dimensional Schrödinger equation with the
//! exponential well `V(x) = −g² exp(−|x|)`.
//!
//! * [`specfun`]: gamma and real-order Bessel functions `J_ν`, `Y_ν`.
//! * [`solver`]: the Bessel-function shooting method. Trial solutions are
//!   normalized at the origin, their nodes are counted, and the energy
//!   parameter `k` (`E = −k²`) is bisected to a certified bracket.
//! * [`hobound`]: harmonic-oscillator majorants `ω²x² − M` osculating the
//!   well, and the upper bounds they give.
//! * [`oracle`]: an independent finite-difference reference solver.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

mod dd;
pub mod error;
pub mod hobound;
pub mod oracle;
pub mod solver;
pub mod specfun;

pub use error::{Error, Result};

/// Crate version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
