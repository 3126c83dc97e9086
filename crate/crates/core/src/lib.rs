//! Prime-counting approximations and prime-indexed Fourier fractals.
//!
//! The crate combines four pieces of machinery:
//!
//! * [`primes`] — a smallest-prime-factor sieve backing exact prime
//!   counting and fast factorization,
//! * [`approx`] — the additive prime-factor sum `beta_alpha`, its partial
//!   sum `B_alpha`, the scaled approximation `beta_alpha_delta(x)` of the
//!   prime counting function, and the classical comparators `x / ln x`
//!   and the offset logarithmic integral,
//! * [`weights`] — the coefficients `w_k(n)` that rewrite `B_alpha(n)` as
//!   a weighted sum over the primes up to `n`,
//! * [`fourier`] / [`transform`] / [`boxdim`] — Fourier polygons, the
//!   prime fractal polygon and curve built from them, the circulant
//!   polygon-averaging transform they diagonalize, and box-counting
//!   dimension estimation for the sampled curves.
//!
//! Everything here is pure computation over `alloc` collections; the
//! crate is `no_std` (with `alloc`). IO, file formats, and the command
//! line live in the companion `primefract` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod approx;
pub mod boxdim;
pub mod dft;
pub mod error;
mod fmath;
pub mod fourier;
pub mod primes;
pub mod transform;
pub mod weights;

pub use error::{Error, Result};
pub use num_complex::Complex64;
