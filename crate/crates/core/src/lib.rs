//! Numerical toolkit for shifted zero sums of the Riemann zeta function.
//!
//! * [`eval`]: ζ, Hardy's Z, θ, 𝒳, ψ and ζ'/ζ with error estimates.
//! * [`zeros`]: critical-line zero search, counting and zero tables.
//! * [`arith`]: von Mangoldt sieve, twisted coefficients D_y(n), Chebyshev sums.
//! * [`primes`]: primality, witness primes and prime ranges.
//! * [`experiment`]: the zero sum Σ x^ρ ζ(ρ+iy), its main term and related counts.
//! * [`lab`]: numerical checks of auxiliary estimates.
//! * [`report`]: CSV, JSON and SVG output.

pub mod arith;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod lab;
pub mod numeric;
pub mod primes;
pub mod quad;
pub mod report;
pub mod zeros;

pub use error::{Error, Result};
