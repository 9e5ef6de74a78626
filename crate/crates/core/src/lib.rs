//! Executable decision procedures and certificates for orbit intersections
//! over Q.
//!
//! * [`arith`]: rationals, primality, factorization, valuations, heights.
//! * [`order`]: multiplicative orders modulo primes and primitive-divisor
//!   spectra.
//! * [`power`]: the d-th power map on P², torus-translate curves, lines.
//! * [`adelic`]: residue-level limit refutations and the profinite
//!   power-limit argument.
//! * [`elliptic`]: short Weierstrass curves over Q and F_p, point orders,
//!   the elliptic order spectrum and the translated-subvariety test.

pub mod adelic;
pub mod arith;
pub mod config;
pub mod elliptic;
pub mod error;
pub mod order;
pub mod power;

pub use arith::{BigRat, FactorOracle, Factorer, Factorization, PlaceSet};
pub use config::SearchConfig;
pub use error::{Error, Result};

/// Version tag embedded in every serialized report.
pub const SCHEMA_VERSION: u32 = 1;
