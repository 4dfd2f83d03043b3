//! Analytic computation of r-color partition numbers, 1 <= r <= 24, through
//! Kloosterman–Bessel series, certified against exact integer recurrences.
//!
//! The library evaluates the Fourier coefficients of Poincaré series on
//! SL2(Z) with eta-power multipliers. The coefficient of index r/24 in the
//! weight 2 + r/2, index -n + r/24 series equals -p_r(n), which recovers
//! Rademacher's classical convergent series for p(n) in the r = 1 case.
//! Every analytic integer produced here can be certified against an exact
//! pentagonal/convolution recurrence oracle.
//!
//! The main entry points:
//!
//! - [`oracle`] — exact p(n), p_r(n) tables, divisor sums, Bernoulli numbers
//! - [`modular`] — SL2(Z) matrices, the Dedekind eta function and its
//!   multiplier system as an exact 24th root of unity
//! - [`kloosterman`] — the generalized Kloosterman sums A(m, n; c)
//! - [`bessel`] — half-integer order J and I Bessel series, the sinh kernel
//! - [`poincare`] — assembly of Poincaré-series Fourier coefficients
//! - [`partitions`] — p_r(n) and p(n) pipelines with integer certification
//! - [`verify`] — self-check suites runnable from the CLI
//!
//! See the crate `examples/` directory for one runnable example per major
//! capability, and the `rademacher` binary for the command-line interface.

pub mod bessel;
pub mod error;
pub mod hp;
pub mod kloosterman;
pub mod modular;
pub mod oracle;
pub mod partitions;
pub mod poincare;
pub mod precision;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use hp::Complex;
pub use kloosterman::RationalIndex24;
pub use precision::PrecisionContext;
