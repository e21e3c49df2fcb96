//! Slow-entropy toolkit for low-complexity dynamical systems.
//!
//! The crate computes the standard zoo of slow-entropy invariants — scaled
//! orbit-growth exponents that stay meaningful where ordinary entropy
//! vanishes — for circle rotations and their Sturmian codings, products of
//! rotations, interval exchange transformations, and step-roof suspension
//! flows.  All dynamics run in exact rational arithmetic over certified
//! rational proxies of the irrational parameters; floating point enters
//! only in the final regression that turns count sequences into exponents.
//!
//! Module map:
//! - [`scales`]: scale families `n^chi`, `e^{chi n}`, `e^{n^chi}`,
//!   `n (log n)^chi` and the record-subsequence exponent fit.
//! - [`arithmetic`]: continued fractions, convergents, certified rational
//!   proxies, `eta_k` approximation errors, badly-approximable diagnostics.
//! - [`rotation_gaps`]: the Three-Gap structure of rotation orbits, exact
//!   cylinder measures and greedy covering counts.
//! - [`subshift`]: Sturmian words, factor-complexity counters, products,
//!   Bowen ball counts.
//! - [`iet`]: interval exchange transformations, refinement growth, idoc
//!   certification, and Monte-Carlo Hamming-ball covering estimates.
//! - [`suspension`]: step-roof suspension flows over rotations, Birkhoff
//!   cocycles, exact matching measure, flow covering estimates, and the
//!   skew-shift comparison system.
//! - [`experiments`]: reproducible experiment runners behind the `slowent`
//!   command-line tool (CSV emission plus JSON manifests).

pub mod arithmetic;
pub mod covering;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod iet;
pub mod rotation_gaps;
pub mod scales;
pub mod subshift;
pub mod suspension;

pub use error::{Error, Result};
pub use exact::{Int, Rat};
