//! Exact counting of generalized (colored) compositions with a fixed number
//! of parts.
//!
//! A color sequence `b = (b_1, b_2, ...)` says how many distinguishable types
//! of the part `i` exist. This crate computes `C(n, k)`, the number of colored
//! compositions of `n` with `k` parts, and the totals `C(n)` along four
//! independent routes:
//!
//! - [`counting`]: the dynamic-programming recursions over a memoized table,
//! - [`enumeration`]: brute-force generation of every composition,
//! - [`series`]: coefficient extraction from powers of `B(x) = sum b_i x^i`,
//! - [`closed_forms`]: the closed formulas known for particular families.
//!
//! [`recurrence`] derives constant-coefficient linear recurrences for the
//! binomial families and [`verify`] runs every cross-check as a report.

pub mod cli;
pub mod closed_forms;
pub mod counting;
pub mod decimal;
pub mod enumeration;
mod error;
pub mod par;
pub mod recurrence;
pub mod sequences;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use sequences::{BigCount, ColorFamily, FamilyKind};
