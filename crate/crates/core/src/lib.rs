//! Topological generation of `SL_n` by tuples of conjugacy classes.
//!
//! The crate has two layers:
//!
//! * a symbolic layer ([`classdata`], [`obstructions`], [`stabbounds`]) that
//!   works with conjugacy classes of `SL_n` over an algebraically closed field
//!   as eigenvalue-labelled multisets of Jordan block partitions, decides
//!   whether a tuple of classes can topologically generate, and evaluates the
//!   associated dimension bounds in exact integer/rational arithmetic;
//! * a finite-field layer ([`gflinalg`], [`genexp`]) that realizes classes as
//!   matrices over `GF(p^k)` and checks the symbolic predictions by exact
//!   enumeration on tiny groups and by seeded Monte Carlo sampling.
//!
//! The symbolic criterion is stated for an uncountable algebraically closed
//! field. It is used here as a field-independent combinatorial predicate; the
//! finite-field experiments test its necessity direction directly and its
//! sufficiency direction through generation probabilities.

pub mod classdata;
pub mod error;
pub mod genexp;
pub mod gflinalg;
pub mod obstructions;
pub mod oracle;
pub mod stabbounds;
pub mod verify;

pub use error::{Error, Result};

/// Seed used when the caller does not supply one.
pub const DEFAULT_SEED: u64 = 0x5EED_2016;
