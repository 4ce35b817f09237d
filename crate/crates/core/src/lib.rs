//! Exact and certified computation pipeline for the extension problem of
//! D(4)-pairs {a, ka}, k in {7, 8, 10, 11, 12, 13}.
//!
//! The crate is organized around the proof pipeline:
//!
//! - [`bigmath`]: arbitrary-precision integers, interval-certified reals,
//!   and certified comparisons. Every proof decision routes through these.
//! - [`pell`]: the pair-defining Pell equation r^2 - k a^2 = 4 and the
//!   fundamental solution classes of the extension Pellian.
//! - [`d4core`]: D(4)-tuple predicates, the d_+/d_- construction, extension
//!   families c_nu, and the bounded descent table.
//! - [`seqsys`]: the binary recurrences attached to a triple, fundamental
//!   solution classification, and exhaustive intersection search.
//! - [`linforms`]: linear forms in logarithms, Matveev's bound, and the
//!   index-range computations per family.
//! - [`reduction`]: certified Baker-Davenport reduction over continued
//!   fraction convergents.
//! - [`prover`]: case enumeration, per-case certificates, and desk-scale
//!   brute-force oracles.

pub mod bigmath;
pub mod d4core;
pub mod error;
pub mod linforms;
pub mod pell;
pub mod prover;
pub mod reduction;
pub mod seqsys;

pub use error::{Error, Result};

/// Arbitrary-precision signed integer used for every exact quantity.
pub type ExactInt = num_bigint::BigInt;
