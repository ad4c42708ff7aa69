//! Sums of three squares built from mixed sums of squares and triangular
//! numbers.
//!
//! - [`squares`]: eligibility and constructive decomposition `n = x² + y² + z²`.
//! - [`solver`]: representation search, counts, exception scans and
//!   universality deciders for forms like `s+2s+3t`.
//! - [`form`]: the form model and its text syntax.
//! - [`arith`]: 2-adic splits, Legendre symbols, the relation `a R m`,
//!   divisor counts mod 4.
//! - [`verify`]: range batteries driven by the CLI and the acceptance tests.

pub mod arith;
pub mod catalog;
mod error;
pub mod form;
pub mod solver;
pub mod squares;
pub mod verify;

pub use error::{Error, Result, INPUT_CAP};
pub use form::{parse_form, MixedForm, MixedTerm, Representation, TermKind, VariableConstraint};
pub use solver::{
    asymptotically_universal, count_representations, ewell_t2, exception_set, find_representation,
    kane_odd_square_check, kane_triangular_universal, ExceptionReport, ScanOptions, UniversalityStatus,
    UniversalityVerdict,
};
pub use squares::{decompose, is_eligible, p3_count, r3_count, ThreeSquareDecomp};
