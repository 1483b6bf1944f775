//! Exact decision machinery for SU(2)-abelianness of graph manifolds
//! obtained by gluing two Seifert pieces fibred over the disk, each with two
//! exceptional fibers.
//!
//! The decision path is exact throughout: angles are rational fractions of a
//! full turn, trace values are represented as `2cos(2π·turn)`, and all set
//! memberships reduce to integer arithmetic. Every top-level verdict is
//! computed along two independent routes (a closed-form condition list and an
//! exact enumeration of boundary representations) which are asserted to
//! agree, and not-abelian verdicts can be certified numerically by an
//! explicit SU(2) representation with checked residual.

pub mod decide;
pub mod exact;
pub mod gluing;
pub mod intervals;
pub mod oracle;
pub mod repsets;
pub mod seifert;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Seifert piece: {0}")]
    InvalidPiece(String),
    #[error("invalid gluing: {0}")]
    InvalidGluing(String),
    #[error("no such gluing: {0}")]
    NoSuchGluing(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("internal inconsistency (bug): {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
