//! Brute-force finite-field oracle.
//!
//! Table-driven arithmetic over small fields and length-2 rings, exhaustive
//! similarity-class censuses of `gl_n(F_q)` / `gu_n(F_q)`, and explicit
//! matrix groups whose orders, class counts and symmetric-element counts are
//! computed by enumeration.

pub mod census;
pub mod classify;
pub mod groups;
pub mod matrix;
pub mod poly;
pub mod ring;

pub use census::{census, census_gl, census_gu, CensusOptions, CensusReport, TypeCensus, Variant};
pub use classify::{ClassInvariant, ClassKey, Classifier};
pub use groups::{count_unitary_symmetric, family_211, family_l1, level_one, level_two, GroupCensus, MatrixGroup};
pub use matrix::Mat;
pub use ring::Ring;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("{what} has {size} elements to scan, above the limit {limit} (use --slow)")]
    TooLarge { what: String, size: u128, limit: u128 },
    #[error("no table for the field or ring of order {0}")]
    UnsupportedField(u64),
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("element set is not a group: {0}")]
    NotAGroup(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
