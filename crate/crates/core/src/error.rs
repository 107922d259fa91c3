use crate::polyroot::RootInterval;

/// Errors raised by the engine.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("class ({x}, {y}, {z}) is outside the fibered cone: {violated} violated")]
    ConeViolation {
        x: i64,
        y: i64,
        z: i64,
        violated: &'static str,
    },

    #[error("class ({x}, {y}, {z}) is not primitive")]
    NotPrimitive { x: i64, y: i64, z: i64 },

    #[error("class ({x}, {y}, {z}) gives a non-integral or negative genus")]
    InconsistentGenus { x: i64, y: i64, z: i64 },

    #[error("invalid family parameters (k, l) = ({k}, {l}): {reason}")]
    FamilyRange { k: i64, l: i64, reason: &'static str },

    #[error("polynomial {0} has no real root greater than 1")]
    NoRootAboveOne(String),

    #[error("precision cap of {bits} bits reached; best bracket [{}, {}]", .best.lo, .best.hi)]
    PrecisionExhausted { bits: u64, best: Box<RootInterval> },

    #[error("comparison undecidable at {bits} bits: brackets still overlap and no common root is certified")]
    Undecidable { bits: u64 },

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid width `{0}`: expected a power of two such as 2^-40")]
    InvalidWidth(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
