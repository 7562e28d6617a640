//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by table builders, special functions, zero scans and
/// residual evaluation.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the operation's documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A size or modulus exceeded its configured cap.
    #[error("{what} = {requested} exceeds configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    /// Evaluation requested at a pole.
    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    /// Argument outside the configured accuracy strip.
    #[error("|Im s| = {im} outside configured strip |Im s| <= {strip}")]
    OutsideStrip { im: f64, strip: f64 },

    /// An operation that requires a primitive character received an
    /// imprimitive one.
    #[error("character index {index} mod {modulus} is imprimitive (conductor {conductor})")]
    ImprimitiveCharacter {
        modulus: u64,
        index: usize,
        conductor: u64,
    },

    /// A table was too short for the requested truncation.
    #[error("table of limit {have} is too short: need at least {need}")]
    InsufficientTable { have: u64, need: u64 },

    /// A non-finite value appeared where the contract forbids it.
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    /// A realness self-check failed.
    #[error("imaginary residue {residue:e} exceeds tolerance {tol:e} in {what}")]
    ImaginaryResidue {
        what: &'static str,
        residue: f64,
        tol: f64,
    },

    /// A zero set for a complex character was summed as if self-conjugate.
    #[error("symmetry flag misuse: {0}")]
    SymmetryMisuse(String),

    /// A required input for a residual evaluation was missing.
    #[error("identity {identity} requires {what}, which was not supplied")]
    MissingInput {
        identity: &'static str,
        what: &'static str,
    },

    /// The recorded tail bound exceeds 10% of the identity's normalizer.
    #[error("truncation too low: tail bound {tail:e} exceeds 10% of normalizer {normalizer:e}")]
    TruncationTooLow { tail: f64, normalizer: f64 },

    /// Malformed zero file.
    #[error("zero file {path}, line {line}: {msg}")]
    ZeroFileFormat {
        path: String,
        line: usize,
        msg: String,
    },

    /// Corrupted binary cache file.
    #[error("cache file {path} corrupt at offset {offset}: {msg}")]
    CacheCorrupt {
        path: String,
        offset: u64,
        msg: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
