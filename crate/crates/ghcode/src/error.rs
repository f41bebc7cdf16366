use thiserror::Error;

/// Errors shared by the sequence, coding, stream, and container layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A sequence term or accumulated value left the exact `i64` range.
    #[error("arithmetic overflow while computing sequence terms")]
    ArithmeticOverflow,

    /// The sequence cannot back a prefix-free code over the requested range.
    #[error("sequence ({a}, {b}) unsuitable for coding: {reason}")]
    SequenceDegenerate { a: i64, b: i64, reason: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// No representation of `n` exists under the given sequence.
    #[error("{n} has no representation under sequence ({a}, {b})")]
    NotEncodable { n: i64, a: i64, b: i64 },

    /// The greedy policy only applies to the standard sequence.
    #[error("greedy policy requires the standard sequence (1, 2), got ({a}, {b})")]
    InvalidPolicy { a: i64, b: i64 },

    /// The bit source ran out before a "11" terminator was seen.
    #[error("bit stream ended before a codeword terminator")]
    IncompleteCodeword,

    /// A codeword decoded to a value below 1; valid streams carry positive
    /// integers only.
    #[error("codeword decodes to {0}, which is not a positive integer")]
    DecodedNonPositive(i64),

    #[error("nonzero bits remain after the final decoded symbol")]
    TrailingGarbage,

    #[error("bit buffer capacity of {0} bits exceeded")]
    CapacityExceeded(usize),

    /// A configured sequence cannot encode every rank up to the stream
    /// maximum, so the configuration is rejected up front.
    #[error("sequence ({a}, {b}) cannot encode rank {rank}")]
    InfeasibleParamSet { a: i64, b: i64, rank: i64 },

    #[error("not a GHC container (bad magic)")]
    BadMagic,

    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),

    #[error("corrupt container: {0}")]
    CorruptHeader(&'static str),

    /// A decoded rank points past the end of the container's symbol table.
    #[error("decoded rank {rank} exceeds the symbol table ({table_len} entries)")]
    RankOutOfRange { rank: i64, table_len: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
