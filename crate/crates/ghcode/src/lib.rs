//! Fibonacci and Gopala-Hemachandra universal codes.
//!
//! The standard Fibonacci code maps each positive integer to the bit vector
//! of its Zeckendorf representation plus a terminating 1, so every codeword
//! ends in the stream's only "11" pair and the code is prefix-free. This
//! crate implements that code and its Gopala-Hemachandra generalization,
//! where the underlying sequence is any `a, b, a+b, a+2b, ...` recurrence:
//! representation enumeration, feasibility and uniqueness analysis,
//! bit-packed stream codecs with block-wise codebook rotation, and a
//! rank-mapped file compressor with a stable container format.
//!
//! ```
//! use ghcode::{decode_codeword, encode_integer, parse_bits, SequenceDef};
//!
//! let cw = encode_integer(10, &SequenceDef::STANDARD, Default::default())?;
//! assert_eq!(cw.to_string(), "010011");
//!
//! let bits = parse_bits("010011")?;
//! assert_eq!(decode_codeword(&bits, &SequenceDef::STANDARD)?, (10, 6));
//! # Ok::<(), ghcode::Error>(())
//! ```

pub mod codeword;
pub mod container;
pub mod error;
pub mod representations;
pub mod sequences;
pub mod stream;

pub use codeword::{
    codeword_lengths, decode_codeword, encode_integer, parse_bits, CanonicalPolicy, Codeword,
};
pub use container::{build_rank_map, compress, decompress, ContainerHeader, RankMap};
pub use error::{Error, Result};
pub use representations::{
    enumerate_representations, feasibility_scan, representation_count, uniqueness_profile,
    zeckendorf_greedy, Representation,
};
pub use sequences::{SequenceDef, ValidationReport};
pub use stream::{
    decode_stream, encode_stream, BitBuffer, CodecConfig, CodecMode, RotationSchedule,
};
