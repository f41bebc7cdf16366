//! Transmitted codewords: a representation with one extra 1 appended.
//!
//! Because the representation's top bit is set and no two of its bits are
//! adjacent, the appended 1 creates the codeword's only "11" pair, right at
//! the end. A decoder therefore just scans for the first "11" — no length
//! prefix, no lookahead — which is the prefix property that makes these
//! codes instantaneous.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::representations::{enumerate_representations, zeckendorf_greedy, Representation};
use crate::sequences::SequenceDef;

/// A self-delimiting codeword, transmitted index-0 bit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Codeword {
    bits: Vec<bool>,
}

impl Codeword {
    /// Build from raw bits, checking the codeword invariants: length at
    /// least 2, terminating "11", and no earlier "11".
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        let len = bits.len();
        if len < 2 || !bits[len - 1] || !bits[len - 2] {
            return Err(Error::InvalidArgument(
                "a codeword must end with the pair 11".into(),
            ));
        }
        if bits[..len - 1].windows(2).any(|w| w[0] && w[1]) {
            return Err(Error::InvalidArgument(
                "terminator pair 11 occurs before the end of the codeword".into(),
            ));
        }
        Ok(Codeword { bits })
    }

    /// Append the terminating 1 to a representation.
    pub fn from_representation(rep: &Representation) -> Self {
        let mut bits = rep.bits().to_vec();
        bits.push(true);
        Codeword { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit_len(&self) -> usize {
        self.bits.len()
    }

    /// The representation carried by this codeword (terminator dropped).
    pub fn representation(&self) -> Representation {
        Representation::new(self.bits[..self.bits.len() - 1].to_vec())
            .expect("codeword invariants imply a valid representation")
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Codeword::new(parse_bits(s)?)
    }
}

/// Parse an ASCII string of '0'/'1' characters into bits, index 0 first.
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::InvalidArgument(format!(
                "bit strings may only contain 0 and 1, found {other:?}"
            ))),
        })
        .collect()
}

/// How to pick the single transmitted codeword when a variant sequence
/// admits several representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CanonicalPolicy {
    /// Minimum top index, ties broken by the lexicographically smallest bit
    /// string from index 0. This is the first element of the enumeration
    /// order and always the shortest codeword.
    #[default]
    ShortestThenLex,
    /// The greedy Zeckendorf representation; standard sequence only.
    GreedyStandard,
}

/// The canonical codeword for `n` under `def` and `policy`.
pub fn encode_integer(n: i64, def: &SequenceDef, policy: CanonicalPolicy) -> Result<Codeword> {
    match policy {
        CanonicalPolicy::GreedyStandard => {
            if !def.is_standard() {
                return Err(Error::InvalidPolicy {
                    a: def.a(),
                    b: def.b(),
                });
            }
            Ok(Codeword::from_representation(&zeckendorf_greedy(n)?))
        }
        CanonicalPolicy::ShortestThenLex => enumerate_representations(n, def, Some(1))?
            .first()
            .map(Codeword::from_representation)
            .ok_or(Error::NotEncodable {
                n,
                a: def.a(),
                b: def.b(),
            }),
    }
}

/// Decode one codeword from the front of an arbitrary bit source.
///
/// Scans for the first "11"; the prefix up to and including it is the
/// codeword. Returns the represented value (sum of the selected terms,
/// terminator excluded) and the number of bits consumed. Any valid
/// representation decodes, canonical or not. The raw value is returned
/// even when it is not positive — "11" alone decodes to the sequence's
/// first term — and stream layers reject such values.
pub(crate) fn decode_prefix(
    mut bit_at: impl FnMut(usize) -> Option<bool>,
    def: &SequenceDef,
) -> Result<(i64, usize)> {
    let mut value = 0i64;
    let mut prev = false;
    // Terms are rolled on the fly; an overflowed term is only an error if a
    // set bit actually needs it.
    let mut cur = Some(def.a());
    let mut next = Some(def.b());
    let mut k = 0usize;
    loop {
        let bit = bit_at(k).ok_or(Error::IncompleteCodeword)?;
        if bit && prev {
            return Ok((value, k + 1));
        }
        if bit {
            let term = cur.ok_or(Error::ArithmeticOverflow)?;
            value = value.checked_add(term).ok_or(Error::ArithmeticOverflow)?;
        }
        prev = bit;
        let following = match (cur, next) {
            (Some(a), Some(b)) => a.checked_add(b),
            _ => None,
        };
        cur = next;
        next = following;
        k += 1;
    }
}

/// Decode one codeword from the front of `bits`. See [`decode_prefix`] for
/// the scan semantics.
pub fn decode_codeword(bits: &[bool], def: &SequenceDef) -> Result<(i64, usize)> {
    decode_prefix(|i| bits.get(i).copied(), def)
}

/// Canonical codeword length for each `n` in `1..=max`; `None` marks
/// integers the sequence cannot encode.
pub fn codeword_lengths(
    def: &SequenceDef,
    max: i64,
    policy: CanonicalPolicy,
) -> Result<Vec<(i64, Option<usize>)>> {
    (1..=max)
        .map(|n| match encode_integer(n, def, policy) {
            Ok(cw) => Ok((n, Some(cw.bit_len()))),
            Err(Error::NotEncodable { .. }) => Ok((n, None)),
            Err(e) => Err(e),
        })
        .collect()
}
