//! The GHC1 container: whole-file compression with a self-describing,
//! bit-exact header.
//!
//! Input bytes are ranked by frequency (rank 1 = most frequent, ties broken
//! by ascending byte value) and the rank stream is encoded with the
//! configured code, so the shortest codewords land on the likeliest
//! symbols. Layout, all integers little-endian:
//!
//! ```text
//! magic "GHC1" | version u8 = 1 | mode u8 (0 fixed, 1 rotating)
//! fixed mode:    a i16 | b i16
//! rotating mode: seed u64 | set_len u8 | (a i16, b i16) x set_len | block_size u32
//! symbol table:  count u16 | symbols in rank order
//! payload:       symbol_count u64 | bit_length u64 | packed bits
//! ```

use crate::error::{Error, Result};
use crate::sequences::SequenceDef;
use crate::stream::{decode_stream, encode_stream, BitBuffer, CodecConfig, CodecMode, RotationSchedule};

pub const MAGIC: [u8; 4] = *b"GHC1";
pub const VERSION: u8 = 1;

const MODE_FIXED: u8 = 0;
const MODE_ROTATING: u8 = 1;

/// Frequency ranking of the distinct bytes in an input: rank 1 is the most
/// frequent, ties broken by ascending byte value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankMap {
    symbols: Vec<u8>,
    rank_of: [u16; 256],
}

impl RankMap {
    /// Rank the distinct bytes of `data` by descending frequency.
    pub fn build(data: &[u8]) -> Self {
        let mut freq = [0u64; 256];
        for &byte in data {
            freq[byte as usize] += 1;
        }
        let mut symbols: Vec<u8> = (0u16..256).map(|b| b as u8).filter(|&b| freq[b as usize] > 0).collect();
        symbols.sort_by_key(|&b| (std::cmp::Reverse(freq[b as usize]), b));
        Self::from_symbols(symbols).expect("frequency ranking yields distinct symbols")
    }

    /// Rebuild a map from a rank-ordered symbol list, e.g. a parsed header.
    pub fn from_symbols(symbols: Vec<u8>) -> Result<Self> {
        if symbols.len() > 256 {
            return Err(Error::CorruptHeader("symbol table longer than 256"));
        }
        let mut rank_of = [0u16; 256];
        for (i, &byte) in symbols.iter().enumerate() {
            if rank_of[byte as usize] != 0 {
                return Err(Error::CorruptHeader("duplicate symbol in table"));
            }
            rank_of[byte as usize] = (i + 1) as u16;
        }
        Ok(RankMap { symbols, rank_of })
    }

    /// 1-based rank of `byte`, or `None` if it never occurred.
    pub fn rank(&self, byte: u8) -> Option<u16> {
        match self.rank_of[byte as usize] {
            0 => None,
            r => Some(r),
        }
    }

    /// The byte holding 1-based `rank`.
    pub fn symbol(&self, rank: usize) -> Option<u8> {
        (rank >= 1).then(|| self.symbols.get(rank - 1).copied()).flatten()
    }

    /// Symbols in rank order.
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Everything the header records about a compressed payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerHeader {
    pub mode: CodecMode,
    /// Symbols in rank order.
    pub symbols: Vec<u8>,
    /// Number of encoded symbols in the payload.
    pub symbol_count: u64,
    /// Exact number of payload bits before padding.
    pub bit_length: u64,
}

impl ContainerHeader {
    fn def_to_wire(def: &SequenceDef, out: &mut Vec<u8>) -> Result<()> {
        let a = i16::try_from(def.a()).map_err(|_| {
            Error::InvalidArgument(format!("sequence parameter a = {} does not fit 16 bits", def.a()))
        })?;
        let b = i16::try_from(def.b()).map_err(|_| {
            Error::InvalidArgument(format!("sequence parameter b = {} does not fit 16 bits", def.b()))
        })?;
        out.extend_from_slice(&a.to_le_bytes());
        out.extend_from_slice(&b.to_le_bytes());
        Ok(())
    }

    /// Serialize the header into `out`.
    pub fn write_to(&self, out: &mut Vec<u8>) -> Result<()> {
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        match &self.mode {
            CodecMode::Fixed(def) => {
                out.push(MODE_FIXED);
                Self::def_to_wire(def, out)?;
            }
            CodecMode::Rotating(schedule) => {
                out.push(MODE_ROTATING);
                out.extend_from_slice(&schedule.seed().to_le_bytes());
                let set_len = u8::try_from(schedule.param_set().len()).map_err(|_| {
                    Error::InvalidArgument("rotation parameter set longer than 255".into())
                })?;
                out.push(set_len);
                for def in schedule.param_set() {
                    Self::def_to_wire(def, out)?;
                }
                out.extend_from_slice(&schedule.block_size().to_le_bytes());
            }
        }
        let count = u16::try_from(self.symbols.len())
            .map_err(|_| Error::InvalidArgument("symbol table longer than 65535".into()))?;
        out.extend_from_slice(&count.to_le_bytes());
        out.extend_from_slice(&self.symbols);
        out.extend_from_slice(&self.symbol_count.to_le_bytes());
        out.extend_from_slice(&self.bit_length.to_le_bytes());
        Ok(())
    }

    /// Parse a header from the front of `data`; returns the header and the
    /// number of bytes consumed.
    pub fn parse(data: &[u8]) -> Result<(Self, usize)> {
        let mut r = Reader { data, pos: 0 };
        if r.take(4).ok_or(Error::BadMagic)? != MAGIC {
            return Err(Error::BadMagic);
        }
        let version = r.u8().ok_or(Error::CorruptHeader("truncated version"))?;
        if version != VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let mode = match r.u8().ok_or(Error::CorruptHeader("truncated mode"))? {
            MODE_FIXED => {
                let a = r.i16().ok_or(Error::CorruptHeader("truncated sequence parameters"))?;
                let b = r.i16().ok_or(Error::CorruptHeader("truncated sequence parameters"))?;
                CodecMode::Fixed(SequenceDef::new(a.into(), b.into()))
            }
            MODE_ROTATING => {
                let seed = r.u64().ok_or(Error::CorruptHeader("truncated rotation seed"))?;
                let set_len = r.u8().ok_or(Error::CorruptHeader("truncated set length"))?;
                let mut defs = Vec::with_capacity(set_len as usize);
                for _ in 0..set_len {
                    let a = r.i16().ok_or(Error::CorruptHeader("truncated parameter set"))?;
                    let b = r.i16().ok_or(Error::CorruptHeader("truncated parameter set"))?;
                    defs.push(SequenceDef::new(a.into(), b.into()));
                }
                let block = r.u32().ok_or(Error::CorruptHeader("truncated block size"))?;
                let schedule = RotationSchedule::new(seed, defs, block)
                    .map_err(|_| Error::CorruptHeader("invalid rotation parameters"))?;
                CodecMode::Rotating(schedule)
            }
            _ => return Err(Error::CorruptHeader("unknown mode byte")),
        };
        let table_len = r.u16().ok_or(Error::CorruptHeader("truncated symbol count"))?;
        if table_len > 256 {
            return Err(Error::CorruptHeader("symbol table longer than 256"));
        }
        let symbols = r
            .take(table_len as usize)
            .ok_or(Error::CorruptHeader("truncated symbol table"))?
            .to_vec();
        let symbol_count = r.u64().ok_or(Error::CorruptHeader("truncated payload symbol count"))?;
        let bit_length = r.u64().ok_or(Error::CorruptHeader("truncated payload bit length"))?;
        Ok((
            ContainerHeader {
                mode,
                symbols,
                symbol_count,
                bit_length,
            },
            r.pos,
        ))
    }
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let slice = self.data.get(self.pos..self.pos + n)?;
        self.pos += n;
        Some(slice)
    }

    fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|s| s[0])
    }

    fn u16(&mut self) -> Option<u16> {
        self.take(2).map(|s| u16::from_le_bytes(s.try_into().unwrap()))
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|s| u32::from_le_bytes(s.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|s| u64::from_le_bytes(s.try_into().unwrap()))
    }

    fn i16(&mut self) -> Option<i16> {
        self.take(2).map(|s| i16::from_le_bytes(s.try_into().unwrap()))
    }
}

/// Build the frequency rank map for `data`.
pub fn build_rank_map(data: &[u8]) -> RankMap {
    RankMap::build(data)
}

fn config_defs(config: &CodecConfig) -> Vec<SequenceDef> {
    match config.mode() {
        CodecMode::Fixed(def) => vec![*def],
        CodecMode::Rotating(schedule) => schedule.param_set().to_vec(),
    }
}

/// Compress `data` into a self-contained GHC1 container.
///
/// Every sequence in the configuration must be able to encode every rank up
/// to the number of distinct bytes present; otherwise the configuration is
/// rejected with `InfeasibleParamSet` before any output is produced.
pub fn compress(data: &[u8], config: &CodecConfig) -> Result<Vec<u8>> {
    let map = RankMap::build(data);
    let max_rank = map.len() as i64;
    if max_rank > 0 {
        for def in config_defs(config) {
            for n in 1..=max_rank {
                if crate::representations::enumerate_representations(n, &def, Some(1))?.is_empty() {
                    return Err(Error::InfeasibleParamSet {
                        a: def.a(),
                        b: def.b(),
                        rank: n,
                    });
                }
            }
        }
    }

    let ranks: Vec<i64> = data
        .iter()
        .map(|&b| i64::from(map.rank(b).expect("every input byte is ranked")))
        .collect();
    let payload = encode_stream(&ranks, config)?;

    let header = ContainerHeader {
        mode: config.mode().clone(),
        symbols: map.symbols().to_vec(),
        symbol_count: data.len() as u64,
        bit_length: payload.bit_len() as u64,
    };
    let mut out = Vec::new();
    header.write_to(&mut out)?;
    out.extend_from_slice(payload.as_bytes());
    Ok(out)
}

/// Reverse [`compress`]: parse the header, decode the rank stream, and map
/// ranks back to bytes.
pub fn decompress(container: &[u8]) -> Result<Vec<u8>> {
    let (header, header_len) = ContainerHeader::parse(container)?;
    let map = RankMap::from_symbols(header.symbols.clone())?;

    let symbol_count = usize::try_from(header.symbol_count)
        .map_err(|_| Error::CorruptHeader("symbol count exceeds addressable memory"))?;
    let bit_length = usize::try_from(header.bit_length)
        .map_err(|_| Error::CorruptHeader("bit length exceeds addressable memory"))?;

    let rest = &container[header_len..];
    let expected_bytes = bit_length.div_ceil(8);
    if rest.len() > expected_bytes {
        return Err(Error::CorruptHeader("trailing bytes after payload"));
    }
    // A short payload is handed to the decoder as-is so truncation surfaces
    // as IncompleteCodeword mid-symbol rather than a parse error.
    let buf = if rest.len() < expected_bytes {
        BitBuffer::from_bytes(rest.to_vec(), rest.len() * 8)
            .map_err(|_| Error::CorruptHeader("invalid payload"))?
    } else {
        BitBuffer::from_bytes(rest.to_vec(), bit_length)
            .map_err(|_| Error::CorruptHeader("nonzero payload padding"))?
    };

    let config = match header.mode {
        CodecMode::Fixed(def) => CodecConfig::fixed(def),
        CodecMode::Rotating(schedule) => CodecConfig::rotating(schedule),
    };
    let ranks = decode_stream(&buf, symbol_count, &config)?;

    let mut out = Vec::with_capacity(symbol_count);
    for rank in ranks {
        let symbol = usize::try_from(rank)
            .ok()
            .and_then(|r| map.symbol(r))
            .ok_or(Error::RankOutOfRange {
                rank,
                table_len: map.len(),
            })?;
        out.push(symbol);
    }
    Ok(out)
}
