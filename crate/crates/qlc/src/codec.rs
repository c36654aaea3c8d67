//! Encoder/decoder lookup tables, the packed bitstream, and the QLC1
//! container format.
//!
//! Container layout, all fields in order:
//!   magic "QLC1" (4 bytes) | version 0x01 (1) | scheme descriptor
//!   (8 bytes, symbol_bits per area) | mapping table (256 bytes,
//!   rank -> original byte) | payload_length (u64 LE, symbol count) |
//!   payload (codewords packed MSB-first, zero-padded to a byte).

use crate::bitio::{BitReader, BitWriter};
use crate::error::QlcError;
use crate::scheme::{QlcScheme, NUM_AREAS, PREFIX_BITS};
use crate::stats::{rank_symbols, Pmf256};

pub const MAGIC: [u8; 4] = *b"QLC1";
pub const VERSION: u8 = 0x01;
/// Header bytes before the payload: 4 + 1 + 8 + 256 + 8.
pub const HEADER_LEN: usize = 277;

/// Bijection between byte values and frequency ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolMapping {
    rank_of: [u8; 256],
    value_of: [u8; 256],
}

impl SymbolMapping {
    /// Rank byte values by descending probability.
    pub fn from_pmf(pmf: &Pmf256) -> Self {
        Self::from_value_of(rank_symbols(pmf)).unwrap()
    }

    pub fn identity() -> Self {
        let id: [u8; 256] = std::array::from_fn(|i| i as u8);
        SymbolMapping {
            rank_of: id,
            value_of: id,
        }
    }

    /// Build from the rank -> value table, checking it is a permutation.
    pub fn from_value_of(value_of: [u8; 256]) -> Result<Self, QlcError> {
        let mut rank_of = [0u8; 256];
        let mut seen = [false; 256];
        for (rank, &v) in value_of.iter().enumerate() {
            if seen[v as usize] {
                return Err(QlcError::InvalidMapping);
            }
            seen[v as usize] = true;
            rank_of[v as usize] = rank as u8;
        }
        Ok(SymbolMapping { rank_of, value_of })
    }

    pub fn rank_of(&self, value: u8) -> u8 {
        self.rank_of[value as usize]
    }

    pub fn value_of(&self, rank: u8) -> u8 {
        self.value_of[rank as usize]
    }

    pub fn value_table(&self) -> &[u8; 256] {
        &self.value_of
    }
}

/// 256-entry encode LUT: byte value -> (codeword, length).
#[derive(Debug, Clone)]
pub struct EncoderTable {
    codes: [(u16, u8); 256],
}

impl EncoderTable {
    pub fn new(scheme: &QlcScheme, mapping: &SymbolMapping) -> Self {
        let mut codes = [(0u16, 0u8); 256];
        for (v, slot) in codes.iter_mut().enumerate() {
            let rank = mapping.rank_of(v as u8);
            let a = scheme.area_of_rank(rank);
            let suffix = rank as u16 - a.base_offset;
            let code = ((a.area_code as u16) << a.symbol_bits) | suffix;
            *slot = (code, a.code_length);
        }
        EncoderTable { codes }
    }

    #[inline]
    pub fn code(&self, value: u8) -> (u16, u8) {
        self.codes[value as usize]
    }
}

/// A parsed (or freshly encoded) QLC1 container.
#[derive(Debug, Clone, PartialEq)]
pub struct QlcContainer {
    pub scheme: QlcScheme,
    pub mapping: SymbolMapping,
    /// Number of original symbols in the payload.
    pub payload_length: u64,
    pub payload: Vec<u8>,
}

impl QlcContainer {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.payload.len());
        out.extend_from_slice(&MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&self.scheme.symbol_bits());
        out.extend_from_slice(self.mapping.value_table());
        out.extend_from_slice(&self.payload_length.to_le_bytes());
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, QlcError> {
        if bytes.len() < 5 {
            return Err(QlcError::TruncatedHeader);
        }
        if bytes[..4] != MAGIC {
            return Err(QlcError::BadMagic);
        }
        if bytes[4] != VERSION {
            return Err(QlcError::BadVersion);
        }
        if bytes.len() < HEADER_LEN {
            return Err(QlcError::TruncatedHeader);
        }
        let mut descriptor = [0u8; NUM_AREAS];
        descriptor.copy_from_slice(&bytes[5..13]);
        let scheme = QlcScheme::from_symbol_bits(descriptor)?;
        let mut value_of = [0u8; 256];
        value_of.copy_from_slice(&bytes[13..269]);
        let mapping = SymbolMapping::from_value_of(value_of)?;
        let payload_length = u64::from_le_bytes(bytes[269..277].try_into().unwrap());
        Ok(QlcContainer {
            scheme,
            mapping,
            payload_length,
            payload: bytes[HEADER_LEN..].to_vec(),
        })
    }
}

/// Encode `data` under a scheme and mapping. Every byte value has a
/// code, so this cannot fail.
pub fn encode(data: &[u8], scheme: &QlcScheme, mapping: &SymbolMapping) -> QlcContainer {
    let table = EncoderTable::new(scheme, mapping);
    let mut w = BitWriter::new();
    for &b in data {
        let (code, len) = table.code(b);
        w.write_bits(code as u32, len);
    }
    QlcContainer {
        scheme: scheme.clone(),
        mapping: mapping.clone(),
        payload_length: data.len() as u64,
        payload: w.finish(),
    }
}

/// Exact bit length of `data` coded under `scheme` + `mapping`, without
/// packing anything.
pub fn encoded_bit_length(data: &[u8], scheme: &QlcScheme, mapping: &SymbolMapping) -> u64 {
    let table = EncoderTable::new(scheme, mapping);
    data.iter().map(|&b| table.code(b).1 as u64).sum()
}

/// Length-prefixed decode: 3 prefix bits select the area and thereby
/// the suffix width, the suffix plus the area's base offset gives the
/// encoded symbol, and the mapping LUT restores the original byte.
pub fn decode(c: &QlcContainer) -> Result<Vec<u8>, QlcError> {
    let mut suffix_bits = [0u8; NUM_AREAS];
    let mut base = [0u16; NUM_AREAS];
    let mut count = [0u16; NUM_AREAS];
    for (i, a) in c.scheme.areas().iter().enumerate() {
        suffix_bits[i] = a.symbol_bits;
        base[i] = a.base_offset;
        count[i] = a.count;
    }
    let value_of = c.mapping.value_table();

    let mut r = BitReader::new(&c.payload);
    let mut out = Vec::with_capacity(c.payload_length as usize);
    for _ in 0..c.payload_length {
        let area = r.read_bits(PREFIX_BITS).ok_or(QlcError::TruncatedPayload)? as usize;
        let suffix = r
            .read_bits(suffix_bits[area])
            .ok_or(QlcError::TruncatedPayload)? as u16;
        if suffix >= count[area] {
            return Err(QlcError::InvalidCode);
        }
        out.push(value_of[(base[area] + suffix) as usize]);
    }
    if r.bits_remaining() > 7 {
        return Err(QlcError::TrailingGarbage);
    }
    Ok(out)
}

/// One-bit-at-a-time reference decoder. Same observable contract as
/// [`decode`], but pulls every bit individually with its own index
/// arithmetic; used as a correctness oracle and speed baseline.
pub fn decode_bit_sequential(c: &QlcContainer) -> Result<Vec<u8>, QlcError> {
    #[inline]
    fn bit_at(data: &[u8], i: u64) -> Option<u16> {
        let byte = *data.get((i / 8) as usize)?;
        Some(((byte >> (7 - (i % 8))) & 1) as u16)
    }

    let areas = c.scheme.areas();
    let value_of = c.mapping.value_table();
    let total_bits = c.payload.len() as u64 * 8;

    let mut pos: u64 = 0;
    let mut out = Vec::with_capacity(c.payload_length as usize);
    for _ in 0..c.payload_length {
        let mut area = 0u16;
        for _ in 0..PREFIX_BITS {
            area = (area << 1) | bit_at(&c.payload, pos).ok_or(QlcError::TruncatedPayload)?;
            pos += 1;
        }
        let a = &areas[area as usize];
        let mut suffix = 0u16;
        for _ in 0..a.symbol_bits {
            suffix = (suffix << 1) | bit_at(&c.payload, pos).ok_or(QlcError::TruncatedPayload)?;
            pos += 1;
        }
        if suffix >= a.count {
            return Err(QlcError::InvalidCode);
        }
        out.push(value_of[(a.base_offset + suffix) as usize]);
    }
    if total_bits - pos > 7 {
        return Err(QlcError::TrailingGarbage);
    }
    Ok(out)
}

/// Parse a container from bytes and decode it.
pub fn decode_bytes(bytes: &[u8]) -> Result<Vec<u8>, QlcError> {
    decode(&QlcContainer::from_bytes(bytes)?)
}
