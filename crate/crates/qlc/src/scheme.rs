//! The quad length coding scheme: 3 prefix bits select one of 8 areas,
//! each area covers a contiguous range of symbol ranks with a fixed
//! suffix width, and the whole scheme uses at most 4 distinct code
//! lengths.

use crate::error::{QlcError, SchemeViolation};
use crate::stats::Pmf256;

pub const NUM_AREAS: usize = 8;
pub const PREFIX_BITS: u8 = 3;

/// One of the 8 contiguous rank ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QlcArea {
    /// The 3 prefix bits identifying the area.
    pub area_code: u8,
    /// Suffix width in bits.
    pub symbol_bits: u8,
    /// Number of symbol ranks covered.
    pub count: u16,
    /// First rank covered.
    pub base_offset: u16,
    /// Total code length, 3 + symbol_bits.
    pub code_length: u8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QlcScheme {
    areas: [QlcArea; NUM_AREAS],
}

fn ceil_log2(n: u16) -> u8 {
    debug_assert!(n >= 1);
    (16 - (n - 1).leading_zeros()) as u8
}

impl QlcScheme {
    /// Build a scheme from the per-area suffix widths. Areas 1..7 are
    /// full (2^bits symbols); the last area takes the remaining ranks.
    /// This is also the deserialization of the 8-byte descriptor.
    pub fn from_symbol_bits(bits: [u8; NUM_AREAS]) -> Result<Self, QlcError> {
        let mut areas = [QlcArea {
            area_code: 0,
            symbol_bits: 0,
            count: 0,
            base_offset: 0,
            code_length: 0,
        }; NUM_AREAS];
        let mut offset: u32 = 0;
        for a in 0..NUM_AREAS {
            let b = bits[a];
            if b > 8 {
                return Err(QlcError::InvalidScheme(SchemeViolation::CountExceedsBits));
            }
            let count: u32 = if a < NUM_AREAS - 1 {
                1u32 << b
            } else {
                256u32
                    .checked_sub(offset)
                    .filter(|&c| c >= 1)
                    .ok_or(QlcError::InvalidScheme(SchemeViolation::BadTotal))?
            };
            if offset + count > 256 {
                return Err(QlcError::InvalidScheme(SchemeViolation::BadTotal));
            }
            areas[a] = QlcArea {
                area_code: a as u8,
                symbol_bits: b,
                count: count as u16,
                base_offset: offset as u16,
                code_length: PREFIX_BITS + b,
            };
            offset += count;
        }
        let scheme = QlcScheme { areas };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn from_areas(areas: [QlcArea; NUM_AREAS]) -> Result<Self, QlcError> {
        let scheme = QlcScheme { areas };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn areas(&self) -> &[QlcArea; NUM_AREAS] {
        &self.areas
    }

    /// Per-area suffix widths; the on-disk scheme descriptor.
    pub fn symbol_bits(&self) -> [u8; NUM_AREAS] {
        let mut out = [0u8; NUM_AREAS];
        for (o, a) in out.iter_mut().zip(self.areas.iter()) {
            *o = a.symbol_bits;
        }
        out
    }

    /// Area containing a given symbol rank.
    pub fn area_of_rank(&self, rank: u8) -> &QlcArea {
        let r = rank as u16;
        self.areas
            .iter()
            .find(|a| r < a.base_offset + a.count)
            .expect("every rank 0..255 lies in some area of a valid scheme")
    }

    /// Code length of each rank, index = rank.
    pub fn code_length_by_rank(&self) -> [u8; 256] {
        let mut out = [0u8; 256];
        for a in &self.areas {
            for r in a.base_offset..a.base_offset + a.count {
                out[r as usize] = a.code_length;
            }
        }
        out
    }

    pub fn distinct_code_lengths(&self) -> Vec<u8> {
        let mut lens: Vec<u8> = self.areas.iter().map(|a| a.code_length).collect();
        lens.sort_unstable();
        lens.dedup();
        lens
    }

    /// Kraft sum, exact: code lengths top out at 11 bits so 2^-11 units
    /// stay in integers.
    pub fn kraft_sum(&self) -> f64 {
        let units: u32 = self
            .areas
            .iter()
            .map(|a| (a.count as u32) << (11 - a.code_length))
            .sum();
        units as f64 / 2048.0
    }

    pub fn validate(&self) -> Result<(), QlcError> {
        use SchemeViolation::*;
        let mut offset: u32 = 0;
        let mut total: u32 = 0;
        for (i, a) in self.areas.iter().enumerate() {
            if a.area_code != i as u8 {
                return Err(QlcError::InvalidScheme(NonContiguousOffsets));
            }
            if a.symbol_bits > 8 || a.code_length != PREFIX_BITS + a.symbol_bits {
                return Err(QlcError::InvalidScheme(BadCodeLength));
            }
            if a.count == 0 || a.count as u32 > 1u32 << a.symbol_bits {
                return Err(QlcError::InvalidScheme(CountExceedsBits));
            }
            if i < NUM_AREAS - 1 && a.count as u32 != 1u32 << a.symbol_bits {
                return Err(QlcError::InvalidScheme(PartialInnerArea));
            }
            if i == NUM_AREAS - 1 && a.symbol_bits != ceil_log2(a.count) {
                return Err(QlcError::InvalidScheme(BadTailBits));
            }
            if a.base_offset as u32 != offset {
                return Err(QlcError::InvalidScheme(NonContiguousOffsets));
            }
            if i > 0 && a.symbol_bits < self.areas[i - 1].symbol_bits {
                return Err(QlcError::InvalidScheme(NonMonotoneBits));
            }
            offset += a.count as u32;
            total += a.count as u32;
        }
        if total != 256 {
            return Err(QlcError::InvalidScheme(BadTotal));
        }
        if self.distinct_code_lengths().len() > 4 {
            return Err(QlcError::InvalidScheme(TooManyLengths));
        }
        let kraft_units: u32 = self
            .areas
            .iter()
            .map(|a| (a.count as u32) << (11 - a.code_length))
            .sum();
        if kraft_units > 2048 {
            return Err(QlcError::InvalidScheme(KraftExceeded));
        }
        Ok(())
    }
}

/// Scheme fitted to a distribution whose top ~40 symbols share most of
/// the mass: counts 8,8,8,8,8,16,32,168 with code lengths 6,7,8,11.
pub fn preset_ffn1() -> QlcScheme {
    QlcScheme::from_symbol_bits([3, 3, 3, 3, 3, 4, 5, 8]).unwrap()
}

/// Scheme fitted to a spiky distribution with one dominant symbol:
/// counts 2,8,8,8,8,32,32,158 with code lengths 4,6,8,11.
pub fn preset_ffn2() -> QlcScheme {
    QlcScheme::from_symbol_bits([1, 3, 3, 3, 3, 5, 5, 8]).unwrap()
}

/// Expected code length in bits per symbol for a PMF coded under
/// `scheme` with byte values assigned to ranks by `ranking`.
pub fn expected_code_length(scheme: &QlcScheme, pmf: &Pmf256, ranking: &[u8; 256]) -> f64 {
    // Per-area mass times length, via the rank prefix structure.
    let mut total = 0.0;
    for a in scheme.areas() {
        let mut mass = 0.0;
        for r in a.base_offset..a.base_offset + a.count {
            mass += pmf.prob(ranking[r as usize]);
        }
        total += mass * a.code_length as f64;
    }
    total
}

/// Visit every scheme in the search family exactly once, in
/// lexicographic order of the symbol_bits tuple. The family fixes 8
/// areas: the first 7 are full with non-decreasing suffix widths, the
/// last takes the remainder at its minimal width, and the whole scheme
/// must keep to at most 4 distinct code lengths.
pub fn for_each_family_scheme(mut f: impl FnMut(&QlcScheme)) {
    let mut bits = [0u8; NUM_AREAS];
    visit(&mut bits, 0, 0, &mut f);

    fn visit(bits: &mut [u8; NUM_AREAS], area: usize, used: u32, f: &mut impl FnMut(&QlcScheme)) {
        if area == NUM_AREAS - 1 {
            let remainder = 256 - used;
            if remainder == 0 {
                return;
            }
            bits[NUM_AREAS - 1] = ceil_log2(remainder as u16);
            if bits[NUM_AREAS - 1] < bits[NUM_AREAS - 2] {
                return;
            }
            if let Ok(s) = QlcScheme::from_symbol_bits(*bits) {
                f(&s);
            }
            return;
        }
        let lo = if area == 0 { 0 } else { bits[area - 1] };
        for b in lo..=8 {
            let used = used + (1u32 << b);
            if used >= 256 {
                break;
            }
            bits[area] = b;
            visit(bits, area + 1, used, f);
        }
    }
}

/// The whole search family, cached in visit order.
pub fn family() -> &'static [QlcScheme] {
    static FAMILY: std::sync::OnceLock<Vec<QlcScheme>> = std::sync::OnceLock::new();
    FAMILY.get_or_init(|| {
        let mut out = Vec::new();
        for_each_family_scheme(|s| out.push(s.clone()));
        out
    })
}

/// Search the family for the scheme minimizing expected code length
/// under the descending-probability ranking of `pmf`. Ties go to the
/// lexicographically smallest symbol_bits tuple, which is the visit
/// order, so the first strict minimum wins.
pub fn adapt_scheme(pmf: &Pmf256) -> QlcScheme {
    let ranking = crate::stats::rank_symbols(pmf);
    // Prefix sums of probability mass over ranks.
    let mut cum = [0.0f64; 257];
    for r in 0..256 {
        cum[r + 1] = cum[r] + pmf.prob(ranking[r]);
    }
    let mut best: Option<(f64, &QlcScheme)> = None;
    for s in family() {
        let el: f64 = s
            .areas()
            .iter()
            .map(|a| {
                (cum[(a.base_offset + a.count) as usize] - cum[a.base_offset as usize])
                    * a.code_length as f64
            })
            .sum();
        if best.as_ref().is_none_or(|(b, _)| el < *b) {
            best = Some((el, s));
        }
    }
    best.expect("family is never empty").1.clone()
}
