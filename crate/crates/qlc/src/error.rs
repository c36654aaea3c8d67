use thiserror::Error;

/// Reason a scheme failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeViolation {
    /// Area symbol counts do not sum to 256.
    BadTotal,
    /// An area holds more symbols than its suffix width can address.
    CountExceedsBits,
    /// An area other than the last is not exactly full.
    PartialInnerArea,
    /// The last area's suffix width is not the minimal width for its count.
    BadTailBits,
    /// Base offsets are not the cumulative counts.
    NonContiguousOffsets,
    /// More than 4 distinct code lengths.
    TooManyLengths,
    /// Kraft sum exceeds 1.
    KraftExceeded,
    /// symbol_bits decreases between adjacent areas.
    NonMonotoneBits,
    /// code_length != 3 + symbol_bits.
    BadCodeLength,
}

impl std::fmt::Display for SchemeViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            SchemeViolation::BadTotal => "counts do not sum to 256",
            SchemeViolation::CountExceedsBits => "count exceeds 2^symbol_bits",
            SchemeViolation::PartialInnerArea => "inner area not full",
            SchemeViolation::BadTailBits => "tail area symbol_bits not minimal for count",
            SchemeViolation::NonContiguousOffsets => "non-contiguous offsets",
            SchemeViolation::TooManyLengths => "more than 4 distinct lengths",
            SchemeViolation::KraftExceeded => "Kraft sum > 1",
            SchemeViolation::NonMonotoneBits => "non-monotone symbol_bits",
            SchemeViolation::BadCodeLength => "code_length != 3 + symbol_bits",
        };
        f.write_str(msg)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QlcError {
    #[error("histogram has zero total; build it from non-empty data")]
    ZeroTotal,
    #[error("invalid scheme: {0}")]
    InvalidScheme(SchemeViolation),
    #[error("bad magic (not a QLC1 file)")]
    BadMagic,
    #[error("unsupported container version")]
    BadVersion,
    #[error("container header truncated")]
    TruncatedHeader,
    #[error("payload exhausted before all symbols were decoded")]
    TruncatedPayload,
    #[error("codeword suffix outside the tail area's symbol count")]
    InvalidCode,
    #[error("mapping table is not a permutation of 0..256")]
    InvalidMapping,
    #[error("more than 7 unread bits after the last symbol")]
    TrailingGarbage,
    #[error("no code assigned to a symbol present in the input")]
    MissingCode,
}

/// Coarse error category, used to compare decoder implementations and to
/// map errors onto CLI exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCategory {
    Format,
    Corrupt,
    Usage,
}

impl QlcError {
    pub fn category(&self) -> ErrorCategory {
        match self {
            QlcError::BadMagic | QlcError::BadVersion => ErrorCategory::Format,
            QlcError::TruncatedHeader
            | QlcError::TruncatedPayload
            | QlcError::InvalidCode
            | QlcError::InvalidMapping
            | QlcError::TrailingGarbage
            | QlcError::InvalidScheme(_) => ErrorCategory::Corrupt,
            QlcError::ZeroTotal | QlcError::MissingCode => ErrorCategory::Usage,
        }
    }
}
