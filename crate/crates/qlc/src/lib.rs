//! Quad length codes: a length-prefixed entropy code for 8-bit symbol
//! streams. Three prefix bits split the 256 symbol ranks into 8 areas
//! with at most 4 distinct code lengths, trading a little compression
//! against Huffman for table-driven, non-bit-sequential decoding.

pub mod bench;
pub mod bitio;
pub mod codec;
pub mod error;
pub mod huffman;
pub mod scheme;
pub mod stats;
pub mod synth;

pub use codec::{decode, decode_bit_sequential, decode_bytes, encode, QlcContainer, SymbolMapping};
pub use error::{ErrorCategory, QlcError};
pub use huffman::{build_huffman, huffman_expected_length, HuffmanCode};
pub use scheme::{adapt_scheme, expected_code_length, preset_ffn1, preset_ffn2, QlcScheme};
pub use stats::{compressibility, rank_symbols, shannon_entropy, Histogram256, Pmf256};
