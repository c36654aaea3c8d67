//! Throughput measurement for the coding paths. Decode outputs are
//! verified against the input before any timing is reported.

use std::time::Instant;

use crate::codec::{self, SymbolMapping};
use crate::error::QlcError;
use crate::huffman;
use crate::scheme::preset_ffn1;
use crate::stats::Histogram256;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub name: &'static str,
    pub mb_per_s: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub input_len: usize,
    pub reps: u32,
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, name: &str) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("decode output did not match the input; timings withheld")]
    VerificationFailed,
    #[error(transparent)]
    Codec(#[from] QlcError),
}

fn best_of<T>(reps: u32, bytes: usize, mut f: impl FnMut() -> T) -> f64 {
    let mut best = f64::INFINITY;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        std::hint::black_box(f());
        best = best.min(t.elapsed().as_secs_f64());
    }
    bytes as f64 / best / 1e6
}

/// Time QLC encode, both QLC decoders, and the Huffman encode/decode
/// baselines on `data`, best-of-`reps` wall time.
pub fn run(data: &[u8], reps: u32) -> Result<BenchReport, BenchError> {
    if data.is_empty() {
        return Err(QlcError::ZeroTotal.into());
    }
    let hist = Histogram256::from_bytes(data);
    let pmf = hist.to_pmf()?;
    let mapping = SymbolMapping::from_pmf(&pmf);
    let scheme = preset_ffn1();

    let container = codec::encode(data, &scheme, &mapping);
    if codec::decode(&container)? != data {
        return Err(BenchError::VerificationFailed);
    }
    if codec::decode_bit_sequential(&container)? != data {
        return Err(BenchError::VerificationFailed);
    }
    let hcode = huffman::build_huffman(&hist)?;
    let (hbits, _) = huffman::huffman_encode(data, &hcode)?;
    let (hback, _) = huffman::huffman_decode(&hbits, &hcode, data.len() as u64)?;
    if hback != data {
        return Err(BenchError::VerificationFailed);
    }

    let n = data.len();
    let rows = vec![
        BenchRow {
            name: "qlc_encode",
            mb_per_s: best_of(reps, n, || codec::encode(data, &scheme, &mapping)),
        },
        BenchRow {
            name: "qlc_decode_fast",
            mb_per_s: best_of(reps, n, || codec::decode(&container).unwrap()),
        },
        BenchRow {
            name: "qlc_decode_bit_sequential",
            mb_per_s: best_of(reps, n, || codec::decode_bit_sequential(&container).unwrap()),
        },
        BenchRow {
            name: "huffman_encode",
            mb_per_s: best_of(reps, n, || huffman::huffman_encode(data, &hcode).unwrap()),
        },
        BenchRow {
            name: "huffman_decode_tree",
            mb_per_s: best_of(reps, n, || {
                huffman::huffman_decode(&hbits, &hcode, n as u64).unwrap()
            }),
        },
    ];
    Ok(BenchReport {
        input_len: n,
        reps,
        rows,
    })
}
