//! Canonical Huffman baseline: optimal per-symbol code lengths, a
//! packed encoder, and a deliberately tree-walking decoder.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::QlcError;
use crate::stats::{Histogram256, Pmf256};

/// Per-symbol canonical code lengths and codewords. Length 0 marks a
/// symbol absent from the histogram the code was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuffmanCode {
    pub lengths: [u8; 256],
    pub codewords: [u64; 256],
    pub min_length: u8,
    pub max_length: u8,
}

/// Build an optimal prefix code for the present symbols. Ties during
/// tree construction break on (weight, smallest contained symbol), so
/// the result is deterministic; a single present symbol gets length 1.
pub fn build_huffman(hist: &Histogram256) -> Result<HuffmanCode, QlcError> {
    if hist.total() == 0 {
        return Err(QlcError::ZeroTotal);
    }

    struct Node {
        children: Option<(usize, usize)>,
        symbol: u8,
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u64, u8, usize)>> = BinaryHeap::new();
    for v in 0..256usize {
        let c = hist.counts()[v];
        if c > 0 {
            nodes.push(Node {
                children: None,
                symbol: v as u8,
            });
            heap.push(Reverse((c, v as u8, nodes.len() - 1)));
        }
    }

    let mut lengths = [0u8; 256];
    if heap.len() == 1 {
        let Reverse((_, sym, _)) = heap.pop().unwrap();
        lengths[sym as usize] = 1;
    } else {
        while heap.len() > 1 {
            let Reverse((w0, s0, n0)) = heap.pop().unwrap();
            let Reverse((w1, s1, n1)) = heap.pop().unwrap();
            nodes.push(Node {
                children: Some((n0, n1)),
                symbol: s0.min(s1),
            });
            heap.push(Reverse((w0 + w1, s0.min(s1), nodes.len() - 1)));
        }
        let Reverse((_, _, root)) = heap.pop().unwrap();
        let mut stack = vec![(root, 0u8)];
        while let Some((idx, depth)) = stack.pop() {
            match nodes[idx].children {
                Some((l, r)) => {
                    stack.push((l, depth + 1));
                    stack.push((r, depth + 1));
                }
                None => lengths[nodes[idx].symbol as usize] = depth,
            }
        }
    }

    Ok(assign_canonical(lengths))
}

/// Assign canonical codewords in (length, symbol) order.
fn assign_canonical(lengths: [u8; 256]) -> HuffmanCode {
    let mut present: Vec<u8> = (0..=255u8).filter(|&v| lengths[v as usize] > 0).collect();
    present.sort_by_key(|&v| (lengths[v as usize], v));

    let mut codewords = [0u64; 256];
    let mut code: u64 = 0;
    let mut prev_len = 0u8;
    for &v in &present {
        let len = lengths[v as usize];
        code <<= len - prev_len;
        codewords[v as usize] = code;
        code += 1;
        prev_len = len;
    }

    let min_length = present
        .iter()
        .map(|&v| lengths[v as usize])
        .min()
        .unwrap_or(0);
    let max_length = present
        .iter()
        .map(|&v| lengths[v as usize])
        .max()
        .unwrap_or(0);
    HuffmanCode {
        lengths,
        codewords,
        min_length,
        max_length,
    }
}

impl HuffmanCode {
    pub fn distinct_lengths(&self) -> Vec<u8> {
        let mut lens: Vec<u8> = self.lengths.iter().copied().filter(|&l| l > 0).collect();
        lens.sort_unstable();
        lens.dedup();
        lens
    }

    /// Kraft sum in units of 2^-max_length; equals 2^max_length exactly
    /// for any complete code with >= 2 symbols.
    pub fn kraft_units(&self) -> u128 {
        self.lengths
            .iter()
            .filter(|&&l| l > 0)
            .map(|&l| 1u128 << (self.max_length - l))
            .sum()
    }
}

/// E[L] = sum p_i * length_i. Fails if the PMF has mass on a symbol
/// the code does not cover.
pub fn huffman_expected_length(code: &HuffmanCode, pmf: &Pmf256) -> Result<f64, QlcError> {
    let mut el = 0.0;
    for v in 0..256usize {
        let p = pmf.probs()[v];
        if p > 0.0 {
            if code.lengths[v] == 0 {
                return Err(QlcError::MissingCode);
            }
            el += p * code.lengths[v] as f64;
        }
    }
    Ok(el)
}

/// Pack codewords MSB-first; returns the bytes and the exact bit count.
pub fn huffman_encode(data: &[u8], code: &HuffmanCode) -> Result<(Vec<u8>, u64), QlcError> {
    let mut w = crate::bitio::BitWriter::new();
    for &b in data {
        let len = code.lengths[b as usize];
        if len == 0 {
            return Err(QlcError::MissingCode);
        }
        // Long codes (up to 64 bits in theory) go out in two halves.
        let cw = code.codewords[b as usize];
        if len > 32 {
            w.write_bits((cw >> 32) as u32, len - 32);
            w.write_bits(cw as u32, 32);
        } else {
            w.write_bits(cw as u32, len);
        }
    }
    let bits = w.bits_written();
    Ok((w.finish(), bits))
}

/// Walk the canonical code tree one bit per edge until `n` symbols are
/// out. Returns the symbols and the exact number of bits consumed.
pub fn huffman_decode(bits: &[u8], code: &HuffmanCode, n: u64) -> Result<(Vec<u8>, u64), QlcError> {
    // Rebuild the tree from the canonical codewords.
    #[derive(Clone)]
    struct Node {
        children: [Option<usize>; 2],
        symbol: Option<u8>,
    }
    let mut tree = vec![Node {
        children: [None, None],
        symbol: None,
    }];
    for v in 0..256usize {
        let len = code.lengths[v];
        if len == 0 {
            continue;
        }
        let cw = code.codewords[v];
        let mut at = 0usize;
        for i in (0..len).rev() {
            let bit = ((cw >> i) & 1) as usize;
            at = match tree[at].children[bit] {
                Some(next) => next,
                None => {
                    tree.push(Node {
                        children: [None, None],
                        symbol: None,
                    });
                    let next = tree.len() - 1;
                    tree[at].children[bit] = Some(next);
                    next
                }
            };
        }
        tree[at].symbol = Some(v as u8);
    }

    let total_bits = bits.len() as u64 * 8;
    let mut pos = 0u64;
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let mut at = 0usize;
        loop {
            if let Some(sym) = tree[at].symbol {
                out.push(sym);
                break;
            }
            if pos >= total_bits {
                return Err(QlcError::TruncatedPayload);
            }
            let bit = ((bits[(pos / 8) as usize] >> (7 - pos % 8)) & 1) as usize;
            pos += 1;
            at = match tree[at].children[bit] {
                Some(next) => next,
                // Off-tree path through a canonical gap.
                None => return Err(QlcError::InvalidCode),
            };
        }
    }
    Ok((out, pos))
}
