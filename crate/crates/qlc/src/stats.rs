//! Histograms, probability mass functions, Shannon entropy and
//! compressibility metrics over 8-bit symbol streams.

use crate::error::QlcError;

/// Raw symbol counts over the 256 byte values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256 {
    counts: [u64; 256],
    total: u64,
}

impl Histogram256 {
    /// Count byte occurrences in `data`. Empty input yields an all-zero
    /// histogram with total 0.
    pub fn from_bytes(data: &[u8]) -> Self {
        let mut counts = [0u64; 256];
        for &b in data {
            counts[b as usize] += 1;
        }
        Histogram256 {
            counts,
            total: data.len() as u64,
        }
    }

    pub fn from_counts(counts: [u64; 256]) -> Self {
        let total = counts.iter().sum();
        Histogram256 { counts, total }
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn count(&self, value: u8) -> u64 {
        self.counts[value as usize]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Normalize to a PMF. Fails on an empty histogram.
    pub fn to_pmf(&self) -> Result<Pmf256, QlcError> {
        if self.total == 0 {
            return Err(QlcError::ZeroTotal);
        }
        let t = self.total as f64;
        let mut probs = [0.0f64; 256];
        for (p, &c) in probs.iter_mut().zip(self.counts.iter()) {
            *p = c as f64 / t;
        }
        Ok(Pmf256 { probs })
    }
}

/// Symbol probabilities over the 256 byte values.
#[derive(Debug, Clone, PartialEq)]
pub struct Pmf256 {
    probs: [f64; 256],
}

impl Pmf256 {
    /// Wrap raw probabilities. Callers are expected to pass entries in
    /// [0,1] summing to 1; `is_normalized` checks this when needed.
    pub fn from_probs(probs: [f64; 256]) -> Self {
        Pmf256 { probs }
    }

    pub fn uniform() -> Self {
        Pmf256 {
            probs: [1.0 / 256.0; 256],
        }
    }

    pub fn probs(&self) -> &[f64; 256] {
        &self.probs
    }

    pub fn prob(&self, value: u8) -> f64 {
        self.probs[value as usize]
    }

    pub fn is_normalized(&self) -> bool {
        let sum: f64 = self.probs.iter().sum();
        (sum - 1.0).abs() <= 1e-12 && self.probs.iter().all(|&p| (0.0..=1.0).contains(&p))
    }
}

/// Shannon entropy and the compressibility it implies for 8-bit symbols.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyReport {
    pub entropy_bits: f64,
    pub ideal_compressibility: f64,
}

/// H = -sum p_i log2 p_i, with 0 * log2(0) = 0.
pub fn shannon_entropy(pmf: &Pmf256) -> EntropyReport {
    let entropy_bits: f64 = pmf
        .probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    EntropyReport {
        entropy_bits,
        ideal_compressibility: compressibility(entropy_bits),
    }
}

/// (8 - bits_per_symbol) / 8. Negative when a code expands data.
pub fn compressibility(bits_per_symbol: f64) -> f64 {
    (8.0 - bits_per_symbol) / 8.0
}

/// Byte values sorted by descending probability; ties break toward the
/// smaller byte value so the ranking is deterministic.
pub fn rank_symbols(pmf: &Pmf256) -> [u8; 256] {
    let mut order: Vec<u8> = (0..=255).collect();
    order.sort_by(|&a, &b| {
        pmf.probs[b as usize]
            .partial_cmp(&pmf.probs[a as usize])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut out = [0u8; 256];
    out.copy_from_slice(&order);
    out
}
