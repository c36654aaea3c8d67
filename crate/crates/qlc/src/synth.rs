//! Seeded synthetic corpora: block-scaled e4m3 gaussians, a zero-spiked
//! variant, and uniform/zipf byte streams.
//!
//! The e4m3 format here is the all-finite variant: 1 sign bit, 4
//! exponent bits (bias 7), 3 mantissa bits, every one of the 256
//! encodings a finite number (max magnitude 480).

use rand::distributions::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Normal, Zipf};

/// Quantization block size for the gaussian generator.
pub const BLOCK_SIZE: usize = 32;
/// Largest magnitude blocks are scaled to before quantization.
pub const SCALE_MAX: f32 = 448.0;

/// Decode an e4m3 bit pattern to its value.
pub fn e4m3_to_f32(bits: u8) -> f32 {
    let sign = if bits & 0x80 != 0 { -1.0f32 } else { 1.0 };
    let exp = (bits >> 3) & 0x0F;
    let man = (bits & 0x07) as f32;
    let mag = if exp == 0 {
        // Subnormal: m/8 * 2^-6.
        man / 8.0 * 2f32.powi(-6)
    } else {
        (1.0 + man / 8.0) * 2f32.powi(exp as i32 - 7)
    };
    sign * mag
}

fn magnitude_table() -> [f32; 128] {
    std::array::from_fn(|i| e4m3_to_f32(i as u8))
}

/// Quantize to the nearest e4m3 encoding, round-to-nearest-even on
/// ties; magnitudes beyond the largest encoding clamp to it.
pub fn quantize_e4m3(x: f32) -> u8 {
    let table = magnitude_table();
    let sign = if x.is_sign_negative() { 0x80u8 } else { 0 };
    let mag = x.abs();
    if !mag.is_finite() || mag >= table[127] {
        return sign | 127;
    }
    // Monotone table: find the bracketing pair.
    let hi = table.partition_point(|&t| t < mag).min(127);
    let lo = hi.saturating_sub(1);
    let pattern = if hi == lo {
        hi
    } else {
        let d_lo = mag - table[lo];
        let d_hi = table[hi] - mag;
        if d_lo < d_hi {
            lo
        } else if d_hi < d_lo {
            hi
        } else if lo % 2 == 0 {
            lo
        } else {
            hi
        }
    };
    if pattern == 0 {
        // Zero is unsigned so identical inputs yield identical bytes.
        return 0;
    }
    sign | pattern as u8
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SyntheticKind {
    /// Zero-mean normal samples, per-32-block max-abs scaling to 448,
    /// quantized to e4m3 patterns.
    GaussianE4m3 { sigma: f64 },
    /// With probability p0 the e4m3 zero pattern, otherwise a
    /// gaussian-e4m3 sample.
    SpikeZero { p0: f64, sigma: f64 },
    /// I.i.d. uniform bytes.
    Uniform,
    /// Zipf-distributed byte values (rank 1 -> byte 0).
    Zipf { exponent: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticSpec {
    pub kind: SyntheticKind,
    pub size: usize,
    pub seed: u64,
}

impl SyntheticSpec {
    /// Deterministic per spec: identical spec, identical bytes.
    pub fn generate(&self) -> Vec<u8> {
        match self.kind {
            SyntheticKind::GaussianE4m3 { sigma } => gaussian_e4m3(self.size, sigma, self.seed),
            SyntheticKind::SpikeZero { p0, sigma } => spike_zero(self.size, p0, sigma, self.seed),
            SyntheticKind::Uniform => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                (0..self.size).map(|_| rng.gen()).collect()
            }
            SyntheticKind::Zipf { exponent } => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let zipf = Zipf::new(256, exponent).expect("valid zipf exponent");
                (0..self.size)
                    .map(|_| (zipf.sample(&mut rng) as u16 - 1) as u8)
                    .collect()
            }
        }
    }
}

fn gaussian_e4m3(size: usize, sigma: f64, seed: u64) -> Vec<u8> {
    let normal = Normal::new(0.0, sigma).expect("valid sigma");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    let mut block = [0f32; BLOCK_SIZE];
    let mut remaining = size;
    while remaining > 0 {
        let n = remaining.min(BLOCK_SIZE);
        for v in block[..n].iter_mut() {
            *v = normal.sample(&mut rng) as f32;
        }
        let max_abs = block[..n].iter().fold(0f32, |m, v| m.max(v.abs()));
        if max_abs == 0.0 {
            out.extend(std::iter::repeat_n(0u8, n));
        } else {
            let scale = SCALE_MAX / max_abs;
            out.extend(block[..n].iter().map(|&v| quantize_e4m3(v * scale)));
        }
        remaining -= n;
    }
    out
}

fn spike_zero(size: usize, p0: f64, sigma: f64, seed: u64) -> Vec<u8> {
    let base = gaussian_e4m3(size, sigma, seed);
    let mut mask_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    base.into_iter()
        .map(|b| if mask_rng.gen_bool(p0) { 0u8 } else { b })
        .collect()
}
