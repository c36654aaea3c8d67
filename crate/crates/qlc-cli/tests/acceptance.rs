//! Acceptance suite. Each criterion prints one pass/fail line; the
//! test fails if any criterion does.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qlc::codec::{self, EncoderTable, SymbolMapping};
use qlc::scheme::{self, expected_code_length, preset_ffn1, preset_ffn2};
use qlc::stats::{shannon_entropy, Histogram256, Pmf256};
use qlc::synth::{SyntheticKind, SyntheticSpec};

type Check = fn() -> Result<(), String>;

#[test]
fn acceptance() {
    let criteria: [(&str, Check); 12] = [
        ("1 round-trip fuzz", c01_round_trip_fuzz),
        ("2 worked example 100 010 -> 34", c02_worked_example),
        ("3 Kraft sums exact", c03_kraft_sums),
        ("4 preset table rows", c04_table_rows),
        ("5 uniform E[L] and compressibility formula", c05_expected_length_formula),
        ("6 optimality ordering on 1000 PMFs", c06_optimality_ordering),
        ("7 adaptation gain on spike corpus", c07_adaptation_gain),
        ("8 search matches brute-force oracle", c08_search_oracle),
        ("9 fast decode == bit-sequential decode", c09_decoder_oracle),
        ("10 size law", c10_size_law),
        ("11 quad property vs Huffman depth", c11_quad_property),
        ("12 bench integrity", c12_bench_integrity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(e) => {
                println!("criterion {name}: FAIL ({e})");
                failed += 1;
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

fn spike_corpus() -> Vec<u8> {
    SyntheticSpec {
        kind: SyntheticKind::SpikeZero { p0: 0.5, sigma: 1.0 },
        size: 1 << 20,
        seed: 1234,
    }
    .generate()
}

fn random_pmf(rng: &mut ChaCha8Rng) -> Pmf256 {
    // Mix of spiky and flat shapes.
    let mut counts = [0u64; 256];
    let support = rng.gen_range(2..=256usize);
    let spiky = rng.gen_bool(0.5);
    for (v, c) in counts.iter_mut().enumerate().take(support) {
        *c = if spiky {
            // Roughly geometric decay with jitter.
            let decay = (-(v as f64) * rng.gen_range(0.01..0.2)).exp();
            ((decay * 1e6) as u64).max(1) + rng.gen_range(0..10)
        } else {
            rng.gen_range(1..1000)
        };
    }
    Histogram256::from_counts(counts).to_pmf().unwrap()
}

// -- criterion 1 ----------------------------------------------------------

fn fuzz_inputs(rng: &mut ChaCha8Rng) -> Vec<Vec<u8>> {
    let mut inputs: Vec<Vec<u8>> = vec![
        Vec::new(),
        vec![0u8; 1 << 16],
        vec![0xFF; 1 << 16],
        (0..1usize << 16).map(|i| (i % 256) as u8).collect(),
        (0..1usize << 16).map(|_| rng.gen()).collect(),
        vec![42],
        (0..=255u8).collect(),
    ];
    while inputs.len() < 10_000 {
        let cap = 1usize << rng.gen_range(0..=14);
        let len = rng.gen_range(0..=cap);
        let data = match rng.gen_range(0..3) {
            0 => (0..len).map(|_| rng.gen()).collect::<Vec<u8>>(),
            1 => {
                // Small alphabet.
                let k = rng.gen_range(1..=4usize);
                let alphabet: Vec<u8> = (0..k).map(|_| rng.gen()).collect();
                (0..len).map(|_| alphabet[rng.gen_range(0..k)]).collect()
            }
            _ => {
                // Runs.
                let mut out = Vec::with_capacity(len);
                while out.len() < len {
                    let b: u8 = rng.gen();
                    let run = rng.gen_range(1..=64).min(len - out.len());
                    out.extend(std::iter::repeat_n(b, run));
                }
                out
            }
        };
        inputs.push(data);
    }
    inputs
}

fn scheme_for(i: usize, data: &[u8]) -> scheme::QlcScheme {
    match i % 3 {
        0 => preset_ffn1(),
        1 => preset_ffn2(),
        _ => match Histogram256::from_bytes(data).to_pmf() {
            Ok(pmf) => scheme::adapt_scheme(&pmf),
            Err(_) => preset_ffn1(),
        },
    }
}

fn mapping_for(data: &[u8]) -> SymbolMapping {
    match Histogram256::from_bytes(data).to_pmf() {
        Ok(pmf) => SymbolMapping::from_pmf(&pmf),
        Err(_) => SymbolMapping::identity(),
    }
}

fn c01_round_trip_fuzz() -> Result<(), String> {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC1);
    let inputs = fuzz_inputs(&mut rng);
    assert!(inputs.len() >= 10_000);
    for (i, data) in inputs.iter().enumerate() {
        let scheme = scheme_for(i, data);
        let mapping = mapping_for(data);
        let c = codec::encode(data, &scheme, &mapping);
        let back = codec::decode(&c).map_err(|e| format!("input {i}: {e}"))?;
        if &back != data {
            return Err(format!("input {i}: round trip mismatch"));
        }
    }
    let dt = t.elapsed().as_secs_f64();
    if dt >= 60.0 {
        return Err(format!("runtime {dt:.1}s >= 60s"));
    }
    Ok(())
}

// -- criterion 2 ----------------------------------------------------------

fn c02_worked_example() -> Result<(), String> {
    // Bits 100 010: area 100 (base 32), suffix 010 -> encoded symbol 34.
    let c = codec::QlcContainer {
        scheme: preset_ffn1(),
        mapping: SymbolMapping::identity(),
        payload_length: 1,
        payload: vec![0b1000_1000],
    };
    for decoded in [codec::decode(&c), codec::decode_bit_sequential(&c)] {
        if decoded != Ok(vec![34]) {
            return Err(format!("decoded {decoded:?}, expected [34]"));
        }
    }
    Ok(())
}

// -- criterion 3 ----------------------------------------------------------

fn c03_kraft_sums() -> Result<(), String> {
    if preset_ffn1().kraft_sum() != 0.95703125 {
        return Err(format!("ffn1 Kraft {}", preset_ffn1().kraft_sum()));
    }
    if preset_ffn2().kraft_sum() != 0.9521484375 {
        return Err(format!("ffn2 Kraft {}", preset_ffn2().kraft_sum()));
    }
    Ok(())
}

// -- criterion 4 ----------------------------------------------------------

fn check_rows(
    s: &scheme::QlcScheme,
    rows: &[(u16, u8, u8, u16)], // count, symbol_bits, code_length, base_offset
) -> Result<(), String> {
    for (i, (&(count, bits, len, off), a)) in rows.iter().zip(s.areas()).enumerate() {
        if a.area_code != i as u8
            || (a.count, a.symbol_bits, a.code_length, a.base_offset) != (count, bits, len, off)
        {
            return Err(format!("area {i} mismatch: {a:?}"));
        }
    }
    Ok(())
}

fn c04_table_rows() -> Result<(), String> {
    check_rows(
        &preset_ffn1(),
        &[
            (8, 3, 6, 0),
            (8, 3, 6, 8),
            (8, 3, 6, 16),
            (8, 3, 6, 24),
            (8, 3, 6, 32),
            (16, 4, 7, 40),
            (32, 5, 8, 56),
            (168, 8, 11, 88),
        ],
    )?;
    check_rows(
        &preset_ffn2(),
        &[
            (2, 1, 4, 0),
            (8, 3, 6, 2),
            (8, 3, 6, 10),
            (8, 3, 6, 18),
            (8, 3, 6, 26),
            (32, 5, 8, 34),
            (32, 5, 8, 66),
            (158, 8, 11, 98),
        ],
    )
}

// -- criterion 5 ----------------------------------------------------------

fn c05_expected_length_formula() -> Result<(), String> {
    let ranking: [u8; 256] = std::array::from_fn(|i| i as u8);
    let el = expected_code_length(&preset_ffn1(), &Pmf256::uniform(), &ranking);
    if (el - 9.59375).abs() > 1e-12 {
        return Err(format!("uniform E[L] {el}"));
    }
    for (h, expect) in [(6.69, (8.0 - 6.69) / 8.0), (6.11, (8.0 - 6.11) / 8.0)] {
        let c = qlc::compressibility(h);
        if (c - expect).abs() > 5e-4 {
            return Err(format!("compressibility({h}) = {c}, expected {expect}"));
        }
    }
    Ok(())
}

// -- criterion 6 ----------------------------------------------------------

fn c06_optimality_ordering() -> Result<(), String> {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC6);
    for i in 0..1000 {
        let pmf = random_pmf(&mut rng);
        let counts: [u64; 256] =
            std::array::from_fn(|v| (pmf.probs()[v] * 1e9).round() as u64);
        let hist = Histogram256::from_counts(counts);
        let code = qlc::build_huffman(&hist).map_err(|e| e.to_string())?;
        let hist_pmf = hist.to_pmf().unwrap();
        let h_el = qlc::huffman_expected_length(&code, &hist_pmf).map_err(|e| e.to_string())?;
        let ent = shannon_entropy(&hist_pmf).entropy_bits;
        if !(ent <= h_el + 1e-9 && h_el < ent + 1.0 + 1e-9) {
            return Err(format!("pmf {i}: entropy {ent}, huffman {h_el}"));
        }
        let ranking = qlc::rank_symbols(&hist_pmf);
        for s in [preset_ffn1(), preset_ffn2(), scheme::adapt_scheme(&hist_pmf)] {
            let q_el = expected_code_length(&s, &hist_pmf, &ranking);
            if h_el > q_el + 1e-9 {
                return Err(format!("pmf {i}: huffman {h_el} > qlc {q_el}"));
            }
        }
    }
    let dt = t.elapsed().as_secs_f64();
    if dt >= 30.0 {
        return Err(format!("runtime {dt:.1}s >= 30s"));
    }
    Ok(())
}

// -- criterion 7 ----------------------------------------------------------

fn c07_adaptation_gain() -> Result<(), String> {
    let pmf = Histogram256::from_bytes(&spike_corpus()).to_pmf().unwrap();
    let ranking = qlc::rank_symbols(&pmf);
    let adapted = scheme::adapt_scheme(&pmf);
    let c_adapt = qlc::compressibility(expected_code_length(&adapted, &pmf, &ranking));
    let c_ffn1 = qlc::compressibility(expected_code_length(&preset_ffn1(), &pmf, &ranking));
    if c_adapt <= c_ffn1 {
        return Err(format!("adapt {c_adapt} <= ffn1 {c_ffn1}"));
    }
    if adapted.areas()[0].code_length >= 6 {
        return Err(format!("first area length {}", adapted.areas()[0].code_length));
    }
    Ok(())
}

// -- criterion 8 ----------------------------------------------------------

/// Brute-force re-enumeration of the scheme family: seven nested loops
/// over suffix widths, per-rank expected length, first strict minimum
/// wins. Shares no code with the library's search.
fn oracle_adapt(pmf: &Pmf256) -> ([u8; 8], usize) {
    // Independent descending-probability ranking.
    let mut ranking: Vec<usize> = (0..256).collect();
    ranking.sort_by(|&a, &b| {
        pmf.probs()[b]
            .partial_cmp(&pmf.probs()[a])
            .unwrap()
            .then(a.cmp(&b))
    });

    let mut visited = 0usize;
    let mut best_el = f64::INFINITY;
    let mut best = [0u8; 8];
    for b0 in 0..=8u8 {
        for b1 in b0..=8 {
            for b2 in b1..=8 {
                for b3 in b2..=8 {
                    for b4 in b3..=8 {
                        for b5 in b4..=8 {
                            for b6 in b5..=8 {
                                let bits7 = [b0, b1, b2, b3, b4, b5, b6];
                                let used: u32 = bits7.iter().map(|&b| 1u32 << b).sum();
                                if used >= 256 {
                                    continue;
                                }
                                let rem = 256 - used;
                                let mut b7 = 0u8;
                                while (1u32 << b7) < rem {
                                    b7 += 1;
                                }
                                if b7 < b6 {
                                    continue;
                                }
                                let bits = [b0, b1, b2, b3, b4, b5, b6, b7];
                                let mut lens = bits.map(|b| b + 3);
                                lens.sort_unstable();
                                let distinct = lens
                                    .windows(2)
                                    .filter(|w| w[0] != w[1])
                                    .count()
                                    + 1;
                                if distinct > 4 {
                                    continue;
                                }
                                let kraft: f64 = (0..8)
                                    .map(|a| {
                                        let count = if a < 7 { 1u32 << bits[a] } else { rem };
                                        count as f64 / 2f64.powi(3 + bits[a] as i32)
                                    })
                                    .sum();
                                if kraft > 1.0 {
                                    continue;
                                }
                                visited += 1;
                                let mut el = 0.0;
                                let mut r = 0usize;
                                for (a, &b) in bits.iter().enumerate() {
                                    let count = if a < 7 { 1u32 << b } else { rem };
                                    for _ in 0..count {
                                        el += pmf.probs()[ranking[r]] * (3 + b) as f64;
                                        r += 1;
                                    }
                                }
                                if el < best_el {
                                    best_el = el;
                                    best = bits;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    (best, visited)
}

fn c08_search_oracle() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC8);
    let mut cases: Vec<Pmf256> = (0..20).map(|_| random_pmf(&mut rng)).collect();
    // Tie-heavy cases: point mass, uniform, two equal symbols.
    let mut point = [0.0; 256];
    point[0] = 1.0;
    cases.push(Pmf256::from_probs(point));
    cases.push(Pmf256::uniform());
    let mut two = [0.0; 256];
    two[10] = 0.5;
    two[200] = 0.5;
    cases.push(Pmf256::from_probs(two));

    for (i, pmf) in cases.iter().enumerate() {
        let (oracle_bits, visited) = oracle_adapt(pmf);
        let got = scheme::adapt_scheme(pmf).symbol_bits();
        if got != oracle_bits {
            return Err(format!("case {i}: search {got:?} vs oracle {oracle_bits:?}"));
        }
        if visited != scheme::family().len() {
            return Err(format!(
                "family size mismatch: {} vs oracle {visited}",
                scheme::family().len()
            ));
        }
    }
    Ok(())
}

// -- criterion 9 ----------------------------------------------------------

fn c09_decoder_oracle() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC9);
    let inputs = fuzz_inputs(&mut rng);
    for (i, data) in inputs.iter().enumerate() {
        let scheme = scheme_for(i, data);
        let mapping = mapping_for(data);
        let c = codec::encode(data, &scheme, &mapping);
        let fast = codec::decode(&c);
        let slow = codec::decode_bit_sequential(&c);
        if fast != slow {
            return Err(format!("valid input {i}: {fast:?} vs {slow:?}"));
        }
    }
    // Corrupted containers: bit flips, truncation, appended bytes,
    // payload_length tampering.
    let mut checked = 0;
    for i in 0..1200 {
        let len = rng.gen_range(1..2048usize);
        let data: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
        let mut c = codec::encode(&data, &preset_ffn1(), &mapping_for(&data));
        match i % 4 {
            0 => {
                let bit = rng.gen_range(0..c.payload.len() as u64 * 8);
                c.payload[(bit / 8) as usize] ^= 1 << (bit % 8);
            }
            1 => {
                let keep = rng.gen_range(0..c.payload.len());
                c.payload.truncate(keep);
            }
            2 => c.payload.extend_from_slice(&[0xFF; 3]),
            _ => c.payload_length = c.payload_length.wrapping_add(rng.gen_range(1..100)),
        }
        let fast = codec::decode(&c);
        let slow = codec::decode_bit_sequential(&c);
        if fast != slow {
            return Err(format!("corrupted {i}: {fast:?} vs {slow:?}"));
        }
        if fast.is_err() {
            checked += 1;
        }
    }
    // All 1200 corrupted containers are compared; a bit flip can still
    // yield a decodable (wrong) stream, so only most of them error.
    if checked < 600 {
        return Err(format!("only {checked} corrupted containers actually errored"));
    }
    Ok(())
}

// -- criterion 10 ---------------------------------------------------------

fn c10_size_law() -> Result<(), String> {
    let data = SyntheticSpec {
        kind: SyntheticKind::GaussianE4m3 { sigma: 1.0 },
        size: 1 << 20,
        seed: 77,
    }
    .generate();
    let hist = Histogram256::from_bytes(&data);
    let mapping = mapping_for(&data);
    for s in [preset_ffn1(), preset_ffn2()] {
        // Route 1: per-symbol table lengths over the data.
        let bits = codec::encoded_bit_length(&data, &s, &mapping);
        // Route 2: histogram counts times per-value code lengths.
        let table = EncoderTable::new(&s, &mapping);
        let bits2: u64 = (0..256usize)
            .map(|v| hist.counts()[v] * table.code(v as u8).1 as u64)
            .sum();
        if bits != bits2 {
            return Err(format!("bit accounting differs: {bits} vs {bits2}"));
        }
        let c = codec::encode(&data, &s, &mapping);
        let expect_payload = (bits as usize).div_ceil(8);
        if c.payload.len() != expect_payload {
            return Err(format!("payload {} != ceil(bits/8) {expect_payload}", c.payload.len()));
        }
        let total = c.to_bytes().len();
        if total != 277 + expect_payload {
            return Err(format!("container {total} != 277 + {expect_payload}"));
        }
    }
    Ok(())
}

// -- criterion 11 ---------------------------------------------------------

fn c11_quad_property() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC11);
    let mut schemes = vec![preset_ffn1(), preset_ffn2()];
    for _ in 0..50 {
        schemes.push(scheme::adapt_scheme(&random_pmf(&mut rng)));
    }
    for s in &schemes {
        if s.areas().len() != 8 {
            return Err("scheme without 8 areas".into());
        }
        if s.distinct_code_lengths().len() > 4 {
            return Err(format!("{} distinct lengths", s.distinct_code_lengths().len()));
        }
    }
    // Heavy-tailed corpus: the Huffman baseline needs many more lengths.
    let data = SyntheticSpec {
        kind: SyntheticKind::Zipf { exponent: 1.2 },
        size: 1 << 19,
        seed: 5,
    }
    .generate();
    let code = qlc::build_huffman(&Histogram256::from_bytes(&data)).map_err(|e| e.to_string())?;
    let n = code.distinct_lengths().len();
    if n <= 4 {
        return Err(format!("huffman has only {n} distinct lengths"));
    }
    Ok(())
}

// -- criterion 12 ---------------------------------------------------------

fn c12_bench_integrity() -> Result<(), String> {
    let data = SyntheticSpec {
        kind: SyntheticKind::GaussianE4m3 { sigma: 1.0 },
        size: 1 << 20,
        seed: 9,
    }
    .generate();
    let report = qlc::bench::run(&data, 3).map_err(|e| e.to_string())?;
    for name in [
        "qlc_encode",
        "qlc_decode_fast",
        "qlc_decode_bit_sequential",
        "huffman_encode",
        "huffman_decode_tree",
    ] {
        if report.row(name).is_none() {
            return Err(format!("missing row {name}"));
        }
    }
    let fast = report.row("qlc_decode_fast").unwrap().mb_per_s;
    let slow = report.row("qlc_decode_bit_sequential").unwrap().mb_per_s;
    if fast < slow {
        return Err(format!("fast {fast:.1} MB/s < bit-sequential {slow:.1} MB/s"));
    }
    // Verification failure must suppress timings: corrupt data cannot be
    // produced through the public API, so exercise the error mapping via
    // empty input instead.
    if qlc::bench::run(&[], 1).is_ok() {
        return Err("bench accepted empty input".into());
    }
    Ok(())
}
