use serde::Serialize;

use qlc::scheme::QlcScheme;
use qlc::{
    adapt_scheme, build_huffman, compressibility, expected_code_length, huffman_expected_length,
    preset_ffn1, preset_ffn2, rank_symbols, shannon_entropy, Histogram256,
};

#[derive(Serialize)]
pub struct SchemeRow {
    pub scheme: String,
    pub expected_length_bits: f64,
    pub compressibility: f64,
    /// Probability mass of the input landing in each of the 8 areas.
    pub area_occupancy: Vec<f64>,
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub total_symbols: u64,
    pub entropy_bits: f64,
    pub ideal_compressibility: f64,
    pub huffman_expected_length_bits: f64,
    pub huffman_compressibility: f64,
    pub huffman_length_range: (u8, u8),
    pub huffman_distinct_lengths: usize,
    pub qlc_rows: Vec<SchemeRow>,
}

fn scheme_row(name: &str, scheme: &QlcScheme, pmf: &qlc::Pmf256, ranking: &[u8; 256]) -> SchemeRow {
    let el = expected_code_length(scheme, pmf, ranking);
    let occupancy = scheme
        .areas()
        .iter()
        .map(|a| {
            (a.base_offset..a.base_offset + a.count)
                .map(|r| pmf.prob(ranking[r as usize]))
                .sum()
        })
        .collect();
    SchemeRow {
        scheme: name.to_string(),
        expected_length_bits: el,
        compressibility: compressibility(el),
        area_occupancy: occupancy,
    }
}

pub fn analyze(data: &[u8]) -> AnalysisReport {
    let hist = Histogram256::from_bytes(data);
    let pmf = hist.to_pmf().expect("analyze requires non-empty input");
    let ranking = rank_symbols(&pmf);
    let entropy = shannon_entropy(&pmf);

    let hcode = build_huffman(&hist).expect("non-empty histogram");
    let h_el = huffman_expected_length(&hcode, &pmf).expect("code covers all present symbols");

    let qlc_rows = vec![
        scheme_row("ffn1", &preset_ffn1(), &pmf, &ranking),
        scheme_row("ffn2", &preset_ffn2(), &pmf, &ranking),
        scheme_row("adapt", &adapt_scheme(&pmf), &pmf, &ranking),
    ];

    AnalysisReport {
        total_symbols: hist.total(),
        entropy_bits: entropy.entropy_bits,
        ideal_compressibility: entropy.ideal_compressibility,
        huffman_expected_length_bits: h_el,
        huffman_compressibility: compressibility(h_el),
        huffman_length_range: (hcode.min_length, hcode.max_length),
        huffman_distinct_lengths: hcode.distinct_lengths().len(),
        qlc_rows,
    }
}

pub fn print_human(r: &AnalysisReport) {
    println!("symbols:               {}", r.total_symbols);
    println!("entropy:               {:.4} bits/symbol", r.entropy_bits);
    println!("ideal compressibility: {:.2}%", r.ideal_compressibility * 100.0);
    println!(
        "huffman:               {:.4} bits/symbol ({:.2}%), lengths {}..{} ({} distinct)",
        r.huffman_expected_length_bits,
        r.huffman_compressibility * 100.0,
        r.huffman_length_range.0,
        r.huffman_length_range.1,
        r.huffman_distinct_lengths
    );
    println!();
    println!("{:<8} {:>12} {:>16}  area occupancy", "scheme", "bits/symbol", "compressibility");
    for row in &r.qlc_rows {
        let occ: Vec<String> = row.area_occupancy.iter().map(|o| format!("{o:.3}")).collect();
        println!(
            "{:<8} {:>12.4} {:>15.2}%  [{}]",
            row.scheme,
            row.expected_length_bits,
            row.compressibility * 100.0,
            occ.join(" ")
        );
    }
}
