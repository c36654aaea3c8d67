use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod report;

use qlc::error::ErrorCategory;
use qlc::synth::{SyntheticKind, SyntheticSpec};
use qlc::{QlcContainer, QlcError, SymbolMapping};

#[derive(Parser)]
#[command(name = "qlc", about = "Quad length codes for 8-bit symbol streams", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Ffn1,
    Ffn2,
    Adapt,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    GaussianE4m3,
    SpikeZero,
    Uniform,
    Zipf,
}

#[derive(Subcommand)]
enum Command {
    /// Measure entropy, Huffman and QLC compressibility of a file.
    Analyze {
        input: PathBuf,
        /// Emit the report as JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Alias of analyze; keeps the multi-scheme comparison table.
    Compare {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compress a file into a QLC1 container.
    Encode {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value = "ffn1")]
        scheme: SchemeArg,
        /// Write only the packed payload, no container header.
        #[arg(long)]
        raw: bool,
    },
    /// Restore the original bytes from a QLC1 container.
    Decode { input: PathBuf, output: PathBuf },
    /// Generate a seeded synthetic corpus.
    Gen {
        output: PathBuf,
        #[arg(long, value_enum, default_value = "gaussian-e4m3")]
        kind: GenKind,
        /// Output size in bytes.
        #[arg(long, default_value_t = 1 << 20)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Gaussian sigma (before block scaling, which makes it
        /// immaterial; kept as an explicit knob).
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Zero-spike probability for spike-zero.
        #[arg(long, default_value_t = 0.5)]
        p0: f64,
        /// Zipf exponent.
        #[arg(long, default_value_t = 1.2)]
        exponent: f64,
    },
    /// Measure encode/decode throughput on a file.
    Bench {
        input: PathBuf,
        /// Timed repetitions; best-of is reported.
        #[arg(long, default_value_t = 5)]
        reps: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { input, json } | Command::Compare { input, json } => cmd_analyze(&input, json),
        Command::Encode {
            input,
            output,
            scheme,
            raw,
        } => cmd_encode(&input, &output, scheme, raw),
        Command::Decode { input, output } => cmd_decode(&input, &output),
        Command::Gen {
            output,
            kind,
            size,
            seed,
            sigma,
            p0,
            exponent,
        } => cmd_gen(&output, kind, size, seed, sigma, p0, exponent),
        Command::Bench { input, reps } => cmd_bench(&input, reps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn io_err(msg: impl std::fmt::Display) -> CliError {
    CliError {
        code: 2,
        message: msg.to_string(),
    }
}

fn read_input(path: &PathBuf) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| io_err(format!("{}: {e}", path.display())))
}

fn cmd_analyze(input: &PathBuf, json: bool) -> Result<(), CliError> {
    let data = read_input(input)?;
    if data.is_empty() {
        return Err(io_err(format!("{}: input is empty", input.display())));
    }
    let rep = report::analyze(&data);
    if json {
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        report::print_human(&rep);
    }
    Ok(())
}

fn pick_scheme(data: &[u8], which: SchemeArg) -> Result<qlc::QlcScheme, CliError> {
    match which {
        SchemeArg::Ffn1 => Ok(qlc::preset_ffn1()),
        SchemeArg::Ffn2 => Ok(qlc::preset_ffn2()),
        SchemeArg::Adapt => {
            let pmf = qlc::Histogram256::from_bytes(data)
                .to_pmf()
                .map_err(|_| CliError {
                    code: 3,
                    message: "--scheme adapt needs non-empty input".into(),
                })?;
            Ok(qlc::adapt_scheme(&pmf))
        }
    }
}

fn cmd_encode(input: &PathBuf, output: &PathBuf, scheme: SchemeArg, raw: bool) -> Result<(), CliError> {
    let data = read_input(input)?;
    let scheme = pick_scheme(&data, scheme)?;
    let mapping = if data.is_empty() {
        SymbolMapping::identity()
    } else {
        SymbolMapping::from_pmf(&qlc::Histogram256::from_bytes(&data).to_pmf().unwrap())
    };
    let container = qlc::encode(&data, &scheme, &mapping);
    let bytes = if raw {
        container.payload.clone()
    } else {
        container.to_bytes()
    };
    std::fs::write(output, &bytes).map_err(|e| io_err(format!("{}: {e}", output.display())))?;

    let payload_comp = if data.is_empty() {
        0.0
    } else {
        1.0 - container.payload.len() as f64 / data.len() as f64
    };
    let total_comp = if data.is_empty() {
        0.0
    } else {
        1.0 - bytes.len() as f64 / data.len() as f64
    };
    println!("original:     {} bytes", data.len());
    println!("encoded:      {} bytes", bytes.len());
    println!("payload-only compressibility: {:.2}%", payload_comp * 100.0);
    println!("container compressibility:    {:.2}%", total_comp * 100.0);
    Ok(())
}

fn decode_exit_code(e: &QlcError) -> u8 {
    match e.category() {
        ErrorCategory::Format => 4,
        _ => 5,
    }
}

fn cmd_decode(input: &PathBuf, output: &PathBuf) -> Result<(), CliError> {
    let bytes = read_input(input)?;
    let container = QlcContainer::from_bytes(&bytes).map_err(|e| CliError {
        code: decode_exit_code(&e),
        message: e.to_string(),
    })?;
    let data = qlc::decode(&container).map_err(|e| CliError {
        code: decode_exit_code(&e),
        message: e.to_string(),
    })?;
    std::fs::write(output, &data).map_err(|e| io_err(format!("{}: {e}", output.display())))?;
    println!("decoded {} bytes", data.len());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    output: &PathBuf,
    kind: GenKind,
    size: usize,
    seed: u64,
    sigma: f64,
    p0: f64,
    exponent: f64,
) -> Result<(), CliError> {
    if size == 0 {
        return Err(io_err("size must be > 0"));
    }
    let kind = match kind {
        GenKind::GaussianE4m3 => SyntheticKind::GaussianE4m3 { sigma },
        GenKind::SpikeZero => SyntheticKind::SpikeZero { p0, sigma },
        GenKind::Uniform => SyntheticKind::Uniform,
        GenKind::Zipf => SyntheticKind::Zipf { exponent },
    };
    let data = SyntheticSpec { kind, size, seed }.generate();
    std::fs::write(output, &data).map_err(|e| io_err(format!("{}: {e}", output.display())))?;
    println!("wrote {} bytes to {}", data.len(), output.display());
    Ok(())
}

fn cmd_bench(input: &PathBuf, reps: u32) -> Result<(), CliError> {
    let data = read_input(input)?;
    let rep = qlc::bench::run(&data, reps).map_err(|e| CliError {
        code: match e {
            qlc::bench::BenchError::VerificationFailed => 6,
            qlc::bench::BenchError::Codec(_) => 2,
        },
        message: e.to_string(),
    })?;
    println!(
        "input {} bytes, best of {} repetitions (decode outputs verified)",
        rep.input_len, rep.reps
    );
    for row in &rep.rows {
        println!("{:<28} {:>10.1} MB/s", row.name, row.mb_per_s);
    }
    Ok(())
}
