//! Command-line surface: tables, single-value encode/decode, feasibility
//! and uniqueness analysis, length profiles, and file compression.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use ghcode::{
    codeword_lengths, compress, decode_codeword, decompress, encode_integer,
    enumerate_representations, feasibility_scan, parse_bits, uniqueness_profile, CanonicalPolicy,
    CodecConfig, Codeword, RotationSchedule, SequenceDef,
};

/// Analysis ranges are capped to keep accidental huge sweeps from running
/// away; --no-cap lifts both limits.
const MAX_RANGE: i64 = 1_000_000;
const MAX_DECODE_BITS: usize = 128;

#[derive(Parser)]
#[command(
    name = "ghcode",
    version,
    about = "Fibonacci and Gopala-Hemachandra universal codes",
    after_help = "Sequence selectors: \"std\" for the standard Fibonacci sequence (1, 2); \
                  \"a=<int>\" for the variant pair (a, 1-a); \"a=<int>,b=<int>\" for an \
                  explicit pair. A bare integer passed via -a/--seq means the variant form."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SeqArg {
    /// Sequence selector: std | a=<int> | a=<int>,b=<int>
    #[arg(value_name = "SEQ")]
    seq: Option<String>,

    /// Sequence selector as a flag; a bare integer selects the variant pair
    #[arg(
        short = 'a',
        long = "seq",
        value_name = "SEQ",
        allow_hyphen_values = true,
        conflicts_with = "seq"
    )]
    seq_flag: Option<String>,
}

impl SeqArg {
    fn resolve(&self) -> Result<SequenceDef, CliError> {
        let raw = self
            .seq
            .as_deref()
            .or(self.seq_flag.as_deref())
            .unwrap_or("std");
        parse_selector(raw)
    }
}

#[derive(Args)]
struct RangeArg {
    /// Upper end of the analyzed range (1..=max)
    #[arg(long = "max", value_name = "M", default_value_t = 15)]
    max: i64,

    /// Lift the built-in range and codeword length caps
    #[arg(long = "no-cap")]
    no_cap: bool,
}

impl RangeArg {
    fn resolve(&self) -> Result<i64, CliError> {
        if self.max < 1 {
            return Err(CliError::Usage("--max must be at least 1".into()));
        }
        if !self.no_cap && self.max > MAX_RANGE {
            return Err(CliError::Usage(format!(
                "--max {} exceeds the default cap of {MAX_RANGE}; pass --no-cap to override",
                self.max
            )));
        }
        Ok(self.max)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print integers and all their codewords, one row per integer
    Table {
        #[command(flatten)]
        seq: SeqArg,
        #[command(flatten)]
        range: RangeArg,
        /// Fix the range to 1..=15, the reference table size
        #[arg(long)]
        golden: bool,
    },
    /// Encode one integer to its canonical codeword
    Encode {
        /// `[SEQ] N`: optional sequence selector, then the integer
        #[arg(value_name = "[SEQ] N", num_args = 1..=2, required = true)]
        operands: Vec<String>,
        /// Sequence selector as a flag; a bare integer selects the variant pair
        #[arg(short = 'a', long = "seq", value_name = "SEQ", allow_hyphen_values = true)]
        seq_flag: Option<String>,
        /// Lift the built-in value cap
        #[arg(long = "no-cap")]
        no_cap: bool,
    },
    /// Decode the codeword at the front of a bit string
    Decode {
        /// `[SEQ] BITS`: optional sequence selector, then a 0/1 string
        #[arg(value_name = "[SEQ] BITS", num_args = 0..=2)]
        operands: Vec<String>,
        /// Sequence selector as a flag; a bare integer selects the variant pair
        #[arg(short = 'a', long = "seq", value_name = "SEQ", allow_hyphen_values = true)]
        seq_flag: Option<String>,
        /// Bits as a flag instead of a positional argument
        #[arg(long = "bits", value_name = "BITS")]
        bits_flag: Option<String>,
        /// Lift the built-in input length cap
        #[arg(long = "no-cap")]
        no_cap: bool,
    },
    /// List integers the sequence cannot encode
    Scan {
        #[command(flatten)]
        seq: SeqArg,
        #[command(flatten)]
        range: RangeArg,
        /// Emit CSV (column: n)
        #[arg(long)]
        csv: bool,
    },
    /// Histogram of representation counts over a range
    Profile {
        #[command(flatten)]
        seq: SeqArg,
        #[command(flatten)]
        range: RangeArg,
        /// Emit CSV (columns: count,integers)
        #[arg(long)]
        csv: bool,
    },
    /// Canonical codeword length per integer
    Lengths {
        #[command(flatten)]
        seq: SeqArg,
        #[command(flatten)]
        range: RangeArg,
        /// Emit CSV (columns: n,length; NA marks unencodable integers)
        #[arg(long)]
        csv: bool,
    },
    /// Compress a file (or stdin) into a GHC1 container
    Compress {
        #[command(flatten)]
        seq: SeqArg,
        /// Input path; stdin when omitted
        #[arg(short = 'i', long = "input", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Output path; stdout when omitted
        #[arg(short = 'o', long = "output", value_name = "PATH")]
        output: Option<PathBuf>,
        /// Rotation seed shared with the decoder
        #[arg(long = "rotate-seed", value_name = "SEED", default_value_t = 0)]
        rotate_seed: u64,
        /// Rotation parameter set entry (repeatable); enables rotating mode
        #[arg(long = "rotate-set", value_name = "SEQ", allow_hyphen_values = true)]
        rotate_set: Vec<String>,
        /// Symbols per rotation block
        #[arg(long = "block", value_name = "SYMBOLS", default_value_t = 16)]
        block: u32,
    },
    /// Expand a GHC1 container back to the original bytes
    Decompress {
        /// Input path; stdin when omitted
        #[arg(short = 'i', long = "input", value_name = "PATH")]
        input: Option<PathBuf>,
        /// Output path; stdout when omitted
        #[arg(short = 'o', long = "output", value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Data(String),
}

impl From<ghcode::Error> for CliError {
    fn from(e: ghcode::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn parse_selector(raw: &str) -> Result<SequenceDef, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "invalid sequence selector {raw:?}: expected std, a=<int>, or a=<int>,b=<int>"
        ))
    };
    let raw = raw.trim();
    if raw.eq_ignore_ascii_case("std") {
        return Ok(SequenceDef::STANDARD);
    }
    if let Ok(a) = raw.parse::<i64>() {
        return variant_checked(a);
    }
    let mut a = None;
    let mut b = None;
    for part in raw.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let value: i64 = value.trim().parse().map_err(|_| bad())?;
        match key.trim() {
            "a" if a.is_none() => a = Some(value),
            "b" if b.is_none() => b = Some(value),
            _ => return Err(bad()),
        }
    }
    match (a, b) {
        (Some(a), Some(b)) => Ok(SequenceDef::new(a, b)),
        (Some(a), None) => variant_checked(a),
        _ => Err(bad()),
    }
}

/// Split `[SEQ] VALUE` operands: two operands name the sequence explicitly,
/// one leaves it to the flag or the standard default.
fn split_operands(
    operands: &[String],
    seq_flag: &Option<String>,
    value_name: &str,
) -> Result<(String, String), CliError> {
    match operands {
        [value] => Ok((resolve_selector_source(&None, seq_flag)?, value.clone())),
        [seq, value] => Ok((
            resolve_selector_source(&Some(seq.clone()), seq_flag)?,
            value.clone(),
        )),
        _ => Err(CliError::Usage(format!("missing {value_name} operand"))),
    }
}

fn resolve_selector_source(
    positional: &Option<String>,
    flag: &Option<String>,
) -> Result<String, CliError> {
    match (positional, flag) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "sequence selector given both positionally and via -a/--seq".into(),
        )),
        (Some(s), None) => Ok(s.clone()),
        (None, Some(s)) => Ok(s.clone()),
        (None, None) => Ok("std".into()),
    }
}

fn variant_checked(a: i64) -> Result<SequenceDef, CliError> {
    if 1i64.checked_sub(a).is_none() {
        return Err(CliError::Usage(format!("variant parameter {a} out of range")));
    }
    Ok(SequenceDef::variant(a))
}

fn table_row(n: i64, def: &SequenceDef) -> Result<String, CliError> {
    let reps = enumerate_representations(n, def, None)?;
    if reps.is_empty() {
        return Ok("N/A".into());
    }
    let cells: Vec<String> = reps
        .iter()
        .map(|r| Codeword::from_representation(r).to_string())
        .collect();
    Ok(cells.join(" or "))
}

fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>, CliError> {
    match path {
        Some(p) => Ok(fs::read(p)?),
        None => {
            let mut data = Vec::new();
            std::io::stdin().read_to_end(&mut data)?;
            Ok(data)
        }
    }
}

fn write_output(path: &Option<PathBuf>, data: &[u8]) -> Result<(), CliError> {
    match path {
        Some(p) => Ok(fs::write(p, data)?),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(data)?;
            Ok(stdout.flush()?)
        }
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Table { seq, range, golden } => {
            let def = seq.resolve()?;
            let max = if golden { 15 } else { range.resolve()? };
            for n in 1..=max {
                println!("{n}: {}", table_row(n, &def)?);
            }
        }
        Command::Encode {
            operands,
            seq_flag,
            no_cap,
        } => {
            let (selector, raw_n) = split_operands(&operands, &seq_flag, "N")?;
            let def = parse_selector(&selector)?;
            let n: i64 = raw_n
                .parse()
                .map_err(|_| CliError::Usage(format!("N must be an integer, got {raw_n:?}")))?;
            if !no_cap && n > MAX_RANGE {
                return Err(CliError::Usage(format!(
                    "{n} exceeds the default cap of {MAX_RANGE}; pass --no-cap to override"
                )));
            }
            let cw = encode_integer(n, &def, CanonicalPolicy::ShortestThenLex)?;
            println!("{cw}");
        }
        Command::Decode {
            operands,
            seq_flag,
            bits_flag,
            no_cap,
        } => {
            let (selector, raw) = match bits_flag {
                Some(bits) => {
                    let selector = match operands.len() {
                        0 => resolve_selector_source(&None, &seq_flag)?,
                        1 => resolve_selector_source(&Some(operands[0].clone()), &seq_flag)?,
                        _ => {
                            return Err(CliError::Usage(
                                "--bits conflicts with a positional bit string".into(),
                            ))
                        }
                    };
                    (selector, bits)
                }
                None => split_operands(&operands, &seq_flag, "BITS")?,
            };
            let def = parse_selector(&selector)?;
            if !no_cap && raw.len() > MAX_DECODE_BITS {
                return Err(CliError::Usage(format!(
                    "input is longer than {MAX_DECODE_BITS} bits; pass --no-cap to override"
                )));
            }
            let bits = parse_bits(&raw).map_err(|e| CliError::Usage(e.to_string()))?;
            let (value, consumed) = decode_codeword(&bits, &def)?;
            if value < 1 {
                return Err(ghcode::Error::DecodedNonPositive(value).into());
            }
            println!("{value} ({consumed} bits)");
        }
        Command::Scan { seq, range, csv } => {
            let def = seq.resolve()?;
            let gaps = feasibility_scan(&def, range.resolve()?)?;
            if csv {
                println!("n");
                for n in gaps {
                    println!("{n}");
                }
            } else if gaps.is_empty() {
                println!("none");
            } else {
                let cells: Vec<String> = gaps.iter().map(i64::to_string).collect();
                println!("{}", cells.join(", "));
            }
        }
        Command::Profile { seq, range, csv } => {
            let def = seq.resolve()?;
            let histogram = uniqueness_profile(&def, range.resolve()?)?;
            if csv {
                println!("count,integers");
            }
            for (count, occurrences) in histogram {
                if csv {
                    println!("{count},{occurrences}");
                } else {
                    println!("count={count}: {occurrences}");
                }
            }
        }
        Command::Lengths { seq, range, csv } => {
            let def = seq.resolve()?;
            let rows = codeword_lengths(&def, range.resolve()?, CanonicalPolicy::ShortestThenLex)?;
            if csv {
                println!("n,length");
            }
            for (n, len) in rows {
                match (csv, len) {
                    (true, Some(len)) => println!("{n},{len}"),
                    (true, None) => println!("{n},NA"),
                    (false, Some(len)) => println!("{n}: {len}"),
                    (false, None) => println!("{n}: N/A"),
                }
            }
        }
        Command::Compress {
            seq,
            input,
            output,
            rotate_seed,
            rotate_set,
            block,
        } => {
            let config = if rotate_set.is_empty() {
                CodecConfig::fixed(seq.resolve()?)
            } else {
                if seq.seq.is_some() || seq.seq_flag.is_some() {
                    return Err(CliError::Usage(
                        "a fixed-mode sequence selector conflicts with --rotate-set".into(),
                    ));
                }
                let defs = rotate_set
                    .iter()
                    .map(|s| parse_selector(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let schedule = RotationSchedule::new(rotate_seed, defs, block)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                CodecConfig::rotating(schedule)
            };
            let data = read_input(&input)?;
            let container = compress(&data, &config)?;
            write_output(&output, &container)?;
        }
        Command::Decompress { input, output } => {
            let container = read_input(&input)?;
            let data = decompress(&container)?;
            write_output(&output, &data)?;
        }
    }
    Ok(())
}

/// Run the CLI. Exit codes: 0 success, 1 usage error, 2 data error.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(CliError::Data(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}
