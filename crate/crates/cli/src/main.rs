mod config;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use splitsq::generators::{
    divisor_chain, divisor_pair, family_candidate, family_stream, trailing_zero_family,
    zeros_between_stream, FamilyCandidate, FamilyCase, FamilyParams,
};
use splitsq::numeric::parse_decimal;
use splitsq::oracle::{density_report, enumerate_streaming, SearchOptions};
use splitsq::output::{read_witness_lines, CsvWriter, JsonlWriter, SearchHeader};
use splitsq::{check_witness, find_split_witnesses, ClassifyOptions, Error, Nat, WideNat, Witness};

use crate::config::{CliConfig, OutputFormat, Overrides, OUTPUT_DIR_ENV};

/// Classify, generate and enumerate squares that split into two squares.
#[derive(Debug, Parser)]
#[command(name = "splitsq", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format [default: jsonl]
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write records here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Largest alpha scanned by open-ended generators [default: 64]
    #[arg(long, global = true)]
    alpha_ceiling: Option<u32>,
    /// Report progress on stderr
    #[arg(long, global = true)]
    progress: bool,
    /// Settings file with `key = value` lines
    #[arg(long, global = true, env = "SPLITSQ_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every split of a number into two squares
    Classify {
        number: String,
        /// Allow blocks divisible by 10
        #[arg(long)]
        relaxed: bool,
        /// Require exactly this many zeros between the blocks
        #[arg(long)]
        zeros: Option<u32>,
        /// Do not require the number itself to be a square
        #[arg(long)]
        any_total: bool,
    },
    /// Generate members of a constructive family
    #[command(subcommand)]
    Gen(GenCommand),
    /// Enumerate split squares z^2 for 2 <= z <= max-z
    Search {
        #[arg(long)]
        max_z: u64,
        #[arg(long)]
        zeros: Option<u32>,
        /// Worker threads (1 scans on the main thread)
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Re-verify a JSONL file of witnesses
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// Count split squares by number of digits
    Density {
        #[arg(long)]
        max_z: u64,
    },
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// x^2 + a^2 = z^2 with a = 10^alpha - n, n = 2^beta (case 1) or 5^beta (case 2)
    Thm1 {
        #[arg(long = "case", value_parser = clap::value_parser!(u32).range(1..=2))]
        case_id: u32,
        #[arg(long, required_unless_present = "alpha_max")]
        alpha: Option<u32>,
        #[arg(long, requires = "alpha")]
        beta: Option<u32>,
        /// Emit every verified member with alpha up to this bound
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        alpha_max: Option<u32>,
    },
    /// A pair c | d of split squares with d = 4c
    Thm2 {
        #[arg(long)]
        alpha: u32,
    },
    /// A divisibility chain of at least r split squares
    Chain {
        #[arg(long)]
        r: u32,
    },
    /// Split squares with exactly s zeros between the blocks
    Zeros {
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        alpha_start: u32,
    },
    /// 49 * 10^(2k)
    Trailing {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        relaxed: bool,
    },
}

fn open_writer(cfg: &CliConfig) -> Result<Box<dyn Write>> {
    Ok(match &cfg.output_path {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot write {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

/// Where records go, in the configured format.
#[allow(clippy::large_enum_variant)]
enum Sink {
    Jsonl(JsonlWriter<Box<dyn Write>>),
    Csv(CsvWriter<Box<dyn Write>>),
    Human(Box<dyn Write>),
}

impl Sink {
    fn open(cfg: &CliConfig, header: Option<&SearchHeader>) -> Result<Sink> {
        let out = open_writer(cfg)?;
        Ok(match cfg.output_format {
            OutputFormat::Jsonl => match header {
                Some(h) => Sink::Jsonl(JsonlWriter::with_header(out, h)?),
                None => Sink::Jsonl(JsonlWriter::new(out)),
            },
            OutputFormat::Csv => Sink::Csv(CsvWriter::new(out)?),
            OutputFormat::Human => Sink::Human(out),
        })
    }

    fn witness(&mut self, w: &splitsq::SplitWitness<impl std::fmt::Display>) -> io::Result<()> {
        match self {
            Sink::Jsonl(j) => j.write(w),
            Sink::Csv(c) => c.write(w),
            Sink::Human(h) => writeln!(h, "{w}"),
        }
    }

    /// A whole record as one JSONL line; its witnesses as CSV rows; or the
    /// given text.
    fn record<R: Serialize>(
        &mut self,
        record: &R,
        witnesses: &[&Witness],
        human: &str,
    ) -> io::Result<()> {
        match self {
            Sink::Jsonl(j) => j.write(record),
            Sink::Csv(c) => witnesses.iter().try_for_each(|w| c.write(*w)),
            Sink::Human(h) => writeln!(h, "{human}"),
        }
    }

    fn finish(self) -> io::Result<()> {
        match self {
            Sink::Jsonl(mut j) => j.flush(),
            Sink::Csv(mut c) => c.flush(),
            Sink::Human(mut h) => h.flush(),
        }
    }
}

fn candidate_text(c: &FamilyCandidate) -> String {
    let p = &c.params;
    let head = format!(
        "case {} alpha={} beta={}: k={} n={} a={}",
        p.case, p.alpha, p.beta, c.k, c.n, c.a
    );
    match (&c.x, &c.z, &c.witness) {
        (Some(x), Some(z), Some(w)) => format!("{head} x={x} z={z} verified\n  {w}"),
        (Some(x), Some(z), None) => format!("{head} x={x} z={z} {:?}", c.status),
        _ => format!("{head} {:?}", c.status),
    }
}

fn cmd_classify(
    cfg: &CliConfig,
    number: &str,
    relaxed: bool,
    zeros: Option<u32>,
    any_total: bool,
) -> Result<u8> {
    let n: Nat = parse_decimal(number)?;
    if n.bits() == 0 {
        bail!("number must be at least 1");
    }
    let opts = ClassifyOptions {
        require_total_square: !any_total,
        allow_divisible_by_10_parts: relaxed,
        zeros_filter: zeros,
    };
    let witnesses = find_split_witnesses(&n, &opts);
    let mut sink = Sink::open(cfg, None)?;
    for w in &witnesses {
        sink.witness(w)?;
    }
    if witnesses.is_empty() {
        if let Sink::Human(h) = &mut sink {
            writeln!(h, "none")?;
        } else {
            eprintln!("none");
        }
    }
    sink.finish()?;
    Ok(if witnesses.is_empty() { 1 } else { 0 })
}

#[derive(Serialize)]
struct TrailingRecord {
    k: String,
    total: String,
    witnesses: Vec<Witness>,
}

fn cmd_gen(cfg: &CliConfig, cmd: &GenCommand) -> Result<u8> {
    let mut sink = Sink::open(cfg, None)?;
    let code = match cmd {
        GenCommand::Thm1 {
            case_id,
            alpha,
            beta,
            alpha_max,
        } => {
            let case = FamilyCase::from_id(*case_id)?;
            let candidates = match (alpha, alpha_max) {
                (_, Some(max)) => family_stream(case, *max)?,
                (Some(alpha), None) => {
                    let params = FamilyParams::new(*alpha, beta.unwrap_or(0), case)?;
                    vec![family_candidate(params)?]
                }
                (None, None) => bail!("--alpha or --alpha-max is required"),
            };
            for c in &candidates {
                let ws: Vec<&Witness> = c.witness.iter().collect();
                sink.record(c, &ws, &candidate_text(c))?;
            }
            u8::from(candidates.iter().any(|c| !c.is_verified()))
        }
        GenCommand::Thm2 { alpha } => {
            let p = divisor_pair(*alpha)?;
            let text = format!(
                "alpha={}: c={} d={} (d = 4c)\n  {}\n  {}",
                p.alpha, p.c, p.d, p.c_witness, p.d_witness
            );
            sink.record(&p, &[&p.c_witness, &p.d_witness], &text)?;
            0
        }
        GenCommand::Chain { r } => match divisor_chain(*r) {
            Ok(chain) => {
                let ws: Vec<&Witness> = chain.witnesses.iter().collect();
                let mut text = format!(
                    "r={} alpha={} members={}",
                    chain.r,
                    chain.alpha,
                    chain.members.len()
                );
                for w in &chain.witnesses {
                    text.push_str(&format!("\n  {w}"));
                }
                sink.record(&chain, &ws, &text)?;
                0
            }
            Err(e @ Error::ChainShortfall { .. }) => {
                eprintln!("shortfall: {e}");
                1
            }
            Err(e) => return Err(e.into()),
        },
        GenCommand::Zeros {
            s,
            count,
            alpha_start,
        } => {
            let stream = zeros_between_stream(*s, *count, *alpha_start, cfg.alpha_ceiling)?;
            for w in &stream.witnesses {
                sink.witness(w)?;
            }
            if stream.complete {
                0
            } else {
                eprintln!(
                    "found {} of {} examples with s={} up to alpha={}",
                    stream.witnesses.len(),
                    count,
                    s,
                    stream.alpha_reached
                );
                1
            }
        }
        GenCommand::Trailing { k, relaxed } => {
            let total = trailing_zero_family(*k);
            let opts = if *relaxed {
                ClassifyOptions::relaxed()
            } else {
                ClassifyOptions::default()
            };
            let witnesses = find_split_witnesses(&total, &opts);
            let mut text = format!("k={k}: {total}");
            for w in &witnesses {
                text.push_str(&format!("\n  {w}"));
            }
            if witnesses.is_empty() {
                text.push_str("\n  none");
            }
            let record = TrailingRecord {
                k: k.to_string(),
                total: total.to_string(),
                witnesses,
            };
            let ws: Vec<&Witness> = record.witnesses.iter().collect();
            sink.record(&record, &ws, &text)?;
            0
        }
    };
    sink.finish()?;
    Ok(code)
}

fn cmd_search(
    cfg: &CliConfig,
    max_z: u64,
    zeros: Option<u32>,
    workers: Option<usize>,
) -> Result<u8> {
    if max_z < 2 {
        bail!("--max-z must be at least 2");
    }
    let mut sink = Sink::open(cfg, Some(&SearchHeader::new(max_z, zeros)))?;
    let opts = SearchOptions {
        workers,
        ..SearchOptions::default()
    };
    let progress = cfg.progress;
    let report = enumerate_streaming::<WideNat, _>(max_z, zeros, opts, |batch, hi| {
        for w in batch {
            sink.witness(w)?;
        }
        if progress {
            eprintln!("scanned z <= {hi}");
        }
        Ok(())
    })?;
    sink.finish()?;
    eprintln!(
        "{} split squares ({} witnesses) for z <= {} in {:.2?}",
        report.totals().len(),
        report.witnesses.len(),
        max_z,
        report.elapsed
    );
    for (digits, count) in &report.counts_by_digits {
        eprintln!("  {digits:>3} digits: {count}");
    }
    Ok(0)
}

fn cmd_verify(path: &PathBuf) -> Result<u8> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let mut checked = 0usize;
    let mut failed = 0usize;
    for line in read_witness_lines::<Nat, _>(BufReader::new(file)) {
        let line = line?;
        let w = match line.witness {
            Ok(w) => w,
            Err(e) => bail!("line {}: malformed witness: {e}", line.line),
        };
        if let Err(v) = check_witness(&w) {
            println!("line {}: {v}", line.line);
            failed += 1;
        }
        checked += 1;
    }
    if failed > 0 {
        eprintln!("{failed} of {checked} witnesses failed");
        return Ok(1);
    }
    if checked == 0 {
        eprintln!("warning: no witnesses in {}", path.display());
    } else {
        eprintln!("{checked} witnesses verified");
    }
    Ok(0)
}

fn cmd_density(cfg: &CliConfig, max_z: u64) -> Result<u8> {
    let counts = density_report(max_z)?;
    let mut out = open_writer(cfg)?;
    match cfg.output_format {
        OutputFormat::Jsonl => {
            for (d, c) in &counts {
                let line = serde_json::json!({ "digits": d.to_string(), "count": c.to_string() });
                writeln!(out, "{line}")?;
            }
        }
        OutputFormat::Csv | OutputFormat::Human => {
            writeln!(out, "digits,count")?;
            for (d, c) in &counts {
                writeln!(out, "{d},{c}")?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8> {
    let output_dir = std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from);
    let flags = Overrides {
        output_format: cli.global.format,
        output_path: cli.global.output,
        alpha_ceiling: cli.global.alpha_ceiling,
        progress: cli.global.progress,
    };
    let cfg = CliConfig::resolve(cli.global.config.as_deref(), flags, output_dir.as_deref())?;
    match &cli.command {
        Command::Classify {
            number,
            relaxed,
            zeros,
            any_total,
        } => cmd_classify(&cfg, number, *relaxed, *zeros, *any_total),
        Command::Gen(g) => cmd_gen(&cfg, g),
        Command::Search {
            max_z,
            zeros,
            workers,
        } => cmd_search(&cfg, *max_z, *zeros, *workers),
        Command::Verify { file } => cmd_verify(file),
        Command::Density { max_z } => cmd_density(&cfg, *max_z),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
