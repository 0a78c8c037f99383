use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{error, info};
use vlppm::report::{emit_word_lengths, Format};
use vlppm::vlppm_core::container::HEADER_LEN;
use vlppm::vlppm_core::{compress, decompress, CodecConfig, Container, Mode};
use vlppm::{emit_report, fsio, run_corpus, word_length_profile, BenchConfig, Error};

/// Text compression with character PPM and prefix-keyed dictionaries.
#[derive(Parser)]
#[command(name = "vlppm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into a container.
    Compress(CompressArgs),
    /// Restore the original bytes from a container.
    Decompress {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare both coders over a directory of files.
    Bench(BenchArgs),
    /// Print a container's header.
    Inspect {
        #[arg(short, long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Vlppm,
    Ppm,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Args)]
struct CompressArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    output: PathBuf,
    #[arg(long, default_value_t = 3)]
    order: u8,
    #[arg(long, value_enum, default_value = "vlppm")]
    mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    prefix_len: u8,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    orders: Vec<u8>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Also report bits per word by word length for this file.
    #[arg(long)]
    profile_words: Option<PathBuf>,
    /// Order used for the word-length profile.
    #[arg(long, default_value_t = 2)]
    profile_order: u8,
    #[arg(long, default_value_t = 3)]
    prefix_len: u8,
    /// Files benchmarked in parallel. Keep at 1 for comparable timings.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Timed encoder runs per file and mode; the fastest counts.
    #[arg(long, default_value_t = 3)]
    runs: usize,
    /// Leave the time column empty so the report is reproducible.
    #[arg(long)]
    no_timings: bool,
    /// Write the report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Io(Error),
    Corrupt(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Corrupt { .. } | Error::Roundtrip { .. } => Failure::Corrupt(e),
            Error::Config(c) => Failure::Usage(c.to_string()),
            other => Failure::Io(other),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).format_timestamp(None).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            error!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            error!("{e}");
            ExitCode::from(2)
        }
        Err(Failure::Corrupt(e)) => {
            error!("{e}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Compress(args) => {
            let config = CodecConfig {
                mode: match args.mode {
                    ModeArg::Vlppm => Mode::Vlppm,
                    ModeArg::Ppm => Mode::Ppm,
                },
                order: args.order,
                prefix_len: args.prefix_len,
            };
            config.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let data = fsio::read(&args.input)?;
            let container = compress(&data, &config).map_err(Error::from)?;
            let bytes = container.to_bytes();
            fsio::write_atomic(&args.output, &bytes)?;
            info!("{} -> {} bytes", data.len(), bytes.len());
            Ok(())
        }
        Command::Decompress { input, output } => {
            let container = read_container(&input)?;
            let data = decompress(&container).map_err(|source| Error::Corrupt { path: input, source })?;
            fsio::write_atomic(&output, &data)?;
            Ok(())
        }
        Command::Inspect { input } => {
            let c = read_container(&input)?;
            let bpc = if c.original_len == 0 { 0.0 } else { 8.0 * c.payload.len() as f64 / c.original_len as f64 };
            let mode = match c.config.mode {
                Mode::Ppm => "ppm",
                Mode::Vlppm => "vlppm",
            };
            println!("mode          {mode}");
            println!("order         {}", c.config.order);
            println!("prefix_len    {}", c.config.prefix_len);
            println!("original_len  {}", c.original_len);
            println!("header_bytes  {HEADER_LEN}");
            println!("payload_bytes {}", c.payload.len());
            println!("bpc           {bpc:.4}");
            Ok(())
        }
        Command::Bench(args) => bench(args),
    }
}

fn read_container(path: &Path) -> Result<Container, Failure> {
    let bytes = fsio::read(path)?;
    Container::from_bytes(&bytes).map_err(|source| Error::Corrupt { path: path.to_path_buf(), source }.into())
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    if args.orders.is_empty() {
        return Err(Failure::Usage("--orders needs at least one order".into()));
    }
    for &order in &args.orders {
        CodecConfig { prefix_len: args.prefix_len, ..CodecConfig::vlppm(order) }
            .validate()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if !args.corpus.is_dir() {
        return Err(Failure::Io(Error::Io {
            path: args.corpus.clone(),
            source: std::io::Error::new(std::io::ErrorKind::NotFound, "not a directory"),
        }));
    }
    let format = match args.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Markdown => Format::Markdown,
    };
    let config = BenchConfig {
        orders: args.orders.clone(),
        prefix_len: args.prefix_len,
        jobs: args.jobs,
        timing_runs: args.runs,
    };
    let report = run_corpus(&args.corpus, &config)?;
    for s in &report.summaries {
        eprintln!(
            "order {}: {} files, bpc {:.3} -> {:.3}, gain {:.1}%, time {:.0}%, memory {:.0}%",
            s.order,
            s.files,
            s.bpc_ppm,
            s.bpc_vlppm,
            s.gain_pct,
            100.0 * s.time_ratio,
            100.0 * s.mem_ratio,
        );
    }
    let mut out = emit_report(&report.results, format, !args.no_timings)?;
    if let Some(path) = &args.profile_words {
        let data = fsio::read(path)?;
        let stats = word_length_profile(&data, args.profile_order, args.prefix_len).map_err(Error::from)?;
        out.extend_from_slice(if format == Format::Csv { b"\r\n" } else { b"\n" });
        out.extend(emit_word_lengths(&stats, format)?);
    }
    match &args.output {
        Some(path) => fsio::write_atomic(path, &out)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&out)
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::Io { path: "<stdout>".into(), source: e })?;
        }
    }
    Ok(())
}
