use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use extrigid::report::{Format, Settings};
use extrigid::rigidity::CheckStatus;
use extrigid::session::run_source;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

/// Runs a script of ring, module and command statements and prints a report.
#[derive(Debug, Parser)]
#[command(name = "extrigid", version)]
struct Cli {
    /// Script file; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: OutputFormat,
    /// Default seed for campaigns.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Gröbner degree cap, relative to the lowest input degree.
    #[arg(long, default_value_t = extrigid::ring::DEFAULT_DEGREE_CAP)]
    degree_cap: u32,
    /// Resolution length cap; the number of variables plus six by default.
    #[arg(long)]
    length_cap: Option<usize>,
    /// Default trial count for campaigns.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Field characteristic for campaign rings.
    #[arg(long, default_value_t = 32003)]
    prime: u64,
    /// Directory receiving a replay script for every fail verdict.
    #[arg(long)]
    witness_dir: Option<PathBuf>,
    /// Log Gröbner basis progress to standard error.
    #[arg(long)]
    trace_gb: bool,
}

fn run(cli: Cli) -> Result<i32, (i32, String)> {
    let mut logger = env_logger::Builder::from_default_env();
    if cli.trace_gb {
        logger.filter_module("extrigid::groebner", log::LevelFilter::Trace);
    }
    let _ = logger.try_init();

    let src = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| (3, format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| (3, e.to_string()))?;
            s
        }
    };
    let settings = Settings {
        seed: cli.seed,
        degree_cap: cli.degree_cap,
        length_cap: cli.length_cap,
        trials: cli.trials,
        prime: cli.prime,
        ..Settings::default()
    };
    let report = run_source(&src, &settings).map_err(|d| (3, d.to_string()))?;

    if let Some(dir) = &cli.witness_dir {
        std::fs::create_dir_all(dir).map_err(|e| (2, format!("{}: {e}", dir.display())))?;
        for (k, v) in report.verdicts().filter(|v| v.status == CheckStatus::Fail).enumerate() {
            let name = match (v.provenance.seed, v.provenance.trial) {
                (Some(s), Some(t)) => format!("{}-seed{s}-trial{t}.dsl", v.check_name),
                _ => format!("{}-{k}.dsl", v.check_name),
            };
            std::fs::write(dir.join(name), &v.witness.replay).map_err(|e| (2, e.to_string()))?;
        }
    }

    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Structured => Format::Structured,
    };
    let mut out = std::io::stdout().lock();
    out.write_all(&report.emit(format)).map_err(|e| (2, e.to_string()))?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
