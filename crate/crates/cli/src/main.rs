use clap::{Parser, Subcommand, ValueEnum};
use levo::pipeline::{self, Format, JobConfig};
use levo::Error;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "levo", version, about = "Le-Vogel cycles and modules from enriched characteristic cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and print the report.
    Compute {
        #[arg(long)]
        input: PathBuf,
        /// Overrides the seed in the job file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
        /// Retry with random coordinates this many times if the certificate fails.
        #[arg(long, default_value_t = 0)]
        retry: u32,
    },
    /// Transversality verdicts and the isolating certificate only.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
    /// Print the GECC and its supports.
    Gecc {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Option<OutFormat>,
    },
}

fn load(path: &PathBuf) -> Result<JobConfig, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {}", path.display(), e)))?;
    pipeline::parse_config(&text)
}

fn pick(flag: Option<OutFormat>, cfg: &JobConfig) -> Format {
    match flag {
        Some(OutFormat::Json) => Format::Json,
        Some(OutFormat::Text) => Format::Text,
        None => cfg.format.unwrap_or_default(),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

// A closed pipe (e.g. `| head`) is not an error worth a panic.
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", s.trim_end());
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Compute { input, seed, format, retry } => {
            let mut cfg = load(&input)?;
            if seed.is_some() {
                cfg.seed = seed;
            }
            let report = pipeline::run_pipeline(&cfg, retry)?;
            emit(&report.render(pick(format, &cfg)));
            Ok(report.exit_code())
        }
        Command::Check { input, format } => {
            let cfg = load(&input)?;
            let job = pipeline::resolve(&cfg)?;
            let (json, text, cert) = pipeline::check_report(&job)?;
            match pick(format, &cfg) {
                Format::Json => emit(&pretty(&json)),
                Format::Text => emit(&text),
            }
            Ok(match cert.status {
                levo::diagnostics::CertStatus::Certified => 0,
                levo::diagnostics::CertStatus::ProperUncertified => 2,
                levo::diagnostics::CertStatus::Failed => 3,
            })
        }
        Command::Gecc { input, format } => {
            let cfg = load(&input)?;
            let job = pipeline::resolve(&cfg)?;
            let (json, text) = pipeline::gecc_report(&job)?;
            match pick(format, &cfg) {
                Format::Json => emit(&pretty(&json)),
                Format::Text => emit(&text),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
