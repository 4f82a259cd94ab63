use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use momentcone_cli::commands::{self, OutputFormat};
use momentcone_cli::Sections;

/// Homotopy invariants of contact toric manifolds from their moment cones.
///
/// Exit codes: 0 ok, 2 parse error, 3 invalid cone, 4 cone not good,
/// 5 oracle disagreement or internal consistency failure.
#[derive(Parser)]
#[command(name = "momentcone", version)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output (default).
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SectionFlags {
    /// Include a moment-map witness for every nonzero face.
    #[arg(long)]
    witnesses: bool,
    /// Include the rays and the full face lattice.
    #[arg(long)]
    faces: bool,
}

impl From<&SectionFlags> for Sections {
    fn from(f: &SectionFlags) -> Self {
        Sections {
            faces: f.faces,
            witnesses: f.witnesses,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a cone presentation.
    Validate { path: PathBuf },
    /// Full report: validation, goodness, pi1, pi2.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        sections: SectionFlags,
    },
    /// Extreme rays and face lattice.
    Faces { path: PathBuf },
    /// Moment-map witnesses, or a membership check with --check.
    Witness {
        path: PathBuf,
        /// Squared magnitudes m_1..m_N (comma or space separated rationals).
        #[arg(long, value_name = "M")]
        check: Option<String>,
    },
    /// Compare the pipeline against the gcd-of-minors and subset-scan oracles.
    Oracle { path: PathBuf },
    /// Analyze every cone listed in a file, one JSON record per line.
    Batch {
        list: PathBuf,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        sections: SectionFlags,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("MOMENTCONE_LOG")).init();
    let cli = Cli::parse();
    let format = if cli.json { OutputFormat::Json } else { OutputFormat::Text };

    let outcome = match &cli.command {
        Command::Validate { path } => commands::validate_cmd(path, format),
        Command::Analyze { path, sections } => commands::analyze_cmd(path, format, sections.into()),
        Command::Faces { path } => commands::faces_cmd(path, format),
        Command::Witness { path, check } => commands::witness_cmd(path, format, check.as_deref()),
        Command::Oracle { path } => commands::oracle_cmd(path, format),
        Command::Batch { list, jobs, sections } => commands::batch_cmd(list, *jobs, sections.into()),
    };

    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(u8::try_from(outcome.code).unwrap_or(1))
}
