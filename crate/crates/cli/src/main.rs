use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, ValueEnum};

use gorext_cli::{exit, run_source, Format, Options};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

/// Run a gorext script and print its report.
#[derive(Parser, Debug)]
#[command(name = "gorext", version)]
struct Cli {
    /// Script file, or `-` for standard input.
    script: PathBuf,
    /// Seed for searches that do not set their own.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Default window H for checks, scans, Betti tables and searches.
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// Largest degree any Gröbner computation may reach.
    #[arg(long, default_value_t = 64)]
    degree_cap: u32,
    /// Abort computations after this many seconds.
    #[arg(long)]
    timeout_secs: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut src = String::new();
    let read = if cli.script.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut src).map(|_| ())
    } else {
        std::fs::read_to_string(&cli.script).map(|s| src = s)
    };
    if let Err(e) = read {
        eprintln!("gorext: {}: {e}", cli.script.display());
        return ExitCode::from(exit::ERROR as u8);
    }
    let opts = Options {
        seed: cli.seed,
        window: cli.window,
        degree_cap: cli.degree_cap,
        timeout: cli.timeout_secs.map(Duration::from_secs_f64),
    };
    let report = run_source(&src, &opts);
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Table => Format::Table,
    };
    print!("{}", report.render(format));
    if let Some(e) = &report.error {
        eprintln!("gorext: {}: {e}", cli.script.display());
    }
    ExitCode::from(report.exit_code() as u8)
}
