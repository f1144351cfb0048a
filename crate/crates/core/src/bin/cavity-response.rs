use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cavity_response::spectra::{run_sweep_with_threads, write_table, Observable, OutputFormat, RunConfig};
use cavity_response::validate::run_builtin_checks;
use cavity_response::Error;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cavity-response", version, about = "Spectra of materials coupled to a cavity mode")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the configured observables over the parameter grid.
    Sweep {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Locate collective modes at each axis point.
    Poles {
        config: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run the built-in consistency checks.
    Validate,
}

const EXIT_CONFIG: u8 = 1;
const EXIT_SOLVER: u8 = 2;

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(
    cfg: RunConfig,
    output: Option<PathBuf>,
    format: Option<Format>,
    threads: Option<usize>,
    poles_only: bool,
) -> Result<bool, Error> {
    let format = match format {
        Some(Format::Csv) => OutputFormat::Csv,
        Some(Format::Structured) => OutputFormat::Structured,
        None => cfg.output_format(),
    };
    let output = output.or_else(|| cfg.output.as_ref().map(PathBuf::from));
    let table = run_sweep_with_threads(&cfg, threads)?;
    for f in &table.metadata.failures {
        eprintln!(
            "warning: {} failed at axis point {}{}: {}",
            f.observable,
            f.axis_index,
            f.omega_index.map(|j| format!(", omega point {j}")).unwrap_or_default(),
            f.reason
        );
    }
    let out = open_output(output.as_deref())?;
    write_table(&table, format, out)?;
    let pole_failure = poles_only && table.poles.as_ref().is_some_and(|p| p.iter().any(Option::is_none));
    Ok(!pole_failure)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Sweep { config, output, format, threads } => {
            RunConfig::from_file(&config).and_then(|cfg| run(cfg, output, format, threads, false))
        }
        Command::Poles { config, output, format } => RunConfig::from_file(&config).and_then(|mut cfg| {
            cfg.observables = vec![Observable::Poles];
            run(cfg, output, format, None, true)
        }),
        Command::Validate => {
            let checks = run_builtin_checks();
            for c in &checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                println!("{status}  {:<52} deviation {:.3e}  tolerance {:.0e}", c.name, c.deviation, c.tolerance);
            }
            Ok(checks.iter().all(|c| c.passed()))
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_SOLVER),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::InvalidParameter(_) => ExitCode::from(EXIT_CONFIG),
                _ => ExitCode::from(EXIT_SOLVER),
            }
        }
    }
}
