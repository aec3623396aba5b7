//! `latcon`: finite lattices from the command line.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 bad input.

mod commands;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use latcon_core::catalog::CensusPredicate;
use latcon_core::format::{parse_lattice, to_json_pretty};
use latcon_core::verify::Suite;
use latcon_core::FiniteLattice;

use commands::Report;

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(name = "latcon", version, about = "Semidistributivity, congruences, doubling and gluing of finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format: human-readable text, or one JSON object per line.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// For catalog, con, double and glue: write the produced lattice file
    /// here. For check, census and verify: write the report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for randomized relabeling checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Include wall-clock runtimes in reports (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a lattice file and report SD, simplicity and isolated intervals.
    Check { file: PathBuf },
    /// List every congruence and name the shape of the congruence lattice.
    Con { file: PathBuf },
    /// Double an element or an antichain.
    Double {
        file: PathBuf,
        /// Element to double; repeat for an antichain.
        #[arg(short = 'u', long = "element", required = true)]
        elements: Vec<String>,
    },
    /// Replace an isolated interval by another lattice.
    Glue {
        file: PathBuf,
        /// The interval as `a,b`.
        #[arg(long, value_parser = parse_interval)]
        interval: (String, String),
        /// Lattice file to insert.
        #[arg(long = "with")]
        with: PathBuf,
    },
    /// Emit a named lattice (n5, m3, n6, l9, l10, chain<k>, b<k>); lists entries without a name.
    Catalog { name: Option<String> },
    /// Tabulate congruence lattices over the enumerated corpus.
    Census {
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// all, sd or sd-simple.
        #[arg(long, default_value = "sd")]
        predicate: CensusPredicate,
    },
    /// Run an invariant suite: sd-equivalence, doubling, glue, census or all.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
}

fn parse_interval(s: &str) -> Result<(String, String), String> {
    match s.split_once(',') {
        Some((a, b)) if !a.trim().is_empty() && !b.trim().is_empty() => Ok((a.trim().to_owned(), b.trim().to_owned())),
        _ => Err(format!("expected `a,b`, got `{s}`")),
    }
}

#[derive(Debug)]
enum CliError {
    Input(String),
}

impl From<latcon_core::LatticeError> for CliError {
    fn from(e: latcon_core::LatticeError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn read_lattice(path: &Path) -> Result<FiniteLattice, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_lattice(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let report: Report = match &cli.command {
        Command::Check { file } => commands::check(&read_lattice(file)?, cli.seed),
        Command::Con { file } => commands::con(&read_lattice(file)?),
        Command::Double { file, elements } => commands::double(&read_lattice(file)?, elements)?,
        Command::Glue { file, interval, with } => commands::glue(&read_lattice(file)?, interval, &read_lattice(with)?)?,
        Command::Catalog { name } => commands::catalog(name.as_deref())?,
        Command::Census { max_size, predicate } => commands::census(*max_size, *predicate)?,
        Command::Verify { suite, max_size } => commands::verify(*suite, *max_size, cli.timings)?,
    };

    let mut stdout = String::new();
    match (&report.artifact, &cli.out) {
        (Some(lattice), Some(path)) => write_file(path, &to_json_pretty(lattice))?,
        (None, Some(path)) => {
            write_file(path, &render(&report, cli.format))?;
            return Ok(report.ok);
        }
        _ => {}
    }
    stdout.push_str(&render(&report, cli.format));
    if cli.out.is_none() && cli.format == Format::Text {
        if let Some(lattice) = &report.artifact {
            stdout.push_str(&to_json_pretty(lattice));
            stdout.push('\n');
        }
    }
    print!("{stdout}");
    Ok(report.ok)
}

fn render(report: &Report, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            for line in &report.lines {
                s.push_str(line);
                s.push('\n');
            }
        }
        Format::Machine => {
            for record in &report.records {
                s.push_str(&serde_json::to_string(record).expect("report serializes"));
                s.push('\n');
            }
        }
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
