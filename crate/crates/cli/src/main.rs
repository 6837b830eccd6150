use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cotangent_core::catalog;
use cotangent_core::format::{self, AlgebraFile};
use cotangent_core::report::{analyze, AnalyzeOptions, CheckKind};
use cotangent_core::Error;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INVALID: u8 = 3;

#[derive(Parser)]
#[command(name = "cotangent", version, about = "Derivations and cohomology of cotangent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an algebra file and run the theorem checks.
    Analyze {
        path: PathBuf,
        /// Write the JSON report to this path.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Checks to run; repeatable.
        #[arg(long, value_enum, default_value = "all")]
        check: Vec<CheckArg>,
        /// Skip the brute-force der(D) computation.
        #[arg(long)]
        no_oracle: bool,
        /// Zero all timings in the report.
        #[arg(long)]
        stable: bool,
    },
    /// Built-in algebras.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List entries with their metadata.
    List,
    /// Write an entry as an algebra file.
    Export { name: String, path: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "C")]
    C,
    Orthogonal,
    All,
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn describe_load_error(err: &Error, text: &str) -> (u8, String) {
    let names: Vec<String> = format::AlgebraFile::parse(text)
        .map(|f| f.basis)
        .unwrap_or_default();
    let name = |i: usize| names.get(i).cloned().unwrap_or_else(|| format!("e{}", i + 1));
    match err {
        Error::Jacobi { i, j, k } => (
            EXIT_INVALID,
            format!("Jacobi identity fails on ({}, {}, {})", name(*i), name(*j), name(*k)),
        ),
        Error::NotAntisymmetric { i, j, k } => (
            EXIT_INVALID,
            format!(
                "brackets not antisymmetric: [{}, {}] and [{}, {}] disagree in component {}",
                name(*i),
                name(*j),
                name(*j),
                name(*i),
                name(*k)
            ),
        ),
        Error::InvalidForm(_) => (EXIT_INVALID, err.to_string()),
        _ => (EXIT_USAGE, err.to_string()),
    }
}

fn run_analyze(path: PathBuf, report: Option<PathBuf>, check: Vec<CheckArg>, no_oracle: bool, stable: bool) -> ExitCode {
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return fail(EXIT_USAGE, format!("cannot read {}: {e}", path.display())),
    };
    let input = match format::load(&text) {
        Ok(i) => i,
        Err(e) => {
            let (code, message) = describe_load_error(&e, &text);
            return fail(code, message);
        }
    };
    let checks: BTreeSet<CheckKind> = if check.contains(&CheckArg::All) {
        CheckKind::ALL.into_iter().collect()
    } else {
        check
            .iter()
            .map(|c| match c {
                CheckArg::A => CheckKind::A,
                CheckArg::B => CheckKind::B,
                CheckArg::C => CheckKind::C,
                CheckArg::Orthogonal | CheckArg::All => CheckKind::Orthogonal,
            })
            .collect()
    };
    let options = AnalyzeOptions {
        checks,
        oracle: !no_oracle,
        stable,
    };
    let result = match analyze(&input, &options) {
        Ok(r) => r,
        Err(e) => return fail(EXIT_INVALID, e),
    };
    print!("{}", result.render_text());
    if let Some(out) = report {
        if let Err(e) = std::fs::write(&out, result.to_json()) {
            return fail(EXIT_USAGE, format!("cannot write {}: {e}", out.display()));
        }
    }
    if result.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}

fn run_catalog(command: CatalogCommand) -> ExitCode {
    match command {
        CatalogCommand::List => {
            for e in catalog::catalog() {
                let field = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
                println!(
                    "{:<12} dim {:<2} p {:<2} k {:<2} semisimple {:<5} metric {}",
                    e.name,
                    e.algebra.dim(),
                    field(e.meta.p),
                    field(e.meta.k),
                    e.meta.semisimple,
                    e.metrics.first().map_or("-", |(n, _)| n.as_str())
                );
            }
            ExitCode::SUCCESS
        }
        CatalogCommand::Export { name, path } => {
            let Some(entry) = catalog::lookup(&name) else {
                return fail(EXIT_USAGE, format!("unknown catalog entry {name:?}"));
            };
            match std::fs::write(&path, AlgebraFile::from_entry(&entry).to_json()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display())),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            path,
            report,
            check,
            no_oracle,
            stable,
        } => run_analyze(path, report, check, no_oracle, stable),
        Command::Catalog { command } => run_catalog(command),
    }
}
