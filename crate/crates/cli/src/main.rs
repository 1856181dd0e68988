use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use limfrob_cli::{
    parse_grid, parse_weights, render, run, run_grid, CliError, Command, Document, Exit, Format,
};

/// Exact checks for the Laurent family u1 + … + un + x/(u1^w1 ⋯ un^wn).
///
/// Exit status: 0 all checks pass, 1 internal error or failed check,
/// 2 obstruction (no limit Frobenius manifold), 3 usage error.
#[derive(Parser, Debug)]
#[command(name = "limfrob", version)]
struct Cli {
    /// Pipeline to run.
    #[arg(value_enum)]
    command: Command,

    /// Weight vector, e.g. 2,2.
    #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
    weights: Option<String>,

    /// Batch mode over all weight vectors with n ≤ nmax and wᵢ ≤ wmax.
    #[arg(long, value_name = "NMAX,WMAX")]
    grid: Option<String>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn execute(cli: &Cli) -> Result<Document, CliError> {
    match (&cli.weights, &cli.grid) {
        (Some(w), None) => Ok(Document::Single(run(cli.command, &parse_weights(w)?)?)),
        (None, Some(g)) => {
            let (nmax, wmax) = parse_grid(g)?;
            Ok(Document::Batch(run_grid(cli.command, nmax, wmax)?))
        }
        _ => Err(CliError::Usage(
            "give exactly one of --weights, --grid".into(),
        )),
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            if !body.ends_with('\n') {
                stdout.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(Exit::Usage.code())
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = execute(&cli).and_then(|doc| {
        emit(&cli, &render(&doc, cli.format))?;
        Ok(Exit::of(&doc))
    });
    match outcome {
        Ok(exit) => {
            if let Some(path) = &cli.out {
                eprintln!("report written to {}", path.display());
            }
            ExitCode::from(exit.code())
        }
        Err(e) => {
            eprintln!("limfrob: {e}");
            ExitCode::from(Exit::from(&e).code())
        }
    }
}
