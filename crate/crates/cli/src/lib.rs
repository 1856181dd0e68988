//! Front end for `limfrob-core`: runs a pipeline for a weight vector (or a
//! grid of them) and produces a [`Document`] rendered as JSON or text.

pub mod pipeline;
pub mod report;
pub mod text;

use std::fmt;

use clap::ValueEnum;
use limfrob_core::grid::weight_grid;
use limfrob_core::Weights;
use rayon::prelude::*;

pub use report::{BatchReport, Document, Report, Section, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Spectrum,
    Connection,
    Check,
    Limit,
    Manifold,
    Log,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Connection => "connection",
            Command::Check => "check",
            Command::Limit => "limit",
            Command::Manifold => "manifold",
            Command::Log => "log",
            Command::All => "all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] limfrob_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Pass = 0,
    Internal = 1,
    Obstruction = 2,
    Usage = 3,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Failing checks outrank an obstruction.
    pub fn of(doc: &Document) -> Self {
        let reports = doc.reports();
        if reports.iter().any(|r| !r.passed) {
            Exit::Internal
        } else if reports.iter().any(|r| r.obstruction.is_some()) {
            Exit::Obstruction
        } else {
            Exit::Pass
        }
    }
}

impl From<&CliError> for Exit {
    fn from(e: &CliError) -> Self {
        match e {
            CliError::Usage(_) => Exit::Usage,
            CliError::Core(limfrob_core::Error::InvalidWeights(_)) => Exit::Usage,
            _ => Exit::Internal,
        }
    }
}

/// Parses `w1,w2,...` into positive weights.
pub fn parse_weights(s: &str) -> Result<Weights, CliError> {
    let values = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("weight {t:?} is not a positive integer")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Weights::new(values).map_err(|e| CliError::Usage(e.to_string()))
}

/// Parses `nmax,wmax`.
pub fn parse_grid(s: &str) -> Result<(usize, u32), CliError> {
    let bad = || CliError::Usage(format!("grid {s:?} must be nmax,wmax with both positive"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    let nmax: usize = a.trim().parse().map_err(|_| bad())?;
    let wmax: u32 = b.trim().parse().map_err(|_| bad())?;
    if nmax == 0 || wmax == 0 {
        return Err(bad());
    }
    Ok((nmax, wmax))
}

/// Runs `command` for one weight vector.
pub fn run(command: Command, w: &Weights) -> Result<Report, CliError> {
    let mut sections = Vec::new();
    let mut obstruction = None;
    match command {
        Command::Spectrum => sections.push(pipeline::spectrum(w)),
        Command::Connection => sections.push(pipeline::connection(w)?),
        Command::Limit => sections.push(pipeline::limit(w)?),
        Command::Log => sections.push(pipeline::log(w)?),
        Command::Manifold => match pipeline::manifold_obstruction(w)? {
            Some(reason) => {
                let mut limit = pipeline::limit(w)?;
                limit.notes.push(reason.clone());
                sections.push(limit);
                obstruction = Some(reason);
            }
            None => sections.push(pipeline::manifold(w)?),
        },
        Command::Check => {
            sections.push(pipeline::spectrum(w).compact());
            sections.push(pipeline::connection(w)?.compact());
            sections.push(pipeline::derivation(w)?);
            sections.push(pipeline::fts(w)?);
            sections.push(pipeline::limit(w)?.compact());
            sections.push(pipeline::log(w)?);
        }
        Command::All => {
            sections.push(pipeline::spectrum(w));
            sections.push(pipeline::connection(w)?);
            sections.push(pipeline::derivation(w)?);
            sections.push(pipeline::fts(w)?);
            sections.push(pipeline::limit(w)?);
            sections.push(pipeline::log(w)?);
            // only `manifold` itself turns the obstruction into an exit status
            match pipeline::manifold_obstruction(w)? {
                Some(reason) => {
                    let mut s = Section::new("manifold");
                    s.notes.push(reason);
                    sections.push(s);
                }
                None => sections.push(pipeline::manifold(w)?),
            }
        }
    }
    let passed = sections.iter().all(Section::passed);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: command.name().into(),
        weights: w.as_slice().to_vec(),
        mu: w.mu(),
        n: w.n(),
        sections,
        obstruction,
        passed,
    })
}

/// Runs `command` over every weight vector with `n ≤ nmax`, `wᵢ ≤ wmax`,
/// in parallel; reports keep the grid order.
pub fn run_grid(command: Command, nmax: usize, wmax: u32) -> Result<BatchReport, CliError> {
    let grid = weight_grid(nmax, wmax);
    let reports = grid
        .par_iter()
        .map(|w| run(command, w))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed);
    Ok(BatchReport {
        schema_version: SCHEMA_VERSION,
        command: command.name().into(),
        grid: [nmax as u32, wmax],
        reports,
        passed,
    })
}

pub fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => doc.to_json(),
        Format::Text => text::render(doc),
    }
}
