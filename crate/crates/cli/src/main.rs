//! `gitkit`: GIT fans, downgrades and polyhedral divisors of affine toric
//! varieties from the command line.

mod input;
mod report;
mod svg;

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gitkit::Error;
use serde_json::json;

use crate::input::ProblemInput;
use crate::report::Report;

const EXAMPLE: &str = include_str!("../../../data/conifold.json");
const DEFAULT_BOX: u64 = 6;

/// A reason to stop with a nonzero exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub pointer: String,
    pub message: String,
}

impl Failure {
    pub fn invalid(pointer: &str, message: impl Into<String>) -> Self {
        Failure { code: 2, pointer: pointer.to_string(), message: message.into() }
    }

    pub fn unsupported(pointer: &str, message: impl Into<String>) -> Self {
        Failure { code: 4, pointer: pointer.to_string(), message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 1, pointer: String::new(), message: message.into() }
    }

    /// Maps a library error raised while processing the field at `pointer`.
    pub fn from_core(e: Error, pointer: &str) -> Self {
        let message = e.to_string();
        match e {
            Error::RankTooLarge(_)
            | Error::NonSaturatedEmbedding { .. }
            | Error::IneffectiveQuotientAction { .. }
            | Error::PosetTooLarge(_)
            | Error::BoundExhausted { .. } => Failure::unsupported(pointer, message),
            Error::NonInjectiveEmbedding { .. }
            | Error::DimensionMismatch { .. }
            | Error::Invalid(_)
            | Error::NoFiniteHilbertBasis
            | Error::OutsideWeightCone(_)
            | Error::EmptyGitClass => Failure::invalid(pointer, message),
            _ => Failure::internal(message),
        }
    }

    fn kind(&self) -> &'static str {
        match self.code {
            2 => "invalid_input",
            3 => "verification_failed",
            4 => "unsupported",
            _ => "internal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Parser)]
#[command(name = "gitkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct Common {
    /// Problem file; `-` reads standard input.
    input: Option<PathBuf>,
    /// Problem file, as an alternative to the positional argument.
    #[arg(short, long = "input", conflicts_with = "input")]
    input_flag: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Report format; defaults to the file's `options.format`, else json.
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Half-width of the weight box for reconstruction checks.
    #[arg(long = "box")]
    box_bound: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert basis of the dual cone.
    Hilbert(Common),
    /// Orbit cones with their monoids and lattices.
    OrbitCones(Common),
    /// GIT fan with the locus/cone correspondence and claim audit.
    GitFan(Common),
    /// Constructions along the subtorus given in the input.
    Downgrade {
        #[command(subcommand)]
        what: DowngradeCommand,
    },
    /// Reconstruction check of the downgraded polyhedral divisor.
    Verify(Common),
    /// Draws the GIT fan (downgraded when an embedding is given).
    RenderSvg {
        #[command(flatten)]
        common: Common,
        /// Destination of the drawing; standard output if absent.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Runs every check; uses the bundled example when no input is given.
    Selfcheck(Common),
}

#[derive(Subcommand)]
enum DowngradeCommand {
    /// GIT fan of the subtorus action.
    GitFan(Common),
    /// Polyhedral divisor of the quotient.
    Ppdiv(Common),
}

fn read_input(common: &Common, fallback: Option<&str>) -> Result<ProblemInput, Failure> {
    let path = common.input.as_ref().or(common.input_flag.as_ref());
    let text = match (path, fallback) {
        (Some(p), _) if p.as_os_str() == "-" => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::invalid("", format!("reading standard input: {e}")))?;
            s
        }
        (Some(p), _) => fs::read_to_string(p)
            .map_err(|e| Failure::invalid("", format!("reading {}: {e}", p.display())))?,
        (None, Some(text)) => text.to_string(),
        (None, None) => return Err(Failure::invalid("", "no input file given")),
    };
    input::parse(&text)
}

fn format_of(common: &Common, p: &ProblemInput) -> Format {
    common.format.unwrap_or(match p.options.format.as_deref() {
        Some("md") => Format::Md,
        _ => Format::Json,
    })
}

fn box_of(common: &Common, p: &ProblemInput) -> u64 {
    common.box_bound.or(p.options.box_bound).unwrap_or(DEFAULT_BOX)
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::internal(format!("writing {}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::internal(format!("writing output: {e}"))),
    }
}

fn run_report(
    common: &Common,
    fallback: Option<&str>,
    build: impl FnOnce(&ProblemInput, u64) -> Result<Report, Failure>,
) -> Result<(), Failure> {
    let p = read_input(common, fallback)?;
    let report = build(&p, box_of(common, &p))?;
    let text = match format_of(common, &p) {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.json).map_err(|e| Failure::internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Md => report.markdown,
    };
    emit(common.output.as_ref(), &text)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure { code: 3, pointer: String::new(), message: "a verification in the report failed".into() })
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Hilbert(c) => run_report(&c, None, |p, _| report::hilbert(p)),
        Command::OrbitCones(c) => run_report(&c, None, |p, _| report::orbit_cones(p)),
        Command::GitFan(c) => run_report(&c, None, |p, _| report::git_fan(p)),
        Command::Downgrade { what: DowngradeCommand::GitFan(c) } => {
            run_report(&c, None, |p, _| report::downgrade_git_fan(p))
        }
        Command::Downgrade { what: DowngradeCommand::Ppdiv(c) } => run_report(&c, None, |p, _| report::ppdiv(p)),
        Command::Verify(c) => run_report(&c, None, report::verify),
        Command::Selfcheck(c) => run_report(&c, Some(EXAMPLE), report::selfcheck),
        Command::RenderSvg { common, svg } => {
            let p = read_input(&common, None)?;
            let (cones, rank, title) = report::fan_for_drawing(&p)?;
            let drawing = svg::render(&cones, rank, &title)?;
            emit(svg.as_ref().or(common.output.as_ref()), &drawing)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("GITKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::invalid("", format!("GITKIT_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let body = json!({ "error": f.kind(), "pointer": f.pointer, "message": f.message });
            eprintln!("{body}");
            ExitCode::from(f.code as u8)
        }
    }
}
