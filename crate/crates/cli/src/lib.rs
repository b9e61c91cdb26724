//! Command implementations behind the `vcodes` binary.

pub mod codefile;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use veronese_codes::checks::{run_suite, CheckError, Suite};
use veronese_codes::construction::{build_code, Geometry};
use veronese_codes::galois::{prime_power, Fields};
use veronese_codes::projgeom::PLANE_ENUMERATION_BOUND;
use veronese_codes::quadrics::{census, Census};
use veronese_codes::verify::{
    completeness_check, parameter_report, verify_line_index, verify_naive, VerificationReport,
};

use codefile::{CodeFileError, Format, CONSTRUCTION_TAG};

/// Largest q accepted by `build` and `classify`.
pub const MAX_Q: u32 = 9;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: CodeFileError,
    },
    #[error(transparent)]
    Library(#[from] veronese_codes::Error),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Io { .. } | CliError::Output(_) => EXIT_IO,
            CliError::Library(_) => EXIT_VIOLATION,
        }
    }
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Library(e) => CliError::Library(e),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<veronese_codes::verify::VerifyError> for CliError {
    fn from(e: veronese_codes::verify::VerifyError) -> Self {
        match e {
            veronese_codes::verify::VerifyError::BoundExceeded { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Library(other.into()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "vcodes",
    version,
    about = "Build and check (6, M, 4; 3)_q codes from plane quadrics"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "VCODES_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct the code and write it to a file.
    Build(BuildArgs),
    /// Check the minimum subspace distance of a code file.
    Verify(VerifyArgs),
    /// Search for planes that can be added to the code.
    Extend(ExtendArgs),
    /// Count plane quadrics by type.
    Classify(ClassifyArgs),
    /// Run geometric property suites.
    Inspect(InspectArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FileFormat {
    Text,
    Json,
}

impl From<FileFormat> for Format {
    fn from(f: FileFormat) -> Self {
        match f {
            FileFormat::Text => Format::Text,
            FileFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub q: u32,
    /// Output file; the report is printed either way.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: FileFormat,
    /// Required for q > 5; skips the distance and automorphism checks.
    #[arg(long)]
    pub unchecked: bool,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Naive,
    Lineindex,
    Both,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "lineindex")]
    pub method: MethodArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[arg(long)]
    pub q: u32,
    /// Code file to extend; the built code is used when omitted.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Census,
    Solids,
    Pp,
    Bundle,
    Singer,
    Arcs,
    All,
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long)]
    pub q: u32,
    #[arg(long, value_enum, default_value = "all")]
    pub check: CheckArg,
    #[arg(long)]
    pub json: bool,
}

fn check_q(q: u32, max: u32) -> Result<()> {
    if prime_power(q).is_none() {
        return Err(CliError::Usage(format!("q = {q} is not a prime power")));
    }
    if q > max {
        return Err(CliError::Usage(format!(
            "q = {q} exceeds the supported bound {max}"
        )));
    }
    Ok(())
}

fn read_code(path: &Path) -> Result<codefile::CodeFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    codefile::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn json_line(out: &mut impl Write, value: &impl serde::Serialize) -> Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    )?;
    Ok(())
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<u8> {
    match &cli.command {
        Command::Build(a) => build(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Extend(a) => extend(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Inspect(a) => inspect(a, out),
    }
}

pub fn build(a: &BuildArgs, out: &mut impl Write) -> Result<u8> {
    check_q(a.q, MAX_Q)?;
    if a.q > PLANE_ENUMERATION_BOUND && !a.unchecked {
        return Err(CliError::Usage(format!(
            "q = {} is above {PLANE_ENUMERATION_BOUND}; pass --unchecked to build without checks",
            a.q
        )));
    }
    let geo = Geometry::new(a.q)?;
    let code = build_code(&geo).map_err(veronese_codes::Error::from)?;
    if let Some(path) = &a.out {
        let text = codefile::write(geo.f(), &code, CONSTRUCTION_TAG, a.format.into());
        std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    let report = parameter_report(&geo, &code, !a.unchecked)?;
    if a.json {
        json_line(out, &report)?;
    } else {
        writeln!(out, "{report}")?;
    }
    Ok(if report.passes() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

fn print_verification(out: &mut impl Write, r: &VerificationReport) -> Result<()> {
    let d = r
        .min_distance
        .map_or("none (fewer than two planes)".to_string(), |d| {
            d.to_string()
        });
    writeln!(
        out,
        "method {:?}: q = {}, M = {}, minimum distance {d} ({} ms)",
        r.method, r.q, r.m, r.elapsed_ms
    )?;
    if !r.passes(4) {
        let (i, j) = r.worst_pair.expect("a violation has a pair");
        writeln!(out, "violation: records {i} and {j} are at distance {d}")?;
    }
    Ok(())
}

pub fn verify(a: &VerifyArgs, out: &mut impl Write) -> Result<u8> {
    let file = read_code(&a.input)?;
    let planes = file.code.spaces();
    let f = &file.field;
    let mut reports = Vec::new();
    if a.method != MethodArg::Lineindex {
        reports.push(verify_naive(f, &planes)?);
    }
    if a.method != MethodArg::Naive {
        reports.push(verify_line_index(f, &planes)?);
    }
    let agree = reports.windows(2).all(|w| w[0].agrees_with(&w[1]));
    if a.json {
        json_line(
            out,
            &serde_json::json!({ "reports": reports, "methods_agree": agree }),
        )?;
    } else {
        for r in &reports {
            print_verification(out, r)?;
        }
        if reports.len() == 2 {
            writeln!(out, "methods agree: {}", if agree { "yes" } else { "NO" })?;
        }
    }
    let pass = agree && reports.iter().all(|r| r.passes(4));
    Ok(if pass { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn extend(a: &ExtendArgs, out: &mut impl Write) -> Result<u8> {
    check_q(a.q, PLANE_ENUMERATION_BOUND)?;
    let (f, planes) = match &a.input {
        Some(path) => {
            let file = read_code(path)?;
            if file.field.order() != a.q {
                return Err(CliError::Usage(format!(
                    "{} holds a code over GF({}), not GF({})",
                    path.display(),
                    file.field.order(),
                    a.q
                )));
            }
            (file.field, file.code.spaces())
        }
        None => {
            let geo = Geometry::new(a.q)?;
            let code = build_code(&geo).map_err(veronese_codes::Error::from)?;
            let f = veronese_codes::galois::FieldSpec::with_order(a.q)
                .map_err(veronese_codes::Error::from)?;
            (f, code.spaces())
        }
    };
    let r = completeness_check(&f, &planes)?;
    if a.json {
        json_line(out, &r)?;
    } else {
        writeln!(
            out,
            "q = {}, M = {}, planes scanned: {}",
            r.q, r.code_size, r.candidates
        )?;
        writeln!(out, "addable: {}", r.addable_count)?;
        writeln!(out, "greedy extension: {}", r.greedy_count)?;
        writeln!(
            out,
            "complete: {}",
            if r.addable_count == 0 { "yes" } else { "no" }
        )?;
    }
    Ok(EXIT_OK)
}

pub fn classify(a: &ClassifyArgs, out: &mut impl Write) -> Result<u8> {
    check_q(a.q, MAX_Q)?;
    let fields = Fields::new(a.q).map_err(veronese_codes::Error::from)?;
    let got = census(fields.f());
    let want = Census::expected(a.q as u64);
    let pass = (
        got.repeated_lines,
        got.bi_lines,
        got.imaginary_bi_lines,
        got.conics,
        got.cubic_mismatches,
    ) == (
        want.repeated_lines,
        want.bi_lines,
        want.imaginary_bi_lines,
        want.conics,
        0,
    );
    if a.json {
        json_line(
            out,
            &serde_json::json!({ "q": a.q, "census": got, "expected": want, "pass": pass }),
        )?;
    } else {
        writeln!(
            out,
            "q = {}: ({}, {}, {}, {})",
            a.q, got.repeated_lines, got.bi_lines, got.imaginary_bi_lines, got.conics
        )?;
        writeln!(
            out,
            "expected: ({}, {}, {}, {})",
            want.repeated_lines, want.bi_lines, want.imaginary_bi_lines, want.conics
        )?;
        writeln!(
            out,
            "cubic vanishes exactly on degenerate quadrics: {}",
            if got.cubic_mismatches == 0 {
                "yes"
            } else {
                "no"
            }
        )?;
    }
    Ok(if pass { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn inspect(a: &InspectArgs, out: &mut impl Write) -> Result<u8> {
    check_q(a.q, MAX_Q)?;
    let suites: Vec<Suite> = match a.check {
        CheckArg::All => Suite::ALL.into_iter().filter(|s| s.applies(a.q)).collect(),
        CheckArg::Census => vec![Suite::Census],
        CheckArg::Solids => vec![Suite::Solids],
        CheckArg::Pp => vec![Suite::Pp],
        CheckArg::Bundle => vec![Suite::Bundle],
        CheckArg::Singer => vec![Suite::Singer],
        CheckArg::Arcs => vec![Suite::Arcs],
    };
    if a.check == CheckArg::All {
        for s in Suite::ALL.iter().filter(|s| !s.applies(a.q)) {
            writeln!(out, "SKIP [{}] not available at q = {}", s.name(), a.q)?;
        }
    }
    let mut outcomes = Vec::new();
    for s in suites {
        outcomes.extend(run_suite(s, a.q)?);
    }
    if a.json {
        json_line(out, &outcomes)?;
    } else {
        for c in &outcomes {
            writeln!(out, "{c}")?;
        }
    }
    Ok(if outcomes.iter().any(|c| c.failed()) {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    })
}
