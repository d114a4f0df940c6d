//! Command-line front end for `heatkdv`.
//!
//! Three tools share one entry point:
//!
//! * `kdv gn <n>` and `kdv verify <nmax>` for the hierarchy polynomials;
//! * `heatinv an|en <n> --dim <d>` for flat-space heat invariants;
//! * `numcheck trace|flow --potential FILE` for the numerical checks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

mod heatinv;
mod kdv;
mod numcheck;

pub use heatinv::HeatinvCli;
pub use kdv::KdvCli;
pub use numcheck::{trace_report, NumcheckCli, OrderCheck, TraceReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tool {
    Kdv,
    Heatinv,
    Numcheck,
}

impl Tool {
    pub fn from_name(name: &str) -> Option<Tool> {
        match name {
            "kdv" => Some(Tool::Kdv),
            "heatinv" => Some(Tool::Heatinv),
            "numcheck" => Some(Tool::Numcheck),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Latex,
    Json,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Verify(m) => f.write_str(m),
        }
    }
}

impl From<heatkdv::Error> for Failure {
    fn from(e: heatkdv::Error) -> Self {
        use heatkdv::Error as E;
        match e {
            E::SpectralTail { .. } | E::ComplexTrace(_) => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

/// Dispatch on the program name in `argv[0]`; if that is not a tool name,
/// the tool is taken from `argv[1]` (`heatkdv kdv gn 2`).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let name_of = |s: &OsString| {
        Path::new(s)
            .file_stem()
            .and_then(|x| x.to_str())
            .and_then(Tool::from_name)
    };
    let tool = match args.first().and_then(name_of) {
        Some(t) => t,
        None => match args.get(1).and_then(name_of) {
            Some(t) => {
                args.remove(0);
                t
            }
            None => {
                let token = args.get(1).map(|s| s.to_string_lossy().into_owned());
                let _ = writeln!(
                    err,
                    "error: unknown tool {:?}; expected kdv, heatinv or numcheck",
                    token.unwrap_or_default()
                );
                return EXIT_USAGE;
            }
        },
    };
    run_tool_with(tool, args, out, err)
}

pub fn run_tool<I, T>(tool: Tool, argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_tool_with(tool, argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_tool_with<I, T>(tool: Tool, argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let result = match tool {
        Tool::Kdv => parse::<KdvCli, _, _>(argv, out, err).map(|c| c.execute(out, err)),
        Tool::Heatinv => parse::<HeatinvCli, _, _>(argv, out, err).map(|c| c.execute(out, err)),
        Tool::Numcheck => parse::<NumcheckCli, _, _>(argv, out, err).map(|c| c.execute(out, err)),
    };
    match result {
        Err(code) => code,
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(failure)) => {
            let _ = writeln!(err, "error: {failure}");
            failure.code()
        }
    }
}

fn parse<C, I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> Result<C, i32>
where
    C: Parser,
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    C::try_parse_from(argv).map_err(|e| {
        let text = e.render().to_string();
        if e.use_stderr() {
            let _ = write!(err, "{text}");
            EXIT_USAGE
        } else {
            let _ = write!(out, "{text}");
            EXIT_OK
        }
    })
}

/// Writes `text` to `path` if given, otherwise to `out`.
fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()),
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
