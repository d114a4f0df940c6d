use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use heatkdv::hierarchy::{tabulated_g, Hierarchy, DEFAULT_MAX_LEVEL};
use heatkdv::NCPoly;

use crate::{emit, with_newline, CmdResult, Failure, Format};

/// Matrix KdV hierarchy polynomials G_n[U].
#[derive(Parser, Debug)]
#[command(name = "kdv", version)]
pub struct KdvCli {
    #[command(subcommand)]
    command: KdvCommand,
}

#[derive(Subcommand, Debug)]
enum KdvCommand {
    /// Compute G_n.
    Gn(GnArgs),
    /// Check G_1..G_nmax: both routes agree, and the first three match the
    /// tabulated values.
    Verify {
        nmax: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: u32,
    },
}

#[derive(Args, Debug)]
struct GnArgs {
    n: u32,
    #[arg(long, value_enum, default_value_t = Route::Operator)]
    route: Route,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Operator,
    Closed,
    Both,
}

pub(crate) fn render(p: &NCPoly, format: Format) -> String {
    match format {
        Format::Text => p.to_string(),
        Format::Latex => p.to_latex(),
        Format::Json => p.to_json(),
    }
}

/// `None` if equal, otherwise a one-line description of the first differing
/// term.
fn compare(what: &str, a_name: &str, a: &NCPoly, b_name: &str, b: &NCPoly) -> Option<String> {
    a.first_difference(b).map(|(w, ca, cb)| {
        format!("{what}: first differing term {w}: {a_name} {ca}, {b_name} {cb}")
    })
}

impl KdvCli {
    pub fn execute(self, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
        match self.command {
            KdvCommand::Gn(args) => gn(args, out, err),
            KdvCommand::Verify { nmax, max_level } => verify(nmax, max_level, out),
        }
    }
}

fn gn(args: GnArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let h = Hierarchy::with_max_level(args.max_level);
    let name = format!("G_{}", args.n);
    let g = match args.route {
        Route::Operator => h.g_operator(args.n)?,
        Route::Closed => h.g_closed(args.n)?,
        Route::Both => {
            let a = h.g_operator(args.n)?;
            let b = h.g_closed(args.n)?;
            if let Some(msg) = compare(&name, "operator", &a, "closed", &b) {
                return Err(Failure::Verify(msg));
            }
            writeln!(err, "{name}: operator and closed routes agree")?;
            a
        }
    };
    emit(
        &with_newline(render(&g, args.format)),
        args.out.as_ref(),
        out,
    )?;
    Ok(())
}

fn verify(nmax: u32, max_level: u32, out: &mut dyn Write) -> CmdResult {
    if nmax == 0 {
        return Err(Failure::Usage("nmax must be at least 1".into()));
    }
    let h = Hierarchy::with_max_level(max_level);
    let mut failures = Vec::new();
    for n in 1..=nmax {
        let name = format!("G_{n}");
        let a = h.g_operator(n)?;
        let b = h.g_closed(n)?;
        let mut status = Vec::new();
        match compare(&name, "operator", &a, "closed", &b) {
            Some(msg) => {
                status.push("ROUTE MISMATCH");
                failures.push(msg);
            }
            None => status.push("routes agree"),
        }
        if let Some(t) = tabulated_g(n) {
            match compare(&name, "computed", &a, "tabulated", &t) {
                Some(msg) => {
                    status.push("TABULATED MISMATCH");
                    failures.push(msg);
                }
                None => status.push("matches tabulated value"),
            }
        }
        writeln!(out, "{name}: {} terms, {}", a.len(), status.join(", "))?;
    }
    if failures.is_empty() {
        writeln!(out, "verified G_1..G_{nmax}")?;
        Ok(())
    } else {
        Err(Failure::Verify(failures.join("\n")))
    }
}
