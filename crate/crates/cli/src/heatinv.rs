use std::io::Write;

use clap::{Args, Parser, Subcommand};
use heatkdv::flatheat::FlatHeat;

use crate::{emit, with_newline, CmdResult, Format};

/// Heat invariants of D = -(Δ + Σ B_k ∂_k + C) on flat R^d.
#[derive(Parser, Debug)]
#[command(name = "heatinv", version)]
pub struct HeatinvCli {
    #[command(subcommand)]
    command: HeatinvCommand,
}

#[derive(Subcommand, Debug)]
enum HeatinvCommand {
    /// Trace invariant a_n = tr A_n.
    An(InvArgs),
    /// Endomorphism A_n.
    En(InvArgs),
}

#[derive(Args, Debug)]
struct InvArgs {
    n: u32,
    #[arg(long)]
    dim: u32,
    /// Keep the first-order coefficients B_k (otherwise B = 0).
    #[arg(long)]
    with_b: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override the level cap.
    #[arg(long)]
    max_n: Option<u32>,
}

impl InvArgs {
    fn engine(&self) -> FlatHeat {
        self.max_n.map(FlatHeat::with_max_n).unwrap_or_default()
    }
}

impl HeatinvCli {
    pub fn execute(self, out: &mut dyn Write, _err: &mut dyn Write) -> CmdResult {
        let text = match &self.command {
            HeatinvCommand::An(a) => {
                let t = a.engine().heat_invariant_trace(a.n, a.dim, a.with_b)?;
                match a.format {
                    Format::Text => t.to_string(),
                    Format::Latex => t.to_latex(),
                    Format::Json => t.to_json(),
                }
            }
            HeatinvCommand::En(a) => {
                let e = a.engine().heat_endomorphism(a.n, a.dim, a.with_b)?;
                match a.format {
                    Format::Text => e.to_string(),
                    Format::Latex => e.to_latex(),
                    Format::Json => e.to_json(),
                }
            }
        };
        emit(&with_newline(text), None, out)?;
        Ok(())
    }
}
