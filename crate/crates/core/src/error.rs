use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("binomial top {top} is smaller than bottom {bot}")]
    BinomialOrder { top: u32, bot: u32 },

    #[error("dimension must be positive")]
    ZeroDimension,

    #[error("level must be at least 1")]
    ZeroLevel,

    #[error("level {n} exceeds the configured cap {cap}")]
    LevelCap { n: u32, cap: u32 },

    #[error("composition {parts:?} invalid for level {n}, block count {p}: {reason}")]
    Composition {
        parts: Vec<u32>,
        n: u32,
        p: usize,
        reason: &'static str,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid potential: {0}")]
    Potential(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("time step {dt:e} exceeds the stability bound {bound:e}")]
    UnstableStep { dt: f64, bound: f64 },

    #[error("spectral tail holds {fraction:e} of the energy (limit {limit:e})")]
    SpectralTail { fraction: f64, limit: f64 },

    #[error("trace has imaginary residue {0:e}")]
    ComplexTrace(f64),
}
