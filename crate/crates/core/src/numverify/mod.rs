//! Numerical checks of the symbolic results on the periodic matrix
//! Schrödinger operator `L = ∂² + U(x)`.
//!
//! Potentials are band-limited and sampled on a uniform grid of `N = 2^m`
//! points. `L` is discretized by Fourier collocation and diagonalized
//! densely; the heat trace `Tr e^{tL}` is then fitted against the small-`t`
//! series `(4πt)^{-1/2} Σ t^n ∫ tr h_n`. The hierarchy flows are integrated
//! with fixed-step RK4, derivatives taken spectrally.

mod eval;
mod field;
mod fit;
mod flow;
mod grid;
mod operator;
mod spectral;

pub use eval::{evaluate_ncpoly_on_grid, Derivatives};
pub use field::{integrate_trace, MatrixField};
pub use fit::{
    default_window, fit_heat_coefficients, geometric_grid, predicted_heat_coefficients, FitReport,
    DEFAULT_FIT_ORDER, DEFAULT_T_MAX, DEFAULT_T_MIN, DEFAULT_T_POINTS, MAX_FIT_ORDER,
};
pub use flow::{
    conserved_quantities, flow_step, relative_drift, run_with_report, translate,
    ConservationReport, FlowRun, FlowState, KdvFlow, STABILITY_CONSTANT, TAIL_LIMIT,
};
pub use grid::{GridPotential, ModeRecord, PotentialSpec, HERMITIAN_TOL};
pub use operator::{assemble_operator, heat_trace, SpectralOperator};
pub use spectral::{wavenumber, Spectral};
