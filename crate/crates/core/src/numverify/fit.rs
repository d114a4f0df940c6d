use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::eval::Derivatives;
use super::field::integrate_trace;
use super::grid::GridPotential;
use super::operator::SpectralOperator;
use super::spectral::Spectral;
use crate::hierarchy::h_invariant;
use crate::{Error, Result};

/// Default fit window for a period of `2π`; see [`default_window`].
pub const DEFAULT_T_MIN: f64 = 0.005;
pub const DEFAULT_T_MAX: f64 = 0.05;
pub const DEFAULT_T_POINTS: usize = 24;
pub const DEFAULT_FIT_ORDER: usize = 3;
pub const MAX_FIT_ORDER: usize = 3;

/// Least-squares estimate of `∫ tr h_n dx`, `n = 0..=nmax`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub coefficients: Vec<f64>,
    pub residual_norm: f64,
    /// Ratio of extreme singular values of the column-scaled design matrix.
    pub condition: f64,
    pub t_grid: Vec<f64>,
    pub nmax: usize,
}

/// Default `(t_min, t_max)` for a period `length`, scaling the `2π` window by
/// `(length / 2π)²` so that `t k²` stays comparable.
pub fn default_window(length: f64) -> (f64, f64) {
    let s = (length / (2.0 * PI)).powi(2);
    (DEFAULT_T_MIN * s, DEFAULT_T_MAX * s)
}

/// `count` points spaced geometrically over `[t_min, t_max]`.
pub fn geometric_grid(t_min: f64, t_max: f64, count: usize) -> Result<Vec<f64>> {
    if !(t_min > 0.0 && t_max > t_min && t_max.is_finite()) || count < 2 {
        return Err(Error::InvalidArgument(format!(
            "bad time window [{t_min}, {t_max}] with {count} points"
        )));
    }
    let ratio = (t_max / t_min).powf(1.0 / (count - 1) as f64);
    Ok((0..count)
        .map(|i| {
            if i + 1 == count {
                t_max
            } else {
                t_min * ratio.powi(i as i32)
            }
        })
        .collect())
}

/// Fits `√(4πt) · Tr e^{tL} ≈ Σ_{n ≤ nmax} c_n t^n` on `t_grid`.
pub fn fit_heat_coefficients(
    op: &SpectralOperator,
    t_grid: &[f64],
    nmax: usize,
) -> Result<FitReport> {
    if nmax > MAX_FIT_ORDER {
        return Err(Error::InvalidArgument(format!(
            "fit order {nmax} exceeds {MAX_FIT_ORDER}"
        )));
    }
    if t_grid.len() <= nmax {
        return Err(Error::InvalidArgument(format!(
            "{} times cannot determine {} coefficients",
            t_grid.len(),
            nmax + 1
        )));
    }
    if t_grid.iter().any(|&t| !(t.is_finite() && t > 0.0)) {
        return Err(Error::InvalidArgument("fit times must be positive".into()));
    }
    // columns scaled by t_max^n to keep the design matrix well conditioned
    let scale = t_grid.iter().copied().fold(0.0, f64::max);
    let design = DMatrix::from_fn(t_grid.len(), nmax + 1, |i, n| {
        (t_grid[i] / scale).powi(n as i32)
    });
    let rhs = DVector::from_iterator(
        t_grid.len(),
        t_grid
            .iter()
            .map(|&t| (4.0 * PI * t).sqrt() * op.heat_trace(t)),
    );
    let svd = design.clone().svd(true, true);
    let sv = &svd.singular_values;
    let condition = sv.max() / sv.min();
    let scaled = svd
        .solve(&rhs, f64::EPSILON)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let residual_norm = (&design * &scaled - &rhs).norm();
    let coefficients = scaled
        .iter()
        .enumerate()
        .map(|(n, c)| c / scale.powi(n as i32))
        .collect();
    Ok(FitReport {
        coefficients,
        residual_norm,
        condition,
        t_grid: t_grid.to_vec(),
        nmax,
    })
}

/// `∫ tr h_n[U] dx` for `n = 0..=nmax`, from the exact `h_n` evaluated on
/// the grid.
pub fn predicted_heat_coefficients(u: &GridPotential, nmax: usize) -> Result<Vec<f64>> {
    let hs = (0..=nmax as u32)
        .map(h_invariant)
        .collect::<Result<Vec<_>>>()?;
    let max_letter = hs.iter().filter_map(|h| h.max_letter()).max().unwrap_or(0);
    let spectral = Spectral::new(u.points(), u.length());
    let derivs = Derivatives::new(u.samples(), &spectral, max_letter);
    hs.iter()
        .map(|h| integrate_trace(&derivs.evaluate(h), u.length()))
        .collect()
}
