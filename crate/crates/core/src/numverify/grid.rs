use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::MatrixField;
use crate::{Error, Result};

/// Hermiticity tolerance applied on load.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// One Fourier mode of entry `(i, j)` (0-based, `i ≤ j`): `(re + i·im) e^{i k 2π x / length}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeRecord {
    pub i: usize,
    pub j: usize,
    pub k: i64,
    pub re: f64,
    pub im: f64,
}

/// Potential file: the upper triangle of `U` as a list of Fourier modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    pub r: usize,
    pub length: f64,
    pub modes: Vec<ModeRecord>,
}

impl PotentialSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Potential(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| Error::Potential(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec always serializes")
    }

    /// Largest `|k|` present.
    pub fn bandwidth(&self) -> u64 {
        self.modes
            .iter()
            .map(|m| m.k.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.r == 0 {
            return Err(Error::Potential("rank r must be positive".into()));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::Potential(format!(
                "length {} must be positive",
                self.length
            )));
        }
        let mut diag: BTreeMap<(usize, i64), Complex64> = BTreeMap::new();
        for m in &self.modes {
            if m.i >= self.r || m.j >= self.r {
                return Err(Error::Potential(format!(
                    "mode entry ({}, {}) outside rank {}",
                    m.i, m.j, self.r
                )));
            }
            if m.i > m.j {
                return Err(Error::Potential(format!(
                    "mode entry ({}, {}) is below the diagonal",
                    m.i, m.j
                )));
            }
            if m.k.unsigned_abs() as usize >= n / 2 {
                return Err(Error::Potential(format!(
                    "wavenumber {} not resolved by {n} points",
                    m.k
                )));
            }
            if !(m.re.is_finite() && m.im.is_finite()) {
                return Err(Error::Potential(format!(
                    "non-finite amplitude at k = {}",
                    m.k
                )));
            }
            if m.i == m.j {
                *diag.entry((m.i, m.k)).or_default() += Complex64::new(m.re, m.im);
            }
        }
        for (&(i, k), &c) in &diag {
            let partner = diag.get(&(i, -k)).copied().unwrap_or_default();
            if (c - partner.conj()).norm() > HERMITIAN_TOL {
                return Err(Error::Potential(format!(
                    "diagonal entry {i}: modes k = {k} and k = {} are not conjugate, so U_{i}{i} is not real",
                    -k
                )));
            }
        }
        Ok(())
    }

    /// Samples the potential on `n` points, filling the lower triangle by
    /// conjugate symmetry.
    pub fn synthesize(&self, n: usize) -> Result<GridPotential> {
        check_grid_size(n)?;
        self.validate(n)?;
        let r = self.r;
        let mut field = MatrixField::zeros(r, n);
        for mode in &self.modes {
            let c = Complex64::new(mode.re, mode.im);
            for m in 0..n {
                let phase = 2.0 * PI * mode.k as f64 * m as f64 / n as f64;
                let v = c * Complex64::from_polar(1.0, phase);
                *field.at_mut(m, mode.i, mode.j) += v;
                if mode.i != mode.j {
                    *field.at_mut(m, mode.j, mode.i) += v.conj();
                }
            }
        }
        // roundoff only; exact conjugate pairs are enforced above
        field.hermitize();
        GridPotential::new(self.length, field)
    }
}

fn check_grid_size(n: usize) -> Result<()> {
    if n < 16 || !n.is_power_of_two() {
        return Err(Error::Potential(format!(
            "grid size {n} must be a power of two and at least 16"
        )));
    }
    Ok(())
}

/// Samples of a periodic hermitian `r × r` potential on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPotential {
    length: f64,
    samples: MatrixField,
}

impl GridPotential {
    pub fn new(length: f64, samples: MatrixField) -> Result<Self> {
        check_grid_size(samples.points())?;
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::Potential(format!(
                "length {length} must be positive"
            )));
        }
        let defect = samples.hermiticity_defect();
        if defect > HERMITIAN_TOL {
            return Err(Error::Potential(format!(
                "samples are not hermitian (defect {defect:e})"
            )));
        }
        Ok(GridPotential { length, samples })
    }

    /// `c · I_r` on `n` points.
    pub fn constant(r: usize, n: usize, length: f64, c: f64) -> Result<Self> {
        Self::new(length, MatrixField::identity(r, n).scaled(c))
    }

    pub fn rank(&self) -> usize {
        self.samples.rank()
    }

    pub fn points(&self) -> usize {
        self.samples.points()
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn samples(&self) -> &MatrixField {
        &self.samples
    }

    pub fn into_samples(self) -> MatrixField {
        self.samples
    }

    pub fn grid_x(&self) -> Vec<f64> {
        let dx = self.length / self.points() as f64;
        (0..self.points()).map(|m| m as f64 * dx).collect()
    }
}
