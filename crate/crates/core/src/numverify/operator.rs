use std::sync::OnceLock;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::grid::{GridPotential, HERMITIAN_TOL};
use super::spectral::Spectral;
use crate::{Error, Result};

/// Dense Fourier-collocation matrix of `L = ∂² + U` acting on `C^r`-valued
/// grid functions, indexed by `point · r + component`.
#[derive(Debug, Clone)]
pub struct SpectralOperator {
    matrix: DMatrix<Complex64>,
    rank: usize,
    length: f64,
    eigenvalues: OnceLock<Vec<f64>>,
}

pub fn assemble_operator(u: &GridPotential) -> Result<SpectralOperator> {
    let (r, n) = (u.rank(), u.points());
    let row = Spectral::new(n, u.length()).second_derivative_row();
    let size = n * r;
    let samples = u.samples();
    let matrix = DMatrix::from_fn(size, size, |p, q| {
        let (m, a) = (p / r, p % r);
        let (l, b) = (q / r, q % r);
        let mut v = Complex64::new(0.0, 0.0);
        if a == b {
            v += row[(m + n - l) % n];
        }
        if m == l {
            v += samples.at(m, a, b);
        }
        v
    });
    let defect = (&matrix - matrix.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if defect > HERMITIAN_TOL {
        return Err(Error::Potential(format!(
            "assembled operator is not hermitian (defect {defect:e})"
        )));
    }
    Ok(SpectralOperator {
        matrix,
        rank: r,
        length: u.length(),
        eigenvalues: OnceLock::new(),
    })
}

impl SpectralOperator {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn points(&self) -> usize {
        self.matrix.nrows() / self.rank
    }

    /// Full spectrum in ascending order, computed once.
    pub fn eigenvalues(&self) -> &[f64] {
        self.eigenvalues.get_or_init(|| {
            let eig = SymmetricEigen::new(self.matrix.clone());
            let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            ev.sort_by(f64::total_cmp);
            ev
        })
    }

    /// `Tr e^{tL} = Σ e^{t λ}`.
    pub fn heat_trace(&self, t: f64) -> f64 {
        self.eigenvalues().iter().map(|&l| (t * l).exp()).sum()
    }
}

pub fn heat_trace(op: &SpectralOperator, t: f64) -> Result<f64> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "heat time {t} must be positive"
        )));
    }
    Ok(op.heat_trace(t))
}
