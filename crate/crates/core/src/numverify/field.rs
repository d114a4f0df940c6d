use num_complex::Complex64;

use crate::{Error, Result};

/// `n` complex `r × r` matrices, stored point-major and row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixField {
    r: usize,
    n: usize,
    data: Vec<Complex64>,
}

impl MatrixField {
    pub fn zeros(r: usize, n: usize) -> Self {
        MatrixField {
            r,
            n,
            data: vec![Complex64::new(0.0, 0.0); r * r * n],
        }
    }

    /// Identity matrix at every point.
    pub fn identity(r: usize, n: usize) -> Self {
        let mut f = Self::zeros(r, n);
        for m in 0..n {
            for a in 0..r {
                *f.at_mut(m, a, a) = Complex64::new(1.0, 0.0);
            }
        }
        f
    }

    pub fn from_fn(r: usize, n: usize, f: impl Fn(usize, usize, usize) -> Complex64) -> Self {
        let mut out = Self::zeros(r, n);
        for m in 0..n {
            for a in 0..r {
                for b in 0..r {
                    *out.at_mut(m, a, b) = f(m, a, b);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn points(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, m: usize, a: usize, b: usize) -> usize {
        (m * self.r + a) * self.r + b
    }

    #[inline]
    pub fn at(&self, m: usize, a: usize, b: usize) -> Complex64 {
        self.data[self.idx(m, a, b)]
    }

    #[inline]
    pub fn at_mut(&mut self, m: usize, a: usize, b: usize) -> &mut Complex64 {
        let i = self.idx(m, a, b);
        &mut self.data[i]
    }

    /// The `r × r` block at point `m`.
    pub fn point(&self, m: usize) -> &[Complex64] {
        let s = self.r * self.r;
        &self.data[m * s..(m + 1) * s]
    }

    /// Values of entry `(a, b)` along the grid.
    pub fn entry_series(&self, a: usize, b: usize) -> Vec<Complex64> {
        (0..self.n).map(|m| self.at(m, a, b)).collect()
    }

    pub fn set_entry_series(&mut self, a: usize, b: usize, values: &[Complex64]) {
        for (m, v) in values.iter().enumerate() {
            *self.at_mut(m, a, b) = *v;
        }
    }

    /// Applies `op` to every entry series.
    pub fn map_series(&self, mut op: impl FnMut(&mut [Complex64])) -> MatrixField {
        let mut out = self.clone();
        for a in 0..self.r {
            for b in 0..self.r {
                let mut s = self.entry_series(a, b);
                op(&mut s);
                out.set_entry_series(a, b, &s);
            }
        }
        out
    }

    /// Pointwise matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &MatrixField) -> MatrixField {
        assert_eq!((self.r, self.n), (rhs.r, rhs.n));
        let r = self.r;
        let mut out = MatrixField::zeros(r, self.n);
        for m in 0..self.n {
            for a in 0..r {
                for c in 0..r {
                    let x = self.at(m, a, c);
                    if x == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for b in 0..r {
                        *out.at_mut(m, a, b) += x * rhs.at(m, c, b);
                    }
                }
            }
        }
        out
    }

    /// `self += s · other`.
    pub fn axpy(&mut self, s: f64, other: &MatrixField) {
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += *y * s;
        }
    }

    pub fn scaled(&self, s: f64) -> MatrixField {
        MatrixField {
            r: self.r,
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn conj_transpose(&self) -> MatrixField {
        Self::from_fn(self.r, self.n, |m, a, b| self.at(m, b, a).conj())
    }

    /// Largest `|A_ab - conj(A_ba)|` over the grid.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in 0..self.n {
            for a in 0..self.r {
                for b in a..self.r {
                    worst = worst.max((self.at(m, a, b) - self.at(m, b, a).conj()).norm());
                }
            }
        }
        worst
    }

    /// Replaces the field by its hermitian part and returns the largest
    /// entry change.
    pub fn hermitize(&mut self) -> f64 {
        let mut worst: f64 = 0.0;
        for m in 0..self.n {
            for a in 0..self.r {
                for b in a..self.r {
                    let x = self.at(m, a, b);
                    let y = self.at(m, b, a);
                    let avg = (x + y.conj()) * 0.5;
                    worst = worst.max((x - avg).norm()).max((y - avg.conj()).norm());
                    *self.at_mut(m, a, b) = avg;
                    *self.at_mut(m, b, a) = avg.conj();
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &MatrixField) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Pointwise traces.
    pub fn traces(&self) -> Vec<Complex64> {
        (0..self.n)
            .map(|m| (0..self.r).map(|a| self.at(m, a, a)).sum())
            .collect()
    }
}

/// `∫ tr F dx` by the periodic trapezoid rule. Fails when the imaginary
/// part exceeds `1e-12` relative to the size of the summands.
pub fn integrate_trace(field: &MatrixField, length: f64) -> Result<f64> {
    let traces = field.traces();
    let scale: f64 = traces.iter().map(|z| z.norm()).sum::<f64>().max(1.0);
    let sum: Complex64 = traces.iter().sum();
    if sum.im.abs() > 1e-12 * scale {
        return Err(Error::ComplexTrace(sum.im * length / field.points() as f64));
    }
    Ok(sum.re * length / field.points() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_field_integral() {
        let f = MatrixField::identity(3, 16).scaled(0.7);
        assert!((integrate_trace(&f, 2.0).unwrap() - 2.0 * 3.0 * 0.7).abs() < 1e-14);
    }

    #[test]
    fn commutator_trace_vanishes() {
        let a = MatrixField::from_fn(2, 8, |m, i, j| c((m + i) as f64, j as f64 - i as f64));
        let b = MatrixField::from_fn(2, 8, |m, i, j| c((i * j) as f64 + m as f64, 0.5));
        let comm = {
            let mut x = a.matmul(&b);
            x.axpy(-1.0, &b.matmul(&a));
            x
        };
        for t in comm.traces() {
            assert!(t.norm() < 1e-12);
        }
        assert!(integrate_trace(&comm, 1.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn complex_trace_is_rejected() {
        let f = MatrixField::from_fn(1, 4, |_, _, _| c(1.0, 1.0));
        assert!(matches!(
            integrate_trace(&f, 1.0),
            Err(Error::ComplexTrace(_))
        ));
    }

    #[test]
    fn hermitize_reports_correction() {
        let mut f = MatrixField::from_fn(2, 2, |_, i, j| {
            if i == 0 && j == 1 {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        let corr = f.hermitize();
        assert!((corr - 0.5).abs() < 1e-15);
        assert!(f.hermiticity_defect() < 1e-15);
    }
}
