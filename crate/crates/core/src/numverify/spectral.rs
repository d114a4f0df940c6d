use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

/// Fourier differentiation on `n` uniform points of a periodic interval.
#[derive(Clone)]
pub struct Spectral {
    n: usize,
    length: f64,
    kappa: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Spectral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Spectral")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

/// Integer wavenumber stored at FFT index `idx`: `0, 1, ..., n/2, -n/2+1, ..., -1`.
pub fn wavenumber(idx: usize, n: usize) -> i64 {
    if idx <= n / 2 {
        idx as i64
    } else {
        idx as i64 - n as i64
    }
}

impl Spectral {
    pub fn new(n: usize, length: f64) -> Self {
        let mut planner = FftPlanner::new();
        let scale = 2.0 * PI / length;
        Spectral {
            n,
            length,
            kappa: (0..n).map(|i| wavenumber(i, n) as f64 * scale).collect(),
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn kappa(&self) -> &[f64] {
        &self.kappa
    }

    pub fn dx(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn forward(&self, data: &mut [Complex64]) {
        self.forward.process(data);
    }

    /// Inverse transform including the `1/n` normalization.
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.inverse.process(data);
        let s = 1.0 / self.n as f64;
        data.iter_mut().for_each(|z| *z *= s);
    }

    /// In-place `d^order/dx^order`. The Nyquist mode is dropped for odd
    /// orders so real input stays real.
    pub fn derivative_in_place(&self, data: &mut [Complex64], order: u32) {
        if order == 0 {
            return;
        }
        self.forward(data);
        self.apply_symbol(data, order);
        self.inverse(data);
    }

    pub(crate) fn apply_symbol(&self, modes: &mut [Complex64], order: u32) {
        let nyq = self.n / 2;
        for (idx, z) in modes.iter_mut().enumerate() {
            if idx == nyq && order % 2 == 1 {
                *z = Complex64::new(0.0, 0.0);
                continue;
            }
            *z *= Complex64::new(0.0, self.kappa[idx]).powu(order);
        }
    }

    /// Shift `f(x) ↦ f(x + s)` exactly in Fourier space.
    pub fn shift_in_place(&self, data: &mut [Complex64], s: f64) {
        self.forward(data);
        let nyq = self.n / 2;
        for (idx, z) in data.iter_mut().enumerate() {
            if idx == nyq {
                // the Nyquist cosine is not translation covariant on the grid
                *z *= (self.kappa[idx] * s).cos();
            } else {
                *z *= Complex64::from_polar(1.0, self.kappa[idx] * s);
            }
        }
        self.inverse(data);
    }

    /// Fraction of spectral energy in modes with `|k| ≥ n/3`.
    pub fn tail_fraction(&self, data: &[Complex64]) -> (f64, f64) {
        let mut buf = data.to_vec();
        self.forward(&mut buf);
        let cut = self.n as i64 / 3;
        let (mut tail, mut total) = (0.0, 0.0);
        for (idx, z) in buf.iter().enumerate() {
            let e = z.norm_sqr();
            total += e;
            if wavenumber(idx, self.n).abs() >= cut {
                tail += e;
            }
        }
        (tail, total)
    }

    /// Row of the real symmetric second-derivative collocation matrix:
    /// entry `(m, l)` is `row[(m - l) mod n]`.
    pub fn second_derivative_row(&self) -> Vec<f64> {
        let n = self.n;
        let mut row = vec![0.0; n];
        for s in 0..=n / 2 {
            let v = (0..n)
                .map(|idx| {
                    let k = wavenumber(idx, n) as f64;
                    -self.kappa[idx].powi(2) * (2.0 * PI * k * s as f64 / n as f64).cos()
                })
                .sum::<f64>()
                / n as f64;
            row[s] = v;
            // mirrored so the circulant is exactly symmetric
            row[(n - s) % n] = v;
        }
        row
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(n: usize, length: f64, f: impl Fn(f64) -> f64) -> Vec<Complex64> {
        (0..n)
            .map(|m| Complex64::new(f(m as f64 * length / n as f64), 0.0))
            .collect()
    }

    #[test]
    fn derivative_of_trig_polynomial_is_exact() {
        let (n, length) = (32, 3.0);
        let w = 2.0 * PI / length;
        let sp = Spectral::new(n, length);
        let mut data = samples(n, length, |x| (3.0 * w * x).sin() + 0.5 * (w * x).cos());
        sp.derivative_in_place(&mut data, 3);
        let expect = samples(n, length, |x| {
            -27.0 * w.powi(3) * (3.0 * w * x).cos() + 0.5 * w.powi(3) * (w * x).sin()
        });
        for (a, b) in data.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn shift_translates() {
        let (n, length) = (16, 2.0 * PI);
        let sp = Spectral::new(n, length);
        let mut data = samples(n, length, |x| (2.0 * x).cos() + (x).sin());
        sp.shift_in_place(&mut data, 0.3);
        let expect = samples(n, length, |x| (2.0 * (x + 0.3)).cos() + (x + 0.3).sin());
        for (a, b) in data.iter().zip(&expect) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn second_derivative_row_matches_symbols() {
        let (n, length) = (16, 2.0 * PI);
        let sp = Spectral::new(n, length);
        let row = sp.second_derivative_row();
        // applying the circulant to cos(3x) multiplies it by -9
        let f = samples(n, length, |x| (3.0 * x).cos());
        for m in 0..n {
            let v: f64 = (0..n).map(|l| row[(m + n - l) % n] * f[l].re).sum();
            assert!((v + 9.0 * f[m].re).abs() < 1e-10);
        }
    }

    #[test]
    fn tail_fraction_sees_high_modes() {
        let (n, length) = (32, 2.0 * PI);
        let sp = Spectral::new(n, length);
        let low = samples(n, length, |x| x.cos());
        assert!(sp.tail_fraction(&low).0 < 1e-20);
        let high = samples(n, length, |x| (12.0 * x).cos());
        let (tail, total) = sp.tail_fraction(&high);
        assert!((tail / total - 1.0).abs() < 1e-12);
    }
}
