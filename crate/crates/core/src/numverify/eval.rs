use num_traits::ToPrimitive;

use super::field::MatrixField;
use super::grid::GridPotential;
use super::spectral::Spectral;
use crate::ncalg::NCPoly;

/// Spectral derivatives `U_0, U_1, ..., U_max` of a potential.
pub struct Derivatives {
    fields: Vec<MatrixField>,
}

impl Derivatives {
    pub fn new(u: &MatrixField, spectral: &Spectral, max_order: u32) -> Self {
        let mut fields = Vec::with_capacity(max_order as usize + 1);
        fields.push(u.clone());
        // one forward transform per entry, one inverse per order
        let r = u.rank();
        let mut spectra = Vec::with_capacity(r * r);
        for a in 0..r {
            for b in 0..r {
                let mut s = u.entry_series(a, b);
                spectral.forward(&mut s);
                spectra.push(s);
            }
        }
        for order in 1..=max_order {
            let mut f = MatrixField::zeros(r, u.points());
            for a in 0..r {
                for b in 0..r {
                    let mut s = spectra[a * r + b].clone();
                    spectral.apply_symbol(&mut s, order);
                    spectral.inverse(&mut s);
                    f.set_entry_series(a, b, &s);
                }
            }
            fields.push(f);
        }
        Derivatives { fields }
    }

    pub fn order(&self, k: u32) -> &MatrixField {
        &self.fields[k as usize]
    }

    /// `Σ c_w · U_{k_1} ··· U_{k_p}` pointwise, products in word order.
    pub fn evaluate(&self, p: &NCPoly) -> MatrixField {
        let base = &self.fields[0];
        let (r, n) = (base.rank(), base.points());
        let mut out = MatrixField::zeros(r, n);
        for (w, c) in p.terms() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let mut prod: Option<MatrixField> = None;
            for &k in w.letters() {
                let f = &self.fields[k as usize];
                prod = Some(match prod {
                    None => f.clone(),
                    Some(acc) => acc.matmul(f),
                });
            }
            let prod = prod.unwrap_or_else(|| MatrixField::identity(r, n));
            out.axpy(c, &prod);
        }
        out
    }
}

/// Substitutes spectral derivatives of `u` for the letters of `p`.
pub fn evaluate_ncpoly_on_grid(p: &NCPoly, u: &GridPotential) -> MatrixField {
    let spectral = Spectral::new(u.points(), u.length());
    let max = p.max_letter().unwrap_or(0);
    Derivatives::new(u.samples(), &spectral, max).evaluate(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{Rational, Word};
    use crate::numverify::field::integrate_trace;
    use crate::numverify::grid::{ModeRecord, PotentialSpec};
    use num_complex::Complex64;
    use num_traits::One;

    fn noncommuting() -> GridPotential {
        PotentialSpec {
            r: 2,
            length: 2.0 * std::f64::consts::PI,
            modes: vec![
                ModeRecord {
                    i: 0,
                    j: 0,
                    k: 1,
                    re: 0.3,
                    im: 0.1,
                },
                ModeRecord {
                    i: 0,
                    j: 0,
                    k: -1,
                    re: 0.3,
                    im: -0.1,
                },
                ModeRecord {
                    i: 0,
                    j: 1,
                    k: 2,
                    re: 0.2,
                    im: 0.0,
                },
                ModeRecord {
                    i: 0,
                    j: 1,
                    k: -1,
                    re: 0.0,
                    im: 0.4,
                },
                ModeRecord {
                    i: 1,
                    j: 1,
                    k: 0,
                    re: -0.5,
                    im: 0.0,
                },
            ],
        }
        .synthesize(32)
        .unwrap()
    }

    #[test]
    fn letter_zero_returns_samples() {
        let u = noncommuting();
        let v = evaluate_ncpoly_on_grid(&NCPoly::letter(0), &u);
        assert_eq!(&v, u.samples());
    }

    #[test]
    fn derivative_of_constant_vanishes() {
        let u = GridPotential::constant(2, 16, 1.0, 0.8).unwrap();
        assert!(evaluate_ncpoly_on_grid(&NCPoly::letter(1), &u).max_abs() < 1e-14);
    }

    #[test]
    fn word_order_is_respected() {
        let u = noncommuting();
        let w02 = NCPoly::term(Word::new(vec![0, 2]), Rational::one());
        let w20 = NCPoly::term(Word::new(vec![2, 0]), Rational::one());
        let a = evaluate_ncpoly_on_grid(&w02, &u);
        let b = evaluate_ncpoly_on_grid(&w20, &u);
        // (U0 U2)^† = U2 U0 for hermitian factors
        assert!(a.conj_transpose().max_abs_diff(&b) < 1e-12);
        assert!(a.max_abs_diff(&b) > 1e-3);
    }

    #[test]
    fn total_derivative_integrates_to_zero() {
        let u = noncommuting();
        let f = evaluate_ncpoly_on_grid(&NCPoly::letter(1), &u);
        assert!(integrate_trace(&f, u.length()).unwrap().abs() < 1e-10);
        let sq = NCPoly::from_int_terms([(1, vec![0, 1]), (1, vec![1, 0])]);
        let g = evaluate_ncpoly_on_grid(&sq, &u);
        assert!(integrate_trace(&g, u.length()).unwrap().abs() < 1e-10);
    }

    #[test]
    fn identity_word_is_identity_matrix() {
        let u = noncommuting();
        let v = evaluate_ncpoly_on_grid(&NCPoly::one(), &u);
        assert_eq!(v.at(5, 0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(v.at(5, 0, 1), Complex64::new(0.0, 0.0));
    }
}
