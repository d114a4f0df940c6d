use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{parse_rational, NCPoly, Rational, Word};
use crate::Result;

/// One serialized term: `{"coeff": "<num>/<den>", "word": [k_1, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub word: Vec<u32>,
}

pub(crate) fn rational_record(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// `3`, `-\frac{1}{6}` and so on.
pub fn format_rational_latex(c: &Rational) -> String {
    let sign = if c.is_negative() { "-" } else { "" };
    let mag = c.abs();
    if mag.is_integer() {
        format!("{sign}{}", mag.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
    }
}

/// Joins `(coefficient, monomial)` pairs into a LaTeX sum. An empty monomial
/// is the unit and shows its coefficient even when it is one.
pub(crate) fn latex_sum<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Rational, String)>,
{
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let mag = c.abs();
        if mono.is_empty() || !mag.is_one() {
            out.push_str(&format_rational_latex(&mag));
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Product of `U_{k}` factors in word order; runs of a repeated letter are
/// written as powers.
fn latex_word(w: &Word) -> String {
    let mut out = String::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let k = letters[i];
        let run = letters[i..].iter().take_while(|&&x| x == k).count();
        out.push_str(&format!("U_{{{k}}}"));
        if run > 1 {
            out.push_str(&format!("^{{{run}}}"));
        }
        i += run;
    }
    out
}

impl NCPoly {
    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(w, c)| TermRecord {
                coeff: rational_record(c),
                word: w.letters().to_vec(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<NCPoly> {
        let mut p = NCPoly::zero();
        for r in records {
            p.add_term(Word::new(r.word.clone()), parse_rational(&r.coeff)?);
        }
        Ok(p)
    }

    /// Canonical JSON: a list of term records in canonical term order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_records()).expect("records always serialize")
    }

    pub fn from_json(s: &str) -> Result<NCPoly> {
        let records: Vec<TermRecord> = serde_json::from_str(s)?;
        Self::from_records(&records)
    }

    pub fn to_latex(&self) -> String {
        latex_sum(self.terms().map(|(w, c)| (c, latex_word(w))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_of_low_order_polynomials() {
        let g2 = NCPoly::from_int_terms([(1, vec![2]), (3, vec![0, 0])]);
        assert_eq!(g2.to_latex(), "U_{2}+3U_{0}^{2}");
        let h2 = g2.scaled(&Rational::new(1.into(), 6.into()));
        assert_eq!(h2.to_latex(), "\\frac{1}{6}U_{2}+\\frac{1}{2}U_{0}^{2}");
        let p = NCPoly::from_int_terms([(-1, vec![]), (-2, vec![0, 1, 1])]);
        assert_eq!(p.to_latex(), "-1-2U_{0}U_{1}^{2}");
        assert_eq!(NCPoly::zero().to_latex(), "0");
    }

    #[test]
    fn json_layout() {
        let p = NCPoly::from_int_terms([(3, vec![0, 0]), (1, vec![2])]);
        let v: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!([
                {"coeff": "1/1", "word": [2]},
                {"coeff": "3/1", "word": [0, 0]}
            ])
        );
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(NCPoly::from_json(r#"[{"coeff": "1/x", "word": [0]}]"#).is_err());
        assert!(NCPoly::from_json(r#"{"coeff": "1"}"#).is_err());
    }
}
