use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::letter::{MultiLetter, MultiWord, Symbol};
use crate::ncalg::{
    format::latex_sum, format::rational_record, parse_rational, NCPoly, Rational, Word,
};
use crate::{Error, Result};

/// Formal prefactor `(4π)^{-d/2}`; serialized as `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prefactor {
    pub four_pi_pow: u32,
}

impl Prefactor {
    pub fn value(&self) -> f64 {
        (4.0 * std::f64::consts::PI).powf(-f64::from(self.four_pi_pow) / 2.0)
    }

    pub fn latex(&self) -> String {
        let d = self.four_pi_pow;
        if d.is_multiple_of(2) {
            format!("(4\\pi)^{{-{}}}", d / 2)
        } else {
            format!("(4\\pi)^{{-{d}/2}}")
        }
    }

    fn text(&self) -> String {
        let d = self.four_pi_pow;
        if d.is_multiple_of(2) {
            format!("(4pi)^(-{})", d / 2)
        } else {
            format!("(4pi)^(-{d}/2)")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LetterRecord {
    pub sym: String,
    pub alpha: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiTermRecord {
    pub coeff: String,
    pub word: Vec<LetterRecord>,
}

/// Serialized [`EndoPoly`] or [`TracePoly`]. For traces the empty word is
/// the fiber rank `r = tr I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndoRecord {
    pub prefactor: Prefactor,
    pub trace: bool,
    pub terms: Vec<MultiTermRecord>,
}

type TermMap = BTreeMap<MultiWord, Rational>;

fn add_into(map: &mut TermMap, w: MultiWord, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn records(terms: &TermMap) -> Vec<MultiTermRecord> {
    terms
        .iter()
        .map(|(w, c)| MultiTermRecord {
            coeff: rational_record(c),
            word: w
                .letters()
                .iter()
                .map(|l| LetterRecord {
                    sym: l.symbol.name(),
                    alpha: l.alpha.clone(),
                })
                .collect(),
        })
        .collect()
}

fn parse_records(dim: u32, recs: &[MultiTermRecord]) -> Result<TermMap> {
    let mut map = TermMap::new();
    for r in recs {
        let mut letters = Vec::with_capacity(r.word.len());
        for l in &r.word {
            let symbol = Symbol::parse(&l.sym)
                .filter(|s| !matches!(s, Symbol::B(k) if *k > dim))
                .ok_or_else(|| Error::Parse(format!("unknown symbol {:?}", l.sym)))?;
            if l.alpha.len() != dim as usize {
                return Err(Error::Parse(format!(
                    "multi-index {:?} has length {}, expected {dim}",
                    l.alpha,
                    l.alpha.len()
                )));
            }
            letters.push(MultiLetter::new(symbol, l.alpha.clone()));
        }
        add_into(&mut map, MultiWord::new(letters), parse_rational(&r.coeff)?);
    }
    Ok(map)
}

fn latex_letter(l: &MultiLetter) -> String {
    let base = match l.symbol {
        Symbol::B(k) => format!("B_{{{k}}}"),
        Symbol::C => "C".to_string(),
    };
    if l.order() == 0 {
        return base;
    }
    let a: Vec<String> = l.alpha.iter().map(u32::to_string).collect();
    format!("{base}^{{({})}}", a.join(","))
}

fn latex_word(w: &MultiWord) -> String {
    w.letters().iter().map(latex_letter).collect()
}

fn write_text(
    f: &mut fmt::Formatter<'_>,
    prefactor: &Prefactor,
    terms: &TermMap,
    show: impl Fn(&MultiWord) -> String,
) -> fmt::Result {
    write!(f, "{} * (", prefactor.text())?;
    if terms.is_empty() {
        f.write_str("0")?;
    }
    for (i, (w, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        match (i, c.is_negative()) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if mag.is_one() {
            f.write_str(&show(w))?;
        } else {
            write!(f, "{mag}*{}", show(w))?;
        }
    }
    f.write_str(")")
}

/// Heat endomorphism `A_n = (4π)^{-d/2} · Σ c_w w`, rational part exact.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EndoPoly {
    dim: u32,
    terms: TermMap,
}

impl EndoPoly {
    pub fn zero(dim: u32) -> Self {
        EndoPoly {
            dim,
            terms: TermMap::new(),
        }
    }

    /// `(4π)^{-d/2} · I`.
    pub fn unit(dim: u32) -> Self {
        let mut e = Self::zero(dim);
        e.add_term(MultiWord::identity(), Rational::one());
        e
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn prefactor(&self) -> Prefactor {
        Prefactor {
            four_pi_pow: self.dim,
        }
    }

    pub fn add_term(&mut self, w: MultiWord, c: Rational) {
        add_into(&mut self.terms, w, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &MultiWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn contains_b(&self) -> bool {
        self.terms
            .keys()
            .any(|w| w.letters().iter().any(|l| matches!(l.symbol, Symbol::B(_))))
    }

    /// Every word has generalized weight `w`.
    pub fn is_homogeneous_of(&self, weight: u64) -> bool {
        self.terms.keys().all(|w| w.weight() == weight)
    }

    /// Rational part as a one-dimensional polynomial with `C^{(k)} ↦ U_k`.
    /// Only defined for `d = 1` without `B` letters.
    pub fn to_ncpoly(&self) -> Result<NCPoly> {
        if self.dim != 1 {
            return Err(Error::InvalidArgument(format!(
                "renaming C to U needs d = 1, got d = {}",
                self.dim
            )));
        }
        let mut p = NCPoly::zero();
        for (w, c) in &self.terms {
            let mut letters = Vec::with_capacity(w.degree());
            for l in w.letters() {
                match l.symbol {
                    Symbol::C => letters.push(l.alpha[0]),
                    Symbol::B(_) => {
                        return Err(Error::InvalidArgument(
                            "renaming C to U needs B = 0".to_string(),
                        ))
                    }
                }
            }
            p.add_term(Word::new(letters), c.clone());
        }
        Ok(p)
    }

    /// Inverse of [`EndoPoly::to_ncpoly`]: `U_k ↦ C^{(k)}` in `d = 1`.
    pub fn from_ncpoly(p: &NCPoly) -> EndoPoly {
        let mut e = EndoPoly::zero(1);
        for (w, c) in p.terms() {
            let letters = w
                .letters()
                .iter()
                .map(|&k| MultiLetter::new(Symbol::C, vec![k]))
                .collect();
            e.add_term(MultiWord::new(letters), c.clone());
        }
        e
    }

    /// Fiber trace, each word replaced by its least cyclic rotation.
    pub fn trace(&self) -> TracePoly {
        let mut t = TracePoly::zero(self.dim);
        for (w, c) in &self.terms {
            add_into(&mut t.terms, w.canonical_rotation(), c.clone());
        }
        t
    }

    /// Numerical value of the prefactor times the coefficient of `w`.
    pub fn numeric_coeff(&self, w: &MultiWord) -> f64 {
        self.coeff(w).to_f64().unwrap_or(f64::NAN) * self.prefactor().value()
    }

    pub fn to_record(&self) -> EndoRecord {
        EndoRecord {
            prefactor: self.prefactor(),
            trace: false,
            terms: records(&self.terms),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("records always serialize")
    }

    pub fn from_json(s: &str) -> Result<EndoPoly> {
        let rec: EndoRecord = serde_json::from_str(s)?;
        if rec.trace {
            return Err(Error::Parse(
                "record holds a trace, not an endomorphism".into(),
            ));
        }
        let dim = rec.prefactor.four_pi_pow;
        Ok(EndoPoly {
            dim,
            terms: parse_records(dim, &rec.terms)?,
        })
    }

    pub fn to_latex(&self) -> String {
        let body = latex_sum(self.terms.iter().map(|(w, c)| (c, latex_word(w))));
        format!("{}\\left({body}\\right)", self.prefactor().latex())
    }
}

impl fmt::Display for EndoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_text(f, &self.prefactor(), &self.terms, |w| w.to_string())
    }
}

/// Heat invariant `a_n = tr A_n` over cyclic classes of words. The empty
/// word stands for the rank `r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TracePoly {
    dim: u32,
    terms: TermMap,
}

impl TracePoly {
    pub fn zero(dim: u32) -> Self {
        TracePoly {
            dim,
            terms: TermMap::new(),
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn prefactor(&self) -> Prefactor {
        Prefactor {
            four_pi_pow: self.dim,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the trace class of `w`.
    pub fn coeff(&self, w: &MultiWord) -> Rational {
        self.terms
            .get(&w.canonical_rotation())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_record(&self) -> EndoRecord {
        EndoRecord {
            prefactor: self.prefactor(),
            trace: true,
            terms: records(&self.terms),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("records always serialize")
    }

    pub fn from_json(s: &str) -> Result<TracePoly> {
        let rec: EndoRecord = serde_json::from_str(s)?;
        if !rec.trace {
            return Err(Error::Parse(
                "record holds an endomorphism, not a trace".into(),
            ));
        }
        let dim = rec.prefactor.four_pi_pow;
        let raw = parse_records(dim, &rec.terms)?;
        let mut t = TracePoly::zero(dim);
        for (w, c) in raw {
            add_into(&mut t.terms, w.canonical_rotation(), c);
        }
        Ok(t)
    }

    pub fn to_latex(&self) -> String {
        let body = latex_sum(self.terms.iter().map(|(w, c)| {
            let mono = if w.is_identity() {
                "r".to_string()
            } else {
                format!("\\operatorname{{tr}}({})", latex_word(w))
            };
            (c, mono)
        }));
        format!("{}\\left({body}\\right)", self.prefactor().latex())
    }
}

impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_text(f, &self.prefactor(), &self.terms, |w| {
            if w.is_identity() {
                "r".to_string()
            } else {
                format!("tr({w})")
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_letter(alpha: &[u32]) -> MultiLetter {
        MultiLetter::new(Symbol::C, alpha.to_vec())
    }

    #[test]
    fn latex_forms() {
        let mut e = EndoPoly::zero(2);
        e.add_term(MultiWord::new(vec![c_letter(&[0, 0])]), Rational::one());
        e.add_term(
            MultiWord::new(vec![MultiLetter::new(Symbol::B(2), vec![1, 0])]),
            Rational::new((-1).into(), 3.into()),
        );
        assert_eq!(
            e.to_latex(),
            "(4\\pi)^{-1}\\left(-\\frac{1}{3}B_{2}^{(1,0)}+C\\right)"
        );
        assert_eq!(
            EndoPoly::unit(3).to_latex(),
            "(4\\pi)^{-3/2}\\left(1\\right)"
        );
        assert_eq!(
            EndoPoly::unit(3).trace().to_latex(),
            "(4\\pi)^{-3/2}\\left(r\\right)"
        );
        assert_eq!(EndoPoly::unit(1).trace().to_string(), "(4pi)^(-1/2) * (r)");
    }

    #[test]
    fn json_layout_and_round_trip() {
        let mut e = EndoPoly::unit(2);
        e.add_term(
            MultiWord::new(vec![c_letter(&[1, 0])]),
            Rational::new(1.into(), 2.into()),
        );
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["prefactor"]["four_pi_pow"], 2);
        assert_eq!(v["terms"][1]["word"][0]["sym"], "C");
        assert_eq!(v["terms"][1]["coeff"], "1/2");
        assert_eq!(EndoPoly::from_json(&e.to_json()).unwrap(), e);
        let t = e.trace();
        assert_eq!(TracePoly::from_json(&t.to_json()).unwrap(), t);
        assert!(TracePoly::from_json(&e.to_json()).is_err());
    }

    #[test]
    fn json_rejects_bad_letters() {
        let bad_sym = r#"{"prefactor":{"four_pi_pow":1},"trace":false,"terms":[{"coeff":"1/1","word":[{"sym":"B2","alpha":[0]}]}]}"#;
        assert!(EndoPoly::from_json(bad_sym).is_err());
        let bad_alpha = r#"{"prefactor":{"four_pi_pow":1},"trace":false,"terms":[{"coeff":"1/1","word":[{"sym":"C","alpha":[0,0]}]}]}"#;
        assert!(EndoPoly::from_json(bad_alpha).is_err());
    }

    #[test]
    fn ncpoly_renaming_round_trip() {
        let p = NCPoly::from_int_terms([(1, vec![2]), (3, vec![0, 0])]);
        let e = EndoPoly::from_ncpoly(&p);
        assert_eq!(e.to_ncpoly().unwrap(), p);
        assert!(EndoPoly::unit(2).to_ncpoly().is_err());
    }

    #[test]
    fn trace_merges_rotations() {
        let mut e = EndoPoly::zero(1);
        e.add_term(
            MultiWord::new(vec![c_letter(&[0]), c_letter(&[2])]),
            Rational::one(),
        );
        e.add_term(
            MultiWord::new(vec![c_letter(&[2]), c_letter(&[0])]),
            Rational::one(),
        );
        let t = e.trace();
        assert_eq!(t.len(), 1);
        assert_eq!(
            t.coeff(&MultiWord::new(vec![c_letter(&[2]), c_letter(&[0])])),
            Rational::from_integer(2.into())
        );
    }
}
