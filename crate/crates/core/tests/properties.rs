use heatkdv::flatheat::{EndoPoly, MultiLetter, MultiWord, Symbol};
use heatkdv::opcalc::{jet_apply_l_power, Jet1D};
use heatkdv::{half_integer_binomial, NCPoly, Rational, Word};
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u32..4, 0..4).prop_map(Word::new)
}

fn poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word(), rational()), 0..5).prop_map(|terms| {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    })
}

fn letter(d: u32) -> impl Strategy<Value = MultiLetter> {
    (0..=d, prop::collection::vec(0u32..3, d as usize)).prop_map(|(s, alpha)| {
        let symbol = if s == 0 { Symbol::C } else { Symbol::B(s) };
        MultiLetter::new(symbol, alpha)
    })
}

fn multiword(d: u32) -> impl Strategy<Value = MultiWord> {
    prop::collection::vec(letter(d), 0..5).prop_map(MultiWord::new)
}

fn endo(d: u32) -> impl Strategy<Value = EndoPoly> {
    prop::collection::vec((multiword(d), rational()), 0..5).prop_map(move |terms| {
        let mut e = EndoPoly::zero(d);
        for (w, c) in terms {
            e.add_term(w, c);
        }
        e
    })
}

proptest! {
    #[test]
    fn half_integer_pascal(a in 0u32..12, b in 0u32..12, d in 1u32..5) {
        prop_assume!(b < a);
        let lhs = half_integer_binomial(a + 1, b + 1, d).unwrap();
        let rhs = half_integer_binomial(a, b, d).unwrap() + half_integer_binomial(a, b + 1, d).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn half_integer_diagonal_is_one(a in 0u32..20, d in 1u32..6) {
        prop_assert_eq!(half_integer_binomial(a, a, d).unwrap(), Rational::from_integer(1.into()));
    }

    #[test]
    fn leibniz(p in poly(), q in poly()) {
        prop_assert_eq!((&p * &q).dx(), &(&p.dx() * &q) + &(&p * &q.dx()));
    }

    #[test]
    fn reversal_is_an_anti_involution(p in poly(), q in poly()) {
        prop_assert_eq!(p.reverse().reverse(), p.clone());
        prop_assert_eq!((&p * &q).reverse(), &q.reverse() * &p.reverse());
        prop_assert_eq!(p.dx().reverse(), p.reverse().dx());
    }

    #[test]
    fn abelianization_commutes_with_dx(p in poly()) {
        prop_assert_eq!(p.dx().abelianize(), p.abelianize().dx().abelianize());
    }

    #[test]
    fn ncpoly_json_round_trip(p in poly()) {
        prop_assert_eq!(NCPoly::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn endo_json_round_trip(e in endo(2)) {
        prop_assert_eq!(EndoPoly::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn trace_is_cyclic(w in multiword(2), by in 0usize..5, c in rational()) {
        prop_assume!(!w.letters().is_empty());
        let mut a = EndoPoly::zero(2);
        a.add_term(w.clone(), c.clone());
        let mut b = EndoPoly::zero(2);
        b.add_term(w.rotated(by % w.letters().len()), c);
        prop_assert_eq!(a.trace(), b.trace());
    }

    #[test]
    fn pruning_preserves_constant_term(a in 0u32..10, times in 0u32..6) {
        let start = Jet1D::monomial(a);
        let full = jet_apply_l_power(&start, times, false).constant_term();
        let pruned = jet_apply_l_power(&start, times, true).constant_term();
        prop_assert_eq!(full, pruned);
    }
}
