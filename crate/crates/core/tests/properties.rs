use ncbell::alphabet::Letter;
use ncbell::format::{from_json, parse, to_json, to_text, Symbol};
use ncbell::hopf::{HopfAlgebra, Side};
use ncbell::mobius::MobiusAlgebra;
use ncbell::rational::rat;
use ncbell::series::FormalSeries;
use ncbell::{CMonomial, CPoly, Monomial, NCPoly, Polynomial, Rational, Word};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(1u32..=4, 0..4).prop_map(|v| Word::from_indices(&v))
}

/// Words that may contain `d1^{-1}`, encoded as letter code `-1`.
fn laurent_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(-1i64), 1i64..=3], 0..7)
        .prop_map(|codes| Word::new(codes.into_iter().map(|c| Letter::from_code(c).unwrap())))
}

fn ncpoly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((word(), -6i64..=6, 1i64..=3), 0..5).prop_map(|ts| {
        NCPoly::from_terms(
            ts.into_iter()
                .map(|(w, a, b)| (w, Rational::new(a.into(), b.into()))),
        )
    })
}

fn laurent_poly() -> impl Strategy<Value = NCPoly> {
    prop::collection::vec((laurent_word(), -6i64..=6), 0..4)
        .prop_map(|ts| NCPoly::from_terms(ts.into_iter().map(|(w, a)| (w, rat(a)))))
}

fn series() -> impl Strategy<Value = FormalSeries<Rational>> {
    prop::collection::vec(-4i64..=4, 5).prop_map(|v| {
        let mut c = vec![rat(0)];
        c.extend(v.into_iter().map(rat));
        FormalSeries::new(c).unwrap()
    })
}

/// Random product of generators `X_1..X_3`, total degree at most `max`.
fn generator_product(max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..=3, 1..4)
        .prop_filter("degree bound", move |v| v.iter().sum::<u32>() <= max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative_and_distributive(a in ncpoly(), b in ncpoly(), c in ncpoly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn laurent_words_reduce_consistently(a in laurent_poly(), b in laurent_poly(), c in laurent_poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        for (w, _) in (&a * &b).terms() {
            let l = w.as_slice();
            prop_assert!(l.windows(2).all(|p| p[0].inverse() != Some(p[1])), "unreduced {:?}", w);
        }
    }

    #[test]
    fn derivation_obeys_leibniz(a in ncpoly(), b in ncpoly()) {
        let lhs = (&a * &b).derive().unwrap();
        let rhs = &a.derive().unwrap() * &b + &a * &b.derive().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn abelianization_is_a_ring_map(a in ncpoly(), b in ncpoly()) {
        prop_assert_eq!((&a * &b).abelianize(), &a.abelianize() * &b.abelianize());
        prop_assert_eq!((&a + &b).abelianize(), a.abelianize() + b.abelianize());
    }

    #[test]
    fn text_and_json_round_trip(a in ncpoly(), l in laurent_poly()) {
        for p in [&a, &l] {
            prop_assert_eq!(&parse::<Word>(&to_text(p, Symbol::D)).unwrap(), p);
            prop_assert_eq!(&from_json::<Word>(&to_json(p, Symbol::D)).unwrap(), p);
        }
        let c = a.abelianize();
        prop_assert_eq!(parse::<CMonomial>(&to_text(&c, Symbol::X)).unwrap(), c.clone());
        prop_assert_eq!(from_json::<CMonomial>(&to_json(&c, Symbol::D)).unwrap(), c);
    }

    #[test]
    fn composition_is_associative(f in series(), g in series(), h in series()) {
        prop_assert_eq!(f.compose(&g).unwrap().compose(&h).unwrap(), f.compose(&g.compose(&h).unwrap()).unwrap());
        prop_assert_eq!(f.compose(&g).unwrap(), f.compose_via_bell(&g).unwrap());
    }

    #[test]
    fn commutative_antipode_is_an_involution(gens in generator_product(6)) {
        let h = HopfAlgebra::<CMonomial>::new();
        let x = gens.iter().fold(CPoly::one(), |acc, &i| acc * CPoly::d(i));
        let s = h.antipode(&x);
        prop_assert_eq!(h.antipode(&s), x);
    }

    #[test]
    fn antipode_reverses_products(a in generator_product(6), b in generator_product(6)) {
        let h = HopfAlgebra::<Word>::new();
        let x = a.iter().fold(NCPoly::one(), |acc, &i| acc * NCPoly::d(i));
        let y = b.iter().fold(NCPoly::one(), |acc, &i| acc * NCPoly::d(i));
        prop_assert_eq!(h.antipode(&(&x * &y)), h.antipode(&y) * h.antipode(&x));
        prop_assert_eq!(h.antipode(&x).abelianize(), HopfAlgebra::<CMonomial>::new().antipode(&x.abelianize()));
    }

    #[test]
    fn antipode_inverts_identity_below_degree_five(gens in generator_product(4)) {
        let h = HopfAlgebra::<Word>::new();
        let x = gens.iter().fold(NCPoly::one(), |acc, &i| acc * NCPoly::d(i));
        let id = |m: &Word| Polynomial::monomial(m.clone(), rat(1));
        let s = |m: &Word| h.antipode_with(&id(m), Side::LeftLeg);
        prop_assert_eq!(h.coproduct(&x).map_legs(s, id).multiply(), NCPoly::zero());
    }

    #[test]
    fn coproducts_preserve_grading(n in 1u32..=6) {
        let h = HopfAlgebra::<Word>::new();
        for (a, b, _) in h.coproduct_generator(n).terms() {
            prop_assert_eq!(a.std_grade().unwrap() + b.std_grade().unwrap(), n);
        }
        let m = MobiusAlgebra::<Word>::new();
        for (a, b, _) in m.coproduct_m(n).unwrap().terms() {
            prop_assert_eq!(a.mobius_grade() + b.mobius_grade(), n - 1);
        }
        let s = m.antipode_m(n, Side::RightLeg).unwrap();
        prop_assert!(s.terms().all(|(w, _)| w.mobius_grade() == n - 1));
    }
}
