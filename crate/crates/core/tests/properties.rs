use hurwitz_core::divisor::{phi_pullback, slope};
use hurwitz_core::partitions::{partitions_of, transposition_feasible};
use hurwitz_core::pushpull::{multiply, pi_pushforward};
use hurwitz_core::scalar::{format_rational, parse_rational};
use hurwitz_core::wire::{from_json, to_json, DivisorClassJson, HurwitzClassJson};
use hurwitz_core::{BasisLabel, DivisorClass, HurwitzClass, Rational, Scalar, SpaceDescriptor};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::from_ratio(n, d))
}

fn class_on(space: SpaceDescriptor) -> impl Strategy<Value = DivisorClass> {
    let basis = space.basis();
    prop::collection::vec(rational(), basis.len())
        .prop_map(move |vals| DivisorClass::from_terms(space, basis.clone().into_iter().zip(vals)).unwrap())
}

fn mg_class() -> impl Strategy<Value = DivisorClass> {
    (3u32..12).prop_flat_map(|g| class_on(SpaceDescriptor::Mg { g }))
}

fn ps_pair() -> impl Strategy<Value = (DivisorClass, DivisorClass, Rational)> {
    (3u32..12).prop_flat_map(|g| {
        let s = SpaceDescriptor::MgPseudoStable { g };
        (class_on(s), class_on(s), rational())
    })
}

fn pointed_triple() -> impl Strategy<Value = (DivisorClass, DivisorClass, DivisorClass)> {
    (3u32..10).prop_flat_map(|g| {
        let s = SpaceDescriptor::MgOnePointed { g };
        (class_on(s), class_on(s), class_on(s))
    })
}

proptest! {
    #[test]
    fn phi_is_linear((a, b, t) in ps_pair()) {
        let lhs = phi_pullback(&a.scale(&t).try_add(&b).unwrap()).unwrap();
        let rhs = phi_pullback(&a).unwrap().scale(&t).try_add(&phi_pullback(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_symmetric_and_bilinear((x, y, z) in pointed_triple(), t in rational()) {
        prop_assert_eq!(multiply(&x, &y).unwrap(), multiply(&y, &x).unwrap());
        let lhs = multiply(&x.scale(&t).try_add(&y).unwrap(), &z).unwrap();
        let rhs = multiply(&x, &z).unwrap().scale(&t).try_add(&multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_is_linear((x, y, z) in pointed_triple(), t in rational()) {
        let p = multiply(&x, &y).unwrap();
        let q = multiply(&y, &z).unwrap();
        let lhs = pi_pushforward(&p.scale(&t).try_add(&q).unwrap()).unwrap();
        let rhs = pi_pushforward(&p).unwrap().scale(&t).try_add(&pi_pushforward(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn slope_is_scale_invariant(d in mg_class(), n in 1i64..30, m in 1i64..30) {
        let c = Rational::from_ratio(n, m);
        prop_assert_eq!(slope(&d).unwrap(), slope(&d.scale(&c)).unwrap());
    }

    #[test]
    fn divisor_json_round_trip(d in mg_class()) {
        let text = to_json(&DivisorClassJson::from(&d));
        let back: DivisorClassJson = from_json(&text).unwrap();
        prop_assert_eq!(DivisorClass::try_from(&back).unwrap(), d);
    }

    #[test]
    fn rational_text_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn feasibility_steps_by_two(k in 2u32..12, i in 0u32..20) {
        for mu in partitions_of(k).unwrap() {
            if transposition_feasible(&mu, i) {
                prop_assert!(transposition_feasible(&mu, i + 2));
                prop_assert!(!transposition_feasible(&mu, i + 1));
            }
        }
    }

    #[test]
    fn hurwitz_json_round_trip(g in 2u32..9, k in 3u32..6, seed in rational()) {
        let h: HurwitzClass = hurwitz_core::hurwitz::canonical_stack::<Rational>(g, k).unwrap().scale(&seed);
        let text = to_json(&HurwitzClassJson::from(&h));
        let back: HurwitzClassJson = from_json(&text).unwrap();
        prop_assert_eq!(HurwitzClass::try_from(&back).unwrap(), h);
    }
}

#[test]
fn pseudo_stable_has_no_delta_one() {
    let ps = SpaceDescriptor::MgPseudoStable { g: 6 };
    assert!(!ps.has_label(BasisLabel::Delta(1)));
    let mut c = DivisorClass::<Rational>::zero(ps).unwrap();
    assert!(c.add_term(BasisLabel::Delta(1), Rational::from_int(1)).is_err());
}
