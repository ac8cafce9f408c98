//! Identities over ranges of genus and degree, with independently coded
//! formulas as the reference.

use hurwitz_core::bigness::{coarse_inequality_lhs, stack_inequality_lhs};
use hurwitz_core::divisor::{canonical_m0b, slope};
use hurwitz_core::hurwitz::{
    branch_pullback, canonical_stack, canonical_stack_formula, hodge_class, ramification_class,
};
use hurwitz_core::low_slope::{
    best_recipe, closed_form_slope_odd_polynomial, closed_form_slope_odd_split, hilbert2_class,
    odd_pushforward_class, syzygy_class_g7,
};
use hurwitz_core::partitions::{boundary_index_set, branch_point_count};
use hurwitz_core::{
    verify_coarse, verify_stack, BasisLabel, BoundaryIndex, HurwitzClass, HurwitzClassF64, Partition, Rational,
    RecipeName, Scalar, Verdict,
};

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

/// `2(7g⁴+43g³+7g²-7g-2) / (g(g+1)(g+3)(2g-1))` in plain integers.
fn odd_reference(g: i64) -> Rational {
    let num = 2 * (7 * g.pow(4) + 43 * g.pow(3) + 7 * g * g - 7 * g - 2);
    let den = g * (g + 1) * (g + 3) * (2 * g - 1);
    q(num, den)
}

#[test]
fn odd_slopes_match_closed_form() {
    for g in (5..=49).step_by(2) {
        let r = odd_pushforward_class::<Rational>(g).unwrap();
        assert_eq!(r.slope, odd_reference(i64::from(g)), "g={g}");
        assert_eq!(closed_form_slope_odd_polynomial::<Rational>(g), r.slope);
        assert_eq!(closed_form_slope_odd_split::<Rational>(g), r.slope);
    }
}

#[test]
fn odd_slope_values() {
    assert_eq!(odd_reference(5), q(412, 45));
    assert_eq!(odd_reference(15), q(62621, 7830));
}

#[test]
fn odd_boundary_coefficients_dominated_by_delta0() {
    for g in (5..=31).step_by(2) {
        let d = odd_pushforward_class::<Rational>(g).unwrap().class;
        let b0 = -d.get(BasisLabel::Delta(0));
        assert!(b0 > q(0, 1));
        for j in 1..=g / 2 {
            assert!(-d.get(BasisLabel::Delta(j)) >= b0, "g={g} j={j}");
        }
        assert_eq!(slope(&d).unwrap().unwrap(), d.get(BasisLabel::Lambda) / b0);
    }
}

#[test]
fn threshold_below_eight() {
    let eight = q(8, 1);
    for g in 5..=99u32 {
        if g % 2 == 1 {
            assert_eq!(odd_reference(i64::from(g)) < eight, g >= 15, "odd g={g}");
        } else {
            let s = q(7, 1) + q(6, i64::from(g));
            assert_eq!(s < eight, g >= 8, "even g={g}");
        }
    }
    for g in (6..=30).step_by(2) {
        assert_eq!(hilbert2_class::<Rational>(g).unwrap().slope, q(7, 1) + q(6, i64::from(g)));
    }
}

#[test]
fn hilbert2_delta_one() {
    for g in (6..=20).step_by(2) {
        let gg = i64::from(g);
        let d = hilbert2_class::<Rational>(g).unwrap().class;
        let expected = -q(gg * (gg + 1), 2) * (q(5, 1) - q(6, gg));
        assert_eq!(d.get(BasisLabel::Delta(1)), expected, "g={g}");
    }
}

#[test]
fn canonical_identity() {
    for g in 2..=12 {
        for k in 3..=6 {
            let b = branch_point_count(g, k).unwrap();
            let rh = branch_pullback(g, k, &canonical_m0b::<Rational>(b).unwrap())
                .unwrap()
                .try_add(&ramification_class(g, k).unwrap())
                .unwrap();
            let direct: HurwitzClass = canonical_stack_formula(g, k).unwrap();
            assert_eq!(direct, rh, "g={g} k={k}");
        }
    }
}

#[test]
fn f64_instantiation_tracks_exact() {
    for (g, k) in [(4, 3), (8, 4), (11, 5)] {
        let exact: HurwitzClass = hodge_class(g, k).unwrap();
        let approx: HurwitzClassF64 = hodge_class(g, k).unwrap();
        for (ix, v) in exact.terms() {
            let x = approx.get(ix);
            assert!((x - v.to_f64_lossy()).abs() < 1e-12 * (1.0 + x.abs()), "{ix}");
        }
        let _: HurwitzClassF64 = canonical_stack(g, k).unwrap();
    }
}

/// Margin written out from the definitions, for comparison with the engine.
fn stack_reference(g: u32, k: u32, s: &Rational, ix: &BoundaryIndex) -> Rational {
    let b = i64::from(2 * g + 2 * k - 2);
    let i = i64::from(ix.i);
    let m = q(ix.mu.lcm() as i64, 1);
    let inv: Rational = ix.mu.parts().iter().map(|&p| q(1, i64::from(p))).sum();
    let sigma = if ix.mu.parts().iter().all(|&p| p == 1) {
        2
    } else if ix.mu.parts().iter().filter(|&&p| p == 2).count() == 1 && ix.mu.parts().iter().all(|&p| p <= 2) {
        1
    } else {
        0
    };
    let kk = q(i64::from(k), 1);
    let hodge = &m * (q(i * (b - i), 8 * (b - 1)) - (&kk - &inv) / q(12, 1));
    let canon = &m * (q(i * (b - i), b - 1) - q(1, 1)) - q(1, 1);
    canon - s * hodge + q(sigma, 1)
}

#[test]
fn stack_margins_nonnegative_below_eight() {
    for s in [q(31, 4), q(54, 7), q(62621, 7830)] {
        for g in 2..=20 {
            for k in 3..=6 {
                for ix in boundary_index_set(g, k).unwrap() {
                    let m = stack_inequality_lhs(g, k, &s, &ix).unwrap();
                    assert_eq!(m, stack_reference(g, k, &s, &ix), "g={g} k={k} {ix}");
                    assert!(m >= q(0, 1), "s={s} g={g} k={k} {ix}: {m}");
                }
            }
        }
    }
}

#[test]
fn all_ones_margin_grows_with_i() {
    let s = q(31, 4);
    for (g, k) in [(8, 3), (10, 4), (14, 6)] {
        let b = branch_point_count(g, k).unwrap();
        let margins: Vec<Rational> = (2..=b / 2)
            .filter(|i| i % 2 == 0)
            .map(|i| BoundaryIndex::new(i, Partition::ones(k)))
            .filter(|ix| boundary_index_set(g, k).unwrap().contains(ix))
            .map(|ix| stack_inequality_lhs(g, k, &s, &ix).unwrap())
            .collect();
        assert!(margins.len() >= 2);
        assert!(margins.windows(2).all(|w| w[0] <= w[1]), "g={g} k={k}");
    }
}

#[test]
fn coarse_margins_at_eight() {
    for g in 2..=12 {
        for k in 3..=6 {
            for ix in boundary_index_set(g, k).unwrap() {
                let m: Rational = coarse_inequality_lhs(g, k, &ix).unwrap();
                assert!(m >= q(0, 1), "g={g} k={k} {ix}");
                let a = ix.mu.multiplicity(2);
                if a >= 1 && ix.mu.parts().iter().all(|&p| p <= 2) {
                    // two-cycle types reduce to sigma + 2a - 4 with sigma the asserted bound
                    let sigma = if a == 1 { 2 } else { 0 };
                    assert_eq!(m, q(sigma + 2 * i64::from(a) - 4, 1), "g={g} k={k} {ix}");
                }
            }
        }
    }
}

#[test]
fn certificates_for_built_in_recipes() {
    let r = hilbert2_class::<Rational>(8).unwrap();
    let c = verify_stack(8, 3, &r).unwrap();
    assert_eq!(c.verdict, Verdict::Certified);
    assert!(c.alpha > q(0, 1));
    assert_eq!(c.slope, q(31, 4));

    let r7 = syzygy_class_g7::<Rational>().unwrap();
    assert_eq!(r7.slope, q(54, 7));
    assert_eq!(verify_stack(7, 4, &r7).unwrap().verdict, Verdict::Certified);
    assert_eq!(verify_coarse(7, 4, &r7).unwrap().verdict, Verdict::Certified);
    assert!(verify_stack(7, 3, &r7).is_err());

    assert!(verify_coarse(8, 6, &r).is_err());
    assert!(verify_stack(10, 3, &r).is_err());
}

#[test]
fn best_recipe_cells() {
    assert_eq!(best_recipe::<Rational>(8, 5).unwrap().unwrap().name, RecipeName::Hilbert2Even);
    assert_eq!(best_recipe::<Rational>(15, 3).unwrap().unwrap().name, RecipeName::OddPushforward);
    assert_eq!(best_recipe::<Rational>(7, 4).unwrap().unwrap().name, RecipeName::SyzygyG7);
    assert!(best_recipe::<Rational>(7, 3).unwrap().is_none());
    assert!(best_recipe::<Rational>(13, 3).unwrap().is_none());
    assert!(best_recipe::<Rational>(6, 3).unwrap().is_none());
}
