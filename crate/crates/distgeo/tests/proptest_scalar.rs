//! Property tests for the scalar core: jet arithmetic obeys the Leibniz and
//! chain rules to order 3, symbolic differentiation agrees with finite
//! differences and with the jet derivatives, and rendering round-trips
//! through the parser.

use distgeo::expr::Expr;
use distgeo::parser::parse_expr;
use proptest::prelude::*;

/// Random closed-form expressions that stay finite and smooth on [0.2, 2.0].
fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::var()),
        (-6i64..=6).prop_map(Expr::int),
        ((-6i64..=6), (1i64..=4)).prop_map(|(n, d)| Expr::rational(n, d)),
    ];
    leaf.prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(&a, &b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(&a, &b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(&a, &b)),
            inner.clone().prop_map(|a| Expr::sin(&a)),
            inner.clone().prop_map(|a| Expr::cos(&a)),
            // keep exp arguments small so values stay in comparable range
            inner
                .clone()
                .prop_map(|a| Expr::exp(&Expr::mul(&Expr::rational(1, 8), &Expr::sin(&a)))),
        ]
    })
}

fn sample_points() -> Vec<f64> {
    (0..7).map(|k| 0.2 + 0.3 * k as f64).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn leibniz_rule_order_3(a in arb_expr(), b in arb_expr()) {
        // all three derivatives of a product match the Leibniz expansion of
        // the factors' jets
        for t in sample_points() {
            let (ja, jb) = (a.eval_jet(t).unwrap(), b.eval_jet(t).unwrap());
            let jp = Expr::mul(&a, &b).eval_jet(t).unwrap();
            let scale = 1.0 + jp.value.abs() + jp.d1.abs() + jp.d2.abs() + jp.d3.abs();
            prop_assert!((jp.value - ja.value * jb.value).abs() / scale < 1e-9);
            prop_assert!((jp.d1 - (ja.d1 * jb.value + ja.value * jb.d1)).abs() / scale < 1e-9);
            prop_assert!(
                (jp.d2 - (ja.d2 * jb.value + 2.0 * ja.d1 * jb.d1 + ja.value * jb.d2)).abs()
                    / scale
                    < 1e-9
            );
            prop_assert!(
                (jp.d3
                    - (ja.d3 * jb.value
                        + 3.0 * ja.d2 * jb.d1
                        + 3.0 * ja.d1 * jb.d2
                        + ja.value * jb.d3))
                    .abs()
                    / scale
                    < 1e-9
            );
        }
    }

    #[test]
    fn derive_matches_finite_differences(a in arb_expr()) {
        let da = a.derive();
        for t in sample_points() {
            let h = 1e-5;
            let fd = (a.eval(t + h).unwrap() - a.eval(t - h).unwrap()) / (2.0 * h);
            let sym = da.eval(t).unwrap();
            let scale = 1.0 + sym.abs();
            prop_assert!((sym - fd).abs() / scale < 1e-5, "sym {sym} fd {fd} at t = {t}");
        }
    }

    #[test]
    fn derive_twice_matches_jet_d2(a in arb_expr()) {
        let d2 = a.derive().derive();
        for t in sample_points() {
            let jet = a.eval_jet(t).unwrap();
            let sym = d2.eval(t).unwrap();
            let scale = 1.0 + jet.d2.abs().max(sym.abs());
            prop_assert!((sym - jet.d2).abs() / scale < 1e-9);
        }
    }

    #[test]
    fn derive_matches_jet_d1_and_d3(a in arb_expr()) {
        let d1 = a.derive();
        let d3 = d1.derive().derive();
        for t in sample_points() {
            let jet = a.eval_jet(t).unwrap();
            let s1 = d1.eval(t).unwrap();
            let s3 = d3.eval(t).unwrap();
            prop_assert!((s1 - jet.d1).abs() / (1.0 + s1.abs().max(jet.d1.abs())) < 1e-9);
            prop_assert!((s3 - jet.d3).abs() / (1.0 + s3.abs().max(jet.d3.abs())) < 1e-9);
        }
    }

    #[test]
    fn render_parse_round_trip(a in arb_expr()) {
        let reparsed = parse_expr(&a.to_string()).unwrap();
        for t in sample_points() {
            let x = a.eval(t).unwrap();
            let y = reparsed.eval(t).unwrap();
            prop_assert!((x - y).abs() / (1.0 + x.abs()) < 1e-12, "`{a}` at t = {t}");
        }
    }

    #[test]
    fn chain_rule_through_composition(a in arb_expr()) {
        // d/dt sin(a(t)) = cos(a(t))·a'(t), checked symbolically vs jets
        let composed = Expr::sin(&a);
        let expect = Expr::mul(&Expr::cos(&a), &a.derive());
        for t in sample_points() {
            let lhs = composed.eval_jet(t).unwrap().d1;
            let rhs = expect.eval(t).unwrap();
            prop_assert!((lhs - rhs).abs() / (1.0 + rhs.abs()) < 1e-9);
        }
    }
}
