mod common;

use common::{EXPRESSIONS, FUNCTIONS};
use hhkit_core::expr::{parse, BinaryOp, Expr, FunctionSpec, UnaryFn};
use hhkit_core::Interval;
use proptest::prelude::*;

fn all_expressions() -> impl Iterator<Item = &'static str> {
    FUNCTIONS.iter().chain(EXPRESSIONS.iter()).copied()
}

#[test]
fn derivative_matches_central_difference() {
    let domain = Interval::new(0.25, 2.75).unwrap();
    for text in all_expressions() {
        let f = FunctionSpec::parse(text, domain).unwrap();
        for i in 0..100 {
            let x = domain.a() + (i as f64 + 0.5) * domain.width() / 100.0;
            let d = f.derivative(x).unwrap();
            let h = 1e-6 * x.abs().max(1.0);
            let fd = (f.eval(x + h).unwrap() - f.eval(x - h).unwrap()) / (2.0 * h);
            assert!(
                (d - fd).abs() <= 1e-6 * d.abs().max(1.0),
                "{text} at {x}: dual {d}, difference {fd}"
            );
        }
    }
}

#[test]
fn printed_form_reparses_to_same_tree() {
    for text in all_expressions() {
        let e: Expr<f64> = parse(text).unwrap();
        let again: Expr<f64> = parse(&e.to_string()).unwrap();
        assert_eq!(e, again, "{text} printed as {e}");
    }
}

#[test]
fn repeated_evaluation_is_bit_identical() {
    for text in FUNCTIONS {
        let f = common::spec(text);
        for x in [0.0, 0.3, 1.7, 3.0] {
            let first = f.eval_with_derivative(x).unwrap();
            let second = f.eval_with_derivative(x).unwrap();
            assert_eq!(first.value.to_bits(), second.value.to_bits());
            assert_eq!(first.derivative.to_bits(), second.derivative.to_bits());
        }
    }
}

fn arb_expr() -> impl Strategy<Value = Expr<f64>> {
    let leaf = prop_oneof![
        Just(Expr::Var),
        (0.0f64..1e6).prop_map(Expr::Const),
        (0u32..50).prop_map(|k| Expr::Const(k as f64)),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        let op = prop_oneof![
            Just(BinaryOp::Add),
            Just(BinaryOp::Sub),
            Just(BinaryOp::Mul),
            Just(BinaryOp::Div),
            Just(BinaryOp::Pow),
        ];
        let func = prop_oneof![Just(UnaryFn::Exp), Just(UnaryFn::Log), Just(UnaryFn::Abs)];
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (op, inner.clone(), inner.clone())
                .prop_map(|(op, l, r)| Expr::Binary(op, Box::new(l), Box::new(r))),
            (func, inner).prop_map(|(f, e)| Expr::Call(f, Box::new(e))),
        ]
    })
}

proptest! {
    #[test]
    fn generated_trees_round_trip(e in arb_expr()) {
        let printed = e.to_string();
        let back: Expr<f64> = parse(&printed).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn parser_never_panics(text in "[x0-9+*/^().e -]{0,24}") {
        let _ = parse::<f64>(&text);
    }
}
