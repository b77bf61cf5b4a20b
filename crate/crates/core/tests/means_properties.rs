mod common;

use hhkit_core::convexity::ConvexityParams;
use hhkit_core::expr::FunctionSpec;
use hhkit_core::hhbounds::{verify_theorem, TheoremId};
use hhkit_core::kernels::HolderExponents;
use hhkit_core::means::{
    mean, mean_chain_check, p_logarithmic, p_logarithmic_extended, proposition_check, MeanKind,
    MeanRequest, PropositionId,
};
use hhkit_core::Interval;
use proptest::prelude::*;

const P_GRID: [f64; 9] = [-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0];

fn request(kind: MeanKind, a: f64, b: f64) -> MeanRequest<f64> {
    MeanRequest { kind, a, b, p: Some(2.5) }
}

#[test]
fn p_mean_is_monotone_in_order() {
    for (a, b) in [(0.5, 1.5), (1.0, std::f64::consts::E), (2.0, 8.0), (1.0, 100.0), (3.0, 3.001)] {
        let values: Vec<f64> =
            P_GRID.iter().map(|&p| p_logarithmic_extended(a, b, p).unwrap()).collect();
        for w in values.windows(2) {
            assert!(w[0] <= w[1] + 1e-12, "({a}, {b}): {values:?}");
        }
    }
}

#[test]
fn continuous_at_the_diagonal() {
    for a in [0.01, 1.0, 7.5, 1e4] {
        let b = a * (1.0 + 1e-9);
        for kind in MeanKind::ALL {
            let v = mean(&request(kind, a, b)).unwrap();
            assert!((v - a).abs() <= 1e-6 * a, "{kind} at {a}");
        }
    }
}

#[test]
fn first_proposition_is_the_exponential_bound() {
    let params = ConvexityParams::classical();
    for (a, b) in [(1.0, std::f64::consts::E), (2.0, 8.0), (0.5, 1.5)] {
        let iv = Interval::new(f64::ln(a), f64::ln(b)).unwrap();
        let f = FunctionSpec::parse("exp(x)", iv).unwrap();
        for p in common::HOLDER_P {
            let h = HolderExponents::new(p).unwrap();
            let prop = proposition_check(PropositionId::P1, a, b, &h, None).unwrap();
            let thm = verify_theorem(TheoremId::T2, &f, iv, &params, Some(&h)).unwrap();
            assert!((prop.lhs_gap - thm.lhs_gap).abs() <= 1e-10, "({a},{b}) p={p}");
            assert!((prop.rhs_bound - thm.rhs_bound).abs() <= 1e-10, "({a},{b}) p={p}");
            assert!(prop.margin >= 0.0);
        }
    }
}

#[test]
fn as_printed_propositions_evaluate() {
    let h = HolderExponents::new(2.0).unwrap();
    for id in PropositionId::ALL {
        let n = (id == PropositionId::P3).then_some(3);
        let r = proposition_check(id, 1.0_f64, 2.0, &h, n).unwrap();
        assert!(r.lhs_gap.is_finite() && r.rhs_bound.is_finite(), "{id}");
        assert_eq!(r.hypothesis_certified, None);
    }
}

proptest! {
    #[test]
    fn chain_holds(a in 1e-3f64..100.0, b in 1e-3f64..100.0) {
        prop_assert!(mean_chain_check(a, b).unwrap().holds);
    }

    #[test]
    fn symmetric(a in 1e-3f64..100.0, b in 1e-3f64..100.0) {
        for kind in MeanKind::ALL {
            prop_assert_eq!(mean(&request(kind, a, b)).unwrap(), mean(&request(kind, b, a)).unwrap());
        }
    }

    #[test]
    fn unit_order_is_arithmetic(a in 1e-3f64..100.0, d in 1e-6f64..100.0) {
        let b = a + d;
        let l1 = p_logarithmic(a, b, 1.0).unwrap();
        prop_assert!((l1 - (a + b) / 2.0).abs() <= 1e-12 * b);
    }
}
