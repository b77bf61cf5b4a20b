mod common;

use common::{spec, HOLDER_P};
use hhkit_core::convexity::ConvexityParams;
use hhkit_core::expr::FunctionSpec;
use hhkit_core::hhbounds::{
    hh_gap, lemma1_rhs, lemma2_rhs, signed_gap, theorem_bound, verify_theorem, TheoremId,
};
use hhkit_core::kernels::HolderExponents;

fn holder_for(id: TheoremId, p: f64) -> Option<HolderExponents<f64>> {
    id.needs_holder().then(|| HolderExponents::new(p).unwrap())
}

#[test]
fn certified_bounds_are_sound() {
    let mut certified = 0;
    for text in common::FUNCTIONS {
        let f = spec(text);
        for iv in common::intervals() {
            for params in common::param_grid() {
                for id in TheoremId::ALL {
                    let ps: &[f64] = if id.needs_holder() { &HOLDER_P } else { &[2.0] };
                    for &p in ps {
                        let h = holder_for(id, p);
                        let r = verify_theorem(id, &f, iv, &params, h.as_ref()).unwrap();
                        if r.hypothesis_certified == Some(true) {
                            certified += 1;
                            assert!(r.margin >= -1e-9, "{text} on {iv} {params:?}: {r:?}");
                        }
                    }
                }
            }
        }
    }
    assert!(certified > 0);
}

#[test]
fn bounds_scale_with_function() {
    let params = ConvexityParams::classical();
    for text in common::FUNCTIONS {
        let f = spec(text);
        let scaled = spec(&format!("2.5 * ({text})"));
        for iv in common::intervals() {
            let g = hh_gap(&f, iv).unwrap();
            let gs = hh_gap(&scaled, iv).unwrap();
            assert!((gs - 2.5 * g).abs() <= 1e-12 * gs.abs().max(1.0), "{text} gap");
            for id in TheoremId::ALL {
                let h = holder_for(id, 2.0);
                let b = theorem_bound(id, &f, iv, &params, h.as_ref()).unwrap();
                let bs = theorem_bound(id, &scaled, iv, &params, h.as_ref()).unwrap();
                assert!((bs - 2.5 * b).abs() <= 1e-12 * bs.abs(), "{text} {id}: {b} {bs}");
            }
        }
    }
}

#[test]
fn shrinking_interval_never_grows_single_kernel_bound() {
    let params = ConvexityParams::classical();
    // |f'| is nondecreasing on [0, 3] for every entry
    for text in common::FUNCTIONS {
        let f = spec(text);
        let mut last = f64::INFINITY;
        for b in [3.0, 2.5, 2.0, 1.5, 1.0, 0.5, 0.1] {
            let bound = theorem_bound(TheoremId::T1, &f, common::iv(0.0, b), &params, None).unwrap();
            assert!(bound <= last, "{text} at b={b}");
            last = bound;
        }
    }
}

#[test]
fn lemma_identities_on_corpus() {
    for text in common::FUNCTIONS {
        let f = spec(text);
        for iv in common::intervals() {
            let gap = signed_gap(&f, iv).unwrap();
            let l1 = lemma1_rhs(&f, iv, 1e-11).unwrap();
            let l2 = lemma2_rhs(&f, iv, 1e-9).unwrap();
            assert!((l1 - gap).abs() <= 1e-8, "{text} on {iv}: {l1} vs {gap}");
            assert!((l2 - gap).abs() <= 1e-6, "{text} on {iv}: {l2} vs {gap}");
        }
    }
}

#[test]
fn reduced_parameters_loosen_single_kernel_bound() {
    // m < 1 reads |f'| at b/m, so it needs a wider domain
    let f = FunctionSpec::parse("x^2", common::iv(0.0, 10.0)).unwrap();
    let iv = common::iv(0.0, 1.0);
    let full = theorem_bound(TheoremId::T1, &f, iv, &ConvexityParams::classical(), None).unwrap();
    let params = ConvexityParams::new(1.0, 1.0, 0.5, Default::default()).unwrap();
    let half = theorem_bound(TheoremId::T1, &f, iv, &params, None).unwrap();
    assert!(half >= full);
}
