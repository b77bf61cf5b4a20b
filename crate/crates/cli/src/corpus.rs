//! Functions, intervals and parameters exercised by `suite`.

use hhkit_core::convexity::{ConvexityParams, Sense};
use hhkit_core::expr::FunctionSpec;
use hhkit_core::Interval;

/// Each entry is convex with nondecreasing `|f'|` on [`DOMAIN`].
pub const FUNCTIONS: [&str; 5] = ["x^2", "x^4", "exp(x)", "exp(2*x)", "x^2 + 3*x"];

pub const DOMAIN: (f64, f64) = (0.0, 3.0);

pub const INTERVALS: [(f64, f64); 3] = [(0.0, 1.0), (0.0, 2.0), (1.0, 3.0)];

/// `(s, α, m)`
pub const PARAMS: [(f64, f64, f64); 4] =
    [(1.0, 1.0, 1.0), (0.5, 1.0, 1.0), (1.0, 0.5, 1.0), (0.75, 0.5, 1.0)];

pub const HOLDER_P: [f64; 3] = [1.5, 2.0, 3.0];

/// Products `αs` at which the kernel identities are checked.
pub fn alpha_s_grid() -> impl Iterator<Item = f64> {
    (1..=20).map(|i| i as f64 / 20.0)
}

pub const MEAN_PAIRS: [(f64, f64); 3] = [(1.0, std::f64::consts::E), (2.0, 8.0), (0.5, 1.5)];

/// Orders over which `L_p` must be nondecreasing, `-1` and `0` meaning `L`
/// and `I`.
pub const P_ORDERS: [f64; 9] = [-3.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0];

pub const P3_ORDERS: [i32; 3] = [2, 3, -2];

pub const PANELS: [usize; 6] = [1, 2, 4, 8, 16, 64];

pub const GUARANTEE_TOLS: [f64; 2] = [1e-2, 1e-4];

pub const RANDOM_PAIRS: usize = 1000;
pub const RANDOM_PAIR_MAX: f64 = 100.0;

pub fn domain() -> Interval<f64> {
    Interval::new(DOMAIN.0, DOMAIN.1).expect("valid domain")
}

pub fn function(text: &str) -> FunctionSpec<f64> {
    FunctionSpec::parse(text, domain()).expect("corpus function parses")
}

pub fn intervals() -> impl Iterator<Item = Interval<f64>> {
    INTERVALS
        .iter()
        .map(|&(a, b)| Interval::new(a, b).expect("valid interval"))
}

pub fn params() -> impl Iterator<Item = ConvexityParams<f64>> {
    PARAMS.iter().map(|&(s, alpha, m)| {
        ConvexityParams::new(s, alpha, m, Sense::First).expect("valid parameters")
    })
}
