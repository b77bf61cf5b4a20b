#![allow(dead_code)]

use hhkit_core::convexity::{ConvexityParams, Sense};
use hhkit_core::expr::FunctionSpec;
use hhkit_core::Interval;

/// Functions the bounds are exercised on, all defined on `[0, 3]`.
pub const FUNCTIONS: [&str; 5] = ["x^2", "x^4", "exp(x)", "exp(2*x)", "x^2 + 3*x"];

/// Extra expressions used by parser-level checks.
pub const EXPRESSIONS: [&str; 9] = [
    "x",
    "-(x^2)",
    "exp(x) - 1",
    "(1-x)^4",
    "-log(x)",
    "abs(x - 0.5) + 2",
    "x^-1 / (1 + x)",
    "2^x * log(x + 1)",
    "-x^2^0.5 * 3e-1",
];

pub const INTERVALS: [(f64, f64); 3] = [(0.0, 1.0), (0.0, 2.0), (1.0, 3.0)];

pub const HOLDER_P: [f64; 3] = [1.5, 2.0, 3.0];

pub fn domain() -> Interval<f64> {
    Interval::new(0.0, 3.0).unwrap()
}

pub fn spec(text: &str) -> FunctionSpec<f64> {
    FunctionSpec::parse(text, domain()).unwrap()
}

pub fn iv(a: f64, b: f64) -> Interval<f64> {
    Interval::new(a, b).unwrap()
}

pub fn intervals() -> impl Iterator<Item = Interval<f64>> {
    INTERVALS.iter().map(|&(a, b)| iv(a, b))
}

/// `(s, α, m)` triples of the soundness suite.
pub fn param_grid() -> Vec<ConvexityParams<f64>> {
    [(1.0, 1.0, 1.0), (0.5, 1.0, 1.0), (1.0, 0.5, 1.0), (0.75, 0.5, 1.0)]
        .into_iter()
        .map(|(s, a, m)| ConvexityParams::new(s, a, m, Sense::First).unwrap())
        .collect()
}
