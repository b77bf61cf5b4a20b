//! Generalized convexity classes and sampling-based falsification.
//!
//! A function `f` is s-(α,m)-convex when, for all `x, y` and `μ ∈ [0, 1]`,
//!
//! ```text
//! first sense:  f(μx + (1-μ)y) ≤ μ^(αs) f(x) + m (1 - μ^(αs)) f(y/m)
//! second sense: f(μx + (1-μ)y) ≤ μ^(αs) f(x) + m (1 - μ^α)^s  f(y/m)
//! ```
//!
//! The combination argument carries no `m`. For `m = 0` the second term is
//! taken to be zero. [`certify`] can only ever refute membership: a
//! `NotFalsified` verdict means no lattice sample violated the inequality.

use std::fmt;

use crate::expr::RealFunction;
use crate::{Error, Interval, Real, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_GRID: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sense {
    #[default]
    First,
    Second,
}

impl fmt::Display for Sense {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sense::First => "first",
            Sense::Second => "second",
        })
    }
}

impl std::str::FromStr for Sense {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" | "1" => Ok(Sense::First),
            "second" | "2" => Ok(Sense::Second),
            other => Err(Error::invalid(format!(
                "sense must be `first` or `second`, got `{other}`"
            ))),
        }
    }
}

/// Selects one class: `0 < s ≤ 1`, `0 ≤ α ≤ 1`, `0 ≤ m ≤ 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexityParams<T> {
    s: T,
    alpha: T,
    m: T,
    sense: Sense,
}

impl<T: Real> ConvexityParams<T> {
    pub fn new(s: T, alpha: T, m: T, sense: Sense) -> Result<Self> {
        let (zero, one) = (T::zero(), T::one());
        if !(s > zero && s <= one) {
            return Err(Error::invalid(format!("s must lie in (0, 1], got {s}")));
        }
        if !(alpha >= zero && alpha <= one) {
            return Err(Error::invalid(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        if !(m >= zero && m <= one) {
            return Err(Error::invalid(format!("m must lie in [0, 1], got {m}")));
        }
        Ok(Self { s, alpha, m, sense })
    }

    /// Ordinary convexity: `(s, α, m) = (1, 1, 1)`, first sense.
    pub fn classical() -> Self {
        Self {
            s: T::one(),
            alpha: T::one(),
            m: T::one(),
            sense: Sense::First,
        }
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn alpha_s(&self) -> T {
        self.alpha * self.s
    }

    pub fn with_sense(self, sense: Sense) -> Self {
        Self { sense, ..self }
    }

    /// Weights `(w_x, w_y)` multiplying `f(x)` and `f(y/m)` at `mu`.
    pub fn weights(&self, mu: T) -> (T, T) {
        let lead = mu.powf(self.alpha_s());
        let tail = if self.m == T::zero() {
            T::zero()
        } else {
            match self.sense {
                Sense::First => self.m * (T::one() - lead),
                Sense::Second => self.m * (T::one() - mu.powf(self.alpha)).powf(self.s),
            }
        };
        (lead, tail)
    }
}

impl<T: Real> fmt::Display for ConvexityParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} alpha={} m={} sense={}",
            self.s, self.alpha, self.m, self.sense
        )
    }
}

/// Right-hand side of the class inequality for given function values.
pub fn generalized_combination_rhs<T: Real>(
    params: &ConvexityParams<T>,
    f_at_x: T,
    f_at_y_over_m: T,
    mu: T,
) -> Result<T> {
    if f_at_x.is_nan() || f_at_y_over_m.is_nan() || mu.is_nan() {
        return Err(Error::invalid("NaN input to convexity combination"));
    }
    if !(mu >= T::zero() && mu <= T::one()) {
        return Err(Error::invalid(format!("mu must lie in [0, 1], got {mu}")));
    }
    let (wx, wy) = params.weights(mu);
    if wy == T::zero() {
        // keeps the m = 0 convention well defined for infinite f(y/m)
        return Ok(wx * f_at_x);
    }
    Ok(wx * f_at_x + wy * f_at_y_over_m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotFalsified,
    Falsified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotFalsified => "not_falsified",
            Verdict::Falsified => "falsified",
        })
    }
}

/// One `(x, y, μ)` lattice sample with both sides of the class inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample<T> {
    pub x: T,
    pub y: T,
    pub mu: T,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport<T> {
    pub samples_checked: usize,
    /// Minimum of `rhs - lhs` over all samples.
    pub worst_margin: T,
    /// Minimum of `(rhs - lhs) / max(1, |lhs|, |each rhs term|)`; this is what
    /// the tolerance is compared against, so that rounding in large values is
    /// not mistaken for a violation.
    pub worst_relative_margin: T,
    /// Sample attaining `worst_relative_margin` (first in `(x, y, μ)` lattice
    /// order on ties).
    pub worst_sample: Sample<T>,
    /// `worst_sample` when it violates the inequality beyond the tolerance.
    pub counterexample: Option<Sample<T>>,
    pub verdict: Verdict,
}

impl<T: Real> CertificationReport<T> {
    pub fn is_falsified(&self) -> bool {
        self.verdict == Verdict::Falsified
    }
}

/// Samples the class inequality on a `grid_n³` lattice of `(x, y, μ)` with
/// `x, y` evenly spaced over `interval` and `μ` over `[0, 1]`.
///
/// A sample violates the inequality when its margin, relative to the larger
/// of 1 and the magnitudes of the terms compared, is below `-tolerance`.
///
/// `f(y/m)` must be defined for every sampled `y` when `0 < m < 1`.
pub fn certify<T: Real, F: RealFunction<T> + ?Sized>(
    f: &F,
    interval: Interval<T>,
    params: &ConvexityParams<T>,
    grid_n: usize,
    tolerance: T,
) -> Result<CertificationReport<T>> {
    if grid_n < 2 {
        return Err(Error::invalid("certification grid needs at least 2 points"));
    }
    if !(tolerance >= T::zero()) {
        return Err(Error::invalid("tolerance must be nonnegative"));
    }
    if !f.domain().contains_interval(&interval) {
        return Err(Error::invalid(format!(
            "interval [{interval}] is not inside the function domain [{}]",
            f.domain()
        )));
    }

    let xs = interval.linspace(grid_n);
    let mus = Interval::new(T::zero(), T::one())?.linspace(grid_n);
    let fx = xs.iter().map(|&x| f.value(x)).collect::<Result<Vec<_>>>()?;
    let m = params.m();
    let fy_over_m = if m == T::zero() {
        vec![T::zero(); grid_n]
    } else {
        xs.iter().map(|&y| f.value(y / m)).collect::<Result<Vec<_>>>()?
    };
    let weights: Vec<(T, T)> = mus.iter().map(|&mu| params.weights(mu)).collect();

    let mut worst = T::infinity();
    let mut worst_relative = T::infinity();
    let mut worst_sample = None;
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in xs.iter().enumerate() {
            for (k, &mu) in mus.iter().enumerate() {
                let z = (mu * x + (T::one() - mu) * y).max(interval.a()).min(interval.b());
                let lhs = f.value(z)?;
                let (wx, wy) = weights[k];
                let tx = wx * fx[i];
                let ty = if wy == T::zero() { T::zero() } else { wy * fy_over_m[j] };
                let rhs = tx + ty;
                let margin = rhs - lhs;
                let scale = T::one().max(lhs.abs()).max(tx.abs()).max(ty.abs());
                let relative = margin / scale;
                worst = worst.min(margin);
                if relative < worst_relative || worst_sample.is_none() {
                    worst_relative = relative;
                    worst_sample = Some(Sample { x, y, mu, lhs, rhs });
                }
            }
        }
    }

    let worst_sample = worst_sample.expect("lattice is nonempty");
    let falsified = worst_relative < -tolerance;
    Ok(CertificationReport {
        samples_checked: grid_n * grid_n * grid_n,
        worst_margin: worst,
        worst_relative_margin: worst_relative,
        worst_sample,
        counterexample: falsified.then_some(worst_sample),
        verdict: if falsified {
            Verdict::Falsified
        } else {
            Verdict::NotFalsified
        },
    })
}
