//! Composite trapezoidal rule with a-priori error bounds.
//!
//! For a partition `a = x_0 < … < x_n = b` the trapezoid sum `S(f, D)` differs
//! from `∫f` by at most
//!
//! ```text
//! C(s, p) · Σ_k (x_{k+1} - x_k)² / 2 · (|f'(x_k)| + |f'(x_{k+1})|)
//! ```
//!
//! where `C` is one of two constants, [`BoundVariant::Single`] and
//! [`BoundVariant::Double`], coming from the single- and double-integral
//! kernels. Both constants multiply the same panel sum.

pub mod reference;

use std::fmt;

use crate::convexity::{self, ConvexityParams, Sense};
use crate::expr::FunctionSpec;
use crate::kernels::HolderExponents;
use crate::{Error, Interval, Real, Result};

/// Default cap on the number of uniform panels tried by
/// [`integrate_with_guarantee`].
pub const DEFAULT_MAX_PANELS: usize = 1 << 24;

/// Which a-priori constant to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundVariant {
    /// `2^(-1/p) · ((s·2^s + 1) / (2^s (s+1)(s+2)))^(1/q)`
    Single,
    /// `(2/3)^(1/p) · ((s² + 3s + 4) / ((s+1)(s+2)(s+3)))^(1/q)`
    Double,
}

impl BoundVariant {
    pub const ALL: [BoundVariant; 2] = [BoundVariant::Single, BoundVariant::Double];

    pub fn label(self) -> &'static str {
        match self {
            BoundVariant::Single => "P4",
            BoundVariant::Double => "P5",
        }
    }
}

impl fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Strictly increasing points `a = x_0 < … < x_n = b`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition<T> {
    points: Vec<T>,
}

impl<T: Real> Partition<T> {
    pub fn new(points: Vec<T>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::invalid("a partition needs at least two points"));
        }
        if points.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("partition points must be finite"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("partition points must be strictly increasing"));
        }
        Ok(Self { points })
    }

    /// `n` equal panels over `iv`; the last point is exactly `b`.
    pub fn uniform(iv: Interval<T>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a partition needs at least one panel"));
        }
        let nt = T::from_usize(n).unwrap();
        let mut points: Vec<T> = (0..n)
            .map(|k| iv.a() + iv.width() * T::from_usize(k).unwrap() / nt)
            .collect();
        points.push(iv.b());
        Self::new(points)
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn panels(&self) -> usize {
        self.points.len() - 1
    }

    pub fn interval(&self) -> Interval<T> {
        Interval::new(self.points[0], *self.points.last().unwrap())
            .expect("validated partition")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult<T> {
    /// Trapezoid sum `S(f, D)`.
    pub value: T,
    pub bound_p4: T,
    pub bound_p5: T,
    /// Number of uniform panels.
    pub n: usize,
    pub certified_tolerance: T,
    /// Whether sampling failed to refute s-convexity of `|f'|` on the interval.
    pub hypothesis_certified: bool,
}

impl<T: Real> QuadratureResult<T> {
    pub fn bound(&self) -> T {
        self.bound_p4.min(self.bound_p5)
    }
}

pub fn trapezoid_sum<T: Real>(f: &FunctionSpec<T>, partition: &Partition<T>) -> Result<T> {
    let two = T::lit(2.0);
    let values = partition
        .points()
        .iter()
        .map(|&x| f.eval(x))
        .collect::<Result<Vec<_>>>()?;
    let sum = partition
        .points()
        .windows(2)
        .zip(values.windows(2))
        .fold(T::zero(), |acc, (x, y)| acc + (y[0] + y[1]) / two * (x[1] - x[0]));
    Ok(sum)
}

/// `(s·2^s + 1) / (2^s (s+1)(s+2))`
pub fn single_kernel_weight<T: Real>(s: T) -> T {
    let two_s = T::lit(2.0).powf(s);
    (s * two_s + T::one()) / (two_s * (s + T::one()) * (s + T::lit(2.0)))
}

/// `(s² + 3s + 4) / ((s+1)(s+2)(s+3))`
pub fn double_kernel_weight<T: Real>(s: T) -> T {
    (s * s + T::lit(3.0) * s + T::lit(4.0))
        / ((s + T::one()) * (s + T::lit(2.0)) * (s + T::lit(3.0)))
}

fn check_s<T: Real>(s: T) -> Result<()> {
    if s > T::zero() && s <= T::one() {
        Ok(())
    } else {
        Err(Error::invalid(format!("s must lie in (0, 1], got {s}")))
    }
}

/// The constant multiplying the panel sum.
pub fn bound_constant<T: Real>(variant: BoundVariant, s: T, p: T) -> Result<T> {
    check_s(s)?;
    let hp = HolderExponents::new(p)?;
    let (inv_p, inv_q) = (hp.p().recip(), hp.q().recip());
    Ok(match variant {
        BoundVariant::Single => T::lit(2.0).powf(-inv_p) * single_kernel_weight(s).powf(inv_q),
        BoundVariant::Double => {
            (T::lit(2.0) / T::lit(3.0)).powf(inv_p) * double_kernel_weight(s).powf(inv_q)
        }
    })
}

/// `Σ_k (x_{k+1} - x_k)² / 2 · (|f'(x_k)| + |f'(x_{k+1})|)`
pub fn panel_derivative_sum<T: Real>(f: &FunctionSpec<T>, partition: &Partition<T>) -> Result<T> {
    let slopes = partition
        .points()
        .iter()
        .map(|&x| f.derivative(x).map(T::abs))
        .collect::<Result<Vec<_>>>()?;
    let two = T::lit(2.0);
    Ok(partition
        .points()
        .windows(2)
        .zip(slopes.windows(2))
        .fold(T::zero(), |acc, (x, d)| {
            let h = x[1] - x[0];
            acc + h * h / two * (d[0] + d[1])
        }))
}

pub fn trapezoid_error_bound<T: Real>(
    variant: BoundVariant,
    f: &FunctionSpec<T>,
    partition: &Partition<T>,
    s: T,
    p: T,
) -> Result<T> {
    let c = bound_constant(variant, s, p)?;
    Ok(c * panel_derivative_sum(f, partition)?)
}

/// Ground-truth integral of `f` over `iv` to absolute accuracy `tol`.
pub fn reference_integrate<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>, tol: T) -> Result<T> {
    reference::integrate(|x| f.eval(x), iv.a(), iv.b(), tol)
}

/// Panel sum of the uniform `n`-panel partition without materialising it.
fn uniform_panel_sum<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>, n: usize) -> Result<T> {
    let nt = T::from_usize(n).unwrap();
    let h = iv.width() / nt;
    let mut interior = T::zero();
    for k in 1..n {
        let x = iv.a() + iv.width() * T::from_usize(k).unwrap() / nt;
        interior = interior + f.derivative(x)?.abs();
    }
    let ends = f.derivative(iv.a())?.abs() + f.derivative(iv.b())?.abs();
    Ok(h * h / T::lit(2.0) * (ends + T::lit(2.0) * interior))
}

/// Smallest uniform partition whose a-priori bound meets `tol`.
///
/// Doubles `n` from 1 until `min(bound_p4, bound_p5) ≤ tol`, then bisects back
/// down. s-convexity of `|f'|` is checked by sampling; a refuted hypothesis is
/// recorded in the result rather than treated as an error.
pub fn integrate_with_guarantee<T: Real>(
    f: &FunctionSpec<T>,
    iv: Interval<T>,
    tol: T,
    s: T,
    p: T,
) -> Result<QuadratureResult<T>> {
    integrate_with_guarantee_capped(f, iv, tol, s, p, DEFAULT_MAX_PANELS)
}

pub fn integrate_with_guarantee_capped<T: Real>(
    f: &FunctionSpec<T>,
    iv: Interval<T>,
    tol: T,
    s: T,
    p: T,
    max_panels: usize,
) -> Result<QuadratureResult<T>> {
    if !(tol > T::zero()) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let c4 = bound_constant(BoundVariant::Single, s, p)?;
    let c5 = bound_constant(BoundVariant::Double, s, p)?;
    let c = c4.min(c5);

    let params = ConvexityParams::new(s, T::one(), T::one(), Sense::First)?;
    let hypothesis = convexity::certify(
        &f.derivative_power(T::one()),
        iv,
        &params,
        convexity::DEFAULT_GRID,
        T::lit(convexity::DEFAULT_TOLERANCE),
    )?;

    let meets = |n: usize| -> Result<bool> { Ok(c * uniform_panel_sum(f, iv, n)? <= tol) };

    let mut hi = 1usize;
    while !meets(hi)? {
        if hi >= max_panels {
            return Err(Error::PanelCapExceeded {
                cap: max_panels,
                tol: tol.as_f64(),
            });
        }
        hi = (hi * 2).min(max_panels);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if meets(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    let partition = Partition::uniform(iv, hi)?;
    let panel_sum = panel_derivative_sum(f, &partition)?;
    Ok(QuadratureResult {
        value: trapezoid_sum(f, &partition)?,
        bound_p4: c4 * panel_sum,
        bound_p5: c5 * panel_sum,
        n: hi,
        certified_tolerance: tol,
        hypothesis_certified: !hypothesis.is_falsified(),
    })
}
