//! The trapezoid gap `|(f(a) + f(b))/2 - (1/(b-a)) ∫ₐᵇ f|` and six upper
//! bounds on it.
//!
//! With `d1 = |f'(a)|`, `d2 = |f'(b/m)|`, `q = p/(p-1)` and the kernel
//! constants `v1, v2, u1, u2` for the product `αs`:
//!
//! ```text
//! T1  (b-a)/2 · [v1 d1 + v2 d2]
//! T2  (b-a)/(2 (p+1)^(1/p)) · [(d1^q + m αs d2^q) / (αs+1)]^(1/q)
//! T3  (b-a)/2^((p+1)/p) · [v1 d1^q + v2 d2^q]^(1/q)
//! T4  (b-a)/2 · [u1 d1 + u2 d2]
//! T5  (b-a) · [2/((p+1)(p+2))]^(1/p) · [(d1^q + m αs d2^q) / (αs+1)]^(1/q)
//! T6  (b-a)/3^(1/p) · [u1 d1^q + u2 d2^q]^(1/q)
//! ```
//!
//! T1 and T4 assume `|f'|` is s-(α,m)-convex (first sense); the others assume
//! the same of `|f'|^q`.

use std::fmt;
use std::str::FromStr;

use crate::convexity::{self, ConvexityParams, Sense};
use crate::expr::FunctionSpec;
use crate::kernels::{kernel_constants, HolderExponents};
use crate::means::PropositionId;
use crate::quadrature::{reference, reference_integrate};
use crate::{Error, Interval, Real, Result};

/// Absolute tolerance on `margin` below which an inequality counts as violated.
pub const VERIFY_TOLERANCE: f64 = 1e-9;
/// Accuracy requested from the reference integrator for gaps.
pub const GAP_QUADRATURE_TOLERANCE: f64 = 1e-12;
/// Tolerance on the classical two-sided inequality.
pub const CLASSICAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
    ];

    /// Whether the bound involves a Hölder pair.
    pub fn needs_holder(self) -> bool {
        !matches!(self, TheoremId::T1 | TheoremId::T4)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown theorem `{s}` (expected T1..T6)")))
    }
}

/// What a [`BoundReport`] checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    Theorem(TheoremId),
    Proposition(PropositionId),
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckId::Theorem(t) => t.fmt(f),
            CheckId::Proposition(p) => p.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReportInputs<T> {
    Theorem {
        function: String,
        interval: Interval<T>,
        params: ConvexityParams<T>,
        holder: Option<HolderExponents<T>>,
    },
    Proposition {
        a: T,
        b: T,
        holder: HolderExponents<T>,
        n: Option<i32>,
    },
}

impl<T: Real> ReportInputs<T> {
    /// Flattened `key=value` view, in a fixed order.
    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        match self {
            ReportInputs::Theorem {
                function,
                interval,
                params,
                holder,
            } => {
                let mut v = vec![
                    ("function", function.clone()),
                    ("interval", interval.to_string()),
                    ("s", params.s().to_string()),
                    ("alpha", params.alpha().to_string()),
                    ("m", params.m().to_string()),
                    ("sense", params.sense().to_string()),
                ];
                if let Some(h) = holder {
                    v.push(("p", h.p().to_string()));
                }
                v
            }
            ReportInputs::Proposition { a, b, holder, n } => {
                let mut v = vec![
                    ("a", a.to_string()),
                    ("b", b.to_string()),
                    ("p", holder.p().to_string()),
                ];
                if let Some(n) = n {
                    v.push(("n", n.to_string()));
                }
                v
            }
        }
    }
}

/// Outcome of checking one inequality `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub check: CheckId,
    pub lhs_gap: T,
    pub rhs_bound: T,
    /// `rhs_bound - lhs_gap`
    pub margin: T,
    pub holds: bool,
    /// Result of sampling the convexity hypothesis; `None` where the
    /// hypothesis is a parameter condition rather than a property of `f`.
    pub hypothesis_certified: Option<bool>,
    pub inputs: ReportInputs<T>,
}

impl<T: Real> BoundReport<T> {
    pub(crate) fn new(
        check: CheckId,
        lhs_gap: T,
        rhs_bound: T,
        hypothesis_certified: Option<bool>,
        inputs: ReportInputs<T>,
    ) -> Self {
        let margin = rhs_bound - lhs_gap;
        Self {
            check,
            lhs_gap,
            rhs_bound,
            margin,
            holds: margin >= -T::lit(VERIFY_TOLERANCE),
            hypothesis_certified,
            inputs,
        }
    }
}

fn check_inside<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>) -> Result<()> {
    if f.domain().contains_interval(&iv) {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "interval [{iv}] is not inside the domain [{}] of `{}`",
            f.domain(),
            f.text()
        )))
    }
}

/// `(f(a) + f(b))/2 - (1/(b-a)) ∫ₐᵇ f`, before taking the absolute value.
pub fn signed_gap<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>) -> Result<T> {
    check_inside(f, iv)?;
    let integral = reference_integrate(f, iv, T::lit(GAP_QUADRATURE_TOLERANCE))?;
    let ends = (f.eval(iv.a())? + f.eval(iv.b())?) / T::lit(2.0);
    Ok(ends - integral / iv.width())
}

pub fn hh_gap<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>) -> Result<T> {
    signed_gap(f, iv).map(T::abs)
}

/// The three quantities of the classical two-sided inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalCheck<T> {
    pub midpoint_value: T,
    pub mean_value: T,
    pub endpoint_average: T,
    /// `f((a+b)/2) ≤ mean`
    pub left_ok: bool,
    /// `mean ≤ (f(a) + f(b))/2`
    pub right_ok: bool,
}

pub fn classical_hh_check<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>) -> Result<ClassicalCheck<T>> {
    check_inside(f, iv)?;
    let integral = reference_integrate(f, iv, T::lit(GAP_QUADRATURE_TOLERANCE))?;
    let mean_value = integral / iv.width();
    let midpoint_value = f.eval(iv.midpoint())?;
    let endpoint_average = (f.eval(iv.a())? + f.eval(iv.b())?) / T::lit(2.0);
    let tol = T::lit(CLASSICAL_TOLERANCE);
    Ok(ClassicalCheck {
        midpoint_value,
        mean_value,
        endpoint_average,
        left_ok: midpoint_value <= mean_value + tol,
        right_ok: mean_value <= endpoint_average + tol,
    })
}

/// Evaluates the right-hand side of theorem `id`.
pub fn theorem_bound<T: Real>(
    id: TheoremId,
    f: &FunctionSpec<T>,
    iv: Interval<T>,
    params: &ConvexityParams<T>,
    holder: Option<&HolderExponents<T>>,
) -> Result<T> {
    let m = params.m();
    if m == T::zero() {
        return Err(Error::invalid("m = 0 leaves f'(b/m) undefined"));
    }
    let holder = match (id.needs_holder(), holder) {
        (true, None) => {
            return Err(Error::invalid(format!("{id} needs a Hölder exponent p")))
        }
        (_, h) => h,
    };
    check_inside(f, iv)?;

    let k = kernel_constants(params.alpha_s(), m)?;
    let d1 = f.derivative(iv.a())?.abs();
    let d2 = f.derivative(iv.b() / m)?.abs();
    let width = iv.width();
    let (one, two, three) = (T::one(), T::lit(2.0), T::lit(3.0));
    let alpha_s = k.alpha_s;

    if let Some(h) = holder {
        let (p, q) = (h.p(), h.q());
        let (inv_p, inv_q) = (p.recip(), q.recip());
        let (d1q, d2q) = (d1.powf(q), d2.powf(q));
        let averaged = ((d1q + m * alpha_s * d2q) / (alpha_s + one)).powf(inv_q);
        return Ok(match id {
            TheoremId::T2 => width / (two * (p + one).powf(inv_p)) * averaged,
            TheoremId::T3 => {
                width / two.powf((p + one) / p) * (k.v1 * d1q + k.v2 * d2q).powf(inv_q)
            }
            TheoremId::T5 => {
                width * (two / ((p + one) * (p + two))).powf(inv_p) * averaged
            }
            TheoremId::T6 => width / three.powf(inv_p) * (k.u1 * d1q + k.u2 * d2q).powf(inv_q),
            TheoremId::T1 | TheoremId::T4 => linear_bound(id, width, &k, d1, d2),
        });
    }
    Ok(linear_bound(id, width, &k, d1, d2))
}

fn linear_bound<T: Real>(
    id: TheoremId,
    width: T,
    k: &crate::kernels::KernelConstants<T>,
    d1: T,
    d2: T,
) -> T {
    let half = width / T::lit(2.0);
    match id {
        TheoremId::T4 => half * (k.u1 * d1 + k.u2 * d2),
        _ => half * (k.v1 * d1 + k.v2 * d2),
    }
}

/// Sampling and tolerance settings for [`verify_theorem_with`].
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions<T> {
    pub grid_n: usize,
    pub certify_tolerance: T,
}

impl<T: Real> Default for VerifyOptions<T> {
    fn default() -> Self {
        Self {
            grid_n: convexity::DEFAULT_GRID,
            certify_tolerance: T::lit(convexity::DEFAULT_TOLERANCE),
        }
    }
}

pub fn verify_theorem<T: Real>(
    id: TheoremId,
    f: &FunctionSpec<T>,
    iv: Interval<T>,
    params: &ConvexityParams<T>,
    holder: Option<&HolderExponents<T>>,
) -> Result<BoundReport<T>> {
    verify_theorem_with(id, f, iv, params, holder, &VerifyOptions::default())
}

/// Samples the convexity hypothesis, computes gap and bound, and reports the
/// margin. The hypothesis is sampled in the first sense, which is the form the
/// bounds are derived from; second-sense parameters are rejected.
pub fn verify_theorem_with<T: Real>(
    id: TheoremId,
    f: &FunctionSpec<T>,
    iv: Interval<T>,
    params: &ConvexityParams<T>,
    holder: Option<&HolderExponents<T>>,
    options: &VerifyOptions<T>,
) -> Result<BoundReport<T>> {
    if params.sense() != Sense::First {
        return Err(Error::invalid(
            "theorem hypotheses are checked in the first sense only",
        ));
    }
    let rhs = theorem_bound(id, f, iv, params, holder)?;
    let holder = if id.needs_holder() { holder.copied() } else { None };
    let power = holder.map_or(T::one(), |h| h.q());
    let hypothesis = convexity::certify(
        &f.derivative_power(power),
        iv,
        params,
        options.grid_n,
        options.certify_tolerance,
    )?;
    let lhs = hh_gap(f, iv)?;
    Ok(BoundReport::new(
        CheckId::Theorem(id),
        lhs,
        rhs,
        Some(!hypothesis.is_falsified()),
        ReportInputs::Theorem {
            function: f.text().to_string(),
            interval: iv,
            params: *params,
            holder,
        },
    ))
}

/// `(b-a)/2 · ∫₀¹ (1-2t) f'(ta + (1-t)b) dt`, evaluated numerically.
pub fn lemma1_rhs<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>, tol: T) -> Result<T> {
    check_inside(f, iv)?;
    let (a, b) = (iv.a(), iv.b());
    let one = T::one();
    let integral = reference::integrate(
        |t| Ok((one - T::lit(2.0) * t) * f.derivative(t * a + (one - t) * b)?),
        T::zero(),
        one,
        tol,
    )?;
    Ok(iv.width() / T::lit(2.0) * integral)
}

/// `(b-a)/2 · ∫₀¹∫₀¹ (f'(ta + (1-t)b) - f'(ua + (1-u)b)) (u-t) dt du`,
/// evaluated numerically.
pub fn lemma2_rhs<T: Real>(f: &FunctionSpec<T>, iv: Interval<T>, tol: T) -> Result<T> {
    check_inside(f, iv)?;
    let (a, b) = (iv.a(), iv.b());
    let one = T::one();
    let point = move |t: T| t * a + (one - t) * b;
    let integral = reference::integrate_unit_square(
        |u, t| Ok((f.derivative(point(t))? - f.derivative(point(u))?) * (u - t)),
        false,
        tol,
    )?;
    Ok(iv.width() / T::lit(2.0) * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn unit() -> Interval<f64> {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn spec(text: &str) -> FunctionSpec<f64> {
        FunctionSpec::parse(text, Interval::new(-1.0, 6.0).unwrap()).unwrap()
    }

    fn classical() -> ConvexityParams<f64> {
        ConvexityParams::classical()
    }

    #[test]
    fn gap_examples() {
        assert!((hh_gap(&spec("x^2"), unit()).unwrap() - 1.0 / 6.0).abs() < 1e-13);
        let iv = Interval::new(-0.5, 3.7).unwrap();
        assert!(hh_gap(&spec("x"), iv).unwrap() < 1e-13);
        let expected = (1.0 + E) / 2.0 - (E - 1.0);
        assert!((hh_gap(&spec("exp(x)"), unit()).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn classical_examples() {
        let c = classical_hh_check(&spec("x^2"), unit()).unwrap();
        assert!(c.left_ok && c.right_ok);
        assert!((c.midpoint_value - 0.25).abs() < 1e-15);
        assert!((c.mean_value - 1.0 / 3.0).abs() < 1e-13);
        assert!((c.endpoint_average - 0.5).abs() < 1e-15);

        let c = classical_hh_check(&spec("x"), Interval::new(2.0, 5.0).unwrap()).unwrap();
        assert!(c.left_ok && c.right_ok);
        assert!((c.midpoint_value - c.mean_value).abs() < 1e-12);
        assert!((c.endpoint_average - c.mean_value).abs() < 1e-12);

        let c = classical_hh_check(&spec("exp(x)"), Interval::new(0.0, 2.0).unwrap()).unwrap();
        assert!(c.left_ok && c.right_ok);

        let c = classical_hh_check(&spec("-(x^2)"), unit()).unwrap();
        assert!(!c.left_ok && !c.right_ok);
    }

    #[test]
    fn t1_on_parabola() {
        let b = theorem_bound(TheoremId::T1, &spec("x^2"), unit(), &classical(), None).unwrap();
        assert!((b - 0.25).abs() < 1e-15);
    }

    #[test]
    fn t4_is_tight_on_parabola() {
        let b = theorem_bound(TheoremId::T4, &spec("x^2"), unit(), &classical(), None).unwrap();
        assert!((b - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn t2_on_exponential() {
        let h = HolderExponents::new(2.0).unwrap();
        let b = theorem_bound(TheoremId::T2, &spec("exp(x)"), unit(), &classical(), Some(&h)).unwrap();
        let expected = 1.0 / (2.0 * 3f64.sqrt()) * ((1.0 + E * E) / 2.0).sqrt();
        assert!((b - expected).abs() < 1e-15);
        assert!((b - 0.591_222_465_846_918_3).abs() < 1e-12);
    }

    #[test]
    fn t6_on_exponential() {
        // frozen from direct evaluation in 30-digit arithmetic
        let h = HolderExponents::new(2.0).unwrap();
        let b = theorem_bound(TheoremId::T6, &spec("exp(x)"), unit(), &classical(), Some(&h)).unwrap();
        assert!((b - 0.682_684_899_615_345_2).abs() < 1e-12);
    }

    #[test]
    fn bound_errors() {
        let f = spec("x^2");
        let m0 = ConvexityParams::new(1.0, 1.0, 0.0, Sense::First).unwrap();
        assert!(theorem_bound(TheoremId::T1, &f, unit(), &m0, None).is_err());
        assert!(theorem_bound(TheoremId::T2, &f, unit(), &classical(), None).is_err());
        // b/m = 10 leaves the domain [-1, 6]
        let m_small = ConvexityParams::new(1.0, 1.0, 0.1, Sense::First).unwrap();
        assert!(matches!(
            theorem_bound(TheoremId::T1, &f, unit(), &m_small, None),
            Err(Error::OutsideDomain { .. })
        ));
        let m_half = ConvexityParams::new(1.0, 1.0, 0.5, Sense::First).unwrap();
        let b = theorem_bound(TheoremId::T1, &f, unit(), &m_half, None).unwrap();
        // d2 = |f'(2)| = 4, v2 = 0.5 · 0.25
        assert!((b - 0.5 * (0.25 * 0.0 + 0.125 * 4.0)).abs() < 1e-15);
    }

    #[test]
    fn verify_parabola_t1_and_t4() {
        let r = verify_theorem(TheoremId::T1, &spec("x^2"), unit(), &classical(), None).unwrap();
        assert!(r.holds);
        assert_eq!(r.hypothesis_certified, Some(true));
        assert!((r.margin - 1.0 / 12.0).abs() < 1e-12);

        let r = verify_theorem(TheoremId::T4, &spec("x^2"), unit(), &classical(), None).unwrap();
        assert!(r.holds);
        assert!(r.margin.abs() < 1e-12);
    }

    #[test]
    fn verify_exponential_t6() {
        let h = HolderExponents::new(2.0).unwrap();
        let r = verify_theorem(TheoremId::T6, &spec("exp(x)"), unit(), &classical(), Some(&h)).unwrap();
        assert!(r.holds);
        assert_eq!(r.hypothesis_certified, Some(true));
        assert!((r.lhs_gap - 0.140_859_085_770_477_4).abs() < 1e-12);
    }

    #[test]
    fn verify_rejects_second_sense() {
        let p = classical().with_sense(Sense::Second);
        assert!(verify_theorem(TheoremId::T1, &spec("x^2"), unit(), &p, None).is_err());
    }

    #[test]
    fn holder_ignored_by_linear_bounds() {
        let h = HolderExponents::new(3.0).unwrap();
        let r = verify_theorem(TheoremId::T1, &spec("x^2"), unit(), &classical(), Some(&h)).unwrap();
        assert!(matches!(r.inputs, ReportInputs::Theorem { holder: None, .. }));
    }

    #[test]
    fn lemma_identities_on_exponential() {
        let f = spec("exp(x)");
        let iv = Interval::new(0.0, 2.0).unwrap();
        let gap = signed_gap(&f, iv).unwrap();
        assert!((lemma1_rhs(&f, iv, 1e-12).unwrap() - gap).abs() < 1e-10);
        assert!((lemma2_rhs(&f, iv, 1e-10).unwrap() - gap).abs() < 1e-8);
    }

    #[test]
    fn theorem_ids_parse() {
        assert_eq!("t3".parse::<TheoremId>().unwrap(), TheoremId::T3);
        assert!("T7".parse::<TheoremId>().is_err());
    }
}
