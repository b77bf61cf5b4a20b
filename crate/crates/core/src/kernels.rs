//! Closed-form weight integrals used by the six bounds, and their numeric
//! cross-check.
//!
//! All constants depend on `α` and `s` only through the product `αs`:
//!
//! ```text
//! v1 = ∫₀¹ t^(αs) |1-2t| dt          = (1 + 2^(αs)·αs) / (2^(αs) (αs+1)(αs+2))
//! u1 = ∫₀¹∫₀¹ t^(αs) |u-t| dt du     = ((αs)² + 3αs + 4) / (2 (αs+1)(αs+2)(αs+3))
//! v2 = m (1/2 - v1),   u2 = m (1/3 - u1)
//! ```

use std::fmt;

use crate::hhbounds::TheoremId;
use crate::quadrature::reference;
use crate::{Error, Real, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConstants<T> {
    pub v1: T,
    pub v2: T,
    pub u1: T,
    pub u2: T,
    pub alpha_s: T,
    pub m: T,
}

fn check_alpha_s<T: Real>(alpha_s: T) -> Result<()> {
    if alpha_s > T::zero() && alpha_s <= T::one() {
        Ok(())
    } else {
        Err(Error::invalid(format!("alpha*s must lie in (0, 1], got {alpha_s}")))
    }
}

/// `∫₀¹ t^a |1-2t| dt` in closed form.
pub fn v1<T: Real>(a: T) -> T {
    let two_a = T::lit(2.0).powf(a);
    (T::one() + two_a * a) / (two_a * (a + T::one()) * (a + T::lit(2.0)))
}

/// `∫₀¹∫₀¹ t^a |u-t| dt du` in closed form.
pub fn u1<T: Real>(a: T) -> T {
    (a * a + T::lit(3.0) * a + T::lit(4.0))
        / (T::lit(2.0) * (a + T::one()) * (a + T::lit(2.0)) * (a + T::lit(3.0)))
}

pub fn kernel_constants<T: Real>(alpha_s: T, m: T) -> Result<KernelConstants<T>> {
    check_alpha_s(alpha_s)?;
    if !(m >= T::zero() && m <= T::one()) {
        return Err(Error::invalid(format!("m must lie in [0, 1], got {m}")));
    }
    let v1 = v1(alpha_s);
    let u1 = u1(alpha_s);
    Ok(KernelConstants {
        v1,
        v2: m * (T::lit(0.5) - v1),
        u1,
        u2: m * (T::one() / T::lit(3.0) - u1),
        alpha_s,
        m,
    })
}

/// Conjugate Hölder pair with `p > 1` and `q = p / (p - 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderExponents<T> {
    p: T,
    q: T,
}

impl<T: Real> HolderExponents<T> {
    pub fn new(p: T) -> Result<Self> {
        if !(p > T::one()) || !p.is_finite() {
            return Err(Error::invalid(format!("Hölder exponent p must exceed 1, got {p}")));
        }
        Ok(Self {
            p,
            q: p / (p - T::one()),
        })
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        self.q
    }
}

impl<T: Real> fmt::Display for HolderExponents<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={}", self.p, self.q)
    }
}

/// `(∫₀¹ |1-2t|^p dt, ∫₀¹∫₀¹ |u-t|^p dt du) = (1/(1+p), 2/((p+1)(p+2)))`.
///
/// Accepts any `p > 0`, including `p = 1` for cross-checks.
pub fn holder_constants<T: Real>(p: T) -> Result<(T, T)> {
    if !(p > T::zero()) {
        return Err(Error::invalid(format!("p must be positive, got {p}")));
    }
    let c1 = T::one() / (T::one() + p);
    let c2 = T::lit(2.0) / ((p + T::one()) * (p + T::lit(2.0)));
    Ok((c1, c2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dimension {
    Single,
    Double,
}

/// The integrands whose closed forms the bounds rely on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Integrand {
    /// `t^(αs) |1-2t|`
    WeightedAbsLinear,
    /// `(1 - t^(αs)) |1-2t|`
    ComplementAbsLinear,
    /// `|1-2t|^p`
    PowerAbsLinear,
    /// `t^(αs) |u-t|`
    WeightedAbsDiff,
    /// `(1 - t^(αs)) |u-t|`
    ComplementAbsDiff,
    /// `|u-t|^p`
    PowerAbsDiff,
    /// `|u-t|`
    AbsDiff,
}

impl Integrand {
    pub fn dimension(self) -> Dimension {
        match self {
            Integrand::WeightedAbsLinear
            | Integrand::ComplementAbsLinear
            | Integrand::PowerAbsLinear => Dimension::Single,
            _ => Dimension::Double,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Integrand::WeightedAbsLinear => "t^as|1-2t|",
            Integrand::ComplementAbsLinear => "(1-t^as)|1-2t|",
            Integrand::PowerAbsLinear => "|1-2t|^p",
            Integrand::WeightedAbsDiff => "t^as|u-t|",
            Integrand::ComplementAbsDiff => "(1-t^as)|u-t|",
            Integrand::PowerAbsDiff => "|u-t|^p",
            Integrand::AbsDiff => "|u-t|",
        }
    }
}

/// Each identity the bounds use, tagged with the bound whose derivation needs
/// it. The single-kernel pair is used by both T1 and T3, and the double-kernel
/// pair by both T4 and T6; each use is checked on its own.
pub const IDENTITIES: [(Integrand, TheoremId); 11] = [
    (Integrand::WeightedAbsLinear, TheoremId::T1),
    (Integrand::ComplementAbsLinear, TheoremId::T1),
    (Integrand::PowerAbsLinear, TheoremId::T2),
    (Integrand::WeightedAbsLinear, TheoremId::T3),
    (Integrand::ComplementAbsLinear, TheoremId::T3),
    (Integrand::WeightedAbsDiff, TheoremId::T4),
    (Integrand::ComplementAbsDiff, TheoremId::T4),
    (Integrand::PowerAbsDiff, TheoremId::T5),
    (Integrand::AbsDiff, TheoremId::T6),
    (Integrand::WeightedAbsDiff, TheoremId::T6),
    (Integrand::ComplementAbsDiff, TheoremId::T6),
];

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck<T> {
    pub integrand: Integrand,
    pub used_by: TheoremId,
    pub numeric: T,
    pub closed_form: T,
    pub residual: T,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<T> {
    pub alpha_s: T,
    pub p: T,
    pub tolerance: T,
    pub checks: Vec<IdentityCheck<T>>,
}

impl<T: Real> IdentityReport<T> {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self, dim: Dimension) -> T {
        self.checks
            .iter()
            .filter(|c| c.integrand.dimension() == dim)
            .fold(T::zero(), |acc, c| acc.max(c.residual))
    }
}

/// Closed-form value of an integrand's integral over the unit interval/square.
pub fn closed_form<T: Real>(integrand: Integrand, alpha_s: T, p: T) -> Result<T> {
    let (c1, c2) = holder_constants(p)?;
    let k = kernel_constants(alpha_s, T::one())?;
    Ok(match integrand {
        Integrand::WeightedAbsLinear => k.v1,
        Integrand::ComplementAbsLinear => T::lit(0.5) - k.v1,
        Integrand::PowerAbsLinear => c1,
        Integrand::WeightedAbsDiff => k.u1,
        Integrand::ComplementAbsDiff => T::one() / T::lit(3.0) - k.u1,
        Integrand::PowerAbsDiff => c2,
        Integrand::AbsDiff => T::one() / T::lit(3.0),
    })
}

/// Integrates the defining integrand numerically. Single integrals are split
/// at the kink `t = 1/2`, double integrals along the diagonal `u = t`.
pub fn numeric_value<T: Real>(integrand: Integrand, alpha_s: T, p: T, tol: T) -> Result<T> {
    let half = [T::lit(0.5)];
    let one = T::one();
    let two = T::lit(2.0);
    let single = |g: &dyn Fn(T) -> T| {
        reference::integrate_with_breaks(|t| Ok(g(t)), T::zero(), one, &half, tol)
    };
    // t is the outer variable so its endpoint behaviour is refined by the
    // outer integrator
    let double = |g: &dyn Fn(T, T) -> T| {
        reference::integrate_unit_square(|t, u| Ok(g(t, u)), true, tol)
    };
    match integrand {
        Integrand::WeightedAbsLinear => single(&|t| t.powf(alpha_s) * (one - two * t).abs()),
        Integrand::ComplementAbsLinear => {
            single(&|t| (one - t.powf(alpha_s)) * (one - two * t).abs())
        }
        Integrand::PowerAbsLinear => single(&|t| (one - two * t).abs().powf(p)),
        Integrand::WeightedAbsDiff => double(&|t, u| t.powf(alpha_s) * (u - t).abs()),
        Integrand::ComplementAbsDiff => double(&|t, u| (one - t.powf(alpha_s)) * (u - t).abs()),
        Integrand::PowerAbsDiff => double(&|t, u| (u - t).abs().powf(p)),
        Integrand::AbsDiff => double(&|t, u| (u - t).abs()),
    }
}

/// Checks every identity in [`IDENTITIES`] against numeric quadrature.
///
/// Quadrature runs at `tol / 10`; failure to converge is returned as an error.
pub fn verify_kernel_identities<T: Real>(alpha_s: T, p: T, tol: T) -> Result<IdentityReport<T>> {
    check_alpha_s(alpha_s)?;
    if !(tol > T::zero()) {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let quad_tol = tol / T::lit(10.0);
    let checks = IDENTITIES
        .iter()
        .map(|&(integrand, used_by)| {
            let numeric = numeric_value(integrand, alpha_s, p, quad_tol)?;
            let closed_form = closed_form(integrand, alpha_s, p)?;
            let residual = (numeric - closed_form).abs();
            Ok(IdentityCheck {
                integrand,
                used_by,
                numeric,
                closed_form,
                residual,
                passed: residual <= tol,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport {
        alpha_s,
        p,
        tolerance: tol,
        checks,
    })
}
