//! Two-variable means and the inequalities between them.
//!
//! For `0 < a < b`:
//!
//! ```text
//! A = (a+b)/2      G = √(ab)      H = 2ab/(a+b)
//! L = (b-a) / (ln b - ln a)
//! I = (1/e) (b^b / a^a)^(1/(b-a))
//! L_p = [(b^(p+1) - a^(p+1)) / ((p+1)(b-a))]^(1/p),   p ∉ {-1, 0}
//! ```
//!
//! with `L_{-1} = L` and `L_0 = I`. All of them equal `a` when `a = b`, and
//! `H ≤ G ≤ L ≤ I ≤ A`.
//!
//! `L`, `I` and `L_p` are evaluated through `ln_1p`/`exp_m1` of `(b-a)/a`, so
//! they stay accurate as `b → a`.

use std::fmt;
use std::str::FromStr;

use crate::hhbounds::{BoundReport, CheckId, ReportInputs};
use crate::kernels::HolderExponents;
use crate::{Error, Real, Result};

/// Relative separation below which `a` and `b` are treated as equal.
pub const DIAGONAL_THRESHOLD: f64 = 1e-12;
/// Absolute slack in [`mean_chain_check`].
pub const CHAIN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
    Logarithmic,
    Identric,
    PLogarithmic,
}

impl MeanKind {
    pub const ALL: [MeanKind; 6] = [
        MeanKind::Arithmetic,
        MeanKind::Geometric,
        MeanKind::Harmonic,
        MeanKind::Logarithmic,
        MeanKind::Identric,
        MeanKind::PLogarithmic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeanKind::Arithmetic => "arithmetic",
            MeanKind::Geometric => "geometric",
            MeanKind::Harmonic => "harmonic",
            MeanKind::Logarithmic => "logarithmic",
            MeanKind::Identric => "identric",
            MeanKind::PLogarithmic => "p_logarithmic",
        }
    }
}

impl fmt::Display for MeanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MeanKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown mean `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanRequest<T> {
    pub kind: MeanKind,
    pub a: T,
    pub b: T,
    /// Order, required for [`MeanKind::PLogarithmic`].
    pub p: Option<T>,
}

fn ordered<T: Real>(a: T, b: T) -> Result<(T, T)> {
    if !(a > T::zero() && b > T::zero()) || !a.is_finite() || !b.is_finite() {
        return Err(Error::invalid(format!(
            "means need positive finite arguments, got ({a}, {b})"
        )));
    }
    Ok(if a <= b { (a, b) } else { (b, a) })
}

/// `(lo, hi, (hi - lo)/lo)`, or `None` when the pair is on the diagonal.
fn separated<T: Real>(a: T, b: T) -> Result<Option<(T, T, T)>> {
    let (lo, hi) = ordered(a, b)?;
    let d = hi - lo;
    if d <= T::lit(DIAGONAL_THRESHOLD) * lo {
        return Ok(None);
    }
    Ok(Some((lo, hi, d / lo)))
}

pub fn arithmetic<T: Real>(a: T, b: T) -> Result<T> {
    ordered(a, b)?;
    Ok((a + b) / T::lit(2.0))
}

pub fn geometric<T: Real>(a: T, b: T) -> Result<T> {
    ordered(a, b)?;
    Ok((a * b).sqrt())
}

pub fn harmonic<T: Real>(a: T, b: T) -> Result<T> {
    ordered(a, b)?;
    Ok(T::lit(2.0) * a * b / (a + b))
}

pub fn logarithmic<T: Real>(a: T, b: T) -> Result<T> {
    Ok(match separated(a, b)? {
        None => a.min(b),
        Some((lo, hi, r)) => (hi - lo) / r.ln_1p(),
    })
}

/// `ln I(a, b) = ln b - 1 + ln(1 + r)/r` with `r = (b - a)/a`.
fn ln_identric<T: Real>(hi: T, r: T) -> T {
    hi.ln() - T::one() + r.ln_1p() / r
}

pub fn identric<T: Real>(a: T, b: T) -> Result<T> {
    Ok(match separated(a, b)? {
        None => a.min(b),
        Some((_, hi, r)) => ln_identric(hi, r).exp(),
    })
}

/// `L_p` for `p ∉ {-1, 0}`.
pub fn p_logarithmic<T: Real>(a: T, b: T, p: T) -> Result<T> {
    if p == -T::one() || p == T::zero() || !p.is_finite() {
        return Err(Error::invalid(format!(
            "p-logarithmic mean needs finite p ∉ {{-1, 0}} (use L for -1, I for 0), got {p}"
        )));
    }
    Ok(match separated(a, b)? {
        None => a.min(b),
        Some((lo, _, r)) => {
            // (b^(p+1) - a^(p+1)) / ((p+1)(b-a)) = a^p · expm1((p+1) ln(1+r)) / ((p+1) r)
            let p1 = p + T::one();
            let ratio = (p1 * r.ln_1p()).exp_m1() / (p1 * r);
            lo * ratio.powf(p.recip())
        }
    })
}

/// `L_p` extended by `L_{-1} = L` and `L_0 = I`.
pub fn p_logarithmic_extended<T: Real>(a: T, b: T, p: T) -> Result<T> {
    if p == -T::one() {
        logarithmic(a, b)
    } else if p == T::zero() {
        identric(a, b)
    } else {
        p_logarithmic(a, b, p)
    }
}

pub fn mean<T: Real>(req: &MeanRequest<T>) -> Result<T> {
    let (a, b) = (req.a, req.b);
    match req.kind {
        MeanKind::Arithmetic => arithmetic(a, b),
        MeanKind::Geometric => geometric(a, b),
        MeanKind::Harmonic => harmonic(a, b),
        MeanKind::Logarithmic => logarithmic(a, b),
        MeanKind::Identric => identric(a, b),
        MeanKind::PLogarithmic => {
            let p = req
                .p
                .ok_or_else(|| Error::invalid("p-logarithmic mean needs p"))?;
            p_logarithmic(a, b, p)
        }
    }
}

/// The five classical means of one pair and whether they are ordered.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanChain<T> {
    pub harmonic: T,
    pub geometric: T,
    pub logarithmic: T,
    pub identric: T,
    pub arithmetic: T,
    /// `H ≤ G ≤ L ≤ I ≤ A` up to [`CHAIN_TOLERANCE`].
    pub holds: bool,
}

pub fn mean_chain_check<T: Real>(a: T, b: T) -> Result<MeanChain<T>> {
    let chain = [
        harmonic(a, b)?,
        geometric(a, b)?,
        logarithmic(a, b)?,
        identric(a, b)?,
        arithmetic(a, b)?,
    ];
    let tol = T::lit(CHAIN_TOLERANCE);
    let holds = chain.windows(2).all(|w| w[0] <= w[1] + tol);
    Ok(MeanChain {
        harmonic: chain[0],
        geometric: chain[1],
        logarithmic: chain[2],
        identric: chain[3],
        arithmetic: chain[4],
        holds,
    })
}

/// Mean inequalities obtained by specialising the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropositionId {
    /// `|A(a,b) - L(a,b)| ≤ (ln b - ln a)/(2 (p+1)^(1/p)) · A(a^q, b^q)^(1/q)`
    P1,
    /// `ln(I(a,b)/G(a,b)) ≤ (b-a)/2 · H(a^q, b^q)^(-1/q)`
    P2,
    /// `|A(a^n, b^n) - L_n(a,b)^n| ≤ |n|^q (b-a)/3 · A(a^(q(n-1)), b^(q(n-1)))`
    P3,
}

impl PropositionId {
    pub const ALL: [PropositionId; 3] = [PropositionId::P1, PropositionId::P2, PropositionId::P3];
}

impl fmt::Display for PropositionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for PropositionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropositionId::ALL
            .into_iter()
            .find(|t| t.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown proposition `{s}` (expected P1..P3)")))
    }
}

/// Evaluates both sides of a proposition exactly as stated.
///
/// `n` is required for [`PropositionId::P3`] and must satisfy `|n| ≥ 2`.
pub fn proposition_check<T: Real>(
    id: PropositionId,
    a: T,
    b: T,
    holder: &HolderExponents<T>,
    n: Option<i32>,
) -> Result<BoundReport<T>> {
    ordered(a, b)?;
    if a >= b {
        return Err(Error::invalid(format!("propositions need 0 < a < b, got ({a}, {b})")));
    }
    let (p, q) = (holder.p(), holder.q());
    let (one, two) = (T::one(), T::lit(2.0));
    let (lhs, rhs) = match id {
        PropositionId::P1 => {
            let lhs = (arithmetic(a, b)? - logarithmic(a, b)?).abs();
            let rhs = (b.ln() - a.ln()) / (two * (p + one).powf(p.recip()))
                * arithmetic(a.powf(q), b.powf(q))?.powf(q.recip());
            (lhs, rhs)
        }
        PropositionId::P2 => {
            let lhs = (identric(a, b)? / geometric(a, b)?).ln();
            let rhs = (b - a) / two * harmonic(a.powf(q), b.powf(q))?.powf(-q.recip());
            (lhs, rhs)
        }
        PropositionId::P3 => {
            let n = n.ok_or_else(|| Error::invalid("P3 needs an integer n"))?;
            if n.abs() < 2 {
                return Err(Error::invalid(format!("P3 needs |n| ≥ 2, got {n}")));
            }
            let nt = T::from_i32(n).unwrap();
            let lhs = (arithmetic(a.powi(n), b.powi(n))? - p_logarithmic(a, b, nt)?.powi(n)).abs();
            let e = q * (nt - one);
            let rhs = nt.abs().powf(q) * (b - a) / T::lit(3.0) * arithmetic(a.powf(e), b.powf(e))?;
            (lhs, rhs)
        }
    };
    Ok(BoundReport::new(
        CheckId::Proposition(id),
        lhs,
        rhs,
        None,
        ReportInputs::Proposition {
            a,
            b,
            holder: *holder,
            n: if id == PropositionId::P3 { n } else { None },
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn elementary_means() {
        assert_eq!(arithmetic(2.0, 8.0).unwrap(), 5.0);
        assert_eq!(geometric(2.0, 8.0).unwrap(), 4.0);
        assert_eq!(harmonic(2.0, 8.0).unwrap(), 3.2);
    }

    #[test]
    fn logarithmic_of_one_and_e() {
        assert!((logarithmic(1.0_f64, E).unwrap() - (E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn first_order_p_mean_is_arithmetic() {
        for (a, b) in [(0.5_f64, 3.0), (2.0, 8.0), (1.0, 1.0001)] {
            assert!((p_logarithmic(a, b, 1.0).unwrap() - arithmetic(a, b).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn identric_closed_form() {
        // I(2, 8) = 2^(22/6) / e
        let expected = 2f64.powf(22.0 / 6.0) / E;
        assert!((identric(2.0_f64, 8.0).unwrap() - expected).abs() < 1e-14);
        assert!((identric(2.0_f64, 8.0).unwrap() - 4.671_777_695_304_167).abs() < 1e-12);
    }

    #[test]
    fn chain_examples() {
        let c = mean_chain_check(2.0_f64, 8.0).unwrap();
        assert!(c.holds);
        assert!((c.logarithmic - 4.328_085_122_666_89).abs() < 1e-12);
        let c = mean_chain_check(3.0_f64, 3.0).unwrap();
        assert!(c.holds);
        for v in [c.harmonic, c.geometric, c.logarithmic, c.identric, c.arithmetic] {
            assert!((v - 3.0).abs() < 1e-15);
        }
        assert!(mean_chain_check(1.0, 100.0).unwrap().holds);
    }

    #[test]
    fn rejects_nonpositive_and_forbidden_orders() {
        assert!(arithmetic(0.0, 1.0).is_err());
        assert!(logarithmic(-1.0, 1.0).is_err());
        assert!(p_logarithmic(1.0, 2.0, 0.0).is_err());
        assert!(p_logarithmic(1.0, 2.0, -1.0).is_err());
        assert!(mean(&MeanRequest { kind: MeanKind::PLogarithmic, a: 1.0, b: 2.0, p: None }).is_err());
    }

    #[test]
    fn extended_order_hits_limits() {
        assert_eq!(p_logarithmic_extended(2.0, 5.0, -1.0).unwrap(), logarithmic(2.0, 5.0).unwrap());
        assert_eq!(p_logarithmic_extended(2.0, 5.0, 0.0).unwrap(), identric(2.0, 5.0).unwrap());
        // and the neighbouring orders approach them
        let near_zero = p_logarithmic(2.0_f64, 5.0, 1e-7).unwrap();
        assert!((near_zero - identric(2.0, 5.0).unwrap()).abs() < 1e-6);
        let near_minus_one = p_logarithmic(2.0_f64, 5.0, -1.0 + 1e-7).unwrap();
        assert!((near_minus_one - logarithmic(2.0, 5.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn symmetric_in_arguments() {
        for kind in MeanKind::ALL {
            let req = MeanRequest { kind, a: 1.5, b: 7.25, p: Some(2.5) };
            let swapped = MeanRequest { a: 7.25, b: 1.5, ..req };
            assert_eq!(mean(&req).unwrap(), mean(&swapped).unwrap(), "{kind}");
        }
    }

    #[test]
    fn p1_on_one_and_e() {
        let h = HolderExponents::new(2.0_f64).unwrap();
        let r = proposition_check(PropositionId::P1, 1.0, E, &h, None).unwrap();
        assert!(r.holds);
        assert!((r.lhs_gap - 0.140_859_085_770_477_4).abs() < 1e-13);
        assert!((r.rhs_bound - 0.591_222_465_846_918_3).abs() < 1e-13);
    }

    #[test]
    fn p1_near_diagonal() {
        let h = HolderExponents::new(2.0_f64).unwrap();
        let r = proposition_check(PropositionId::P1, 2.0_f64, 2.0001, &h, None).unwrap();
        assert!(r.holds);
        assert!(r.lhs_gap < 1e-4 && r.rhs_bound < 1e-4);
    }

    #[test]
    fn p3_square() {
        let h = HolderExponents::new(2.0_f64).unwrap();
        let r = proposition_check(PropositionId::P3, 1.0, 2.0, &h, Some(2)).unwrap();
        assert!((r.lhs_gap - 1.0 / 6.0).abs() < 1e-14);
        assert!((r.rhs_bound - 10.0 / 3.0).abs() < 1e-14);
        assert!(r.holds);
    }

    #[test]
    fn proposition_parameter_checks() {
        let h = HolderExponents::new(2.0_f64).unwrap();
        assert!(proposition_check(PropositionId::P1, 2.0, 1.0, &h, None).is_err());
        assert!(proposition_check(PropositionId::P3, 1.0, 2.0, &h, None).is_err());
        assert!(proposition_check(PropositionId::P3, 1.0, 2.0, &h, Some(1)).is_err());
        assert!(proposition_check(PropositionId::P2, 1.0, 2.0, &h, None).is_ok());
    }
}
