//! Numerical verification toolkit for Hermite–Hadamard type inequalities.
//!
//! The crate is organised bottom-up:
//!
//! * [`expr`] parses one-variable expressions and evaluates them together with
//!   their exact first derivative through forward-mode dual numbers.
//! * [`convexity`] describes the s-(α,m)-convex classes and searches a sampling
//!   lattice for counterexamples to class membership.
//! * [`kernels`] holds the closed-form weight integrals the bounds are built
//!   from, plus a numeric cross-check of each of them.
//! * [`hhbounds`] evaluates the trapezoid gap and the six upper bounds on it.
//! * [`means`] implements the classical two-variable means and the
//!   inequalities between them that follow from the bounds.
//! * [`quadrature`] provides the composite trapezoidal rule with a-priori
//!   error bounds and an independent adaptive Gauss–Kronrod reference.
//!
//! Everything is generic over a floating-point scalar implementing [`Real`]
//! (`f32` and `f64`). Aliases fixed to `f64` are exported at the crate root
//! for the common case.

// `!(x > y)` is used deliberately so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convexity;
pub mod error;
pub mod expr;
pub mod hhbounds;
pub mod interval;
pub mod kernels;
pub mod means;
pub mod quadrature;

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

pub use error::{Error, Result};
pub use interval::Interval;

/// Floating-point scalar used throughout the crate.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(value: f64) -> Self {
        // f64 -> f32/f64 conversions never fail (they may round).
        Self::from_f64(value).expect("f64 literal representable")
    }

    /// Lossy conversion for diagnostics and reports.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

pub type Interval64 = Interval<f64>;
pub type Expr64 = expr::Expr<f64>;
pub type Dual32 = expr::Dual<f32>;
pub type Dual64 = expr::Dual<f64>;
pub type FunctionSpec64 = expr::FunctionSpec<f64>;
pub type ConvexityParams64 = convexity::ConvexityParams<f64>;
pub type CertificationReport64 = convexity::CertificationReport<f64>;
pub type KernelConstants64 = kernels::KernelConstants<f64>;
pub type HolderExponents64 = kernels::HolderExponents<f64>;
pub type IdentityReport64 = kernels::IdentityReport<f64>;
pub type BoundReport64 = hhbounds::BoundReport<f64>;
pub type Partition64 = quadrature::Partition<f64>;
pub type QuadratureResult64 = quadrature::QuadratureResult<f64>;
