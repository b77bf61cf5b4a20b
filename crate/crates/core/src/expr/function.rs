use crate::{Error, Interval, Real, Result};

use super::{parse, Dual, Expr};

/// Number of points sampled across the domain when a [`FunctionSpec`] is built.
const DOMAIN_SAMPLES: usize = 129;

/// A scalar function of one variable restricted to a closed domain.
pub trait RealFunction<T: Real> {
    fn value(&self, x: T) -> Result<T>;
    fn domain(&self) -> Interval<T>;
}

/// A parsed expression together with the interval it is evaluated on.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec<T> {
    text: String,
    body: Expr<T>,
    domain: Interval<T>,
}

impl<T: Real> FunctionSpec<T> {
    /// Parses `text` and checks that it is finite on a sample grid of `domain`.
    pub fn parse(text: &str, domain: Interval<T>) -> Result<Self> {
        let body = parse(text)?;
        Self::from_expr(text.trim().to_string(), body, domain)
    }

    pub fn from_expr(text: String, body: Expr<T>, domain: Interval<T>) -> Result<Self> {
        for x in domain.linspace(DOMAIN_SAMPLES) {
            body.eval(x).map_err(|e| {
                Error::invalid(format!("`{text}` is not finite on [{domain}]: {e}"))
            })?;
        }
        Ok(Self { text, body, domain })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn body(&self) -> &Expr<T> {
        &self.body
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    fn check(&self, x: T) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::OutsideDomain {
                x: x.as_f64(),
                lo: self.domain.a().as_f64(),
                hi: self.domain.b().as_f64(),
            })
        }
    }

    pub fn eval(&self, x: T) -> Result<T> {
        self.check(x)?;
        self.body.eval(x)
    }

    /// Value and first derivative at `x`.
    pub fn eval_with_derivative(&self, x: T) -> Result<Dual<T>> {
        self.check(x)?;
        self.body.eval_dual(x)
    }

    pub fn derivative(&self, x: T) -> Result<T> {
        self.eval_with_derivative(x).map(|d| d.derivative)
    }

    /// `|f'|^power` as a function on the same domain.
    pub fn derivative_power(&self, power: T) -> DerivativePower<'_, T> {
        DerivativePower { f: self, power }
    }
}

impl<T: Real> RealFunction<T> for FunctionSpec<T> {
    fn value(&self, x: T) -> Result<T> {
        self.eval(x)
    }

    fn domain(&self) -> Interval<T> {
        self.domain
    }
}

/// The map `x ↦ |f'(x)|^power`, built by composition at evaluation time.
#[derive(Debug, Clone, Copy)]
pub struct DerivativePower<'a, T> {
    f: &'a FunctionSpec<T>,
    power: T,
}

impl<T: Real> DerivativePower<'_, T> {
    pub fn power(&self) -> T {
        self.power
    }
}

impl<T: Real> RealFunction<T> for DerivativePower<'_, T> {
    fn value(&self, x: T) -> Result<T> {
        let d = self.f.derivative(x)?.abs();
        Ok(if self.power == T::one() {
            d
        } else {
            d.powf(self.power)
        })
    }

    fn domain(&self) -> Interval<T> {
        self.f.domain
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval<f64> {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_functions_undefined_on_domain() {
        let err = FunctionSpec::parse("log(x)", unit()).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter(_)));
        assert!(FunctionSpec::parse("log(x)", Interval::new(0.5, 2.0).unwrap()).is_ok());
        assert!(FunctionSpec::parse("1/(x-0.5)", unit()).is_err());
    }

    #[test]
    fn evaluation_outside_domain_is_an_error() {
        let f = FunctionSpec::parse("x^2", unit()).unwrap();
        assert!(matches!(f.eval(1.5), Err(Error::OutsideDomain { .. })));
        assert!(f.eval_with_derivative(1.0).is_ok());
    }

    #[test]
    fn derivative_power_composes() {
        let f = FunctionSpec::parse("x^2", Interval::new(-1.0, 2.0).unwrap()).unwrap();
        let g = f.derivative_power(2.0);
        assert_eq!(g.value(-1.0).unwrap(), 4.0);
        assert_eq!(g.value(1.5).unwrap(), 9.0);
        assert_eq!(f.derivative_power(1.0).value(-0.5).unwrap(), 1.0);
    }

    #[test]
    fn repeated_evaluation_is_bit_identical() {
        let f = FunctionSpec::parse("exp(2*x) + x^3/7", unit()).unwrap();
        let first = f.eval_with_derivative(0.37).unwrap();
        for _ in 0..10 {
            let again = f.eval_with_derivative(0.37).unwrap();
            assert_eq!(first.value.to_bits(), again.value.to_bits());
            assert_eq!(first.derivative.to_bits(), again.derivative.to_bits());
        }
    }
}
