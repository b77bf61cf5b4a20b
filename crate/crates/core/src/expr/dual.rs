use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::Real;

/// First-order dual number `value + derivative·ε` with `ε² = 0`.
///
/// The elementary functions here assume their arguments are inside the
/// function's domain; expression evaluation checks that before calling them.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual<T> {
    pub value: T,
    pub derivative: T,
}

impl<T: Real> Dual<T> {
    #[inline]
    pub fn new(value: T, derivative: T) -> Self {
        Self { value, derivative }
    }

    #[inline]
    pub fn constant(value: T) -> Self {
        Self::new(value, T::zero())
    }

    /// The independent variable at `x` (unit seed).
    #[inline]
    pub fn variable(x: T) -> Self {
        Self::new(x, T::one())
    }

    #[inline]
    pub fn exp(self) -> Self {
        let e = self.value.exp();
        Self::new(e, e * self.derivative)
    }

    #[inline]
    pub fn ln(self) -> Self {
        Self::new(self.value.ln(), self.derivative / self.value)
    }

    /// Uses `signum(value)` as the slope; callers reject `value == 0`.
    #[inline]
    pub fn abs(self) -> Self {
        Self::new(self.value.abs(), self.value.signum() * self.derivative)
    }

    #[inline]
    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::constant(T::one());
        }
        let reduced = self.value.powi(n - 1);
        Self::new(
            reduced * self.value,
            T::from_i32(n).unwrap() * reduced * self.derivative,
        )
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.derivative + rhs.derivative)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.derivative - rhs.derivative)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.derivative * rhs.value + self.value * rhs.derivative,
        )
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        Self::new(
            self.value / rhs.value,
            (self.derivative * rhs.value - self.value * rhs.derivative) / (rhs.value * rhs.value),
        )
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.value, -self.derivative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_quotient_rules() {
        let x = Dual::variable(3.0_f64);
        let p = x * x;
        assert_eq!((p.value, p.derivative), (9.0, 6.0));
        let q = Dual::constant(1.0) / x;
        assert!((q.derivative + 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Dual::variable(1.5_f32);
        let cube = x * x * x;
        let p = x.powi(3);
        assert!((p.value - cube.value).abs() < 1e-6);
        assert!((p.derivative - cube.derivative).abs() < 1e-5);
        assert_eq!(x.powi(0), Dual::constant(1.0));
    }

    #[test]
    fn chain_through_exp_and_ln() {
        let x = Dual::variable(0.7_f64);
        let y = (x * Dual::constant(2.0)).exp().ln();
        assert!((y.value - 1.4).abs() < 1e-15);
        assert!((y.derivative - 2.0).abs() < 1e-15);
    }
}
