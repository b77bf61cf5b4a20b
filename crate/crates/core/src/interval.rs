use std::fmt;
use std::str::FromStr;

use crate::{Error, Real, Result};

/// A closed interval `[a, b]` with `a < b`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Real> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::invalid(format!(
                "interval endpoints must be finite, got [{a}, {b}]"
            )));
        }
        if a >= b {
            return Err(Error::invalid(format!(
                "interval requires a < b, got [{a}, {b}]"
            )));
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> T {
        self.a
    }

    #[inline]
    pub fn b(&self) -> T {
        self.b
    }

    #[inline]
    pub fn width(&self) -> T {
        self.b - self.a
    }

    #[inline]
    pub fn midpoint(&self) -> T {
        (self.a + self.b) / T::lit(2.0)
    }

    #[inline]
    pub fn contains(&self, x: T) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn contains_interval(&self, other: &Interval<T>) -> bool {
        self.contains(other.a) && self.contains(other.b)
    }

    /// `n` evenly spaced points from `a` to `b` inclusive (`n >= 2`).
    ///
    /// The last point is exactly `b`.
    pub fn linspace(&self, n: usize) -> Vec<T> {
        assert!(n >= 2, "linspace needs at least two points");
        let last = n - 1;
        let step = self.width() / T::from_usize(last).unwrap();
        (0..n)
            .map(|i| {
                if i == last {
                    self.b
                } else {
                    self.a + step * T::from_usize(i).unwrap()
                }
            })
            .collect()
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

/// Parses the `a:b` form used on the command line.
impl<T: Real + FromStr> FromStr for Interval<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("expected `a:b`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<T>()
                .map_err(|_| Error::invalid(format!("`{t}` is not a number")))
        };
        Interval::new(parse(lo)?, parse(hi)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_reversed() {
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn parses_colon_form() {
        let iv: Interval<f64> = "-1:2.5".parse().unwrap();
        assert_eq!((iv.a(), iv.b()), (-1.0, 2.5));
        assert!("1;2".parse::<Interval<f64>>().is_err());
        assert!("3:1".parse::<Interval<f64>>().is_err());
    }

    #[test]
    fn linspace_hits_both_ends() {
        let iv = Interval::new(0.0, 3.0).unwrap();
        let pts = iv.linspace(4);
        assert_eq!(pts, vec![0.0, 1.0, 2.0, 3.0]);
    }
}
