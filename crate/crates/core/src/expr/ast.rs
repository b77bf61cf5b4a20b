use std::fmt;

use crate::{Error, Real, Result};

use super::Dual;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinaryOp {
    fn symbol(self) -> char {
        match self {
            BinaryOp::Add => '+',
            BinaryOp::Sub => '-',
            BinaryOp::Mul => '*',
            BinaryOp::Div => '/',
            BinaryOp::Pow => '^',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UnaryFn {
    Exp,
    Log,
    Abs,
}

impl UnaryFn {
    pub fn name(self) -> &'static str {
        match self {
            UnaryFn::Exp => "exp",
            UnaryFn::Log => "log",
            UnaryFn::Abs => "abs",
        }
    }

    pub(crate) fn from_name(name: &str) -> Option<Self> {
        match name {
            "exp" => Some(UnaryFn::Exp),
            "log" => Some(UnaryFn::Log),
            "abs" => Some(UnaryFn::Abs),
            _ => None,
        }
    }
}

/// Expression tree over the single free variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr<T> {
    Const(T),
    Var,
    Neg(Box<Expr<T>>),
    Binary(BinaryOp, Box<Expr<T>>, Box<Expr<T>>),
    Call(UnaryFn, Box<Expr<T>>),
}

impl<T: Real> Expr<T> {
    pub fn constant(c: T) -> Self {
        Expr::Const(c)
    }

    pub fn negated(e: Expr<T>) -> Self {
        Expr::Neg(Box::new(e))
    }

    pub fn binary(op: BinaryOp, l: Expr<T>, r: Expr<T>) -> Self {
        Expr::Binary(op, Box::new(l), Box::new(r))
    }

    pub fn call(f: UnaryFn, arg: Expr<T>) -> Self {
        Expr::Call(f, Box::new(arg))
    }

    /// Evaluates the expression at `x`.
    ///
    /// `abs` is defined everywhere here; only the derivative is undefined at 0.
    pub fn eval(&self, x: T) -> Result<T> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => x,
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Binary(op, l, r) => {
                let (l, r) = (l.eval(x)?, r.eval(x)?);
                match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => {
                        if r == T::zero() {
                            return Err(domain("division", x));
                        }
                        l / r
                    }
                    BinaryOp::Pow => real_pow(l, r, x)?,
                }
            }
            Expr::Call(f, e) => {
                let v = e.eval(x)?;
                match f {
                    UnaryFn::Exp => v.exp(),
                    UnaryFn::Log => {
                        if v <= T::zero() {
                            return Err(domain("log", x));
                        }
                        v.ln()
                    }
                    UnaryFn::Abs => v.abs(),
                }
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(domain("evaluation", x))
        }
    }

    /// Evaluates value and first derivative with respect to `x` by
    /// propagating a dual number through the tree.
    pub fn eval_dual(&self, x: T) -> Result<Dual<T>> {
        let d = self.dual_at(x, Dual::variable(x))?;
        if !d.value.is_finite() {
            return Err(domain("evaluation", x));
        }
        if !d.derivative.is_finite() {
            return Err(Error::DerivativeUndefined { at: x.as_f64() });
        }
        Ok(d)
    }

    fn dual_at(&self, x: T, var: Dual<T>) -> Result<Dual<T>> {
        Ok(match self {
            Expr::Const(c) => Dual::constant(*c),
            Expr::Var => var,
            Expr::Neg(e) => -e.dual_at(x, var)?,
            Expr::Binary(op, l, r) => {
                let (l, r) = (l.dual_at(x, var)?, r.dual_at(x, var)?);
                match op {
                    BinaryOp::Add => l + r,
                    BinaryOp::Sub => l - r,
                    BinaryOp::Mul => l * r,
                    BinaryOp::Div => {
                        if r.value == T::zero() {
                            return Err(domain("division", x));
                        }
                        l / r
                    }
                    BinaryOp::Pow => dual_pow(l, r, x)?,
                }
            }
            Expr::Call(f, e) => {
                let v = e.dual_at(x, var)?;
                match f {
                    UnaryFn::Exp => v.exp(),
                    UnaryFn::Log => {
                        if v.value <= T::zero() {
                            return Err(domain("log", x));
                        }
                        v.ln()
                    }
                    UnaryFn::Abs => {
                        if v.value == T::zero() {
                            return Err(Error::DerivativeUndefined { at: x.as_f64() });
                        }
                        v.abs()
                    }
                }
            }
        })
    }
}

fn domain<T: Real>(operation: &'static str, x: T) -> Error {
    Error::Domain {
        operation,
        at: x.as_f64(),
    }
}

/// Integer-valued exponents that fit `powi`.
fn as_integer<T: Real>(e: T) -> Option<i32> {
    if e.fract() == T::zero() && e.abs() < T::lit(2_147_483_647.0) {
        e.to_i32()
    } else {
        None
    }
}

fn real_pow<T: Real>(base: T, exponent: T, x: T) -> Result<T> {
    if let Some(n) = as_integer(exponent) {
        if base == T::zero() && n < 0 {
            return Err(domain("pow", x));
        }
        return Ok(base.powi(n));
    }
    if base < T::zero() || (base == T::zero() && exponent < T::zero()) {
        return Err(domain("pow", x));
    }
    Ok(base.powf(exponent))
}

fn dual_pow<T: Real>(base: Dual<T>, exponent: Dual<T>, x: T) -> Result<Dual<T>> {
    let value = real_pow(base.value, exponent.value, x)?;
    if exponent.derivative == T::zero() {
        // d/dx b^e = e b^(e-1) b'
        let e = exponent.value;
        let derivative = if base.derivative == T::zero() || e == T::zero() {
            T::zero()
        } else {
            let reduced = real_pow(base.value, e - T::one(), x)
                .map_err(|_| Error::DerivativeUndefined { at: x.as_f64() })?;
            e * reduced * base.derivative
        };
        return Ok(Dual::new(value, derivative));
    }
    if base.value <= T::zero() {
        return Err(domain("pow with variable exponent", x));
    }
    let derivative = value
        * (exponent.derivative * base.value.ln() + exponent.value * base.derivative / base.value);
    Ok(Dual::new(value, derivative))
}

/// Prints a form that re-parses to a structurally equal tree: every compound
/// subexpression is parenthesised.
///
/// Negative constants never come out of the parser; if constructed by hand they
/// print as `(-c)` and re-parse as a negation.
impl<T: Real> fmt::Display for Expr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => {
                if c.is_sign_negative() {
                    write!(f, "(-{})", c.abs())
                } else {
                    write!(f, "{c}")
                }
            }
            Expr::Var => f.write_str("x"),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}
