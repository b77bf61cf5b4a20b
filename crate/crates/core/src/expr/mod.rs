//! One-variable expressions: parsing, printing and evaluation with exact
//! first derivatives.
//!
//! The accepted grammar, with `^` binding tighter than unary minus and
//! associating to the right:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := NUMBER | 'x' | ('exp' | 'log' | 'abs') '(' expr ')' | '(' expr ')'
//! ```

mod ast;
mod dual;
mod function;
mod parser;

pub use ast::{BinaryOp, Expr, UnaryFn};
pub use dual::Dual;
pub use function::{DerivativePower, FunctionSpec, RealFunction};
pub use parser::parse;
