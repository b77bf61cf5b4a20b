use crate::{Error, Real, Result};

use super::{BinaryOp, Expr, UnaryFn};

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Num(&'a str),
    Ident(&'a str),
    Op(char),
    LParen,
    RParen,
    Comma,
    End,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    tok: Tok<'a>,
    pos: usize,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<Token<'_>>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i == start + 1 && c == b'.' {
                    return Err(syntax(start, "expected digits around `.`"));
                }
                // optional exponent, only when digits follow
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                out.push(Token {
                    tok: Tok::Num(&src[start..i]),
                    pos: start,
                });
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(&src[start..i]),
                    pos: start,
                });
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                i += 1;
                out.push(Token {
                    tok: Tok::Op(c as char),
                    pos: start,
                });
            }
            b'(' | b')' | b',' => {
                i += 1;
                let tok = match c {
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                out.push(Token { tok, pos: start });
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        }
    }
    out.push(Token {
        tok: Tok::End,
        pos: src.len(),
    });
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token<'a>>,
    cursor: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token<'a> {
        &self.tokens[self.cursor]
    }

    fn bump(&mut self) -> Token<'a> {
        let t = self.tokens[self.cursor].clone();
        if self.cursor + 1 < self.tokens.len() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok<'static>, what: &str) -> Result<()> {
        let t = self.bump();
        if t.tok == want {
            Ok(())
        } else {
            Err(syntax(t.pos, format!("expected {what}, found {}", describe(&t.tok))))
        }
    }

    fn expr<T: Real>(&mut self) -> Result<Expr<T>> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op('+') => BinaryOp::Add,
                Tok::Op('-') => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.term()?);
        }
    }

    fn term<T: Real>(&mut self) -> Result<Expr<T>> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().tok {
                Tok::Op('*') => BinaryOp::Mul,
                Tok::Op('/') => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.unary()?);
        }
    }

    fn unary<T: Real>(&mut self) -> Result<Expr<T>> {
        if self.peek().tok == Tok::Op('-') {
            self.bump();
            return Ok(Expr::negated(self.unary()?));
        }
        self.power()
    }

    fn power<T: Real>(&mut self) -> Result<Expr<T>> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Op('^') {
            self.bump();
            // right-associative: the exponent may itself be a power
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom<T: Real>(&mut self) -> Result<Expr<T>> {
        let t = self.bump();
        match t.tok {
            Tok::Num(text) => T::from_str_radix(text, 10)
                .map(Expr::Const)
                .map_err(|_| syntax(t.pos, format!("malformed number `{text}`"))),
            Tok::Ident("x") => Ok(Expr::Var),
            Tok::Ident(name) => {
                let func = UnaryFn::from_name(name).ok_or_else(|| Error::UnknownIdentifier {
                    name: name.to_string(),
                    position: t.pos,
                })?;
                self.call_args(func, t.pos)
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            other => Err(syntax(t.pos, format!("expected a value, found {}", describe(&other)))),
        }
    }

    fn call_args<T: Real>(&mut self, func: UnaryFn, pos: usize) -> Result<Expr<T>> {
        self.expect(Tok::LParen, &format!("`(` after `{}`", func.name()))?;
        let mut args = Vec::new();
        if self.peek().tok != Tok::RParen {
            args.push(self.expr()?);
            while self.peek().tok == Tok::Comma {
                self.bump();
                args.push(self.expr()?);
            }
        }
        self.expect(Tok::RParen, "`)`")?;
        if args.len() != 1 {
            return Err(Error::Arity {
                function: func.name().to_string(),
                expected: 1,
                found: args.len(),
                position: pos,
            });
        }
        Ok(Expr::call(func, args.pop().unwrap()))
    }
}

fn describe(tok: &Tok<'_>) -> String {
    match tok {
        Tok::Num(s) => format!("number `{s}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Op(c) => format!("`{c}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Parses an expression in the variable `x`.
pub fn parse<T: Real>(text: &str) -> Result<Expr<T>> {
    let mut p = Parser {
        tokens: tokenize(text)?,
        cursor: 0,
    };
    let e = p.expr()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return Err(syntax(t.pos, format!("unexpected {}", describe(&t.tok))));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{BinaryOp::*, Expr::*, UnaryFn::*};

    fn p(text: &str) -> Expr<f64> {
        parse(text).unwrap()
    }

    fn b(op: BinaryOp, l: Expr<f64>, r: Expr<f64>) -> Expr<f64> {
        Expr::binary(op, l, r)
    }

    #[test]
    fn square() {
        assert_eq!(p("x^2"), b(Pow, Var, Const(2.0)));
    }

    #[test]
    fn exp_minus_one() {
        assert_eq!(p("exp(x) - 1"), b(Sub, Expr::call(Exp, Var), Const(1.0)));
    }

    #[test]
    fn shifted_quartic() {
        assert_eq!(
            p("(1-x)^4"),
            b(Pow, b(Sub, Const(1.0), Var), Const(4.0))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("-x^2"), Expr::negated(b(Pow, Var, Const(2.0))));
        assert_eq!(
            p("2^3^2"),
            b(Pow, Const(2.0), b(Pow, Const(3.0), Const(2.0)))
        );
        assert_eq!(
            p("1-x-2"),
            b(Sub, b(Sub, Const(1.0), Var), Const(2.0))
        );
        assert_eq!(
            p("1+2*x"),
            b(Add, Const(1.0), b(Mul, Const(2.0), Var))
        );
        assert_eq!(p("x^-1"), b(Pow, Var, Expr::negated(Const(1.0))));
        assert_eq!(p("2.5e-1*x"), b(Mul, Const(0.25), Var));
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse::<f64>("x + * 2").unwrap_err(),
            Error::Syntax {
                position: 4,
                message: "expected a value, found `*`".into()
            }
        );
        assert!(matches!(parse::<f64>("(x"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse::<f64>("2x"), Err(Error::Syntax { position: 1, .. })));
        assert!(matches!(parse::<f64>("x # 1"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse::<f64>(""), Err(Error::Syntax { position: 0, .. })));
    }

    #[test]
    fn unknown_identifiers() {
        assert_eq!(
            parse::<f64>("sin(x)").unwrap_err(),
            Error::UnknownIdentifier {
                name: "sin".into(),
                position: 0
            }
        );
        assert!(matches!(
            parse::<f64>("x + y"),
            Err(Error::UnknownIdentifier { position: 4, .. })
        ));
    }

    #[test]
    fn arity_mismatch() {
        assert_eq!(
            parse::<f64>("exp(x, 2)").unwrap_err(),
            Error::Arity {
                function: "exp".into(),
                expected: 1,
                found: 2,
                position: 0
            }
        );
        assert!(matches!(
            parse::<f64>("1 + log()"),
            Err(Error::Arity { found: 0, position: 4, .. })
        ));
    }

    #[test]
    fn parses_into_f32() {
        let e: Expr<f32> = parse("0.1*x").unwrap();
        assert_eq!(e, Expr::binary(Mul, Const(0.1_f32), Var));
    }
}
