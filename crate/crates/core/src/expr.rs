//! A small expression grammar for self-maps of the real line.
//!
//! Covers exactly the vocabulary the built-in problems need: the four
//! arithmetic operators, `^`, `sqrt`, `ln`, `exp`, `abs`, numeric literals,
//! the named constants `e` and `pi`, and the single variable `x`. This is a
//! calculator for map definitions, not a general interpreter.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/") unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?            # right-associative
//! atom  := number | "x" | "e" | "pi" | func "(" expr ")" | "(" expr ")"
//! func  := "sqrt" | "ln" | "exp" | "abs"
//! ```

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UnaryFn {
    Sqrt,
    Ln,
    Exp,
    Abs,
    Neg,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

/// Parsed expression tree.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Unary(UnaryFn, Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Parse an expression; `col` positions in errors are 1-based byte
    /// offsets into `src`. The caller supplies the config line number.
    pub fn parse(src: &str, line: usize) -> Result<Expr> {
        let tokens = tokenize(src, line)?;
        let mut p = Parser { tokens, pos: 0, line, len: src.len() };
        let expr = p.expr()?;
        if p.pos < p.tokens.len() {
            let (col, _) = p.tokens[p.pos];
            return Err(p.err(col, "unexpected trailing input"));
        }
        Ok(expr)
    }

    /// Evaluate at `x`. Out-of-domain intermediates (negative sqrt, ln of a
    /// non-positive number) surface as NaN and are rejected by the mapping
    /// layer's domain check.
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::Var => x,
            Expr::Unary(f, inner) => {
                let v = inner.eval(x);
                match f {
                    UnaryFn::Sqrt => v.sqrt(),
                    UnaryFn::Ln => v.ln(),
                    UnaryFn::Exp => v.exp(),
                    UnaryFn::Abs => v.abs(),
                    UnaryFn::Neg => -v,
                }
            }
            Expr::Bin(op, a, b) => {
                let u = a.eval(x);
                let v = b.eval(x);
                match op {
                    BinOp::Add => u + v,
                    BinOp::Sub => u - v,
                    BinOp::Mul => u * v,
                    BinOp::Div => u / v,
                    BinOp::Pow => u.powf(v),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str, line: usize) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let col = i + 1;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '+' => {
                out.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((col, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((col, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((col, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((col, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((col, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((col, Tok::RParen));
                i += 1;
            }
            '0'..='9' | '.' => {
                let start = i;
                while i < bytes.len() && matches!(bytes[i] as char, '0'..='9' | '.') {
                    i += 1;
                }
                // exponent suffix: 1e-6, 2.5E+3
                if i < bytes.len()
                    && matches!(bytes[i] as char, 'e' | 'E')
                    && i + 1 < bytes.len()
                    && matches!(bytes[i + 1] as char, '0'..='9' | '+' | '-')
                {
                    i += 2;
                    while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| Error::Parse {
                    line,
                    col,
                    msg: format!("bad number `{text}`"),
                })?;
                out.push((col, Tok::Num(value)));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && matches!(bytes[i] as char, 'a'..='z' | 'A'..='Z' | '0'..='9' | '_') {
                    i += 1;
                }
                out.push((col, Tok::Ident(src[start..i].to_string())));
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    line: usize,
    len: usize,
}

impl Parser {
    fn err(&self, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_col(&self) -> usize {
        self.len + 1
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op) = match self.peek() {
            Some(Tok::Plus) => Some(BinOp::Add),
            Some(Tok::Minus) => Some(BinOp::Sub),
            _ => None,
        } {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = match self.peek() {
            Some(Tok::Star) => Some(BinOp::Mul),
            Some(Tok::Slash) => Some(BinOp::Div),
            _ => None,
        } {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(Expr::Unary(UnaryFn::Neg, Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.pos += 1;
            let exponent = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (col, tok) = match self.next() {
            Some(t) => t,
            None => return Err(self.err(self.end_col(), "expected an expression")),
        };
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "e" => Ok(Expr::Num(std::f64::consts::E)),
                "pi" => Ok(Expr::Num(std::f64::consts::PI)),
                "sqrt" | "ln" | "exp" | "abs" => {
                    let func = match name.as_str() {
                        "sqrt" => UnaryFn::Sqrt,
                        "ln" => UnaryFn::Ln,
                        "exp" => UnaryFn::Exp,
                        _ => UnaryFn::Abs,
                    };
                    match self.next() {
                        Some((_, Tok::LParen)) => {}
                        Some((c, _)) => return Err(self.err(c, format!("`{name}` needs parentheses"))),
                        None => return Err(self.err(self.end_col(), format!("`{name}` needs parentheses"))),
                    }
                    let inner = self.expr()?;
                    self.expect_rparen()?;
                    Ok(Expr::Unary(func, Box::new(inner)))
                }
                other => Err(self.err(col, format!("unknown name `{other}`"))),
            },
            _ => Err(self.err(col, "expected a number, `x`, or `(`")),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        match self.next() {
            Some((_, Tok::RParen)) => Ok(()),
            Some((c, _)) => Err(self.err(c, "expected `)`")),
            None => Err(self.err(self.end_col(), "expected `)`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, x: f64) -> f64 {
        Expr::parse(src, 1).unwrap().eval(x)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(eval("1 + 2 * 3", 0.0), 7.0);
        assert_eq!(eval("2 ^ 3 ^ 2", 0.0), 512.0); // right-assoc
        assert_eq!(eval("-x^2", 3.0), -9.0);
        assert_eq!(eval("(1 + 2) * 3", 0.0), 9.0);
        assert_eq!(eval("6 / 3 / 2", 0.0), 1.0); // left-assoc
    }

    #[test]
    fn vocabulary_covers_the_builtin_maps() {
        assert_eq!(eval("2*x", 3.0), 6.0);
        assert_eq!(eval("1/x + 1", 2.0), 1.5);
        assert_eq!(eval("x^2", 0.5), 0.25);
        assert!((eval("x^2 / sqrt(2)", 1.0) - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert!((eval("0.5 * sqrt(1 - x^2)", 0.0) - 0.5).abs() < 1e-15);
        assert!((eval("ln(x) + 1", 1.0) - 1.0).abs() < 1e-15);
        assert_eq!(eval("2*sqrt(x)", 4.0), 4.0);
        assert_eq!(eval("2*x + 1", 3.0), 7.0);
        assert!((eval("exp(-x)", 0.0) - 1.0).abs() < 1e-15);
        assert_eq!(eval("abs(-x)", 2.0), 2.0);
        assert!((eval("2/e", 0.0) - 2.0 / std::f64::consts::E).abs() < 1e-16);
        assert_eq!(eval("1e-6", 0.0), 1e-6);
    }

    #[test]
    fn parse_errors_carry_line_and_column() {
        match Expr::parse("1 + $", 7) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 7);
                assert_eq!(col, 5);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        match Expr::parse("sqrt 2", 1) {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Expr::parse("1 + ", 1).is_err());
        assert!(Expr::parse("y + 1", 1).is_err());
        assert!(Expr::parse("1 2", 1).is_err());
    }

    #[test]
    fn nan_propagates_for_out_of_domain_args() {
        assert!(eval("sqrt(x)", -1.0).is_nan());
        assert!(eval("ln(x)", -1.0).is_nan());
    }
}
