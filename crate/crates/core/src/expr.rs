//! A small expression language for elements of `U(g)`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | NAME | '(' expr ')'
//! ```
//!
//! `*` is the noncommutative product of `U(g)`. Names are identifiers with
//! optional trailing apostrophes, so `e'` is one token. Odd generators may
//! be raised to powers; `e^2` is simply `e*e`, which the engine rewrites to
//! `½[e, e]`.
//!
//! ```
//! use superspherical::expr::parse;
//!
//! let ast = parse("p^3*e*f - (1/2)*z").unwrap();
//! assert_eq!(ast.to_string(), "p^3*e*f - 1/2*z");
//! assert_eq!(parse(&ast.to_string()).unwrap(), ast);
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::enveloping::{Enveloping, UElement};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Gen(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

fn lex(source: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = source.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(source[start..i].parse().expect("digits"))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                while i < bytes.len() && bytes[i] == b'\'' {
                    i += 1;
                }
                out.push((start, Tok::Name(source[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = source[start..].chars().next().expect("in bounds");
                return Err(syntax(start, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Star) {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let n = u32::try_from(n).map_err(|_| syntax(at, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), n))
            }
            _ => Err(syntax(at, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if !self.eat(&Tok::Slash) {
                    return Ok(Expr::Num(Scalar::from_bigint(n)));
                }
                let at_den = self.offset();
                match self.peek().cloned() {
                    Some(Tok::Int(d)) => {
                        self.pos += 1;
                        let q = Scalar::from_ratio(n, d).map_err(|_| syntax(at_den, "zero denominator"))?;
                        Ok(Expr::Num(q))
                    }
                    _ => Err(syntax(at_den, "expected an integer denominator")),
                }
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                Ok(Expr::Gen(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax(self.offset(), "expected ')'"));
                }
                Ok(inner)
            }
            Some(_) => Err(syntax(at, "expected a number, a generator or '('")),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

/// Parses an expression; positions in errors are byte offsets.
pub fn parse(source: &str) -> Result<Expr> {
    let toks = lex(source)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: source.len(),
    };
    let e = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(syntax(parser.offset(), "unexpected token"));
    }
    Ok(e)
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(..) | Expr::Gen(..) => 5,
        }
    }

    /// Generator names in order of first appearance.
    pub fn names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Num(_) => {}
            Expr::Gen(n) => {
                if !out.contains(&n.as_str()) {
                    out.push(n);
                }
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_names(out);
                b.collect_names(out);
            }
        }
    }

    /// Evaluates the expression in `U(g)`, resolving names against the
    /// algebra's generators.
    pub fn elaborate(&self, env: &Enveloping) -> Result<UElement> {
        Ok(match self {
            Expr::Num(c) => env.scalar(c.clone()),
            Expr::Gen(name) => env.named(name)?,
            Expr::Neg(a) => -&a.elaborate(env)?,
            Expr::Add(a, b) => &a.elaborate(env)? + &b.elaborate(env)?,
            Expr::Sub(a, b) => &a.elaborate(env)? - &b.elaborate(env)?,
            Expr::Mul(a, b) => env.multiply(&a.elaborate(env)?, &b.elaborate(env)?),
            Expr::Pow(a, n) => env.pow(&a.elaborate(env)?, *n),
        })
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Gen(n) => f.write_str(n),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_operand(f, a, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write_operand(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                write_operand(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_operand(f, a, 2)?;
                f.write_str("*")?;
                write_operand(f, b, 3)
            }
            Expr::Pow(a, n) => {
                write_operand(f, a, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

/// Parses and elaborates in one step.
pub fn evaluate(source: &str, env: &Enveloping) -> Result<UElement> {
    parse(source)?.elaborate(env)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gl12::build_pair;

    fn gen(n: &str) -> Box<Expr> {
        Box::new(Expr::Gen(n.into()))
    }

    #[test]
    fn two_addends() {
        let e = parse("p*e' + 2*f").unwrap();
        assert_eq!(
            e,
            Expr::Add(
                Box::new(Expr::Mul(gen("p"), gen("e'"))),
                Box::new(Expr::Mul(Box::new(Expr::Num(Scalar::from_int(2))), gen("f")))
            )
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-p^2").unwrap(), Expr::Neg(Box::new(Expr::Pow(gen("p"), 2))));
        assert_eq!(
            parse("-p*e").unwrap(),
            Expr::Mul(Box::new(Expr::Neg(gen("p"))), gen("e"))
        );
        assert_eq!(
            parse("a - b - c").unwrap(),
            Expr::Sub(Box::new(Expr::Sub(gen("a"), gen("b"))), gen("c"))
        );
        assert_eq!(parse("3/6").unwrap(), Expr::Num(Scalar::new(1, 2)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("p**e").unwrap_err(), syntax(2, "expected a number, a generator or '('"));
        assert!(matches!(parse("p^e"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("(p"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("1/0"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("p e"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse("p # e"), Err(Error::Syntax { position: 2, .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { position: 0, .. })));
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "p^3*e*f - (1/2)*z",
            "-(p*e)",
            "a*(b*c)",
            "(p + e)^2",
            "-(-p)",
            "(-p)^3",
            "a - (b - c) + -d",
            "(1/2)^2*k1",
            "2*(3*k2)",
        ] {
            let ast = parse(s).unwrap();
            assert_eq!(parse(&ast.to_string()).unwrap(), ast, "{s}");
        }
    }

    #[test]
    fn elaboration() {
        let g = build_pair().unwrap();
        let env = &g.env;
        let nf = |s: &str| evaluate(s, env).unwrap();
        assert_eq!(nf("e*p"), nf("p*e - e'"));
        assert_eq!(env.format(&nf("e*p")), "p*e - e'");
        assert_eq!(nf("e^2"), nf("-k2"));
        assert_eq!(nf("f*e"), nf("-e*f + k"));
        assert_eq!(nf("p*e'"), &nf("e'*p") + &nf("e"));
        assert!(matches!(evaluate("q*e", env), Err(Error::UnknownGenerator(n)) if n == "q"));
        let u = nf("(p + e)^3 - (1/3)*f*z");
        assert_eq!(evaluate(&env.format(&u), env).unwrap(), u);
    }
}
