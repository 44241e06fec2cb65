//! Small arithmetic expressions over structure constants, used for the fixed
//! entries and side conditions of the catalog.
//!
//! Grammar: integers, `a1`..`g9`, `+ - * /`, `^` with a small integer exponent,
//! parentheses. Division by an integer literal is exact in the field.

use std::fmt;

use crate::field::{Poly, Ring, Scalar};
use crate::msc::Coord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(Coord),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Rings in which expressions can be evaluated. Division may fail.
pub trait ExprRing: Ring {
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

impl ExprRing for Scalar {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
}

impl ExprRing for Poly {
    /// Only division by nonzero constants is supported.
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if !rhs.is_constant() {
            return None;
        }
        let inv = rhs.coeff(0).inv().ok()?;
        Some(self.clone() * Poly::constant(&inv))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse expression {text:?}: {why}")]
pub struct ParseError {
    pub text: String,
    pub why: String,
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr, ParseError> {
        let toks = lex(s).map_err(|why| ParseError { text: s.into(), why })?;
        let mut p = Parser { toks, pos: 0 };
        let e = p.sum().map_err(|why| ParseError { text: s.into(), why })?;
        if p.pos != p.toks.len() {
            return Err(ParseError { text: s.into(), why: format!("trailing input at token {}", p.pos) });
        }
        Ok(e)
    }

    /// Evaluates with `var` supplying coordinate values; `like` fixes the ring.
    /// Returns `None` on division by zero.
    pub fn eval<R: ExprRing>(&self, like: &R, var: &dyn Fn(Coord) -> R) -> Option<R> {
        Some(match self {
            Expr::Int(n) => like.int_like(*n),
            Expr::Var(c) => var(*c),
            Expr::Neg(x) => -x.eval(like, var)?,
            Expr::Add(x, y) => x.eval(like, var)? + y.eval(like, var)?,
            Expr::Sub(x, y) => x.eval(like, var)? - y.eval(like, var)?,
            Expr::Mul(x, y) => x.eval(like, var)? * y.eval(like, var)?,
            Expr::Div(x, y) => x.eval(like, var)?.try_div(&y.eval(like, var)?)?,
            Expr::Pow(x, k) => {
                let b = x.eval(like, var)?;
                (0..*k).fold(like.one_like(), |acc, _| acc * b.clone())
            }
        })
    }

    /// Coordinates mentioned, in first-occurrence order.
    pub fn vars(&self) -> Vec<Coord> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<Coord>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(c) => {
                if !out.contains(c) {
                    out.push(*c)
                }
            }
            Expr::Neg(x) | Expr::Pow(x, _) => x.collect(out),
            Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) | Expr::Div(x, y) => {
                x.collect(out);
                y.collect(out);
            }
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(n) if *n < 0 => 3,
            Expr::Int(_) | Expr::Var(_) => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, greek: bool) -> fmt::Result {
        let sub = |e: &Expr, f: &mut fmt::Formatter<'_>, min: u8| -> fmt::Result {
            if e.prec() < min {
                f.write_str("(")?;
                e.write(f, greek)?;
                f.write_str(")")
            } else {
                e.write(f, greek)
            }
        };
        let minus = if greek { "−" } else { "-" };
        match self {
            Expr::Int(n) if *n < 0 => write!(f, "{minus}{}", n.unsigned_abs()),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(c) => f.write_str(&if greek { c.greek() } else { c.name() }),
            Expr::Neg(x) => {
                f.write_str(minus)?;
                sub(x, f, 4)
            }
            Expr::Add(x, y) => {
                sub(x, f, 1)?;
                f.write_str(" + ")?;
                sub(y, f, 2)
            }
            Expr::Sub(x, y) => {
                sub(x, f, 1)?;
                write!(f, " {minus} ")?;
                sub(y, f, 2)
            }
            Expr::Mul(x, y) => {
                sub(x, f, 2)?;
                f.write_str(if greek { "·" } else { "*" })?;
                sub(y, f, 3)
            }
            Expr::Div(x, y) => {
                sub(x, f, 2)?;
                f.write_str("/")?;
                sub(y, f, 3)
            }
            Expr::Pow(x, k) => {
                sub(x, f, 5)?;
                write!(f, "^{k}")
            }
        }
    }

    /// Rendering with Greek coordinate names, for reports and the catalog listing.
    pub fn greek(&self) -> String {
        struct G<'a>(&'a Expr);
        impl fmt::Display for G<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.write(f, true)
            }
        }
        G(self).to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, false)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Var(Coord),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let ch = cs[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| format!("bad number {t}"))?));
        } else if "abg".contains(ch) {
            let st = i;
            i += 1;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Var(Coord::parse(&t).ok_or_else(|| format!("bad coordinate {t}"))?));
        } else if "+-*/^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(format!("unexpected character {ch:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<Expr, String> {
        let mut e = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let r = self.product()?;
            e = if op == '+' { Expr::Add(e.into(), r.into()) } else { Expr::Sub(e.into(), r.into()) };
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr, String> {
        let mut e = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let r = self.unary()?;
            e = if op == '*' { Expr::Mul(e.into(), r.into()) } else { Expr::Div(e.into(), r.into()) };
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, String> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            let x = self.unary()?;
            return Ok(match x {
                Expr::Int(n) => Expr::Int(-n),
                x => Expr::Neg(x.into()),
            });
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, String> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(k)) if (0..=16).contains(k) => {
                    self.pos += 1;
                    return Ok(Expr::Pow(base.into(), *k as u32));
                }
                _ => return Err("exponent must be a small integer".into()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, String> {
        let t = self.toks.get(self.pos).cloned().ok_or("unexpected end")?;
        self.pos += 1;
        match t {
            Tok::Num(n) => Ok(Expr::Int(n)),
            Tok::Var(c) => Ok(Expr::Var(c)),
            Tok::Op('(') => {
                let e = self.sum()?;
                if self.peek_op() != Some(')') {
                    return Err("missing )".into());
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op(c) => Err(format!("unexpected {c:?}")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn parse_and_print() {
        for s in ["a3 - 2*b8", "-a1/2", "1 - a2 - 3*b5", "(a3 - 2*b8)*(a3 - b8)", "a3^2 + b3", "3/5 + a2"] {
            let e = Expr::parse(s).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{s}");
        }
        assert_eq!(Expr::parse("-a3^2").unwrap().to_string(), "-a3^2");
        assert_eq!(Expr::parse("a1-(b2-b3)").unwrap().to_string(), "a1 - (b2 - b3)");
        assert_eq!(Expr::parse("a8 + 1").unwrap().greek(), "α₈ + 1");
        assert!(Expr::parse("a0").is_err());
        assert!(Expr::parse("a1 +").is_err());
        assert!(Expr::parse("x").is_err());
    }

    #[test]
    fn evaluates_fractions_exactly() {
        let q = FieldCtx::rational();
        let e = Expr::parse("7/20 - 1/4*a2").unwrap();
        let v = e.eval(&q.zero(), &|_| q.int(3)).unwrap();
        assert_eq!(v, q.frac(-2, 5).unwrap());
        let f5 = FieldCtx::prime(5).unwrap();
        assert!(Expr::parse("1/5").unwrap().eval(&f5.zero(), &|_| f5.zero()).is_none());
    }

    #[test]
    fn evaluates_over_polynomials() {
        let q = FieldCtx::rational();
        let t = Poly::var(&q);
        let e = Expr::parse("a1^2 - 2*a1 + 1").unwrap();
        let p = e.eval(&t, &|_| t.clone()).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.coeff(1), q.int(-2));
    }
}
