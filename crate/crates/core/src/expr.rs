//! A small recursive-descent parser for analytic curve, surface and profile
//! definitions.
//!
//! Grammar, loosest to tightest binding:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' unary)?
//! atom    := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` is right associative and binds tighter than unary minus, so `-s^2`
//! is `-(s^2)` and `2^3^2` is `2^(3^2)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    S,
    U,
    V,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::S => "s",
            Var::U => "u",
            Var::V => "v",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, x: f64) -> std::result::Result<f64, String> {
        Ok(match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Log => {
                if x <= 0.0 {
                    return Err(format!("log of non-positive value {x}"));
                }
                x.ln()
            }
            Func::Sqrt => {
                if x < 0.0 {
                    return Err(format!("sqrt of negative value {x}"));
                }
                x.sqrt()
            }
            Func::Abs => x.abs(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Num(f64),
    Var(Var),
    Neg(Box<Node>),
    Bin(BinOp, Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

/// Evaluation point. Unused coordinates are ignored.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point {
    pub s: f64,
    pub u: f64,
    pub v: f64,
}

impl Point {
    pub fn s(s: f64) -> Self {
        Point { s, ..Point::default() }
    }

    pub fn uv(u: f64, v: f64) -> Self {
        Point { u, v, ..Point::default() }
    }

    pub fn get(&self, var: Var) -> f64 {
        match var {
            Var::S => self.s,
            Var::U => self.u,
            Var::V => self.v,
        }
    }

    pub fn with(mut self, var: Var, value: f64) -> Self {
        match var {
            Var::S => self.s = value,
            Var::U => self.u = value,
            Var::V => self.v = value,
        }
        self
    }
}

/// A parsed scalar expression over the variables `s`, `u`, `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarExpr {
    root: Node,
}

impl ScalarExpr {
    pub fn parse(text: &str) -> Result<Self> {
        parse_expr(text)
    }

    pub fn constant(value: f64) -> Self {
        ScalarExpr { root: Node::Num(value) }
    }

    /// Evaluate at `p`. Domain violations and non-finite results are errors.
    pub fn eval(&self, p: &Point) -> Result<f64> {
        let x = eval_node(&self.root, p).map_err(Error::Eval)?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Eval(format!("non-finite result {x}")))
        }
    }

    pub fn eval_s(&self, s: f64) -> Result<f64> {
        self.eval(&Point::s(s))
    }

    /// True if the expression mentions `var`.
    pub fn uses(&self, var: Var) -> bool {
        fn walk(n: &Node, var: Var) -> bool {
            match n {
                Node::Num(_) => false,
                Node::Var(v) => *v == var,
                Node::Neg(a) | Node::Call(_, a) => walk(a, var),
                Node::Bin(_, a, b) => walk(a, var) || walk(b, var),
            }
        }
        walk(&self.root, var)
    }
}

impl FromStr for ScalarExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_expr(s)
    }
}

fn eval_node(n: &Node, p: &Point) -> std::result::Result<f64, String> {
    Ok(match n {
        Node::Num(x) => *x,
        Node::Var(v) => p.get(*v),
        Node::Neg(a) => -eval_node(a, p)?,
        Node::Call(f, a) => f.apply(eval_node(a, p)?)?,
        Node::Bin(op, a, b) => {
            let (x, y) = (eval_node(a, p)?, eval_node(b, p)?);
            match op {
                BinOp::Add => x + y,
                BinOp::Sub => x - y,
                BinOp::Mul => x * y,
                BinOp::Div => {
                    if y == 0.0 {
                        return Err("division by zero".into());
                    }
                    x / y
                }
                BinOp::Pow => {
                    let r = x.powf(y);
                    if r.is_nan() {
                        return Err(format!("{x}^{y} is undefined"));
                    }
                    r
                }
            }
        }
    })
}

// Printing is fully parenthesized so that parse(print(e)) rebuilds the same tree.
impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(&self.root, f)
    }
}

fn fmt_node(n: &Node, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match n {
        Node::Num(x) if *x < 0.0 => write!(f, "(-{:?})", -x),
        Node::Num(x) => write!(f, "{x:?}"),
        Node::Var(v) => f.write_str(v.name()),
        Node::Neg(a) => {
            f.write_str("(-")?;
            fmt_node(a, f)?;
            f.write_str(")")
        }
        Node::Call(func, a) => {
            write!(f, "{}(", func.name())?;
            fmt_node(a, f)?;
            f.write_str(")")
        }
        Node::Bin(op, a, b) => {
            let sym = match op {
                BinOp::Add => "+",
                BinOp::Sub => "-",
                BinOp::Mul => "*",
                BinOp::Div => "/",
                BinOp::Pow => "^",
            };
            f.write_str("(")?;
            fmt_node(a, f)?;
            write!(f, " {sym} ")?;
            fmt_node(b, f)?;
            f.write_str(")")
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokenize(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next_token()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn next_token(&mut self) -> Result<(Tok, usize)> {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'0'..=b'9' | b'.' => self.number()?,
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                Tok::Ident(self.src[start..self.pos].to_string())
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                self.pos += 1;
                Tok::Op(c as char)
            }
            b'(' => {
                self.pos += 1;
                Tok::LParen
            }
            b')' => {
                self.pos += 1;
                Tok::RParen
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    offset: start,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        Ok((tok, start))
    }

    fn number(&mut self) -> Result<Tok> {
        let start = self.pos;
        let digits = |lx: &mut Lexer| {
            let from = lx.pos;
            while matches!(lx.peek(), Some(b'0'..=b'9')) {
                lx.pos += 1;
            }
            lx.pos - from
        };
        let mut n = digits(self);
        if self.peek() == Some(b'.') {
            self.pos += 1;
            n += digits(self);
        }
        if n == 0 {
            return Err(Error::Syntax { offset: start, message: "malformed number".into() });
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                // `2e` is not an exponent; leave `e` for the identifier lexer.
                self.pos = save;
            }
        }
        let text = &self.src[start..self.pos];
        text.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Tok::Num)
            .ok_or_else(|| Error::Syntax { offset: start, message: format!("bad number `{text}`") })
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        while let Tok::Op(c @ ('+' | '-')) = *self.peek() {
            self.bump();
            let rhs = self.term()?;
            let op = if c == '+' { BinOp::Add } else { BinOp::Sub };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        while let Tok::Op(c @ ('*' | '/')) = *self.peek() {
            self.bump();
            let rhs = self.unary()?;
            let op = if c == '*' { BinOp::Mul } else { BinOp::Div };
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if *self.peek() == Tok::Op('^') {
            self.bump();
            let exp = self.unary()?;
            return Ok(Node::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(x) => Ok(Node::Num(x)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if *self.peek() == Tok::LParen {
                    let Some(func) = Func::lookup(&name) else {
                        return Err(Error::UnknownIdentifier { name, offset: at });
                    };
                    self.bump();
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Node::Call(func, Box::new(arg)));
                }
                match name.as_str() {
                    "s" => Ok(Node::Var(Var::S)),
                    "u" => Ok(Node::Var(Var::U)),
                    "v" => Ok(Node::Var(Var::V)),
                    "pi" => Ok(Node::Num(std::f64::consts::PI)),
                    "e" => Ok(Node::Num(std::f64::consts::E)),
                    _ => Err(Error::UnknownIdentifier { name, offset: at }),
                }
            }
            Tok::End => Err(Error::Syntax { offset: at, message: "unexpected end of input".into() }),
            Tok::RParen => Err(Error::Syntax { offset: at, message: "unexpected `)`".into() }),
            Tok::Op(c) => Err(Error::Syntax { offset: at, message: format!("unexpected `{c}`") }),
        }
    }

    fn expect_rparen(&mut self) -> Result<()> {
        if *self.peek() == Tok::RParen {
            self.bump();
            Ok(())
        } else {
            self.error("expected `)`")
        }
    }
}

/// Parse `text` into a [`ScalarExpr`].
pub fn parse_expr(text: &str) -> Result<ScalarExpr> {
    let toks = Lexer::tokenize(text)?;
    let mut p = Parser { toks, i: 0 };
    let root = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(ScalarExpr { root })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(text: &str, p: Point) -> Result<f64> {
        parse_expr(text)?.eval(&p)
    }

    #[test]
    fn examples() {
        assert_eq!(eval("cosh(2*s)", Point::s(0.0)).unwrap(), 1.0);
        assert_eq!(eval("u^2 - v^2", Point::uv(3.0, 2.0)).unwrap(), 5.0);
        assert!(matches!(eval("1/ (s-1)", Point::s(1.0)), Err(Error::Eval(_))));
    }

    #[test]
    fn precedence_and_associativity() {
        let p = Point::s(3.0);
        assert_eq!(eval("-s^2", p).unwrap(), -9.0);
        assert_eq!(eval("2^3^2", p).unwrap(), 512.0);
        assert_eq!(eval("2^-1", p).unwrap(), 0.5);
        assert_eq!(eval("8 - 3 - 2", p).unwrap(), 3.0);
        assert_eq!(eval("8 / 4 / 2", p).unwrap(), 1.0);
        assert_eq!(eval("1 + 2 * 3", p).unwrap(), 7.0);
        assert_eq!(eval("--s", p).unwrap(), 3.0);
        assert_eq!(eval("2*-s", p).unwrap(), -6.0);
        assert_eq!(eval("1.5e1 + 2E-1", p).unwrap(), 15.2);
        assert!((eval("2*pi*e", p).unwrap() - 2.0 * std::f64::consts::PI * std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = eval(" sin ( s )*\t2 ", Point::s(0.4)).unwrap();
        assert_eq!(a, 2.0 * 0.4f64.sin());
    }

    #[test]
    fn syntax_errors_carry_offsets() {
        match parse_expr("1 + * 2") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_expr("sin(s") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("{other:?}"),
        }
        match parse_expr("s $ 2") {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("(s))"), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_expr(""), Err(Error::Syntax { offset: 0, .. })));
    }

    #[test]
    fn unknown_identifiers() {
        assert_eq!(
            parse_expr("2*w"),
            Err(Error::UnknownIdentifier { name: "w".into(), offset: 2 })
        );
        assert!(matches!(parse_expr("foo(s)"), Err(Error::UnknownIdentifier { .. })));
    }

    #[test]
    fn domain_errors() {
        assert!(eval("log(s)", Point::s(0.0)).is_err());
        assert!(eval("sqrt(s)", Point::s(-1.0)).is_err());
        assert!(eval("(-2)^0.5", Point::s(0.0)).is_err());
        assert!(eval("exp(s)", Point::s(1e6)).is_err());
    }

    #[test]
    fn printing_reparses() {
        let e = parse_expr("-s^2 + 3*cosh(u - v)/(1 - -2) ^ 2").unwrap();
        let back = parse_expr(&e.to_string()).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn uses_variable() {
        let e = parse_expr("u*cos(v)").unwrap();
        assert!(e.uses(Var::U) && e.uses(Var::V) && !e.uses(Var::S));
    }
}
