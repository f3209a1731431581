//! Arithmetic expressions for user-defined map components.
//!
//! Grammar:
//!
//! ```text
//! guard   := expr cmp expr            cmp ∈ { <, <=, ==, !=, >=, > }
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | primary
//! primary := number | 'x' digits | func '(' expr (',' expr)* ')' | '(' expr ')'
//! func    := abs | min | max
//! ```
//!
//! Variables are 1-based (`x1`, `x2`, ...). Literals are parsed as `f64` and
//! converted to the evaluation scalar.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Abs,
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    /// Zero-based variable index.
    Var(usize),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Cmp {
    fn holds<T: PartialOrd>(self, a: T, b: T) -> bool {
        match self {
            Cmp::Lt => a < b,
            Cmp::Le => a <= b,
            Cmp::Eq => a == b,
            Cmp::Ne => a != b,
            Cmp::Ge => a >= b,
            Cmp::Gt => a > b,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Lt => "<",
            Cmp::Le => "<=",
            Cmp::Eq => "==",
            Cmp::Ne => "!=",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
        }
    }
}

/// A comparison selecting a piecewise branch.
#[derive(Clone, Debug, PartialEq)]
pub struct Guard {
    pub lhs: Expr,
    pub cmp: Cmp,
    pub rhs: Expr,
}

impl Guard {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser::new(src)?;
        let lhs = p.expr()?;
        let cmp = match p.peek() {
            Some(Tok::Cmp(c)) => {
                let c = *c;
                p.bump();
                c
            }
            _ => return Err(p.error("expected comparison operator (<, <=, ==, !=, >=, >)")),
        };
        let rhs = p.expr()?;
        p.finish()?;
        Ok(Self { lhs, cmp, rhs })
    }

    pub fn holds<T: Scalar>(&self, vars: &[T]) -> bool {
        self.cmp.holds(self.lhs.eval(vars), self.rhs.eval(vars))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.lhs.max_var().max(self.rhs.max_var())
    }
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser::new(src)?;
        let e = p.expr()?;
        p.finish()?;
        Ok(e)
    }

    pub fn eval<T: Scalar>(&self, vars: &[T]) -> T {
        match self {
            Expr::Num(v) => T::cast(*v),
            Expr::Var(i) => vars[*i],
            Expr::Neg(e) => -e.eval(vars),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(vars), b.eval(vars));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                }
            }
            Expr::Call(f, args) => {
                let mut vals = args.iter().map(|a| a.eval(vars));
                match f {
                    Func::Abs => vals.next().map(|v| v.abs()).unwrap_or_else(T::nan),
                    Func::Min => vals.reduce(T::min).unwrap_or_else(T::nan),
                    Func::Max => vals.reduce(T::max).unwrap_or_else(T::nan),
                }
            }
        }
    }

    /// Highest zero-based variable index referenced, if any.
    pub fn max_var(&self) -> Option<usize> {
        match self {
            Expr::Num(_) => None,
            Expr::Var(i) => Some(*i),
            Expr::Neg(e) => e.max_var(),
            Expr::Bin(_, a, b) => a.max_var().max(b.max_var()),
            Expr::Call(_, args) => args.iter().filter_map(Expr::max_var).max(),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var(i) => write!(f, "x{}", i + 1),
            Expr::Neg(e) => write!(f, "(-{e})"),
            Expr::Bin(op, a, b) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write!(f, "({a} {s} {b})")
            }
            Expr::Call(func, args) => {
                let name = match func {
                    Func::Abs => "abs",
                    Func::Min => "min",
                    Func::Max => "max",
                };
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.cmp.symbol(), self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Cmp(Cmp),
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let err = |col: usize, msg: String| Error::Parse {
        source_text: src.to_string(),
        column: col + 1,
        message: msg,
    };
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '<' | '>' | '=' | '!' => {
                let next_eq = chars.get(i + 1) == Some(&'=');
                let cmp = match (c, next_eq) {
                    ('<', true) => Cmp::Le,
                    ('<', false) => Cmp::Lt,
                    ('>', true) => Cmp::Ge,
                    ('>', false) => Cmp::Gt,
                    ('=', true) => Cmp::Eq,
                    ('!', true) => Cmp::Ne,
                    _ => return Err(err(i, format!("unexpected character '{c}'"))),
                };
                if next_eq {
                    i += 1;
                }
                Tok::Cmp(cmp)
            }
            d if d.is_ascii_digit() || d == '.' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                    let mut k = j + 1;
                    if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                let v = text
                    .parse::<f64>()
                    .map_err(|_| err(i, format!("invalid number '{text}'")))?;
                i = j;
                out.push((Tok::Num(v), start));
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let name: String = chars[i..j].iter().collect();
                i = j;
                out.push((Tok::Ident(name), start));
                continue;
            }
            other => return Err(err(i, format!("unexpected character '{other}'"))),
        };
        i += 1;
        out.push((tok, start));
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self> {
        Ok(Self {
            src,
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn column(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or_else(|| self.src.chars().count())
            + 1
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            source_text: self.src.to_string(),
            column: self.column(),
            message: msg.to_string(),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.error("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let col_err = self.error("expected a number, variable, function call or '('");
        match self.bump() {
            Some(Tok::Num(v)) => Ok(Expr::Num(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "expected ')'")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => self.ident(name),
            _ => Err(col_err),
        }
    }

    fn ident(&mut self, name: String) -> Result<Expr> {
        let func = match name.as_str() {
            "abs" => Some(Func::Abs),
            "min" => Some(Func::Min),
            "max" => Some(Func::Max),
            _ => None,
        };
        if let Some(func) = func {
            self.expect(Tok::LParen, "expected '(' after function name")?;
            let mut args = vec![self.expr()?];
            while self.peek() == Some(&Tok::Comma) {
                self.bump();
                args.push(self.expr()?);
            }
            self.expect(Tok::RParen, "expected ')' closing the argument list")?;
            let ok = match func {
                Func::Abs => args.len() == 1,
                Func::Min | Func::Max => args.len() >= 2,
            };
            if !ok {
                self.pos -= 1;
                return Err(self.error(&format!("wrong number of arguments for {name}")));
            }
            return Ok(Expr::Call(func, args));
        }
        if let Some(digits) = name.strip_prefix('x') {
            if let Ok(k) = digits.parse::<usize>() {
                if k >= 1 && !digits.starts_with('0') {
                    return Ok(Expr::Var(k - 1));
                }
            }
        }
        self.pos -= 1;
        Err(self.error(&format!(
            "unknown identifier '{name}' (variables are x1, x2, ...; functions abs, min, max)"
        )))
    }

    fn expect(&mut self, tok: Tok, msg: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(msg))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(src: &str, vars: &[f64]) -> f64 {
        Expr::parse(src).unwrap().eval(vars)
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("1 + 2 * 3", &[]), 7.0);
        assert_eq!(ev("(1 + 2) * 3", &[]), 9.0);
        assert_eq!(ev("8 / 4 / 2", &[]), 1.0);
        assert_eq!(ev("10 - 4 - 3", &[]), 3.0);
        assert_eq!(ev("-2 * -3", &[]), 6.0);
        assert_eq!(ev("--1", &[]), 1.0);
        assert_eq!(ev("1.5e1 + .5", &[]), 15.5);
    }

    #[test]
    fn variables_and_functions() {
        assert_eq!(ev("1 - x1", &[0.25]), 0.75);
        assert_eq!(ev("6*x2 - x1", &[1.0, 2.0]), 11.0);
        assert_eq!(ev("abs(x1 - x2)", &[1.0, 3.0]), 2.0);
        assert_eq!(ev("min(x1, x2, 0)", &[1.0, 3.0]), 0.0);
        assert_eq!(ev("max(x1, x2)", &[1.0, 3.0]), 3.0);
        assert_eq!(Expr::parse("x2 + x10").unwrap().max_var(), Some(9));
        assert_eq!(Expr::parse("3").unwrap().max_var(), None);
    }

    #[test]
    fn guards() {
        let g = Guard::parse("x1 - x2 == 0").unwrap();
        assert!(g.holds(&[2.0, 2.0]));
        assert!(!g.holds(&[2.0, 1.0]));
        assert!(Guard::parse("x1 != x2").unwrap().holds(&[2.0, 1.0]));
        assert!(Guard::parse("x1 <= 0.5").unwrap().holds(&[0.5]));
        assert!(!Guard::parse("x1 < 0.5").unwrap().holds(&[0.5]));
    }

    fn column_of(r: Result<impl std::fmt::Debug>) -> usize {
        match r.unwrap_err() {
            Error::Parse { column, .. } => column,
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(column_of(Expr::parse("1 + * 2")), 5);
        assert_eq!(column_of(Expr::parse("1 + y")), 5);
        assert_eq!(column_of(Expr::parse("(1 + 2")), 7);
        assert_eq!(column_of(Expr::parse("1 $ 2")), 3);
        assert_eq!(column_of(Expr::parse("x0")), 1);
        assert_eq!(column_of(Expr::parse("abs(1, 2)")), 9);
        assert_eq!(column_of(Expr::parse("1 2")), 3);
        assert_eq!(column_of(Guard::parse("x1 + 1")), 7);
    }

    #[test]
    fn generic_evaluation() {
        let e = Expr::parse("2*x1 - x2").unwrap();
        assert_eq!(e.eval(&[1.5f32, 1.0]), 2.0f32);
    }
}
