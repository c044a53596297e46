//! Text grammar for field elements, shared with the script language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := "-" unary | power
//! power  := atom ("^" INT)?
//! atom   := INT | "eps" | "sqrt" "(" expr ")" | "(" expr ")"
//! ```

use std::fmt;

use num::bigint::BigInt;
use num::ToPrimitive;

use super::{Base, FieldElement, FieldError, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Int(BigInt),
    Ident(String),
    Str(String),
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Str(s) => write!(f, "{s:?}"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

/// Syntax error with a 1-based position and the set of acceptable tokens.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at {line}:{column}: expected {}, found {found}", expected.join(" or "))]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, column, what: &str, found: String| SyntaxError {
        line,
        column,
        expected: vec![what.to_string()],
        found,
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Int(s.parse().unwrap()), line: l0, column: c0 });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(s), line: l0, column: c0 });
            continue;
        }
        if c == '"' {
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i] != '"' && chars[i] != '\n' {
                i += 1;
            }
            if i >= chars.len() || chars[i] != '"' {
                return Err(err(l0, c0, "closing '\"'", "end of line".into()));
            }
            let s: String = chars[start..i].iter().collect();
            i += 1;
            col += s.chars().count() + 2;
            out.push(Spanned { tok: Tok::Str(s), line: l0, column: c0 });
            continue;
        }
        if "+-*/^(),;=".contains(c) {
            out.push(Spanned { tok: Tok::Sym(c), line: l0, column: c0 });
            i += 1;
            col += 1;
            continue;
        }
        return Err(err(l0, c0, "a token", format!("{c:?}")));
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

/// Token cursor with recursive-descent helpers.
pub struct Cursor {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Cursor {
    pub fn new(toks: Vec<Spanned>) -> Self {
        Cursor { toks, pos: 0 }
    }

    pub fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    pub fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    pub fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }

    pub fn error(&self, expected: &[&str]) -> SyntaxError {
        let t = self.peek();
        SyntaxError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.to_string(),
        }
    }

    pub fn expect_sym(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.at_sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> Result<String, SyntaxError> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&[what])),
        }
    }

    pub fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.at_sym('+') {
                BinOp::Add
            } else if self.at_sym('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.at_sym('*') {
                BinOp::Mul
            } else if self.at_sym('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.at_sym('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.at_sym('^') {
            self.bump();
            return match &self.peek().tok {
                Tok::Int(n) if n.to_u32().is_some() => {
                    let k = n.to_u32().unwrap();
                    self.bump();
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => Err(self.error(&["integer exponent"])),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        const EXPECTED: &[&str] = &["integer", "eps", "sqrt", "'('", "'-'"];
        match self.peek().tok.clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) if s == "eps" => {
                self.bump();
                Ok(Expr::Eps)
            }
            Tok::Ident(s) if s == "sqrt" => {
                self.bump();
                self.expect_sym('(')?;
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(Expr::Sqrt(Box::new(e)))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(Expr::Paren(Box::new(e)))
            }
            _ => Err(self.error(EXPECTED)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field expression. Parentheses are kept so that printing reproduces
/// the parsed tree exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Eps,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>),
    Paren(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("{0}")]
    Field(#[from] FieldError),
    #[error("eps is only available over the non-Archimedean field")]
    NoInfinitesimal,
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Int(n.into())
    }

    pub fn eval<B: Base>(&self) -> Result<FieldElement<B>, EvalError> {
        Ok(match self {
            Expr::Int(n) => FieldElement::from_rational(&Rational::from_integer(n.clone())),
            Expr::Eps => FieldElement::eps().ok_or(EvalError::NoInfinitesimal)?,
            Expr::Neg(e) => -e.eval::<B>()?,
            Expr::Paren(e) => e.eval()?,
            Expr::Bin(op, l, r) => {
                let (l, r) = (l.eval::<B>()?, r.eval::<B>()?);
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => l.checked_div(&r)?,
                }
            }
            Expr::Pow(e, k) => {
                let b = e.eval::<B>()?;
                let mut acc = FieldElement::one();
                for _ in 0..*k {
                    acc = &acc * &b;
                }
                acc
            }
            Expr::Sqrt(e) => e.eval::<B>()?.sqrt_nonneg()?,
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Eps => f.write_str("eps"),
            Expr::Neg(e) => write!(f, "-{e}"),
            Expr::Paren(e) => write!(f, "({e})"),
            Expr::Sqrt(e) => write!(f, "sqrt({e})"),
            Expr::Pow(e, k) => write!(f, "{e}^{k}"),
            Expr::Bin(op, l, r) => {
                let s = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                };
                write!(f, "{l}{s}{r}")
            }
        }
    }
}

impl Expr {
    /// Whether the tree can be printed without inserting parentheses,
    /// i.e. every grouping that differs from precedence is an explicit
    /// [`Expr::Paren`]. Trees produced by the parser always satisfy this.
    pub fn is_printable(&self) -> bool {
        match self {
            Expr::Int(_) | Expr::Eps => true,
            Expr::Paren(e) | Expr::Sqrt(e) => e.is_printable(),
            Expr::Neg(e) => e.prec() >= 3 && e.is_printable(),
            Expr::Pow(e, _) => e.prec() == 5 && e.is_printable(),
            Expr::Bin(_, l, r) => {
                let p = self.prec();
                l.prec() >= p && r.prec() > p && l.is_printable() && r.is_printable()
            }
        }
    }
}

/// Parses a complete expression in the field grammar.
pub fn parse_expr(src: &str) -> Result<Expr, SyntaxError> {
    let mut c = Cursor::new(lex(src)?);
    let e = c.expr()?;
    if !c.at_eof() {
        return Err(c.error(&["end of input"]));
    }
    Ok(e)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Parses the canonical text form (or any expression in the same grammar).
pub fn parse_element<B: Base>(src: &str) -> Result<FieldElement<B>, ParseError> {
    Ok(parse_expr(src)?.eval()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Constructible as C, NaNumber as N};

    #[test]
    fn parse_and_eval() {
        assert_eq!(parse_element::<Rational>("1/2+1/3").unwrap(), C::ratio(5, 6));
        assert_eq!(parse_element::<Rational>("-2^2").unwrap(), C::from_int(-4));
        assert_eq!(parse_element::<Rational>("(1-2)*3").unwrap(), C::from_int(-3));
        let r = parse_element::<Rational>("sqrt(3)/2").unwrap();
        assert_eq!(r.square(), C::ratio(3, 4));
    }

    #[test]
    fn eps_needs_nonarch() {
        assert!(matches!(
            parse_element::<Rational>("eps"),
            Err(ParseError::Eval(EvalError::NoInfinitesimal))
        ));
        assert_eq!(parse_element::<crate::field::RatFunc>("eps").unwrap(), N::eps().unwrap());
    }

    #[test]
    fn render_parse_roundtrip() {
        let x = C::one() + C::from_int(2).sqrt_nonneg().unwrap();
        let y = (C::from_int(3).sqrt_nonneg().unwrap() + &x) * C::ratio(-2, 7);
        for v in [x, y, C::ratio(-5, 6)] {
            assert_eq!(parse_element::<Rational>(&v.render()).unwrap(), v);
        }
        let e = N::eps().unwrap();
        let z = (&e + N::from_int(4)).sqrt_nonneg().unwrap() / (N::one() + &e * &e);
        assert_eq!(parse_element::<crate::field::RatFunc>(&z.render()).unwrap(), z);
    }

    #[test]
    fn syntax_error_position() {
        let e = parse_expr("1 + ").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(e.expected.contains(&"integer".to_string()));
    }

    #[test]
    fn print_is_identity() {
        for s in ["1+2*3", "(1+2)*3", "-1/2", "sqrt(3)/2", "1-(2-3)", "2*eps^3", "--1"] {
            let e = parse_expr(s).unwrap();
            assert!(e.is_printable());
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
        }
    }
}
