//! Text form of polynomials.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! poly   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | var | '(' poly ')'
//! var    := 'x' uint            (1-indexed)
//! ```
//!
//! Division is only allowed by a nonzero constant. There is no implicit
//! multiplication, so `x12` is always the twelfth variable.
//!
//! The canonical printer writes terms in descending graded-lex order with
//! explicit `*`, `^` powers and unit coefficients suppressed; its output
//! reparses to the same polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{GnError, Result};
use crate::poly::{MultiPoly, Rational};

/// A parsed expression along with its source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedExpr {
    pub source: String,
    pub poly: MultiPoly,
    pub nvars: usize,
}

impl ParsedExpr {
    pub fn parse(source: &str, nvars: Option<usize>) -> Result<Self> {
        let poly = parse_polynomial(source, nvars)?;
        Ok(ParsedExpr {
            source: source.to_string(),
            nvars: poly.nvars(),
            poly,
        })
    }
}

/// Parses `text` into a polynomial. Without an explicit `nvars` the
/// variable count is the largest index that occurs (at least 1).
pub fn parse_polynomial(text: &str, nvars: Option<usize>) -> Result<MultiPoly> {
    let tokens = tokenize(text)?;
    let max_index = tokens
        .iter()
        .filter_map(|t| match t.kind {
            TokenKind::Var(i) => Some(i),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    let n = match nvars {
        Some(n) => {
            if let Some(t) = tokens
                .iter()
                .find(|t| matches!(t.kind, TokenKind::Var(i) if i > n))
            {
                return Err(t.error(format!("variable index exceeds the {n} declared variables")));
            }
            n
        }
        None => max_index.max(1),
    };
    let mut parser = Parser {
        tokens,
        pos: 0,
        nvars: n,
        text,
    };
    let p = parser.poly()?;
    if let Some(t) = parser.peek() {
        return Err(t.error("unexpected trailing input".into()));
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Int(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    line: usize,
    column: usize,
}

impl Token {
    fn error(&self, message: String) -> GnError {
        GnError::Parse {
            line: self.line,
            column: self.column,
            message,
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, column);
        let err = |message: String| GnError::Parse {
            line: tl,
            column: tc,
            message,
        };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '-' => Some(TokenKind::Minus),
            '*' => Some(TokenKind::Star),
            '/' => Some(TokenKind::Slash),
            '^' => Some(TokenKind::Caret),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            tokens.push(Token {
                kind,
                line: tl,
                column: tc,
            });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            column += i - start;
            tokens.push(Token {
                kind: TokenKind::Int(digits.parse().expect("ascii digits")),
                line: tl,
                column: tc,
            });
            continue;
        }
        if c == 'x' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(err("expected a variable index after 'x'".into()));
            }
            let digits: String = chars[start..j].iter().collect();
            let index: usize = digits
                .parse()
                .map_err(|_| err("variable index too large".into()))?;
            if index == 0 {
                return Err(err("variables are 1-indexed; x0 is not allowed".into()));
            }
            column += j - i;
            i = j;
            tokens.push(Token {
                kind: TokenKind::Var(index),
                line: tl,
                column: tc,
            });
            continue;
        }
        return Err(err(format!("unexpected character '{c}'")));
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    nvars: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn end_error(&self, message: &str) -> GnError {
        let line = self.text.lines().count().max(1);
        let column = self.text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        GnError::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn next_token(&mut self, expected: &str) -> Result<Token> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(self.end_error(&format!("unexpected end of input, expected {expected}"))),
        }
    }

    fn poly(&mut self) -> Result<MultiPoly> {
        let mut negate = false;
        match self.peek().map(|t| &t.kind) {
            Some(TokenKind::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(TokenKind::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        while let Some(kind) = self.peek().map(|t| t.kind.clone()) {
            match kind {
                TokenKind::Plus => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                TokenKind::Minus => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek().cloned() {
            match tok.kind {
                TokenKind::Star => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                TokenKind::Slash => {
                    self.pos += 1;
                    let at = self.peek().cloned().unwrap_or(tok);
                    let d = self.factor()?;
                    if !d.is_constant() {
                        return Err(at.error("division is only allowed by a constant".into()));
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        return Err(at.error("division by zero".into()));
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(TokenKind::Caret) = self.peek().map(|t| &t.kind) {
            self.pos += 1;
            let tok = self.next_token("an exponent")?;
            let TokenKind::Int(e) = &tok.kind else {
                return Err(tok.error("exponent must be a non-negative integer".into()));
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| tok.error("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let tok = self.next_token("a number, variable or '('")?;
        match &tok.kind {
            TokenKind::Int(v) => Ok(MultiPoly::constant(
                self.nvars,
                Rational::from_integer(v.clone()),
            )),
            TokenKind::Var(i) => Ok(MultiPoly::var(self.nvars, i - 1)),
            TokenKind::LParen => {
                let inner = self.poly()?;
                let close = self.next_token("')'")?;
                if close.kind != TokenKind::RParen {
                    return Err(close.error("expected ')'".into()));
                }
                Ok(inner)
            }
            _ => Err(tok.error("expected a number, variable or '('".into())),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, exps: &[u32]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{}", i + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write_monomial(f, m.exps())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn canonical_cubic() {
        let p = parse_polynomial("x1^2*x3 + x1*x2*x4 + x2^2*x5", None).unwrap();
        let n = 5;
        let expected = &(&(&x(n, 0).pow(2) * &x(n, 2)) + &(&(&x(n, 0) * &x(n, 1)) * &x(n, 3)))
            + &(&x(n, 1).pow(2) * &x(n, 4));
        assert_eq!(p, expected);
        assert_eq!(p.to_string(), "x1^2*x3 + x1*x2*x4 + x2^2*x5");
    }

    #[test]
    fn expands_powers_of_sums() {
        let p = parse_polynomial("(x1+x2)^3", None).unwrap();
        assert_eq!(p.to_string(), "x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3");
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_polynomial("3/2*x1 - x1/2", None).unwrap();
        assert_eq!(p, x(1, 0));
        let q = parse_polynomial("-3/2*x1*x2 + 1/3", Some(3)).unwrap();
        assert_eq!(q.to_string(), "-3/2*x1*x2 + 1/3");
        assert_eq!(q.nvars(), 3);
        assert_eq!(q.constant_term(), rat(1, 3));
    }

    #[test]
    fn rejects_x0_and_garbage() {
        let err = parse_polynomial("x1 + x0", None).unwrap_err();
        assert_eq!(
            err,
            GnError::Parse {
                line: 1,
                column: 6,
                message: "variables are 1-indexed; x0 is not allowed".into()
            }
        );
        assert!(parse_polynomial("x1 x2", None).is_err());
        assert!(parse_polynomial("x1 +", None).is_err());
        assert!(parse_polynomial("x1/x2", None).is_err());
        assert!(parse_polynomial("x1/0", None).is_err());
        assert!(parse_polynomial("(x1", None).is_err());
        assert!(parse_polynomial("x3", Some(2)).is_err());
    }

    #[test]
    fn error_positions_track_lines() {
        let err = parse_polynomial("x1 +\n  x2 ?", None).unwrap_err();
        assert!(matches!(
            err,
            GnError::Parse {
                line: 2,
                column: 6,
                ..
            }
        ));
    }

    #[test]
    fn prints_negative_leading_and_constants() {
        let p = parse_polynomial("-x1 + 2 - x2^2", None).unwrap();
        assert_eq!(p.to_string(), "-x2^2 - x1 + 2");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }
}
