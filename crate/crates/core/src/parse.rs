//! Text grammar for polynomials and operators.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary ("*" unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer ("/" integer)? | "x"<k> | "d"<k> | "(" expr ")"
//! ```
//!
//! Juxtaposition is rejected, so `2x1` and `x1 x2` are errors. Operator input
//! (`d<k>`) is normal-ordered as it is parsed.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratpoly::{Poly, Rational};
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X(usize),
    D(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    col: usize,
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    nvars: usize,
    allow_d: bool,
    line: usize,
    end_col: usize,
}

fn lex(src: &str, line: usize, col0: usize) -> Result<Vec<Lexed>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |col: usize, message: String| Error::Parse { line, column: col, message };
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Lexed { tok, col });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Lexed {
                tok: Tok::Num(s.parse().expect("digits")),
                col,
            });
            continue;
        }
        if c == 'x' || c == 'd' {
            let start = i + 1;
            let mut j = start;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(err(col, format!("expected an index after '{c}'")));
            }
            let s: String = chars[start..j].iter().collect();
            let k: usize = s
                .parse()
                .map_err(|_| err(col, format!("variable index '{s}' too large")))?;
            if k == 0 {
                return Err(err(col, "variable indices start at 1".into()));
            }
            out.push(Lexed {
                tok: if c == 'x' { Tok::X(k) } else { Tok::D(k) },
                col,
            });
            i = j;
            continue;
        }
        return Err(err(col, format!("unexpected character '{c}'")));
    }
    Ok(out)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |l| l.col)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col(),
            message: message.into(),
        }
    }

    fn expr(&mut self) -> Result<WeylElement> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylElement> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<WeylElement> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<WeylElement> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(k)) => u32::try_from(k.clone()).map_err(|_| self.error("exponent too large"))?,
                _ => return Err(self.error("expected a non-negative integer exponent")),
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn var_index(&self, k: usize) -> Result<usize> {
        if k > self.nvars {
            return Err(self.error(format!("variable index {k} exceeds n = {}", self.nvars)));
        }
        Ok(k - 1)
    }

    fn atom(&mut self) -> Result<WeylElement> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(self.error("unexpected end of expression")),
        };
        let out = match tok {
            Tok::Num(num) => {
                self.pos += 1;
                let mut value = Rational::from_integer(num);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    match self.peek() {
                        Some(Tok::Num(den)) if !den.is_zero() => {
                            value /= Rational::from_integer(den.clone());
                            self.pos += 1;
                        }
                        Some(Tok::Num(_)) => return Err(self.error("zero denominator")),
                        _ => return Err(self.error("expected an integer denominator")),
                    }
                }
                WeylElement::scalar(self.nvars, value)
            }
            Tok::X(k) => {
                let i = self.var_index(k)?;
                self.pos += 1;
                WeylElement::x(self.nvars, i)
            }
            Tok::D(k) => {
                if !self.allow_d {
                    return Err(self.error("derivative symbols are not allowed in a polynomial"));
                }
                let i = self.var_index(k)?;
                self.pos += 1;
                WeylElement::d(self.nvars, i)
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.error("expected a number, variable or '('")),
        };
        Ok(out)
    }
}

fn parse_impl(src: &str, nvars: usize, allow_d: bool, line: usize, col0: usize) -> Result<WeylElement> {
    let toks = lex(src, line, col0)?;
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
        allow_d,
        line,
        end_col: col0 + src.chars().count(),
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        let msg = match p.peek() {
            Some(Tok::RParen) => "unbalanced ')'",
            Some(Tok::Slash) => "'/' is only allowed inside rational literals",
            _ => "expected an operator (implicit multiplication is not allowed)",
        };
        return Err(p.error(msg));
    }
    Ok(out)
}

/// Parses a polynomial in `x1..x{nvars}`.
pub fn parse_poly(src: &str, nvars: usize) -> Result<Poly> {
    parse_poly_at(src, nvars, 1, 1)
}

/// As [`parse_poly`], reporting positions relative to `line` and starting column `col0`.
pub fn parse_poly_at(src: &str, nvars: usize, line: usize, col0: usize) -> Result<Poly> {
    let w = parse_impl(src, nvars, false, line, col0)?;
    Ok(w.as_poly().expect("no derivative symbols were accepted"))
}

/// Parses an operator in `x1..xN, d1..dN` and normal-orders it.
pub fn parse_weyl(src: &str, nvars: usize) -> Result<WeylElement> {
    parse_impl(src, nvars, true, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::{ratio, Monomial};

    #[test]
    fn literals_and_precedence() {
        let p = parse_poly("x1 + 2*x2^2 - 1/3", 2).unwrap();
        assert_eq!(p.coeff(&Monomial::from_exponents(vec![0, 2])), ratio(2, 1));
        assert_eq!(p.constant_term(), ratio(-1, 3));
        assert_eq!(parse_poly("-x1^2", 1).unwrap(), -parse_poly("x1*x1", 1).unwrap());
        assert_eq!(parse_poly("2^3", 1).unwrap().constant_term(), ratio(8, 1));
        assert_eq!(parse_poly("6/4", 1).unwrap().constant_term(), ratio(3, 2));
    }

    #[test]
    fn operators_are_normal_ordered() {
        let w = parse_weyl("d1*x1", 1).unwrap();
        assert_eq!(w.to_string(), "x1*d1 + 1");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_poly("x1 + 2x2", 2).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 1,
                column: 7,
                message: "expected an operator (implicit multiplication is not allowed)".into()
            }
        );
        match parse_poly("x3", 2).unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 1),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("d1", 1).is_err());
        assert!(parse_poly("x1 +", 1).is_err());
        assert!(parse_poly("(x1", 1).is_err());
        assert!(parse_poly("x1)", 1).is_err());
        assert!(parse_poly("1/0", 1).is_err());
        assert!(parse_poly("x1^x1", 1).is_err());
        assert!(parse_poly("x0", 1).is_err());
        assert!(parse_poly("x1 / 2", 1).is_err());
        match parse_poly_at("x1 $", 1, 4, 10).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (4, 13)),
            other => panic!("{other:?}"),
        }
    }
}
