//! Text format for integer-coefficient polynomials in the variables
//! x, y, z, u, v, w, s, t with operators `+ - * ^`. Whitespace is ignored.
//! The printer emits this same grammar, so print/parse round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Mono, MultiPoly, QPoly, Vars};
use crate::{Error, Result};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Int(BigInt),
    Var(usize),
    End,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<Tok> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(Tok::End);
        }
        let c = self.src[self.pos];
        match c {
            b'+' => {
                self.pos += 1;
                Ok(Tok::Plus)
            }
            b'-' => {
                self.pos += 1;
                Ok(Tok::Minus)
            }
            b'*' => {
                self.pos += 1;
                Ok(Tok::Star)
            }
            b'^' => {
                self.pos += 1;
                Ok(Tok::Caret)
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Tok::Int(text.parse().unwrap()))
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match Vars::canonical().index_of(name) {
                    Some(i) => Ok(Tok::Var(i)),
                    None => {
                        self.pos = start;
                        Err(Error::UnknownVariable(name.to_string()))
                    }
                }
            }
            other => Err(self.err(format!("unexpected byte {:?}", other as char))),
        }
    }

    fn peek(&mut self) -> Result<Tok> {
        let save = self.pos;
        let t = self.next();
        self.pos = save;
        t
    }
}

/// Parse the polynomial text format over the canonical variables.
pub fn parse_poly(src: &str) -> Result<QPoly> {
    let vars = Vars::canonical();
    let mut lx = Lexer::new(src);
    let mut out = MultiPoly::zero(&vars);

    // leading sign
    let mut sign = BigInt::from(1);
    match lx.peek()? {
        Tok::Minus => {
            lx.next()?;
            sign = BigInt::from(-1);
        }
        Tok::Plus => {
            lx.next()?;
        }
        Tok::End => return Err(lx.err("empty input")),
        _ => {}
    }

    loop {
        let (mono, coeff) = parse_term(&mut lx, &vars)?;
        out.insert_term(mono, BigRational::from(&sign * coeff));
        match lx.next()? {
            Tok::Plus => sign = BigInt::from(1),
            Tok::Minus => sign = BigInt::from(-1),
            Tok::End => break,
            _ => return Err(lx.err("expected '+', '-' or end of input")),
        }
    }
    Ok(out)
}

fn parse_term(lx: &mut Lexer, vars: &Vars) -> Result<(Mono, BigInt)> {
    let mut coeff = BigInt::from(1);
    let mut mono = Mono::one(vars.len());
    let mut saw_factor = false;
    loop {
        match lx.peek()? {
            Tok::Int(_) => {
                let Tok::Int(v) = lx.next()? else { unreachable!() };
                coeff *= v;
                saw_factor = true;
            }
            Tok::Var(_) => {
                let Tok::Var(i) = lx.next()? else { unreachable!() };
                let mut e: u32 = 1;
                if lx.peek()? == Tok::Caret {
                    lx.next()?;
                    match lx.next()? {
                        Tok::Int(v) => {
                            e = u32::try_from(&v)
                                .map_err(|_| lx.err("exponent out of range"))?;
                        }
                        _ => return Err(lx.err("expected integer exponent after '^'")),
                    }
                }
                let cur = mono.0[i] as u32 + e;
                if cur > u8::MAX as u32 {
                    return Err(lx.err("exponent too large"));
                }
                mono.0[i] = cur as u8;
                saw_factor = true;
            }
            _ => {
                if !saw_factor {
                    return Err(lx.err("expected a coefficient or variable"));
                }
                return Ok((mono, coeff));
            }
        }
        // optional '*' between factors
        if lx.peek()? == Tok::Star {
            lx.next()?;
            // after '*' a factor must follow
            match lx.peek()? {
                Tok::Int(_) | Tok::Var(_) => {}
                _ => return Err(lx.err("expected a factor after '*'")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_garbage_with_position() {
        let err = parse_poly("x + $").unwrap_err();
        match err {
            Error::Parse { pos, .. } => assert_eq!(pos, 4),
            other => panic!("wrong error {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_variable() {
        assert!(matches!(parse_poly("x + q"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn implicit_multiplication_is_not_allowed_but_star_is() {
        assert!(parse_poly("2*x^2*y").is_ok());
        // juxtaposed factors without '*' also parse (3x) since the grammar
        // treats consecutive factors as a product
        assert!(parse_poly("3 x").is_ok());
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_poly("x^2+y * z").unwrap();
        let b = parse_poly("  x ^ 2 + y*z ").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn signs() {
        let f = parse_poly("-x - 3*y").unwrap();
        let g = parse_poly("0 - x - 3*y").unwrap();
        assert_eq!(f, g);
    }
}
