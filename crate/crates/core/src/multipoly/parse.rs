//! Expression parser: `+ - * / ^`, parentheses, integer literals and identifiers.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{Poly, PolyError, RatFunc, Rat, Var};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(Var),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, PolyError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(src[s..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let v = Var::parse(&src[s..i]).ok_or_else(|| err(s, format!("invalid variable `{}`", &src[s..i])))?;
            out.push((s, Tok::Ident(v)));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(i, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

fn err(pos: usize, msg: String) -> PolyError {
    PolyError::Parse { pos, msg }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|_| err(pos, "division by zero".into()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, PolyError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, PolyError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let e = n.to_u32().ok_or_else(|| err(pos, "exponent too large".into()))?;
                Ok(base.pow(e))
            }
            _ => Err(err(pos, "expected a non-negative integer exponent".into())),
        }
    }

    fn atom(&mut self) -> Result<RatFunc, PolyError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(RatFunc::constant(Rat::from_integer(n)))
            }
            Some(Tok::Ident(v)) => {
                self.at += 1;
                Ok(RatFunc::from_poly(Poly::var(v)))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.pos(), "expected `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(err(pos, format!("unexpected token {t:?}"))),
            None => Err(err(pos, "unexpected end of input".into())),
        }
    }
}

/// Parses a rational expression.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, PolyError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(err(p.pos(), "trailing input".into()));
    }
    Ok(e)
}

/// Parses a polynomial; division is allowed only where it cancels exactly.
pub fn parse_poly(src: &str) -> Result<Poly, PolyError> {
    let r = parse_ratfunc(src)?;
    r.to_poly().ok_or_else(|| err(0, "expression is not a polynomial".into()))
}

/// Parses a comma-separated list of polynomials.
pub fn parse_poly_list(src: &str) -> Result<Vec<Poly>, PolyError> {
    if src.trim().is_empty() {
        return Ok(Vec::new());
    }
    src.split(',').map(parse_poly).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_and_precedence() {
        assert_eq!(parse_poly("3/2*z1").unwrap().to_string(), "3/2*z1");
        assert_eq!(parse_poly("-z1^2").unwrap().to_string(), "-z1^2");
        assert_eq!(parse_poly("2^3").unwrap().to_string(), "8");
        assert_eq!(parse_poly("(z1 + 1)^2").unwrap().to_string(), "z1^2 + 2*z1 + 1");
        assert_eq!(parse_poly(" z1 * z2 - - 1 ").unwrap().to_string(), "z1*z2 + 1");
        assert_eq!(parse_poly("D2z1*D1z1^2").unwrap().to_string(), "D1z1^2*D2z1");
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "z1 +", "(z1", "z1)", "z1 ^ z2", "z1 ^ -1", "3 $ 4", "1/0", "z1/z2", "1z"] {
            assert!(parse_poly(bad).is_err(), "{bad}");
        }
        assert!(parse_ratfunc("z1/z2").is_ok());
    }

    #[test]
    fn printer_round_trips() {
        for s in ["z1^3 - 1/7*z1*z2 + 5", "-t*D1z1 + 3*z1*D1t", "0", "-4/9"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn lists() {
        let l = parse_poly_list("1,z1,z1^2").unwrap();
        assert_eq!(l.len(), 3);
        assert!(parse_poly_list("1,,z1").is_err());
    }
}
