//! Text and LaTeX rendering, plus a small parser for the text format
//! (`2*x2*x3 + x3^2 - y1 + 1`, with parentheses and implicit products).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};

fn monomial_factors(m: &Monomial, latex: bool) -> Vec<String> {
    let mut out = Vec::new();
    for (name, exps) in [("x", &m.x), ("y", &m.y)] {
        for (i, &e) in exps.iter().enumerate() {
            let v = if latex { format!("{name}_{{{}}}", i + 1) } else { format!("{name}{}", i + 1) };
            match e {
                0 => {}
                1 => out.push(v),
                e if latex => out.push(format!("{v}^{{{e}}}")),
                e => out.push(format!("{v}^{e}")),
            }
        }
    }
    out
}

fn render(p: &MultiPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let (sep, mul) = if latex { (" ", " ") } else { ("*", "*") };
    let mut s = String::new();
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let mag = c.abs();
        let factors = monomial_factors(m, latex);
        if factors.is_empty() {
            s.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                s.push_str(&mag.to_string());
                s.push_str(sep);
            }
            s.push_str(&factors.join(mul));
        }
    }
    s
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, false))
    }
}

impl MultiPoly {
    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

/// Parses the text format into a polynomial of ambient size `n`.
pub fn parse(s: &str, n: usize) -> Result<MultiPoly> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, n };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.n);
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            if negate {
                acc -= &t;
            } else {
                acc += &t;
            }
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                }
                Some(c) if c == b'(' || c == b'x' || c == b'y' || c.is_ascii_digit() => {}
                _ => return Ok(acc),
            }
            acc = &acc * &self.power()?;
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("decimal digits"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c @ (b'x' | b'y')) => {
                self.pos += 1;
                let i = self.uint()?;
                let i: usize = usize::try_from(i).map_err(|_| self.err("bad index"))?;
                if i == 0 || i > self.n {
                    return Err(self.err(&format!("variable index {i} outside 1..={}", self.n)));
                }
                Ok(if c == b'x' { MultiPoly::x(self.n, i) } else { MultiPoly::y(self.n, i) })
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                Ok(MultiPoly::constant(self.n, v))
            }
            _ => Err(self.err("expected a number, variable, or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_graded_lex_descending() {
        let p = parse("1 + 2*x3 + x2 + x3^2 + 2*x2*x3 + x1*x2 + x2*x3^2", 3).unwrap();
        assert_eq!(p.to_string(), "x2*x3^2 + x1*x2 + 2*x2*x3 + x3^2 + x2 + 2*x3 + 1");
        assert_eq!(parse("-x1 + x2", 2).unwrap().to_string(), "-x1 + x2");
        assert_eq!(parse("x1 - y1", 2).unwrap().to_string(), "x1 - y1");
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
        assert_eq!(parse("-3", 2).unwrap().to_string(), "-3");
    }

    #[test]
    fn latex() {
        let p = parse("x1^2*x2 - 2*y3 + 1", 3).unwrap();
        assert_eq!(p.to_latex(), "x_{1}^{2} x_{2} - 2 y_{3} + 1");
    }

    #[test]
    fn parses_products_and_parentheses() {
        let a = parse("(1+x2-y1)(1+x3-y1)*(1+x3-y2)+(x2-y1)*(x1-y1)", 3).unwrap();
        let b = parse("(1 + x2 - y1)^1 * (x3 - y1 + 1) * (1 + x3 - y2) + x2*x1 - x2*y1 - y1*x1 + y1^2", 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(parse("2x1", 2).unwrap(), parse("x1 + x1", 2).unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(parse("x4", 3).is_err());
        assert!(parse("x0", 3).is_err());
        assert!(parse("x1 +", 3).is_err());
        assert!(parse("(x1", 3).is_err());
        assert!(parse("x1 ) ", 3).is_err());
    }

    #[test]
    fn display_parse_roundtrip() {
        let p = parse("3*x1^2*y2 - 7*x2 + y1^3 - 11", 2).unwrap();
        assert_eq!(parse(&p.to_string(), 2).unwrap(), p);
    }
}
