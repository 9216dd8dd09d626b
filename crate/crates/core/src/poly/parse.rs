//! Text form of polynomials: `[+|-] term ((+|-) term)*` where a term is an
//! optional rational coefficient `p` or `p/q` followed by `*`-separated
//! variable powers `xi^k`. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string"))
    }

    fn small(&mut self) -> Result<u32> {
        let at = self.pos;
        let v = self.digits()?;
        u32::try_from(v).map_err(|_| Error::Syntax { pos: at, msg: "number too large".into() })
    }
}

/// Parses a polynomial in variables `x1..xn`. The zero polynomial is
/// returned as an empty polynomial; callers that need a generator reject it.
pub fn parse_polynomial(text: &str, n: usize) -> Result<Polynomial> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms: Vec<(Rational, Monomial)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return cur.err("empty polynomial"),
            None => return cur.err("expected a term after sign"),
            Some(b'+') => {
                cur.pos += 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) if first => {}
            Some(c) => return cur.err(format!("expected '+' or '-', found '{}'", c as char)),
        }
        first = false;
        let (mut coeff, mono) = parse_term(&mut cur, n)?;
        if negative {
            coeff = -coeff;
        }
        terms.push((coeff, mono));
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(Polynomial::from_terms(n, terms))
}

fn parse_term(cur: &mut Cursor<'_>, n: usize) -> Result<(Rational, Monomial)> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; n];
    let mut need_factor = true;
    if matches!(cur.peek(), Some(c) if c.is_ascii_digit()) {
        let num = cur.digits()?;
        let den = if cur.eat(b'/') {
            let at = cur.pos;
            let d = cur.digits()?;
            if d.is_zero() {
                return Err(Error::Syntax { pos: at, msg: "zero denominator".into() });
            }
            d
        } else {
            BigInt::one()
        };
        coeff = Rational::new(num, den);
        need_factor = cur.eat(b'*');
        if !need_factor {
            return Ok((coeff, Monomial::new(exps)));
        }
    }
    loop {
        match cur.peek() {
            Some(b'x') => {
                let at = cur.pos;
                cur.pos += 1;
                let idx = cur.small()? as usize;
                if idx == 0 || idx > n {
                    return Err(Error::VariableOutOfRange { pos: at, index: idx, n });
                }
                let e = if cur.eat(b'^') { cur.small()? } else { 1 };
                exps[idx - 1] += e;
            }
            Some(c) if need_factor => {
                return cur.err(format!("expected a variable, found '{}'", c as char));
            }
            None if need_factor => return cur.err("expected a variable"),
            _ => unreachable!(),
        }
        if !cur.eat(b'*') {
            break;
        }
    }
    Ok((coeff, Monomial::new(exps)))
}
