//! Polynomial input grammar: integer and rational literals, the variables
//! `x`, `y`, `t`, the operators `+ - * / ^` (division only by nonzero
//! constants, exponents explicit nonnegative integers), and parentheses.
//! Whitespace is ignored.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::{Rationals, Q};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};

/// Sparse polynomial in `(x, y, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Sparse(BTreeMap<[u32; 3], Q>);

impl Sparse {
    fn constant(c: Q) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert([0, 0, 0], c);
        }
        Sparse(m)
    }

    fn var(idx: usize) -> Self {
        let mut e = [0; 3];
        e[idx] = 1;
        Sparse(BTreeMap::from([(e, Q::from_integer(1.into()))]))
    }

    fn add(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let v = m.remove(e).unwrap_or_default() + c;
            if !v.is_zero() {
                m.insert(*e, v);
            }
        }
        Sparse(m)
    }

    fn neg(&self) -> Self {
        Sparse(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut m: BTreeMap<[u32; 3], Q> = BTreeMap::new();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &o.0 {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
                let v = m.remove(&e).unwrap_or_default() + ca * cb;
                if !v.is_zero() {
                    m.insert(e, v);
                }
            }
        }
        Sparse(m)
    }

    fn as_constant(&self) -> Option<Q> {
        match self.0.len() {
            0 => Some(Q::zero()),
            1 => self.0.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    fn uses(&self, idx: usize) -> bool {
        self.0.keys().any(|e| e[idx] > 0)
    }

    /// Polynomial in `(x, y)`; rejects `t`.
    pub fn to_xy(&self) -> Result<BiPoly<Q>> {
        if self.uses(2) {
            return Err(Error::Invalid("variable t not allowed here".into()));
        }
        Ok(BiPoly::from_terms(
            &Rationals,
            &self
                .0
                .iter()
                .map(|(e, c)| (e[0] as usize, e[1] as usize, c.clone()))
                .collect::<Vec<_>>(),
        ))
    }

    /// Polynomial in `t` alone.
    pub fn to_t(&self) -> Result<UPoly<Q>> {
        if self.uses(0) || self.uses(1) {
            return Err(Error::Invalid("only the variable t is allowed here".into()));
        }
        let mut p = UPoly::zero();
        for (e, c) in &self.0 {
            p = p.add(
                &Rationals,
                &UPoly::monomial(&Rationals, c.clone(), e[2] as usize),
            );
        }
        Ok(p)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
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

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    match d.as_constant() {
                        Some(c) if !c.is_zero() => acc = acc.mul(&Sparse::constant(c.recip())),
                        Some(_) => {
                            return Err(Error::Parse {
                                pos: at,
                                msg: "division by zero".into(),
                            })
                        }
                        None => {
                            return Err(Error::Parse {
                                pos: at,
                                msg: "division only by constants".into(),
                            })
                        }
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let e = n.to_u32().filter(|e| *e <= 4096).ok_or(Error::Parse {
                pos: start,
                msg: "exponent out of range".into(),
            })?;
            let mut acc = Sparse::constant(Q::from_integer(1.into()));
            for _ in 0..e {
                acc = acc.mul(&base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let txt = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(txt.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(c) if c.is_ascii_digit() => Ok(Sparse::constant(Q::from_integer(self.integer()?))),
            Some(b'x') => {
                self.pos += 1;
                Ok(Sparse::var(0))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Sparse::var(1))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(Sparse::var(2))
            }
            Some(c) => Err(self.err(format!("unexpected character '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse(input: &str) -> Result<Sparse> {
    let mut p = Parser {
        s: input.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

pub fn parse_xy(input: &str) -> Result<BiPoly<Q>> {
    parse(input)?.to_xy()
}

pub fn parse_t(input: &str) -> Result<UPoly<Q>> {
    parse(input)?.to_t()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::q;

    #[test]
    fn golden_curve_parses() {
        let f = parse_xy("y^3 - x^2 - 3*y + 2").unwrap();
        assert_eq!(f.coeff(&Rationals, 0, 3), q(1));
        assert_eq!(f.coeff(&Rationals, 2, 0), q(-1));
        assert_eq!(f.coeff(&Rationals, 0, 1), q(-3));
        assert_eq!(f.coeff(&Rationals, 0, 0), q(2));
        assert_eq!(f.render(&Rationals, "x", "y"), "y^3 - x^2 - 3*y + 2");
    }

    #[test]
    fn whitespace_and_parentheses() {
        let a = parse_xy("(y+2)*(y-1)^2 - x^2").unwrap();
        let b = parse_xy("y^3-x^2-3*y+2").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_xy(" 1/2*x ").unwrap(), parse_xy("x/2").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        match parse_xy("y^3 + * x") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_xy("x/y"), Err(Error::Parse { .. })));
        assert!(matches!(parse_xy("(x"), Err(Error::Parse { .. })));
        assert!(parse_xy("x + t").is_err());
        assert!(parse_t("t^3 - 3*t").is_ok());
    }
}
