//! Dense univariate polynomials over a [`Field`], coefficients ascending.

use crate::algebra::field::Field;
use crate::error::{Dyn, Error};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UPoly<E>(pub Vec<E>);

impl<E: Clone + PartialEq + std::fmt::Debug> UPoly<E> {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    /// Builds a polynomial, dropping structurally zero leading coefficients.
    pub fn new<F: Field<E = E>>(k: &F, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| k.is_zero(x)) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn constant<F: Field<E = E>>(k: &F, c: E) -> Self {
        Self::new(k, vec![c])
    }

    pub fn one<F: Field<E = E>>(k: &F) -> Self {
        UPoly(vec![k.one()])
    }

    /// The monomial `c * x^d`.
    pub fn monomial<F: Field<E = E>>(k: &F, c: E, d: usize) -> Self {
        if k.is_zero(&c) {
            return Self::zero();
        }
        let mut v = vec![k.zero(); d + 1];
        v[d] = c;
        UPoly(v)
    }

    /// `x`
    pub fn var<F: Field<E = E>>(k: &F) -> Self {
        Self::monomial(k, k.one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = -1`.
    pub fn ideg(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn lc(&self) -> Option<&E> {
        self.0.last()
    }

    pub fn coeff<F: Field<E = E>>(&self, k: &F, i: usize) -> E {
        self.0.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn is_constant(&self) -> bool {
        self.0.len() <= 1
    }

    pub fn add<F: Field<E = E>>(&self, k: &F, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| match (self.0.get(i), o.0.get(i)) {
                (Some(a), Some(b)) => k.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(k, v)
    }

    pub fn neg<F: Field<E = E>>(&self, k: &F) -> Self {
        UPoly(self.0.iter().map(|a| k.neg(a)).collect())
    }

    pub fn sub<F: Field<E = E>>(&self, k: &F, o: &Self) -> Self {
        self.add(k, &o.neg(k))
    }

    pub fn scale<F: Field<E = E>>(&self, k: &F, c: &E) -> Self {
        Self::new(k, self.0.iter().map(|a| k.mul(a, c)).collect())
    }

    pub fn mul<F: Field<E = E>>(&self, k: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![k.zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !k.is_zero(b) {
                    v[i + j] = k.add(&v[i + j], &k.mul(a, b));
                }
            }
        }
        Self::new(k, v)
    }

    /// Multiplies by `x^n`.
    pub fn shift_up(&self, k: &impl Field<E = E>, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![k.zero(); n];
        v.extend(self.0.iter().cloned());
        UPoly(v)
    }

    pub fn pow<F: Field<E = E>>(&self, k: &F, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(k, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(k, &base);
            }
        }
        acc
    }

    pub fn eval<F: Field<E = E>>(&self, k: &F, x: &E) -> E {
        let mut acc = k.zero();
        for c in self.0.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// Horner evaluation at a polynomial argument.
    pub fn compose<F: Field<E = E>>(&self, k: &F, x: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.0.iter().rev() {
            acc = acc.mul(k, x).add(k, &Self::constant(k, c.clone()));
        }
        acc
    }

    /// `p(x + a)`
    pub fn taylor_shift<F: Field<E = E>>(&self, k: &F, a: &E) -> Self {
        let lin = Self::new(k, vec![a.clone(), k.one()]);
        self.compose(k, &lin)
    }

    pub fn derivative<F: Field<E = E>>(&self, k: &F) -> Self {
        let v = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect();
        Self::new(k, v)
    }

    pub fn map<G: Field>(&self, g: &G, f: impl Fn(&E) -> G::E) -> UPoly<G::E> {
        UPoly::new(g, self.0.iter().map(f).collect())
    }

    /// Strips leading coefficients that vanish in every component, so that the
    /// leading coefficient of the result is a unit.
    pub fn certify<F: Field<E = E>>(&self, k: &F) -> Dyn<Self> {
        let mut v = self.0.clone();
        while let Some(top) = v.last() {
            if k.zero_or_unit(top)? {
                v.pop();
            } else {
                break;
            }
        }
        Ok(UPoly(v))
    }

    /// Index of the lowest coefficient that is a unit; `None` for zero.
    pub fn valuation<F: Field<E = E>>(&self, k: &F) -> Dyn<Option<usize>> {
        for (i, c) in self.0.iter().enumerate() {
            if !k.zero_or_unit(c)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn divrem<F: Field<E = E>>(&self, k: &F, d: &Self) -> Dyn<(Self, Self)> {
        let d = d.certify(k)?;
        let Some(dd) = d.deg() else {
            return Err(Error::DivisionByZero.into());
        };
        let inv = k.inv(d.lc().unwrap())?;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), Self::new(k, r)));
        }
        let mut qv = vec![k.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = k.mul(&r[i], &inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let p = i - dd + j;
                r[p] = k.sub(&r[p], &k.mul(&c, dc));
            }
            qv[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Self::new(k, qv), Self::new(k, r)))
    }

    pub fn rem<F: Field<E = E>>(&self, k: &F, d: &Self) -> Dyn<Self> {
        Ok(self.divrem(k, d)?.1)
    }

    pub fn exact_div<F: Field<E = E>>(&self, k: &F, d: &Self) -> Dyn<Self> {
        let (qq, r) = self.divrem(k, d)?;
        if !r.is_zero() {
            return Err(Error::internal("inexact polynomial division").into());
        }
        Ok(qq)
    }

    pub fn monic<F: Field<E = E>>(&self, k: &F) -> Dyn<Self> {
        let p = self.certify(k)?;
        match p.lc() {
            None => Ok(p),
            Some(l) => {
                let inv = k.inv(l)?;
                Ok(p.scale(k, &inv))
            }
        }
    }

    /// Monic gcd (zero only when both inputs vanish).
    pub fn gcd<F: Field<E = E>>(k: &F, a: &Self, b: &Self) -> Dyn<Self> {
        let mut r0 = a.certify(k)?;
        let mut r1 = b.certify(k)?;
        while !r1.is_zero() {
            let r = r0.rem(k, &r1)?.certify(k)?;
            r0 = r1;
            r1 = r;
        }
        r0.monic(k)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn ext_gcd<F: Field<E = E>>(k: &F, a: &Self, b: &Self) -> Dyn<(Self, Self, Self)> {
        let (mut r0, mut r1) = (a.certify(k)?, b.certify(k)?);
        let (mut s0, mut s1) = (Self::one(k), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(k));
        while !r1.is_zero() {
            let (qq, r) = r0.divrem(k, &r1)?;
            let r = r.certify(k)?;
            let s = s0.sub(k, &qq.mul(k, &s1));
            let t = t0.sub(k, &qq.mul(k, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => Ok((r0, s0, t0)),
            Some(l) => {
                let inv = k.inv(l)?;
                Ok((r0.scale(k, &inv), s0.scale(k, &inv), t0.scale(k, &inv)))
            }
        }
    }

    /// Yun's algorithm: pairwise coprime monic squarefree factors with
    /// multiplicities; their product is `p` up to a constant.
    pub fn squarefree_decompose<F: Field<E = E>>(&self, k: &F) -> Dyn<Vec<(Self, usize)>> {
        let p = self.monic(k)?;
        let mut out = Vec::new();
        if p.deg().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let dp = p.derivative(k);
        let a0 = Self::gcd(k, &p, &dp)?;
        let mut b = p.exact_div(k, &a0)?;
        let mut c = dp.exact_div(k, &a0)?;
        let mut d = c.sub(k, &b.derivative(k));
        let mut i = 1;
        loop {
            let a = Self::gcd(k, &b, &d)?;
            if a.deg().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(k, &a)?;
            if b.deg().unwrap_or(0) == 0 {
                break;
            }
            c = d.exact_div(k, &a)?;
            d = c.sub(k, &b.derivative(k));
            i += 1;
        }
        Ok(out)
    }

    pub fn squarefree_part<F: Field<E = E>>(&self, k: &F) -> Dyn<Self> {
        let p = self.monic(k)?;
        if p.deg().unwrap_or(0) == 0 {
            return Ok(p);
        }
        let g = Self::gcd(k, &p, &p.derivative(k))?;
        p.exact_div(k, &g)
    }

    /// Renders in the input grammar with the given variable name.
    pub fn render<F: Field<E = E>>(&self, k: &F, var: &str) -> String {
        let terms: Vec<(String, usize)> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !k.is_zero(c))
            .map(|(i, c)| (k.render(c), i))
            .collect();
        crate::algebra::render::join_terms(terms.iter().map(|(c, i)| {
            let mono = match *i {
                0 => String::new(),
                1 => var.to_string(),
                e => format!("{var}^{e}"),
            };
            (c.clone(), mono)
        }))
    }
}
