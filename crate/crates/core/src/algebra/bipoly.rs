//! Recursive-dense bivariate polynomials: a list of y-coefficients, each a
//! univariate polynomial in the inner variable.
//!
//! The two variables are positional roles (inner, outer). Curves use
//! `(x, y)`; the localization at infinity uses `(u, y)`; the pencil resultant
//! uses `(x, λ)`.

use crate::algebra::field::Field;
use crate::algebra::render::{join_terms, monomial};
use crate::algebra::upoly::UPoly;
use crate::error::Dyn;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiPoly<E>(pub Vec<UPoly<E>>);

impl<E: Clone + PartialEq + std::fmt::Debug> BiPoly<E> {
    pub fn zero() -> Self {
        BiPoly(Vec::new())
    }

    pub fn new(mut c: Vec<UPoly<E>>) -> Self {
        while c.last().is_some_and(|p| p.is_zero()) {
            c.pop();
        }
        BiPoly(c)
    }

    pub fn constant<F: Field<E = E>>(k: &F, c: E) -> Self {
        Self::new(vec![UPoly::constant(k, c)])
    }

    pub fn one<F: Field<E = E>>(k: &F) -> Self {
        Self::constant(k, k.one())
    }

    /// Polynomial in the inner variable only.
    pub fn from_inner(p: UPoly<E>) -> Self {
        Self::new(vec![p])
    }

    /// Polynomial in the outer variable with constant coefficients.
    pub fn from_outer<F: Field<E = E>>(k: &F, p: &UPoly<E>) -> Self {
        Self::new(p.0.iter().map(|c| UPoly::constant(k, c.clone())).collect())
    }

    /// The monomial `c * x^i * y^j`.
    pub fn term<F: Field<E = E>>(k: &F, c: E, i: usize, j: usize) -> Self {
        if k.is_zero(&c) {
            return Self::zero();
        }
        let mut v = vec![UPoly::zero(); j + 1];
        v[j] = UPoly::monomial(k, c, i);
        BiPoly(v)
    }

    pub fn x<F: Field<E = E>>(k: &F) -> Self {
        Self::term(k, k.one(), 1, 0)
    }

    pub fn y<F: Field<E = E>>(k: &F) -> Self {
        Self::term(k, k.one(), 0, 1)
    }

    pub fn from_terms<F: Field<E = E>>(k: &F, terms: &[(usize, usize, E)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, (i, j, c)| {
            acc.add(k, &Self::term(k, c.clone(), *i, *j))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> Option<usize> {
        self.0.iter().filter_map(|p| p.deg()).max()
    }

    pub fn total_deg(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(j, p)| p.deg().map(|d| d + j))
            .max()
    }

    /// Leading coefficient in y, a polynomial in x.
    pub fn lc_y(&self) -> Option<&UPoly<E>> {
        self.0.last()
    }

    pub fn ycoeff(&self, j: usize) -> UPoly<E> {
        self.0.get(j).cloned().unwrap_or_else(UPoly::zero)
    }

    pub fn coeff<F: Field<E = E>>(&self, k: &F, i: usize, j: usize) -> E {
        self.0
            .get(j)
            .map(|p| p.coeff(k, i))
            .unwrap_or_else(|| k.zero())
    }

    /// All structurally nonzero terms as `(i, j, c)` for `c x^i y^j`.
    pub fn terms<F: Field<E = E>>(&self, k: &F) -> Vec<(usize, usize, E)> {
        let mut out = Vec::new();
        for (j, p) in self.0.iter().enumerate() {
            for (i, c) in p.0.iter().enumerate() {
                if !k.is_zero(c) {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn add<F: Field<E = E>>(&self, k: &F, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new(
            (0..n)
                .map(|j| match (self.0.get(j), o.0.get(j)) {
                    (Some(a), Some(b)) => a.add(k, b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }

    pub fn neg<F: Field<E = E>>(&self, k: &F) -> Self {
        BiPoly(self.0.iter().map(|p| p.neg(k)).collect())
    }

    pub fn sub<F: Field<E = E>>(&self, k: &F, o: &Self) -> Self {
        self.add(k, &o.neg(k))
    }

    pub fn scale<F: Field<E = E>>(&self, k: &F, c: &E) -> Self {
        Self::new(self.0.iter().map(|p| p.scale(k, c)).collect())
    }

    /// Multiplies every y-coefficient by a polynomial in x.
    pub fn scale_inner<F: Field<E = E>>(&self, k: &F, c: &UPoly<E>) -> Self {
        Self::new(self.0.iter().map(|p| p.mul(k, c)).collect())
    }

    pub fn mul<F: Field<E = E>>(&self, k: &F, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![UPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(k, &a.mul(k, b));
                }
            }
        }
        Self::new(v)
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

    /// Multiplies by `y^n`.
    pub fn shift_y(&self, n: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![UPoly::zero(); n];
        v.extend(self.0.iter().cloned());
        BiPoly(v)
    }

    pub fn dx<F: Field<E = E>>(&self, k: &F) -> Self {
        Self::new(self.0.iter().map(|p| p.derivative(k)).collect())
    }

    pub fn dy<F: Field<E = E>>(&self, k: &F) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, p)| p.scale(k, &k.from_i64(j as i64)))
                .collect(),
        )
    }

    /// `f(a, y)` as a polynomial in y.
    pub fn eval_x<F: Field<E = E>>(&self, k: &F, a: &E) -> UPoly<E> {
        UPoly::new(k, self.0.iter().map(|p| p.eval(k, a)).collect())
    }

    /// `f(x, b)` as a polynomial in x.
    pub fn eval_y<F: Field<E = E>>(&self, k: &F, b: &E) -> UPoly<E> {
        let mut acc = UPoly::zero();
        for p in self.0.iter().rev() {
            acc = acc.scale(k, b).add(k, p);
        }
        acc
    }

    pub fn eval<F: Field<E = E>>(&self, k: &F, a: &E, b: &E) -> E {
        self.eval_x(k, a).eval(k, b)
    }

    /// `f(X, Y)` for bivariate arguments.
    pub fn subst<F: Field<E = E>>(&self, k: &F, xs: &Self, ys: &Self) -> Self {
        let inner = |p: &UPoly<E>| {
            let mut acc = Self::zero();
            for c in p.0.iter().rev() {
                acc = acc.mul(k, xs).add(k, &Self::constant(k, c.clone()));
            }
            acc
        };
        let mut acc = Self::zero();
        for p in self.0.iter().rev() {
            acc = acc.mul(k, ys).add(k, &inner(p));
        }
        acc
    }

    /// `f(x + a, y + b)`
    pub fn translate<F: Field<E = E>>(&self, k: &F, a: &E, b: &E) -> Self {
        let xs = Self::x(k).add(k, &Self::constant(k, a.clone()));
        let ys = Self::y(k).add(k, &Self::constant(k, b.clone()));
        self.subst(k, &xs, &ys)
    }

    /// `f(x + c y, y)`
    pub fn shear<F: Field<E = E>>(&self, k: &F, c: &E) -> Self {
        let xs = Self::x(k).add(k, &Self::y(k).scale(k, c));
        self.subst(k, &xs, &Self::y(k))
    }

    /// Exchanges the roles of the two variables.
    pub fn swap<F: Field<E = E>>(&self, k: &F) -> Self {
        Self::from_terms(
            k,
            &self
                .terms(k)
                .into_iter()
                .map(|(i, j, c)| (j, i, c))
                .collect::<Vec<_>>(),
        )
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part<F: Field<E = E>>(&self, k: &F, d: usize) -> Self {
        Self::from_terms(
            k,
            &self
                .terms(k)
                .into_iter()
                .filter(|(i, j, _)| i + j == d)
                .collect::<Vec<_>>(),
        )
    }

    /// Lowest total degree among the terms (the multiplicity at the origin).
    pub fn order<F: Field<E = E>>(&self, k: &F) -> Option<usize> {
        self.terms(k).into_iter().map(|(i, j, _)| i + j).min()
    }

    pub fn map<G: Field>(&self, g: &G, f: impl Fn(&E) -> G::E) -> BiPoly<G::E> {
        BiPoly::new(self.0.iter().map(|p| p.map(g, &f)).collect())
    }

    /// Makes every y-coefficient's leading x-coefficient a unit and drops
    /// coefficients that vanish everywhere.
    pub fn certify<F: Field<E = E>>(&self, k: &F) -> Dyn<Self> {
        let v = self
            .0
            .iter()
            .map(|p| p.certify(k))
            .collect::<Dyn<Vec<_>>>()?;
        Ok(Self::new(v))
    }

    /// Replaces every coefficient that vanishes everywhere by an exact zero;
    /// the remaining coefficients are units.
    pub fn clean<F: Field<E = E>>(&self, k: &F) -> Dyn<Self> {
        let mut v = Vec::with_capacity(self.0.len());
        for p in &self.0 {
            let mut c = Vec::with_capacity(p.0.len());
            for a in &p.0 {
                c.push(if k.zero_or_unit(a)? {
                    k.zero()
                } else {
                    a.clone()
                });
            }
            v.push(UPoly::new(k, c));
        }
        Ok(Self::new(v))
    }

    pub fn render<F: Field<E = E>>(&self, k: &F, xv: &str, yv: &str) -> String {
        let mut terms = self.terms(k);
        // graded by total degree, then by y-degree
        terms.sort_by(|a, b| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        join_terms(terms.into_iter().map(|(i, j, c)| {
            let m = [monomial(xv, i), monomial(yv, j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            (k.render(&c), m)
        }))
    }
}
