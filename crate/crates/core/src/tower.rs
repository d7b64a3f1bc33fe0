//! Dynamic evaluation over triangular towers of algebraic extensions of `Q`.
//!
//! A [`Tower`] is a chain `Q ⊂ Q[a0]/(m0) ⊂ Q[a0,a1]/(m0,m1) ⊂ …` with each
//! `m_k` monic and squarefree over the level below. Such a ring is a product
//! of number fields; it presents one or more Galois orbits of algebraic
//! numbers at once. Arithmetic never factors anything: when an inversion hits
//! a zero divisor the tower reports a [`SplitEvent`] and the computation is
//! replayed in both descendants by [`explore`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::{q_to_string, Field, Rationals, Q};
use crate::algebra::render::{join_terms, monomial};
use crate::algebra::upoly::UPoly;
use crate::error::{settled, Dyn, Error, Interrupt, Result};

/// An element of a tower: a rational, or a polynomial in the generator of
/// level `k` (degree below that level's degree) whose coefficients live in
/// strictly lower levels. The representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Alg {
    Q(Q),
    L(usize, Vec<Alg>),
}

impl fmt::Debug for Alg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alg::Q(v) => write!(f, "{}", q_to_string(v)),
            Alg::L(k, v) => write!(f, "L{k}{v:?}"),
        }
    }
}

impl Alg {
    pub fn zero() -> Self {
        Alg::Q(Q::zero())
    }

    pub fn rat(v: Q) -> Self {
        Alg::Q(v)
    }

    fn level(&self) -> Option<usize> {
        match self {
            Alg::Q(_) => None,
            Alg::L(k, _) => Some(*k),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Alg::Q(v) if v.is_zero())
    }

    fn norm(k: usize, mut v: Vec<Alg>) -> Alg {
        while v.last().is_some_and(|a| a.is_zero()) {
            v.pop();
        }
        match v.len() {
            0 => Alg::zero(),
            1 => v.pop().unwrap(),
            _ => Alg::L(k, v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub name: String,
    /// Monic, ascending coefficients over the lower levels.
    pub modulus: Vec<Alg>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_depth: usize,
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: 8,
            max_degree: 64,
        }
    }
}

/// Witness that the modulus of `level` factors as `factors[0] * factors[1]`,
/// both monic, coprime and nontrivial.
#[derive(Debug, Clone)]
pub struct SplitEvent {
    pub level: usize,
    pub factors: [Vec<Alg>; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    levels: Vec<Level>,
    limits: Limits,
}

/// One root of a polynomial, found in (an extension of) a tower.
#[derive(Debug, Clone)]
pub struct RootPiece {
    pub tower: Tower,
    pub root: Alg,
    /// How many conjugate roots this piece stands for.
    pub weight: usize,
}

impl Tower {
    pub fn rationals(limits: Limits) -> Self {
        Tower {
            levels: Vec::new(),
            limits,
        }
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.levels.iter().map(Level::degree).product()
    }

    pub fn generator(&self, k: usize) -> Alg {
        self.reduce(&Alg::L(k, vec![Alg::zero(), Alg::Q(Q::one())]))
    }

    fn reduce_top(&self, k: usize, mut v: Vec<Alg>) -> Alg {
        let m = &self.levels[k].modulus;
        let d = m.len() - 1;
        while v.len() > d {
            let top = v.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let off = v.len() - d;
            for i in 0..d {
                let t = self.mul(&top, &m[i]);
                v[off + i] = self.sub(&v[off + i], &t);
            }
        }
        Alg::norm(k, v)
    }

    /// Reduces an element produced in an ancestor tower (same level
    /// structure, moduli divided down by splits) into this one.
    pub fn reduce(&self, a: &Alg) -> Alg {
        match a {
            Alg::Q(_) => a.clone(),
            Alg::L(k, v) => {
                let v = v.iter().map(|c| self.reduce(c)).collect();
                self.reduce_top(*k, v)
            }
        }
    }

    pub fn reduce_poly(&self, p: &UPoly<Alg>) -> UPoly<Alg> {
        UPoly::new(self, p.0.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn reduce_bipoly(&self, p: &BiPoly<Alg>) -> BiPoly<Alg> {
        BiPoly::new(p.0.iter().map(|c| self.reduce_poly(c)).collect())
    }

    pub fn lift_q_poly(&self, p: &UPoly<Q>) -> UPoly<Alg> {
        p.map(self, |c| Alg::Q(c.clone()))
    }

    pub fn lift_q_bipoly(&self, p: &BiPoly<Q>) -> BiPoly<Alg> {
        p.map(self, |c| Alg::Q(c.clone()))
    }

    /// Descendant towers for a split event raised in this tower.
    pub fn split(&self, ev: &SplitEvent) -> Vec<Tower> {
        ev.factors
            .iter()
            .map(|fac| {
                let mut t = Tower {
                    levels: self.levels[..ev.level].to_vec(),
                    limits: self.limits,
                };
                t.levels.push(Level {
                    name: self.levels[ev.level].name.clone(),
                    modulus: fac.clone(),
                });
                for lv in &self.levels[ev.level + 1..] {
                    let modulus = lv.modulus.iter().map(|c| t.reduce(c)).collect();
                    t.levels.push(Level {
                        name: lv.name.clone(),
                        modulus,
                    });
                }
                t
            })
            .collect()
    }

    fn inv_level(&self, k: usize, v: &[Alg]) -> Dyn<Alg> {
        let a = UPoly::new(self, v.to_vec());
        let m = UPoly(self.levels[k].modulus.clone());
        let (g, s, _) = UPoly::ext_gcd(self, &a, &m)?;
        if g.deg() == Some(0) {
            return Ok(self.reduce_top(k, s.0));
        }
        let h = m.exact_div(self, &g)?;
        Err(Interrupt::Split(SplitEvent {
            level: k,
            factors: [g.0, h.0],
        }))
    }

    /// Roots of `m` (coefficients in this tower): rational roots of rational
    /// polynomials come back as values; any remaining factor is adjoined as a
    /// new level.
    pub fn adjoin_roots(&self, m: &UPoly<Alg>, name: &str) -> Dyn<Vec<RootPiece>> {
        let m = self.reduce_poly(m).squarefree_part(self)?;
        let Some(d) = m.deg().filter(|d| *d > 0) else {
            return Err(Error::Invalid("cannot adjoin a root of a constant".into()).into());
        };
        let mut rest = m;
        let mut out = Vec::new();
        if d > 1 {
            if let Some(qp) = as_rational_poly(&rest) {
                for r in rational_roots(&qp) {
                    out.push(RootPiece {
                        tower: self.clone(),
                        root: Alg::Q(r.clone()),
                        weight: 1,
                    });
                    let lin = UPoly(vec![Alg::Q(-r), Alg::Q(Q::one())]);
                    rest = rest.exact_div(self, &lin)?;
                }
            }
        }
        match rest.deg() {
            Some(0) => {}
            Some(1) => {
                let root = self.neg(&rest.0[0]);
                out.push(RootPiece {
                    tower: self.clone(),
                    root,
                    weight: 1,
                });
            }
            Some(e) => {
                if self.depth() + 1 > self.limits.max_depth {
                    return Err(Error::ResourceCap {
                        op: format!("adjoin {name}"),
                        detail: format!("tower depth would exceed {}", self.limits.max_depth),
                    }
                    .into());
                }
                if self.degree() * e > self.limits.max_degree {
                    return Err(Error::ResourceCap {
                        op: format!("adjoin {name}"),
                        detail: format!(
                            "extension degree {} would exceed {}",
                            self.degree() * e,
                            self.limits.max_degree
                        ),
                    }
                    .into());
                }
                let mut t = self.clone();
                t.levels.push(Level {
                    name: name.to_string(),
                    modulus: rest.0,
                });
                let root = t.generator(t.depth() - 1);
                out.push(RootPiece {
                    tower: t,
                    root,
                    weight: e,
                });
            }
            None => unreachable!(),
        }
        Ok(out)
    }

    /// Coordinates over `Q` in the monomial basis of the tower.
    pub fn coords(&self, a: &Alg) -> Vec<Q> {
        self.coords_upto(a, self.depth())
    }

    fn coords_upto(&self, a: &Alg, n: usize) -> Vec<Q> {
        if n == 0 {
            return match a {
                Alg::Q(v) => vec![v.clone()],
                Alg::L(..) => unreachable!("element above the requested level"),
            };
        }
        let k = n - 1;
        let d = self.levels[k].degree();
        let sub: usize = self.levels[..k].iter().map(Level::degree).product();
        let mut out = vec![Q::zero(); d * sub];
        match a {
            Alg::L(lk, v) if *lk == k => {
                for (i, c) in v.iter().enumerate() {
                    let block = self.coords_upto(c, k);
                    out[i * sub..(i + 1) * sub].clone_from_slice(&block);
                }
            }
            _ => {
                let block = self.coords_upto(a, k);
                out[..sub].clone_from_slice(&block);
            }
        }
        out
    }

    /// The monomial basis over `Q`, in the order used by [`Tower::coords`].
    pub fn basis(&self) -> Vec<Alg> {
        let mut out = vec![Alg::Q(Q::one())];
        for k in 0..self.depth() {
            let g = self.generator(k);
            let mut next = Vec::with_capacity(out.len() * self.levels[k].degree());
            let mut power = Alg::Q(Q::one());
            for _ in 0..self.levels[k].degree() {
                next.extend(out.iter().map(|b| self.mul(&power, b)));
                power = self.mul(&power, &g);
            }
            out = next;
        }
        out
    }

    /// Characteristic polynomial over `Q` of multiplication by `v`
    /// (Faddeev–LeVerrier). Its squarefree decomposition groups the roots of
    /// the minimal polynomial by how many embeddings of the tower send `v`
    /// to them.
    pub fn char_poly_q(&self, v: &Alg) -> UPoly<Q> {
        let basis = self.basis();
        let n = basis.len();
        // a[i][j]: coordinate i of v * b_j
        let cols: Vec<Vec<Q>> = basis.iter().map(|b| self.coords(&self.mul(v, b))).collect();
        let a = |i: usize, j: usize| &cols[j][i];
        let mut c = vec![Q::zero(); n + 1];
        c[n] = Q::one();
        let mut m = vec![vec![Q::zero(); n]; n];
        for k in 1..=n {
            // m <- a*m + c[n-k+1] I
            let mut am = vec![vec![Q::zero(); n]; n];
            for i in 0..n {
                for l in 0..n {
                    if a(i, l).is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        if !m[l][j].is_zero() {
                            am[i][j] += a(i, l) * &m[l][j];
                        }
                    }
                }
                am[i][i] += &c[n - k + 1];
            }
            m = am;
            let mut tr = Q::zero();
            for i in 0..n {
                for l in 0..n {
                    if !m[l][i].is_zero() {
                        tr += a(i, l) * &m[l][i];
                    }
                }
            }
            c[n - k] = -tr / Q::from_integer((k as i64).into());
        }
        UPoly(c)
    }

    /// Minimal polynomial over `Q` of multiplication by `v`; squarefree since
    /// the tower is a product of fields. Found as the first linear relation
    /// among the powers of `v`.
    pub fn min_poly_q(&self, v: &Alg) -> UPoly<Q> {
        let dim = self.degree();
        let mut rows: Vec<(Vec<Q>, Vec<Q>, usize)> = Vec::new();
        let mut power = Alg::Q(Q::one());
        for j in 0..=dim {
            let mut w = self.coords(&power);
            let mut combo = vec![Q::zero(); dim + 1];
            combo[j] = Q::one();
            for (rv, rc, piv) in &rows {
                if w[*piv].is_zero() {
                    continue;
                }
                let f = w[*piv].clone();
                for (a, b) in w.iter_mut().zip(rv) {
                    *a -= &f * b;
                }
                for (a, b) in combo.iter_mut().zip(rc) {
                    *a -= &f * b;
                }
            }
            match w.iter().position(|c| !c.is_zero()) {
                None => {
                    let p = UPoly::new(&Rationals, combo);
                    return settled(p.monic(&Rationals)).expect("nonzero relation");
                }
                Some(piv) => {
                    let inv = w[piv].recip();
                    for a in w.iter_mut() {
                        *a *= &inv;
                    }
                    for a in combo.iter_mut() {
                        *a *= &inv;
                    }
                    rows.push((w, combo, piv));
                }
            }
            power = self.mul(&power, v);
        }
        unreachable!("powers of an element of a {dim}-dimensional algebra are dependent")
    }

    /// Moduli of the levels, rendered in the input grammar.
    pub fn describe(&self) -> Vec<String> {
        self.levels
            .iter()
            .map(|lv| UPoly(lv.modulus.clone()).render(self, &lv.name))
            .collect()
    }
}

fn as_rational_poly(p: &UPoly<Alg>) -> Option<UPoly<Q>> {
    let mut v = Vec::with_capacity(p.0.len());
    for c in &p.0 {
        match c {
            Alg::Q(x) => v.push(x.clone()),
            Alg::L(..) => return None,
        }
    }
    Some(UPoly(v))
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            out.push(BigInt::from(i));
            if i * i != n {
                out.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(out)
}

/// Distinct rational roots, ascending. Candidates whose enumeration would be
/// too large are skipped, which only means fewer roots split off eagerly.
pub fn rational_roots(p: &UPoly<Q>) -> Vec<Q> {
    let mut roots = Vec::new();
    let Some(first) = p.0.iter().position(|c| !c.is_zero()) else {
        return roots;
    };
    if first > 0 {
        roots.push(Q::zero());
    }
    let den = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.0[first..]
        .iter()
        .map(|c| (c * Q::from_integer(den.clone())).to_integer())
        .collect();
    if ints.len() <= 1 {
        return roots;
    }
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return roots;
    };
    let qp = UPoly(p.0[first..].to_vec());
    for a in &ps {
        for b in &qs {
            for s in [1, -1] {
                let r = Q::new(a * s, b.clone());
                if !roots.contains(&r) && qp.eval(&Rationals, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}

impl Field for Tower {
    type E = Alg;

    fn zero(&self) -> Alg {
        Alg::zero()
    }

    fn one(&self) -> Alg {
        Alg::Q(Q::one())
    }

    fn from_q(&self, v: &Q) -> Alg {
        Alg::Q(v.clone())
    }

    fn is_zero(&self, a: &Alg) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Alg, b: &Alg) -> Alg {
        match (a, b) {
            (Alg::Q(x), Alg::Q(y)) => Alg::Q(x + y),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la == lb {
                    let (Alg::L(k, va), Alg::L(_, vb)) = (a, b) else {
                        unreachable!()
                    };
                    let n = va.len().max(vb.len());
                    let v = (0..n)
                        .map(|i| match (va.get(i), vb.get(i)) {
                            (Some(x), Some(y)) => self.add(x, y),
                            (Some(x), None) | (None, Some(x)) => x.clone(),
                            (None, None) => unreachable!(),
                        })
                        .collect();
                    Alg::norm(*k, v)
                } else {
                    let (hi, lo) = if la > lb { (a, b) } else { (b, a) };
                    let Alg::L(k, v) = hi else { unreachable!() };
                    let mut v = v.clone();
                    v[0] = self.add(&v[0], lo);
                    Alg::norm(*k, v)
                }
            }
        }
    }

    fn neg(&self, a: &Alg) -> Alg {
        match a {
            Alg::Q(x) => Alg::Q(-x),
            Alg::L(k, v) => Alg::L(*k, v.iter().map(|c| self.neg(c)).collect()),
        }
    }

    fn mul(&self, a: &Alg, b: &Alg) -> Alg {
        match (a, b) {
            (Alg::Q(x), Alg::Q(y)) => Alg::Q(x * y),
            _ if a.is_zero() || b.is_zero() => Alg::zero(),
            _ => {
                let (la, lb) = (a.level(), b.level());
                if la == lb {
                    let (Alg::L(k, va), Alg::L(_, vb)) = (a, b) else {
                        unreachable!()
                    };
                    let mut v = vec![Alg::zero(); va.len() + vb.len() - 1];
                    for (i, x) in va.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in vb.iter().enumerate() {
                            if !y.is_zero() {
                                v[i + j] = self.add(&v[i + j], &self.mul(x, y));
                            }
                        }
                    }
                    self.reduce_top(*k, v)
                } else {
                    let (hi, lo) = if la > lb { (a, b) } else { (b, a) };
                    let Alg::L(k, v) = hi else { unreachable!() };
                    Alg::norm(*k, v.iter().map(|c| self.mul(c, lo)).collect())
                }
            }
        }
    }

    fn inv(&self, a: &Alg) -> Dyn<Alg> {
        match a {
            Alg::Q(x) if x.is_zero() => Err(Error::DivisionByZero.into()),
            Alg::Q(x) => Ok(Alg::Q(x.recip())),
            Alg::L(k, v) => self.inv_level(*k, v),
        }
    }

    fn render(&self, a: &Alg) -> String {
        match a {
            Alg::Q(x) => q_to_string(x),
            Alg::L(k, v) => {
                let name = &self.levels[*k].name;
                join_terms(
                    v.iter()
                        .enumerate()
                        .rev()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (self.render(c), monomial(name, i))),
                )
            }
        }
    }

    fn as_q(&self, a: &Alg) -> Option<Q> {
        match a {
            Alg::Q(x) => Some(x.clone()),
            Alg::L(..) => None,
        }
    }
}

/// Runs `job` in `tower`, replaying it in both descendants whenever it raises
/// a split at a level `>= floor`. Splits below `floor` belong to an enclosing
/// computation and are passed up. Results come back in a fixed order.
pub fn explore<T>(
    tower: &Tower,
    floor: usize,
    mut job: impl FnMut(&Tower) -> Dyn<T>,
) -> Dyn<Vec<(Tower, T)>> {
    let mut stack = vec![tower.clone()];
    let mut out = Vec::new();
    while let Some(t) = stack.pop() {
        match job(&t) {
            Ok(v) => out.push((t, v)),
            Err(Interrupt::Split(ev)) if ev.level >= floor => {
                let mut kids = t.split(&ev);
                kids.reverse();
                stack.extend(kids);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// [`explore`] from the root: no enclosing computation can absorb a split.
pub fn explore_all<T>(tower: &Tower, job: impl FnMut(&Tower) -> Dyn<T>) -> Result<Vec<(Tower, T)>> {
    settled(explore(tower, 0, job))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, q_frac};

    fn qp(v: &[i64]) -> UPoly<Alg> {
        UPoly(v.iter().map(|c| Alg::Q(q(*c))).collect())
    }

    fn sqrt2() -> (Tower, Alg) {
        let base = Tower::rationals(Limits::default());
        let pieces = base.adjoin_roots(&qp(&[-2, 0, 1]), "a0").unwrap();
        assert_eq!(pieces.len(), 1);
        (pieces[0].tower.clone(), pieces[0].root.clone())
    }

    #[test]
    fn adjoin_sqrt2_has_degree_two() {
        let (t, a) = sqrt2();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.mul(&a, &a), Alg::Q(q(2)));
    }

    #[test]
    fn adjoin_x2_minus_1_splits_into_rational_roots() {
        let base = Tower::rationals(Limits::default());
        let pieces = base.adjoin_roots(&qp(&[-1, 0, 1]), "a0").unwrap();
        let roots: Vec<_> = pieces.iter().map(|p| p.root.clone()).collect();
        assert_eq!(roots, vec![Alg::Q(q(-1)), Alg::Q(q(1))]);
        assert!(pieces.iter().all(|p| p.tower.degree() == 1));
    }

    #[test]
    fn nested_extension_multiplies_degrees() {
        let (t, a) = sqrt2();
        // y^2 - sqrt2
        let m = UPoly(vec![t.neg(&a), Alg::zero(), t.one()]);
        let pieces = t.adjoin_roots(&m, "a1").unwrap();
        assert_eq!(pieces.len(), 1);
        let t2 = &pieces[0].tower;
        assert_eq!(t2.degree(), 4);
        let b = &pieces[0].root;
        assert_eq!(t2.mul(b, b), a);
        assert_eq!(t2.min_poly_q(b), UPoly(vec![q(-2), q(0), q(0), q(0), q(1)]));
    }

    #[test]
    fn inverse_of_sqrt2_is_half_sqrt2() {
        let (t, a) = sqrt2();
        let inv = t.inv(&a).unwrap();
        assert_eq!(inv, t.mul(&a, &Alg::Q(q_frac(1, 2))));
        assert_eq!(t.inv(&t.one()).unwrap(), t.one());
    }

    #[test]
    fn zero_divisor_splits_and_replays() {
        // Q[a]/(a^2 - 1) presented without splitting.
        let t = Tower {
            levels: vec![Level {
                name: "a0".into(),
                modulus: vec![Alg::Q(q(-1)), Alg::zero(), Alg::Q(q(1))],
            }],
            limits: Limits::default(),
        };
        let a = t.generator(0);
        let am1 = t.sub(&a, &t.one());
        match t.inv(&am1) {
            Err(Interrupt::Split(ev)) => {
                let kids = t.split(&ev);
                let degs: usize = kids.iter().map(|k| k.degree()).sum();
                assert_eq!(degs, 2);
            }
            other => panic!("expected split, got {other:?}"),
        }
        let res = explore_all(&t, |tt| {
            let x = tt.reduce(&am1);
            if tt.zero_or_unit(&x)? {
                Ok(None)
            } else {
                Ok(Some(tt.inv(&x)?))
            }
        })
        .unwrap();
        assert_eq!(res.len(), 2);
        let invs: Vec<_> = res.iter().map(|(_, v)| v.clone()).collect();
        assert!(invs.contains(&None));
        assert!(invs.contains(&Some(Alg::Q(q_frac(-1, 2)))));
    }

    #[test]
    fn char_poly_counts_embeddings() {
        let (t, a) = sqrt2();
        let m = UPoly(vec![t.neg(&a), Alg::zero(), t.one()]);
        let t2 = t.adjoin_roots(&m, "a1").unwrap().remove(0).tower;
        let a2 = t2.reduce(&a);
        // (l^2 - 2)^2
        assert_eq!(
            t2.char_poly_q(&a2),
            UPoly(vec![q(4), q(0), q(-4), q(0), q(1)])
        );
        // Q[a]/((a^2 - 2)(a^2 - 3)): a^2 takes each of 2, 3 twice
        let base = Tower::rationals(Limits::default());
        let p = base
            .adjoin_roots(&qp(&[6, 0, -5, 0, 1]), "a0")
            .unwrap()
            .remove(0);
        let sq = p.tower.mul(&p.root, &p.root);
        assert_eq!(p.tower.min_poly_q(&sq), UPoly(vec![q(6), q(-5), q(1)]));
        assert_eq!(
            p.tower.char_poly_q(&sq),
            UPoly(vec![q(36), q(-60), q(37), q(-10), q(1)])
        );
    }

    #[test]
    fn min_poly_of_rational_is_linear() {
        let (t, _) = sqrt2();
        assert_eq!(t.min_poly_q(&Alg::Q(q(3))), UPoly(vec![q(-3), q(1)]));
    }

    #[test]
    fn depth_cap_is_a_hard_error() {
        let base = Tower::rationals(Limits {
            max_depth: 1,
            max_degree: 64,
        });
        let p = base.adjoin_roots(&qp(&[-2, 0, 1]), "a0").unwrap();
        let t = &p[0].tower;
        let m = UPoly(vec![t.neg(&p[0].root), Alg::zero(), t.one()]);
        assert!(matches!(
            t.adjoin_roots(&m, "a1"),
            Err(Interrupt::Fail(Error::ResourceCap { .. }))
        ));
    }
}
