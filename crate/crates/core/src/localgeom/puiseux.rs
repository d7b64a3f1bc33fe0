//! Rational Newton–Puiseux expansions under dynamic evaluation.
//!
//! Each stage reads the Newton polygon of a y-regular germ, solves the
//! characteristic polynomial of every edge by adjoining roots, and applies
//! the substitution `x = ζ^v X^e, y = X^q (ζ^u + Y)` with `u e - v q = 1`.
//! A stage whose germ has `Y`-order one is terminal: the remaining branch is
//! a power series found by Newton iteration. Branch counts are exact; the
//! series are only needed to cross-check intersection numbers, so the
//! substitution into a germ that is already terminal is deferred until a
//! parametrization is asked for.

use num_integer::Integer;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::curve::shear_candidates;
use crate::algebra::field::{Field, Q};
use crate::algebra::upoly::UPoly;
use crate::error::{Dyn, Error};
use crate::tower::{explore, Alg, Tower};

/// One Duval substitution step.
#[derive(Debug, Clone)]
pub struct Transform {
    pub zeta: Alg,
    pub e: usize,
    pub q: usize,
    pub u: usize,
    pub v: usize,
    /// The transformed germ is divided by `X^l`.
    pub l: usize,
}

/// A place of a germ at the origin, possibly standing for several conjugate
/// places: `weight` of them, one per embedding of the extra levels of
/// `tower` above the point's own levels.
#[derive(Debug, Clone)]
pub struct Branch {
    pub tower: Tower,
    pub base_depth: usize,
    pub base_degree: usize,
    /// The germ was studied as `H(x + shear*y, y)`.
    pub shear: Q,
    /// The sheared germ, y-regular at the origin.
    pub source: BiPoly<Alg>,
    pub transforms: Vec<Transform>,
    /// The branch is `Y = 0` after the transforms; otherwise the transformed
    /// germ has `Y`-order one.
    pub exact_zero: bool,
}

impl Branch {
    pub fn weight(&self) -> usize {
        self.tower.degree() / self.base_degree
    }

    /// Ramification index over the (sheared) x-axis.
    pub fn ramification(&self) -> usize {
        self.transforms.iter().map(|t| t.e).product()
    }
}

/// A truncated parametrization `t -> (x(t), y(t))` of a branch, in the local
/// coordinates of the germ, exact modulo `t^order`.
#[derive(Debug, Clone)]
pub struct Parametrization {
    pub tower: Tower,
    pub weight: usize,
    pub ramification: usize,
    pub x: Vec<Alg>,
    pub y: Vec<Alg>,
    pub order: usize,
}

/// Truncated power series arithmetic over a tower.
pub(crate) mod series {
    use super::*;

    pub fn zero(n: usize) -> Vec<Alg> {
        vec![Alg::zero(); n]
    }

    pub fn constant(t: &Tower, c: Alg, n: usize) -> Vec<Alg> {
        let mut s = zero(n);
        if n > 0 {
            s[0] = t.reduce(&c);
        }
        s
    }

    pub fn add(t: &Tower, a: &[Alg], b: &[Alg]) -> Vec<Alg> {
        a.iter().zip(b).map(|(x, y)| t.add(x, y)).collect()
    }

    pub fn sub(t: &Tower, a: &[Alg], b: &[Alg]) -> Vec<Alg> {
        a.iter().zip(b).map(|(x, y)| t.sub(x, y)).collect()
    }

    pub fn mul(t: &Tower, a: &[Alg], b: &[Alg]) -> Vec<Alg> {
        let n = a.len();
        let mut out = zero(n);
        for (i, x) in a.iter().enumerate() {
            if t.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                if !t.is_zero(y) {
                    out[i + j] = t.add(&out[i + j], &t.mul(x, y));
                }
            }
        }
        out
    }

    pub fn pow(t: &Tower, a: &[Alg], e: usize) -> Vec<Alg> {
        let mut acc = constant(t, t.one(), a.len());
        for _ in 0..e {
            acc = mul(t, &acc, a);
        }
        acc
    }

    pub fn inv(t: &Tower, a: &[Alg]) -> Dyn<Vec<Alg>> {
        let n = a.len();
        let mut out = zero(n);
        let c0 = t.inv(&a[0])?;
        out[0] = c0.clone();
        for k in 1..n {
            let mut s = Alg::zero();
            for i in 1..=k {
                s = t.add(&s, &t.mul(&a[i], &out[k - i]));
            }
            out[k] = t.neg(&t.mul(&s, &c0));
        }
        Ok(out)
    }

    /// `H(X(t), Y(t))` modulo `t^n`.
    pub fn eval(t: &Tower, h: &BiPoly<Alg>, x: &[Alg], y: &[Alg]) -> Vec<Alg> {
        let n = x.len();
        let inner = |p: &UPoly<Alg>| {
            let mut acc = zero(n);
            for c in p.0.iter().rev() {
                acc = mul(t, &acc, x);
                acc[0] = t.add(&acc[0], c);
            }
            acc
        };
        let mut acc = zero(n);
        for p in h.0.iter().rev() {
            acc = add(t, &mul(t, &acc, y), &inner(p));
        }
        acc
    }

    /// Index of the first unit coefficient.
    pub fn order(t: &Tower, a: &[Alg]) -> Dyn<Option<usize>> {
        for (i, c) in a.iter().enumerate() {
            if !t.zero_or_unit(c)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Exponents `u, v >= 0` with `u e - v q = 1`.
fn bezout(e: usize, q: usize) -> (usize, usize) {
    if e == 1 {
        return (1, 0);
    }
    let v = (0..e)
        .find(|v| (1 + v * q).is_multiple_of(e))
        .expect("e and q coprime");
    ((1 + v * q) / e, v)
}

fn y_order(t: &Tower, h: &BiPoly<Alg>) -> Dyn<Option<usize>> {
    for (j, p) in h.0.iter().enumerate() {
        if !t.zero_or_unit(&p.coeff(t, 0))? {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Lower boundary of the Newton polygon from `(0, mu)` down to the lowest
/// row of the support; returns vertices `(i, j)` with decreasing `j`.
fn polygon(support: &[(usize, usize)], mu: usize) -> Vec<(usize, usize)> {
    let jmin = support.iter().map(|p| p.1).min().unwrap();
    let mut best: Vec<Option<usize>> = vec![None; mu + 1];
    for &(i, j) in support {
        if j <= mu {
            best[j] = Some(best[j].map_or(i, |b| b.min(i)));
        }
    }
    let mut verts = vec![(0, mu)];
    let (mut ic, mut jc) = (0usize, mu);
    while jc > jmin {
        let mut next: Option<(usize, usize)> = None;
        for j in (jmin..jc).rev() {
            let Some(i) = best[j] else { continue };
            let better = match next {
                None => true,
                // compare (i - ic)/(jc - j) against the current best slope
                Some((bi, bj)) => {
                    let lhs = (i as i64 - ic as i64) * (jc - bj) as i64;
                    let rhs = (bi as i64 - ic as i64) * (jc - j) as i64;
                    lhs < rhs || (lhs == rhs && j < bj)
                }
            };
            if better {
                next = Some((i, j));
            }
        }
        let (i, j) = next.unwrap();
        verts.push((i, j));
        ic = i;
        jc = j;
    }
    verts
}

/// `X^-l * H(ζ^v X^e, X^q (ζ^u + Y))`
fn substitute(t: &Tower, h: &BiPoly<Alg>, tr: &Transform) -> BiPoly<Alg> {
    let l = tr.l;
    let shifted = BiPoly::y(t).add(t, &BiPoly::constant(t, t.pow(&tr.zeta, tr.u as u64)));
    let zv = t.pow(&tr.zeta, tr.v as u64);
    let mut acc = BiPoly::zero();
    let mut powers = vec![BiPoly::one(t)];
    for (i, j, c) in h.terms(t) {
        while powers.len() <= j {
            let next = powers.last().unwrap().mul(t, &shifted);
            powers.push(next);
        }
        let coeff = t.mul(&c, &t.pow(&zv, i as u64));
        let xexp = tr.e * i + tr.q * j - l;
        let term = powers[j].scale_inner(t, &UPoly::monomial(t, coeff, xexp));
        acc = acc.add(t, &term);
    }
    acc
}

fn stage(
    t: &Tower,
    h: &BiPoly<Alg>,
    mu: usize,
    name_seed: &mut usize,
) -> Dyn<Vec<(Tower, Vec<Transform>, bool)>> {
    if mu == 1 {
        return Ok(vec![(t.clone(), Vec::new(), false)]);
    }
    let h = h.clean(t)?;
    let support: Vec<(usize, usize)> = h.terms(t).into_iter().map(|(i, j, _)| (i, j)).collect();
    let jmin = support.iter().map(|p| p.1).min().unwrap();
    if jmin >= 2 {
        return Err(Error::NonReduced("germ has a repeated component".into()).into());
    }
    let mut out = Vec::new();
    if jmin == 1 {
        // the exact branch Y = 0
        out.push((t.clone(), Vec::new(), true));
    }
    let verts = polygon(&support, mu);
    for w in verts.windows(2) {
        let ((ic, jc), (inn, jn)) = (w[0], w[1]);
        let (di, dj) = (inn - ic, jc - jn);
        let g = di.gcd(&dj);
        let (q, e) = (di / g, dj / g);
        let phi = UPoly::new(
            t,
            (0..=g)
                .map(|k| h.coeff(t, inn - k * q, jn + k * e))
                .collect(),
        );
        let l = e * inn + q * jn;
        let (u, v) = bezout(e, q);
        for (psi, mult) in phi.squarefree_decompose(t)? {
            *name_seed += 1;
            let name = format!("z{}", *name_seed);
            for piece in t.adjoin_roots(&psi, &name)? {
                let floor = t.depth();
                let found = explore(&piece.tower, floor, |tt| {
                    let tr = Transform {
                        zeta: tt.reduce(&piece.root),
                        e,
                        q,
                        u,
                        v,
                        l,
                    };
                    if mult == 1 {
                        return Ok(vec![(tt.clone(), vec![tr], false)]);
                    }
                    let h1 = substitute(tt, &tt.reduce_bipoly(&h), &tr).clean(tt)?;
                    let mu1 = y_order(tt, &h1)?
                        .ok_or_else(|| Error::internal("Newton polygon step lost y-regularity"))?;
                    if mu1 != mult {
                        return Err(Error::internal(format!(
                            "root multiplicity {mult} but transformed order {mu1}"
                        ))
                        .into());
                    }
                    let mut seed = *name_seed;
                    let deeper = stage(tt, &h1, mu1, &mut seed)?;
                    Ok(deeper
                        .into_iter()
                        .map(|(tw, mut chain, zero)| {
                            chain.insert(0, tr.clone());
                            (tw, chain, zero)
                        })
                        .collect::<Vec<_>>())
                })?;
                *name_seed += 8;
                out.extend(found.into_iter().flat_map(|(_, v)| v));
            }
        }
    }
    Ok(out)
}

/// Places at the origin of a germ `h` with `h(0,0) = 0`, whose coefficients
/// live in `t`. Splits of levels of `t` are passed to the caller.
pub fn places(t: &Tower, h: &BiPoly<Alg>, seed: u64) -> Dyn<Vec<Branch>> {
    let h = h.clean(t)?;
    if h.is_zero() {
        return Err(Error::Invalid("zero germ".into()).into());
    }
    if !t.is_zero(&h.coeff(t, 0, 0)) {
        return Ok(Vec::new());
    }
    let mut shear = Q::from_integer(0.into());
    let mut germ = h.clone();
    let mut mu = y_order(t, &germ)?;
    if mu.is_none() {
        for c in shear_candidates(seed).take(64) {
            let g = h.shear(t, &t.from_q(&c)).clean(t)?;
            if let Some(m) = y_order(t, &g)? {
                shear = c;
                germ = g;
                mu = Some(m);
                break;
            }
        }
    }
    let mu = mu.ok_or_else(|| Error::internal("no shear makes the germ y-regular"))?;
    let mut names = t.depth() * 16;
    let raw = stage(t, &germ, mu, &mut names)?;
    let base_degree = t.degree();
    Ok(raw
        .into_iter()
        .map(|(tower, transforms, exact_zero)| Branch {
            tower,
            base_depth: t.depth(),
            base_degree,
            shear: shear.clone(),
            source: germ.clone(),
            transforms,
            exact_zero,
        })
        .collect())
}

fn solve_terminal(t: &Tower, h: &BiPoly<Alg>, n: usize) -> Dyn<Vec<Alg>> {
    let mut x = series::zero(n);
    if n > 1 {
        x[1] = t.one();
    }
    let hy = h.dy(t);
    let mut y = series::zero(n);
    let mut p = 1;
    while p < n {
        p = (2 * p).min(n);
        let xs = &x[..p];
        let ys = &y[..p];
        let r = series::eval(t, h, xs, ys);
        let d = series::eval(t, &hy, xs, ys);
        let corr = series::mul(t, &r, &series::inv(t, &d)?);
        let mut ny = series::sub(t, ys, &corr);
        ny.resize(n, Alg::zero());
        y = ny;
    }
    Ok(y)
}

/// Truncated parametrization of one branch, modulo `t^n`. Splits above the
/// branch's base levels are resolved here, so one branch may come back as
/// several pieces.
pub fn parametrize(b: &Branch, n: usize) -> Dyn<Vec<Parametrization>> {
    let found = explore(&b.tower, b.base_depth, |t| {
        let mut germ = t.reduce_bipoly(&b.source);
        for tr in &b.transforms {
            let tr = Transform {
                zeta: t.reduce(&tr.zeta),
                ..tr.clone()
            };
            germ = substitute(t, &germ, &tr);
        }
        let mut y = if b.exact_zero {
            series::zero(n)
        } else {
            solve_terminal(t, &germ, n)?
        };
        let mut x = series::zero(n);
        if n > 1 {
            x[1] = t.one();
        }
        for tr in b.transforms.iter().rev() {
            let zeta = t.reduce(&tr.zeta);
            let zu = series::constant(t, t.pow(&zeta, tr.u as u64), n);
            let zv = series::constant(t, t.pow(&zeta, tr.v as u64), n);
            let ny = series::mul(t, &series::pow(t, &x, tr.q), &series::add(t, &zu, &y));
            let nx = series::mul(t, &zv, &series::pow(t, &x, tr.e));
            x = nx;
            y = ny;
        }
        let c = t.from_q(&b.shear);
        let xl = series::add(t, &x, &y.iter().map(|v| t.mul(v, &c)).collect::<Vec<_>>());
        Ok((xl, y))
    })?;
    Ok(found
        .into_iter()
        .map(|(tower, (x, y))| Parametrization {
            weight: tower.degree() / b.base_degree,
            tower,
            ramification: b.ramification(),
            x,
            y,
            order: n,
        })
        .collect())
}

/// `ord_t g(x(t), y(t))` summed over the conjugates of a branch, deepening
/// the truncation from `start` until every order is certified.
pub fn intersection_with_branch(
    b: &Branch,
    g: &BiPoly<Alg>,
    start: usize,
    cap: usize,
) -> Dyn<usize> {
    let mut n = start.max(2);
    loop {
        let mut total = 0;
        let mut certified = true;
        for par in parametrize(b, n)? {
            let t = &par.tower;
            let gl = t.reduce_bipoly(g);
            let found = explore(t, b.base_depth, |tt| {
                let xs: Vec<Alg> = par.x.iter().map(|c| tt.reduce(c)).collect();
                let ys: Vec<Alg> = par.y.iter().map(|c| tt.reduce(c)).collect();
                let val = series::eval(tt, &tt.reduce_bipoly(&gl), &xs, &ys);
                series::order(tt, &val)
            })?;
            for (tt, ord) in found {
                match ord {
                    Some(o) => total += o * (tt.degree() / b.base_degree),
                    None => certified = false,
                }
            }
        }
        if certified {
            return Ok(total);
        }
        if n >= cap {
            return Err(Error::ResourceCap {
                op: "branch intersection".into(),
                detail: format!("truncation order {n} reached without certification"),
            }
            .into());
        }
        n *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rationals;
    use crate::algebra::parse::parse_xy;
    use crate::tower::{explore_all, Limits};

    fn count(s: &str) -> usize {
        let base = Tower::rationals(Limits::default());
        let h = base.lift_q_bipoly(&parse_xy(s).unwrap());
        explore_all(&base, |t| places(t, &t.reduce_bipoly(&h), 0))
            .unwrap()
            .into_iter()
            .flat_map(|(_, v)| v)
            .map(|b| b.weight())
            .sum()
    }

    #[test]
    fn bezout_exponents() {
        for (e, q) in [(1, 1), (2, 3), (3, 2), (3, 1), (5, 7)] {
            let (u, v) = bezout(e, q);
            assert_eq!(u * e, v * q + 1);
        }
    }

    #[test]
    fn polygon_vertices() {
        // y^3 + 3y^2 - x^2 at the origin: one edge from (0,2) to (2,0)
        assert_eq!(polygon(&[(0, 3), (0, 2), (2, 0)], 2), vec![(0, 2), (2, 0)]);
        // y^2 - x^3 - x^2 y^0... two edges
        assert_eq!(
            polygon(&[(0, 3), (1, 1), (4, 0)], 3),
            vec![(0, 3), (1, 1), (4, 0)]
        );
    }

    #[test]
    fn branch_counts() {
        assert_eq!(count("y^3 - x^2"), 1);
        assert_eq!(count("x*y"), 2);
        assert_eq!(count("y^3 + 3*y^2 - x^2"), 2);
        assert_eq!(count("y^4 - x^6"), 2);
        assert_eq!(count("(y^2 - x^3)*(y^2 + x^3)"), 2);
        assert_eq!(count("x*y*(x + y)"), 3);
        assert_eq!(count("y^2 - x^4 - x^5"), 2);
        assert_eq!(count("y^4 - 2*x^3*y^2 + x^6 - 4*x^5*y - x^7"), 1);
        assert_eq!(count("x"), 1);
        assert_eq!(count("y^2 + x^2"), 2);
    }

    #[test]
    fn transverse_lines_meet_once() {
        let base = Tower::rationals(Limits::default());
        let h = base.lift_q_bipoly(&parse_xy("y").unwrap());
        let g = base.lift_q_bipoly(&parse_xy("x").unwrap());
        let bs = settled_places(&base, &h);
        assert_eq!(bs.len(), 1);
        assert_eq!(
            crate::error::settled(intersection_with_branch(&bs[0], &g, 4, 256)).unwrap(),
            1
        );
    }

    fn settled_places(t: &Tower, h: &BiPoly<Alg>) -> Vec<Branch> {
        crate::error::settled(places(t, h, 0)).unwrap()
    }

    #[test]
    fn cusp_meets_tangent_three_times() {
        let base = Tower::rationals(Limits::default());
        let h = base.lift_q_bipoly(&parse_xy("y^2 - x^3").unwrap());
        let g = base.lift_q_bipoly(&parse_xy("y").unwrap());
        let bs = settled_places(&base, &h);
        let total: usize = bs
            .iter()
            .map(|b| crate::error::settled(intersection_with_branch(b, &g, 4, 256)).unwrap())
            .sum();
        assert_eq!(total, 3);
        let _ = Rationals;
    }
}
