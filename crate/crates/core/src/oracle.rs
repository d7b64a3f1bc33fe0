//! Brute-force verifiers for intersection numbers, by exact linear algebra
//! on quotient rings. Slow on purpose-independent paths: nothing here calls
//! the resultant or Puiseux code.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::{Rationals, Q};
use crate::algebra::upoly::UPoly;
use crate::error::{settled, Error, Result};

const K: Rationals = Rationals;

/// Largest truncation degree tried by [`quotient_dim_local`].
pub const LOCAL_CAP: usize = 128;

/// `dim Q[x,y]/(f, g)` for `f` monic in y: the quotient by `f` is free over
/// `Q[x]` with basis `1, y, …, y^(n-1)`, and the answer is the degree of the
/// determinant of multiplication by `g` on it.
pub fn quotient_dim_global(f: &BiPoly<Q>, g: &BiPoly<Q>) -> Result<usize> {
    let n = f
        .deg_y()
        .ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    if f.lc_y() != Some(&UPoly::one(&K)) {
        return Err(Error::Invalid("first argument must be monic in y".into()));
    }
    if n == 0 {
        return Ok(0);
    }
    let reduce = |p: &BiPoly<Q>| -> BiPoly<Q> {
        let mut r = p.clone();
        while let Some(d) = r.deg_y() {
            if d < n {
                break;
            }
            let l = r.lc_y().unwrap().clone();
            r = r.sub(&K, &f.shift_y(d - n).scale_inner(&K, &l));
        }
        r
    };
    let mut col = reduce(g);
    let mut m: Vec<Vec<UPoly<Q>>> = vec![vec![UPoly::zero(); n]; n];
    for j in 0..n {
        for i in 0..n {
            m[i][j] = col.ycoeff(i);
        }
        col = reduce(&col.shift_y(1));
    }
    let det = bareiss_det(m)?;
    det.deg().ok_or(Error::InfiniteIntersection)
}

/// Fraction-free determinant over `Q[x]`.
fn bareiss_det(mut m: Vec<Vec<UPoly<Q>>>) -> Result<UPoly<Q>> {
    let n = m.len();
    let mut prev = UPoly::one(&K);
    let mut neg = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|r| !m[*r][k].is_zero()) else {
            return Ok(UPoly::zero());
        };
        if p != k {
            m.swap(p, k);
            neg = !neg;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k]
                    .mul(&K, &m[i][j])
                    .sub(&K, &m[i][k].mul(&K, &m[k][j]));
                m[i][j] = settled(t.exact_div(&K, &prev))?;
            }
            m[i][k] = UPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if neg { d.neg(&K) } else { d })
}

fn monomial_index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

/// `dim Q[x,y]/((f, g) + m^cap)` at the origin.
fn truncated_dim(f: &BiPoly<Q>, g: &BiPoly<Q>, cap: usize) -> usize {
    let nmono = cap * (cap + 1) / 2;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Q>> = BTreeMap::new();
    let gens = [f.terms(&K), g.terms(&K)];
    for d in 0..cap {
        for j in 0..=d {
            let i = d - j;
            for gen in &gens {
                let mut row: BTreeMap<usize, Q> = BTreeMap::new();
                for (a, b, c) in gen {
                    if a + i + b + j < cap {
                        row.insert(monomial_index(a + i, b + j), c.clone());
                    }
                }
                while let Some((&col, _)) = row.iter().next() {
                    match pivots.get(&col) {
                        Some(prow) => {
                            let factor = row[&col].clone();
                            for (pc, pv) in prow {
                                let v = row.remove(pc).unwrap_or_else(Q::zero) - &factor * pv;
                                if !v.is_zero() {
                                    row.insert(*pc, v);
                                }
                            }
                        }
                        None => {
                            let inv = row[&col].recip();
                            for v in row.values_mut() {
                                *v *= &inv;
                            }
                            pivots.insert(col, row);
                            break;
                        }
                    }
                }
            }
        }
    }
    nmono - pivots.len()
}

/// Local intersection number at a rational point by truncation: the
/// truncation degree doubles until three successive dimensions agree.
pub fn quotient_dim_local(f: &BiPoly<Q>, g: &BiPoly<Q>, p: (&Q, &Q)) -> Result<usize> {
    let f0 = f.translate(&K, p.0, p.1);
    let g0 = g.translate(&K, p.0, p.1);
    if !f0.coeff(&K, 0, 0).is_zero() || !g0.coeff(&K, 0, 0).is_zero() {
        return Ok(0);
    }
    let mut history = Vec::new();
    let mut cap = 2;
    while cap <= LOCAL_CAP {
        history.push(truncated_dim(&f0, &g0, cap));
        let h = history.len();
        if h >= 3 && history[h - 1] == history[h - 2] && history[h - 2] == history[h - 3] {
            return Ok(history[h - 1]);
        }
        cap *= 2;
    }
    Err(Error::OracleCap(format!(
        "no stabilization up to degree {LOCAL_CAP} (dimensions {history:?})"
    )))
}

/// Rational common zeros of `f` and `g`, used to check that local dimensions
/// add up to the global one when every common zero is rational.
pub fn rational_common_zeros(f: &BiPoly<Q>, g: &BiPoly<Q>) -> Result<Vec<(Q, Q)>> {
    let r = settled(crate::algebra::resultant::resultant_y(&K, f, g))?;
    if r.is_zero() {
        return Err(Error::InfiniteIntersection);
    }
    let mut out = Vec::new();
    for a in crate::tower::rational_roots(&r) {
        let fa = f.eval_x(&K, &a);
        let ga = g.eval_x(&K, &a);
        let h = settled(UPoly::gcd(&K, &fa, &ga))?;
        for b in crate::tower::rational_roots(&h) {
            out.push((a.clone(), b));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::q;
    use crate::algebra::parse::parse_xy;

    fn p(s: &str) -> BiPoly<Q> {
        parse_xy(s).unwrap()
    }

    #[test]
    fn global_examples() {
        assert_eq!(quotient_dim_global(&p("y - x^2"), &p("y")).unwrap(), 2);
        assert_eq!(
            quotient_dim_global(&p("y^3 - x^2 - 3*y + 2"), &p("y^3 - x^2 - 3*y - 2")).unwrap(),
            0
        );
        assert_eq!(quotient_dim_global(&p("y^2"), &p("y^3 - x^2")).unwrap(), 4);
        assert!(quotient_dim_global(&p("y - x"), &p("y^2 - x^2")).is_err());
    }

    #[test]
    fn local_examples() {
        let o = (&q(0), &q(0));
        assert_eq!(quotient_dim_local(&p("x"), &p("y"), o).unwrap(), 1);
        assert_eq!(quotient_dim_local(&p("y^2 - x^3"), &p("y"), o).unwrap(), 3);
        assert_eq!(quotient_dim_local(&p("x"), &p("y^2"), o).unwrap(), 2);
        // partials of the golden curve at (0, 1)
        assert_eq!(
            quotient_dim_local(&p("-2*x"), &p("3*y^2 - 3"), (&q(0), &q(1))).unwrap(),
            1
        );
    }

    #[test]
    fn locals_add_up_to_global() {
        let f = p("y^2 - x^2 - x");
        let g = p("y - x");
        let zeros = rational_common_zeros(&f, &g).unwrap();
        let total: usize = zeros
            .iter()
            .map(|(a, b)| quotient_dim_local(&f, &g, (a, b)).unwrap())
            .sum();
        assert_eq!(total, quotient_dim_global(&f, &g).unwrap());
    }
}
