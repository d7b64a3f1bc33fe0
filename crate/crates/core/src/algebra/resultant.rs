//! Resultants in y by the subresultant polynomial remainder sequence, and
//! gcds in `K[x][y]` by the primitive remainder sequence.

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::Field;
use crate::algebra::upoly::UPoly;
use crate::error::{Dyn, Error};

type P<E> = UPoly<E>;
type B<E> = BiPoly<E>;

/// Drops leading y-coefficients that vanish everywhere and makes the new
/// leading coefficient's leading x-coefficient a unit.
fn certify_top<F: Field>(k: &F, a: &B<F::E>) -> Dyn<B<F::E>> {
    let mut v = a.0.clone();
    while let Some(top) = v.pop() {
        let t = top.certify(k)?;
        if !t.is_zero() {
            v.push(t);
            break;
        }
    }
    Ok(B::new(v))
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without fractions in x.
pub fn prem<F: Field>(k: &F, a: &B<F::E>, b: &B<F::E>) -> Dyn<B<F::E>> {
    let b = certify_top(k, b)?;
    let n = b.deg_y().ok_or(Error::DivisionByZero)?;
    let mut r = certify_top(k, a)?;
    let Some(m) = r.deg_y() else {
        return Ok(r);
    };
    if m < n {
        return Ok(r);
    }
    let lb = b.lc_y().unwrap().clone();
    let mut steps = 0;
    while let Some(d) = r.deg_y() {
        if d < n {
            break;
        }
        let lr = r.lc_y().unwrap().clone();
        r = r
            .scale_inner(k, &lb)
            .sub(k, &b.shift_y(d - n).scale_inner(k, &lr));
        r = certify_top(k, &r)?;
        steps += 1;
    }
    let missing = m - n + 1 - steps;
    if missing > 0 {
        r = r.scale_inner(k, &lb.pow(k, missing));
    }
    Ok(r)
}

fn exact_div_inner<F: Field>(k: &F, a: &B<F::E>, d: &P<F::E>) -> Dyn<B<F::E>> {
    Ok(B::new(
        a.0.iter()
            .map(|p| p.exact_div(k, d))
            .collect::<Dyn<Vec<_>>>()?,
    ))
}

/// `Res_y(a, b)` as a polynomial in x.
///
/// Constants in y follow `Res(c, g) = c^deg(g)`; a zero argument against a
/// nonconstant one gives zero.
pub fn resultant_y<F: Field>(k: &F, a: &B<F::E>, b: &B<F::E>) -> Dyn<P<F::E>> {
    let mut a = certify_top(k, a)?;
    let mut b = certify_top(k, b)?;
    match (a.deg_y(), b.deg_y()) {
        (None, None) => return Err(Error::UndefinedResultant.into()),
        (None, Some(0)) | (Some(0), None) => return Ok(P::one(k)),
        (None, _) | (_, None) => return Ok(P::zero()),
        _ => {}
    }
    let mut sign = false;
    if a.deg_y() < b.deg_y() {
        std::mem::swap(&mut a, &mut b);
        if a.deg_y().unwrap() % 2 == 1 && b.deg_y().unwrap() % 2 == 1 {
            sign = true;
        }
    }
    if b.deg_y() == Some(0) {
        let r = b.lc_y().unwrap().pow(k, a.deg_y().unwrap());
        return Ok(if sign { r.neg(k) } else { r });
    }
    let mut g = P::one(k);
    let mut h = P::one(k);
    loop {
        let da = a.deg_y().unwrap();
        let db = b.deg_y().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = !sign;
        }
        let r = prem(k, &a, &b)?;
        a = b;
        let den = g.mul(k, &h.pow(k, delta));
        b = exact_div_inner(k, &r, &den)?;
        b = certify_top(k, &b)?;
        g = a.lc_y().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(k, delta).exact_div(k, &h.pow(k, delta - 1))?
        };
        match b.deg_y() {
            None => return Ok(P::zero()),
            Some(0) => break,
            Some(_) => {}
        }
    }
    let da = a.deg_y().unwrap();
    let lb = b.lc_y().unwrap();
    let r = if da == 0 {
        P::one(k)
    } else {
        lb.pow(k, da).exact_div(k, &h.pow(k, da - 1))?
    };
    Ok(if sign { r.neg(k) } else { r })
}

/// Monic gcd of the y-coefficients.
pub fn content_y<F: Field>(k: &F, a: &B<F::E>) -> Dyn<P<F::E>> {
    let mut g = P::zero();
    for p in &a.0 {
        g = P::gcd(k, &g, p)?;
        if g.deg() == Some(0) {
            break;
        }
    }
    Ok(g)
}

pub fn primitive_part<F: Field>(k: &F, a: &B<F::E>) -> Dyn<B<F::E>> {
    let c = content_y(k, a)?;
    if c.is_zero() {
        return Ok(a.clone());
    }
    exact_div_inner(k, a, &c)
}

/// Normalizes so that the leading x-coefficient of the leading y-coefficient
/// is one.
pub fn make_monic_lead<F: Field>(k: &F, a: &B<F::E>) -> Dyn<B<F::E>> {
    let a = certify_top(k, a)?;
    match a.lc_y().and_then(|p| p.lc()) {
        None => Ok(a),
        Some(l) => {
            let inv = k.inv(l)?;
            Ok(a.scale(k, &inv))
        }
    }
}

/// gcd in `K[x][y]`, normalized by [`make_monic_lead`].
pub fn gcd_xy<F: Field>(k: &F, a: &B<F::E>, b: &B<F::E>) -> Dyn<B<F::E>> {
    let a = certify_top(k, a)?;
    let b = certify_top(k, b)?;
    if a.is_zero() {
        return make_monic_lead(k, &b);
    }
    if b.is_zero() {
        return make_monic_lead(k, &a);
    }
    let c = P::gcd(k, &content_y(k, &a)?, &content_y(k, &b)?)?;
    let (mut p, mut q) = (primitive_part(k, &a)?, primitive_part(k, &b)?);
    if p.deg_y() < q.deg_y() {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if q.deg_y() == Some(0) {
            return make_monic_lead(k, &B::from_inner(c));
        }
        let r = prem(k, &p, &q)?;
        if r.is_zero() {
            let g = primitive_part(k, &q)?.scale_inner(k, &c);
            return make_monic_lead(k, &g);
        }
        p = q;
        q = primitive_part(k, &r)?;
    }
}

pub fn exact_div_xy<F: Field>(k: &F, a: &B<F::E>, d: &B<F::E>) -> Dyn<B<F::E>> {
    let d = certify_top(k, d)?;
    let n = d.deg_y().ok_or(Error::DivisionByZero)?;
    let ld = d.lc_y().unwrap().clone();
    let mut r = certify_top(k, a)?;
    let mut quo = B::zero();
    while let Some(m) = r.deg_y() {
        if m < n {
            break;
        }
        let (c, rem) = r.lc_y().unwrap().divrem(k, &ld)?;
        if !rem.is_zero() {
            return Err(Error::internal("inexact bivariate division").into());
        }
        let t = B::from_inner(c).shift_y(m - n);
        quo = quo.add(k, &t);
        r = certify_top(k, &r.sub(k, &t.mul(k, &d)))?;
    }
    if !r.is_zero() {
        return Err(Error::internal("inexact bivariate division").into());
    }
    Ok(quo)
}
