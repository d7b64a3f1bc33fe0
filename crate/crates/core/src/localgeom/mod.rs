//! Local analytic geometry of plane curves: critical points, local
//! intersection and Milnor numbers, places at finite points and at infinity.

pub mod puiseux;

use serde::{Deserialize, Serialize};

use crate::algebra::bipoly::BiPoly;
use crate::algebra::curve::{localize_at_infinity, shear_candidates, CurveNormalForm};
use crate::algebra::field::{Field, Q};
use crate::algebra::resultant::{gcd_xy, resultant_y};
use crate::algebra::upoly::UPoly;
use crate::error::{settled, Dyn, Error, Result};
use crate::tower::{explore, explore_all, Alg, Limits, Tower};

pub use puiseux::{intersection_with_branch, parametrize, places, Branch, Parametrization};

/// A Galois orbit of points, represented by one point whose coordinates live
/// in `tower`. Levels below `base_depth` belong to the ambient computation
/// (e.g. a critical value); the orbit size relative to that is
/// [`PointClass::orbit_degree`].
#[derive(Debug, Clone)]
pub struct PointClass {
    pub tower: Tower,
    pub base_depth: usize,
    pub base_degree: usize,
    pub x: Alg,
    pub y: Alg,
}

impl PointClass {
    pub fn orbit_degree(&self) -> usize {
        self.tower.degree() / self.base_degree
    }

    pub fn render(&self) -> (String, String) {
        (self.tower.render(&self.x), self.tower.render(&self.y))
    }

    /// The same point seen in a descendant tower.
    pub fn in_tower(&self, t: &Tower) -> PointClass {
        PointClass {
            tower: t.clone(),
            x: t.reduce(&self.x),
            y: t.reduce(&self.y),
            ..self.clone()
        }
    }

    pub fn rational(&self) -> Option<(Q, Q)> {
        Some((self.tower.as_q(&self.x)?, self.tower.as_q(&self.y)?))
    }
}

#[derive(Debug, Clone)]
pub struct LocalReport {
    pub point: PointClass,
    pub mu: usize,
    pub r: usize,
    pub delta: usize,
}

/// Common zeros of `monic` (constant leading y-coefficient) and `others`,
/// as triangular point classes over `base`.
pub fn solve_points(
    base: &Tower,
    monic: &BiPoly<Alg>,
    others: &[BiPoly<Alg>],
) -> Dyn<Vec<PointClass>> {
    let mut h: Option<UPoly<Alg>> = None;
    for o in others {
        let r = resultant_y(base, monic, o)?.certify(base)?;
        h = Some(match h {
            None => r,
            Some(prev) => UPoly::gcd(base, &prev, &r)?,
        });
    }
    let h = h.unwrap_or_else(UPoly::zero).certify(base)?;
    if h.is_zero() {
        return Err(
            Error::NonIsolatedCritical("the equations share a curve component".into()).into(),
        );
    }
    if h.is_constant() {
        return Ok(Vec::new());
    }
    let depth = base.depth();
    let mut out = Vec::new();
    for piece in base.adjoin_roots(&h, &format!("a{depth}"))? {
        let found = explore(&piece.tower, depth, |t| {
            let xv = t.reduce(&piece.root);
            let mut g = t.reduce_bipoly(monic).eval_x(t, &xv);
            for o in others {
                g = UPoly::gcd(t, &g, &t.reduce_bipoly(o).eval_x(t, &xv))?;
            }
            if g.deg().unwrap_or(0) == 0 {
                return Ok(Vec::new());
            }
            let mut pts = Vec::new();
            for yp in t.adjoin_roots(&g, &format!("b{}", t.depth()))? {
                pts.push(PointClass {
                    x: yp.tower.reduce(&xv),
                    y: yp.root,
                    tower: yp.tower,
                    base_depth: depth,
                    base_degree: base.degree(),
                });
            }
            Ok(pts)
        })?;
        out.extend(found.into_iter().flat_map(|(_, v)| v));
    }
    Ok(out)
}

fn partials_guard(f: &BiPoly<Q>) -> Result<()> {
    let fx = f.dx(&crate::algebra::Rationals);
    let fy = f.dy(&crate::algebra::Rationals);
    if fx.is_zero() {
        return Err(Error::DegeneratePencil);
    }
    let g = settled(gcd_xy(&crate::algebra::Rationals, &fx, &fy))?;
    if g.total_deg().unwrap_or(0) > 0 {
        return Err(Error::NonIsolatedCritical(format!(
            "f_x and f_y share the factor {}",
            g.render(&crate::algebra::Rationals, "x", "y")
        )));
    }
    Ok(())
}

/// Critical points of `f`, i.e. the zeros of `(f_x, f_y)`.
pub fn critical_points(c: &CurveNormalForm, limits: Limits) -> Result<Vec<PointClass>> {
    partials_guard(&c.f)?;
    let base = Tower::rationals(limits);
    let f = base.lift_q_bipoly(&c.f);
    let (fx, fy) = (f.dx(&base), f.dy(&base));
    settled(solve_points(&base, &fy, &[fx]))
}

/// Singular points of the fiber `f = lambda`, with `lambda` in `t`.
pub fn fiber_singular_points(t: &Tower, f: &BiPoly<Alg>, lambda: &Alg) -> Dyn<Vec<PointClass>> {
    let fl = f.sub(t, &BiPoly::constant(t, lambda.clone()));
    solve_points(t, &f.dy(t), &[f.dx(t), fl])
}

/// Local intersection number at `(x0, y0)` by the valuation of a sheared
/// resultant. Everything lives in `t`.
pub fn local_int_at(
    t: &Tower,
    f: &BiPoly<Alg>,
    g: &BiPoly<Alg>,
    x0: &Alg,
    y0: &Alg,
    seed: u64,
) -> Dyn<usize> {
    let ft = f.translate(t, x0, y0).clean(t)?;
    let gt = g.translate(t, x0, y0).clean(t)?;
    if ft.is_zero() || gt.is_zero() {
        return Err(Error::InfiniteLocalIntersection.into());
    }
    if !t.zero_or_unit(&ft.coeff(t, 0, 0))? || !t.zero_or_unit(&gt.coeff(t, 0, 0))? {
        return Ok(0);
    }
    let zero = Q::from_integer(0.into());
    for c in std::iter::once(zero).chain(shear_candidates(seed).take(64)) {
        let cc = t.from_q(&c);
        let fs = ft.shear(t, &cc).certify(t)?;
        let gs = gt.shear(t, &cc).certify(t)?;
        let lead_unit = |p: &BiPoly<Alg>| -> Dyn<bool> {
            let lc = p.lc_y().map(|l| l.coeff(t, 0)).unwrap_or_else(Alg::zero);
            Ok(!t.zero_or_unit(&lc)?)
        };
        if !(lead_unit(&fs)? || lead_unit(&gs)?) {
            continue;
        }
        let (f0, g0) = (fs.eval_x(t, &Alg::zero()), gs.eval_x(t, &Alg::zero()));
        let gcd = UPoly::gcd(t, &f0.certify(t)?, &g0.certify(t)?)?;
        if gcd.is_zero() {
            continue;
        }
        // the origin must be the only common zero on the line x = 0
        let k = gcd.deg().unwrap();
        let mut only_origin = true;
        for i in 0..k {
            if !t.zero_or_unit(&gcd.coeff(t, i))? {
                only_origin = false;
                break;
            }
        }
        if !only_origin {
            continue;
        }
        let res = resultant_y(t, &fs, &gs)?;
        return match res.valuation(t)? {
            Some(v) => Ok(v),
            None => Err(Error::InfiniteLocalIntersection.into()),
        };
    }
    Err(Error::internal("no admissible shear for local intersection").into())
}

/// Local intersection of two rational polynomials at a point class.
pub fn local_int(
    f: &BiPoly<Q>,
    g: &BiPoly<Q>,
    p: &PointClass,
    seed: u64,
) -> Result<Vec<(PointClass, usize)>> {
    let found = settled(explore(&p.tower, p.base_depth, |t| {
        let (fl, gl) = (t.lift_q_bipoly(f), t.lift_q_bipoly(g));
        local_int_at(t, &fl, &gl, &t.reduce(&p.x), &t.reduce(&p.y), seed)
    }))?;
    Ok(found
        .into_iter()
        .map(|(t, v)| (p.in_tower(&t), v))
        .collect())
}

fn gradient_vanishes(t: &Tower, f: &BiPoly<Alg>, x0: &Alg, y0: &Alg) -> Dyn<bool> {
    Ok(t.zero_or_unit(&f.dx(t).eval(t, x0, y0))? && t.zero_or_unit(&f.dy(t).eval(t, x0, y0))?)
}

/// Milnor number of `f` at `(x0, y0)`; zero at smooth points.
pub fn milnor_at(t: &Tower, f: &BiPoly<Alg>, x0: &Alg, y0: &Alg, seed: u64) -> Dyn<usize> {
    if !gradient_vanishes(t, f, x0, y0)? {
        return Ok(0);
    }
    local_int_at(t, &f.dx(t), &f.dy(t), x0, y0, seed)
}

pub fn milnor_local(f: &BiPoly<Q>, p: &PointClass, seed: u64) -> Result<Vec<(PointClass, usize)>> {
    let found = settled(explore(&p.tower, p.base_depth, |t| {
        milnor_at(
            t,
            &t.lift_q_bipoly(f),
            &t.reduce(&p.x),
            &t.reduce(&p.y),
            seed,
        )
    }))?;
    Ok(found
        .into_iter()
        .map(|(t, v)| (p.in_tower(&t), v))
        .collect())
}

/// Number of places at the origin of the germ `h`, counted over the
/// algebraic closure.
pub fn place_count(t: &Tower, h: &BiPoly<Alg>, seed: u64) -> Dyn<usize> {
    Ok(places(t, h, seed)?.iter().map(Branch::weight).sum())
}

pub fn delta_from(mu: usize, r: usize) -> Result<usize> {
    let s = mu + r - 1;
    if !s.is_multiple_of(2) {
        return Err(Error::internal(format!("mu + r - 1 = {s} is odd")));
    }
    Ok(s / 2)
}

/// Full local report at a point of `f` (coefficients in the point's base).
/// A point class may come back refined into several classes.
pub fn analyze_at(
    t: &Tower,
    f: &BiPoly<Alg>,
    x0: &Alg,
    y0: &Alg,
    seed: u64,
) -> Dyn<(usize, usize, usize)> {
    if !t.zero_or_unit(&f.eval(t, x0, y0))? {
        return Err(Error::Invalid("point is not on the curve".into()).into());
    }
    if !gradient_vanishes(t, f, x0, y0)? {
        return Ok((0, 1, 0));
    }
    let mu = local_int_at(t, &f.dx(t), &f.dy(t), x0, y0, seed)?;
    let germ = f.translate(t, x0, y0);
    let r = place_count(t, &germ, seed)?;
    let delta = delta_from(mu, r)?;
    if mu < (r - 1) * (r - 1) {
        return Err(Error::internal(format!("mu = {mu} below (r-1)^2 with r = {r}")).into());
    }
    Ok((mu, r, delta))
}

pub fn local_report(f: &BiPoly<Alg>, p: &PointClass, seed: u64) -> Dyn<Vec<LocalReport>> {
    let found = explore(&p.tower, p.base_depth, |t| {
        analyze_at(
            t,
            &t.reduce_bipoly(f),
            &t.reduce(&p.x),
            &t.reduce(&p.y),
            seed,
        )
    })?;
    Ok(found
        .into_iter()
        .map(|(t, (mu, r, delta))| LocalReport {
            point: p.in_tower(&t),
            mu,
            r,
            delta,
        })
        .collect())
}

/// Places at infinity of a curve in normal form: places at the origin of
/// its localization `F(y, u)`.
pub fn r_infinity_of(t: &Tower, big_f: &BiPoly<Alg>, seed: u64) -> Dyn<usize> {
    place_count(t, big_f, seed)
}

/// `val_u res_y(F_u, F_y)`.
pub fn mu_infinity_of(t: &Tower, big_f: &BiPoly<Alg>) -> Dyn<usize> {
    let fu = big_f.dx(t).clean(t)?;
    if fu.is_zero() {
        // F = y: the quotient is zero since F_y is a unit
        if big_f.deg_y() == Some(1) && big_f.dy(t).deg_x() == Some(0) {
            return Ok(0);
        }
        return Err(Error::Invalid("F_u vanishes identically".into()).into());
    }
    let res = resultant_y(t, &fu, &big_f.dy(t))?;
    match res.valuation(t)? {
        Some(v) => Ok(v),
        None => Err(Error::InfiniteLocalIntersection.into()),
    }
}

fn localized(c: &CurveNormalForm) -> Result<(Tower, BiPoly<Alg>)> {
    let big_f = localize_at_infinity(c)?;
    let base = Tower::rationals(Limits::default());
    let f = base.lift_q_bipoly(&big_f);
    Ok((base, f))
}

pub fn r_infinity(c: &CurveNormalForm, limits: Limits, seed: u64) -> Result<usize> {
    let (_, f) = localized(c)?;
    let base = Tower::rationals(limits);
    settled(r_infinity_of(&base, &f, seed))
}

pub fn mu_infinity(c: &CurveNormalForm) -> Result<usize> {
    let (base, f) = localized(c)?;
    settled(mu_infinity_of(&base, &f))
}

pub fn delta_infinity(c: &CurveNormalForm, limits: Limits, seed: u64) -> Result<usize> {
    delta_from(mu_infinity(c)?, r_infinity(c, limits, seed)?)
}

/// Summed over the point's class: the delta invariant of `f` there.
pub fn delta_local(f: &BiPoly<Q>, p: &PointClass, seed: u64) -> Result<Vec<(PointClass, usize)>> {
    let fl = p.tower.lift_q_bipoly(f);
    Ok(settled(local_report(&fl, p, seed))?
        .into_iter()
        .map(|r| (r.point, r.delta))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermRecord {
    pub mu0: usize,
    pub r: usize,
    pub bound_ok: bool,
    /// `None` when `r < 3` and the statement is vacuous.
    pub strict_ok: Option<bool>,
    /// `None` unless `r = 2` and `mu0 = 1`.
    pub coords_ok: Option<bool>,
}

/// The inequalities relating Milnor number and place count of a germ at
/// the origin, plus the normal-crossing conclusion in the extremal case.
pub fn germ_check(h: &BiPoly<Q>, limits: Limits, seed: u64) -> Result<GermRecord> {
    let base = Tower::rationals(limits);
    let hl = base.lift_q_bipoly(h);
    if !base.is_zero(&hl.coeff(&base, 0, 0)) {
        return Err(Error::Invalid(
            "germ does not pass through the origin".into(),
        ));
    }
    let zero = Alg::zero();
    let mu0 = settled(milnor_at(&base, &hl, &zero, &zero, seed))?;
    let branches = settled(places(&base, &hl, seed))?;
    let r: usize = branches.iter().map(Branch::weight).sum();
    let bound_ok = r == 0 || mu0 >= (r - 1) * (r - 1);
    let strict_ok = (r >= 3).then_some(mu0 > r - 1);
    let coords_ok = if r == 2 && mu0 == 1 {
        let mut smooth = true;
        for b in &branches {
            for par in settled(parametrize(b, 4))? {
                let t = &par.tower;
                let ox = settled(puiseux::series::order(t, &par.x))?;
                let oy = settled(puiseux::series::order(t, &par.y))?;
                smooth &= ox == Some(1) || oy == Some(1);
            }
        }
        // two smooth branches with distinct tangents: the tangent cone is a
        // nondegenerate quadratic form
        let q2 = h.homogeneous_part(&crate::algebra::Rationals, 2);
        let (a, b, c) = (
            q2.coeff(&crate::algebra::Rationals, 2, 0),
            q2.coeff(&crate::algebra::Rationals, 1, 1),
            q2.coeff(&crate::algebra::Rationals, 0, 2),
        );
        let disc = &b * &b - Q::from_integer(4.into()) * a * c;
        let transverse =
            h.order(&crate::algebra::Rationals) == Some(2) && disc != Q::from_integer(0.into());
        Some(smooth && transverse)
    } else {
        None
    };
    Ok(GermRecord {
        mu0,
        r,
        bound_ok,
        strict_ok,
        coords_ok,
    })
}

/// Local intersection of `g` with the germ of `h` at the origin, computed as
/// the sum of `ord_t g` along the places of `h` (cross-check route).
pub fn local_int_by_branches(
    t: &Tower,
    h: &BiPoly<Alg>,
    g: &BiPoly<Alg>,
    seed: u64,
    start: usize,
) -> Dyn<usize> {
    let mut total = 0;
    for b in places(t, h, seed)? {
        total += intersection_with_branch(&b, g, start, 1 << 12)?;
    }
    Ok(total)
}

/// Over `Q`, with splitting resolved: `[(tower, value)]`.
pub fn over_q<T>(limits: Limits, job: impl FnMut(&Tower) -> Dyn<T>) -> Result<Vec<(Tower, T)>> {
    explore_all(&Tower::rationals(limits), job)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, q_frac};
    use crate::algebra::normalize;
    use crate::algebra::parse::parse_xy;

    fn cnf(s: &str) -> CurveNormalForm {
        normalize(&parse_xy(s).unwrap(), 0).unwrap()
    }

    fn rational_points(s: &str) -> Vec<(Q, Q)> {
        let mut v: Vec<_> = critical_points(&cnf(s), Limits::default())
            .unwrap()
            .iter()
            .map(|p| p.rational().unwrap())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn critical_point_examples() {
        assert_eq!(rational_points("y^3 - x^2"), vec![(q(0), q(0))]);
        assert_eq!(
            rational_points("y^3 - x^2 - 3*y + 2"),
            vec![(q(0), q(-1)), (q(0), q(1))]
        );
        assert_eq!(
            rational_points("y^4 - x^2 - x"),
            vec![(q_frac(-1, 2), q(0))]
        );
    }

    #[test]
    fn irrational_critical_points() {
        // f_y = 3y^2 - 6, f_x = -2x: points (0, ±sqrt 2) as one class
        let pts = critical_points(&cnf("y^3 - x^2 - 6*y"), Limits::default()).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].orbit_degree(), 2);
    }

    #[test]
    fn degenerate_inputs() {
        let f = CurveNormalForm::from_monic(parse_xy("y^3 - y").unwrap()).unwrap();
        assert!(matches!(
            critical_points(&f, Limits::default()),
            Err(Error::DegeneratePencil)
        ));
    }

    fn origin() -> PointClass {
        PointClass {
            tower: Tower::rationals(Limits::default()),
            base_depth: 0,
            base_degree: 1,
            x: Alg::zero(),
            y: Alg::zero(),
        }
    }

    fn at(x: i64, y: i64) -> PointClass {
        PointClass {
            x: Alg::Q(q(x)),
            y: Alg::Q(q(y)),
            ..origin()
        }
    }

    fn int(f: &str, g: &str, p: &PointClass) -> usize {
        let v = local_int(&parse_xy(f).unwrap(), &parse_xy(g).unwrap(), p, 0).unwrap();
        assert_eq!(v.len(), 1);
        v[0].1
    }

    #[test]
    fn local_int_examples() {
        assert_eq!(int("x", "y", &origin()), 1);
        assert_eq!(int("y^2 - x^3", "y", &origin()), 3);
        assert_eq!(int("-2*x", "3*y^2 - 3", &at(0, 1)), 1);
        assert_eq!(int("y", "y^2 - x^3", &origin()), 3);
        assert_eq!(int("x + 1", "y", &origin()), 0);
        let err = local_int(
            &parse_xy("x*y").unwrap(),
            &parse_xy("x").unwrap(),
            &origin(),
            0,
        );
        assert!(matches!(err, Err(Error::InfiniteLocalIntersection)));
    }

    fn milnor(f: &str, p: &PointClass) -> usize {
        milnor_local(&parse_xy(f).unwrap(), p, 0).unwrap()[0].1
    }

    #[test]
    fn milnor_examples() {
        assert_eq!(milnor("y^3 - x^2", &origin()), 2);
        assert_eq!(milnor("x*y", &origin()), 1);
        assert_eq!(milnor("y^3 - x^2 - 3*y + 2", &at(0, 1)), 1);
        assert_eq!(milnor("y - x^2", &origin()), 0);
    }

    #[test]
    fn places_at_irrational_node() {
        // the node of y^3 - x^2 - 3y + 2 at (0,1) has two places over Q(sqrt 3)
        let f = parse_xy("y^3 - x^2 - 3*y + 2").unwrap();
        let base = Tower::rationals(Limits::default());
        let germ = base
            .lift_q_bipoly(&f)
            .translate(&base, &Alg::zero(), &Alg::Q(q(1)));
        let bs = settled(places(&base, &germ, 0)).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].weight(), 2);
        assert_eq!(bs[0].tower.depth(), 1);
    }

    #[test]
    fn infinity_examples() {
        let lim = Limits::default();
        for (s, r, mu) in [
            ("y^3 - x^2", 1, 0),
            ("y^3 - x^2 - 3*y + 2", 1, 0),
            ("y^4 - x^2 - x", 2, 3),
        ] {
            let c = cnf(s);
            assert_eq!(r_infinity(&c, lim, 0).unwrap(), r, "{s}");
            assert_eq!(mu_infinity(&c).unwrap(), mu, "{s}");
        }
        assert_eq!(delta_infinity(&cnf("y^4 - x^2 - x"), lim, 0).unwrap(), 2);
    }

    #[test]
    fn delta_examples() {
        let d = |f: &str, p: &PointClass| delta_local(&parse_xy(f).unwrap(), p, 0).unwrap()[0].1;
        assert_eq!(d("x*y", &origin()), 1);
        assert_eq!(d("y^3 - x^2", &origin()), 1);
        let tac = PointClass {
            x: Alg::Q(q_frac(-1, 2)),
            ..origin()
        };
        let f = parse_xy("y^4 - x^2 - x - 1/4").unwrap();
        let rep = settled(local_report(&origin().tower.lift_q_bipoly(&f), &tac, 0)).unwrap();
        assert_eq!((rep[0].mu, rep[0].r, rep[0].delta), (3, 2, 2));
        assert!(delta_from(2, 2).is_err());
    }

    #[test]
    fn germ_bounds_examples() {
        let lim = Limits::default();
        let l = |s: &str| germ_check(&parse_xy(s).unwrap(), lim, 0).unwrap();
        assert_eq!(
            l("x*y"),
            GermRecord {
                mu0: 1,
                r: 2,
                bound_ok: true,
                strict_ok: None,
                coords_ok: Some(true)
            }
        );
        assert_eq!(
            l("x*y*(x + y)"),
            GermRecord {
                mu0: 4,
                r: 3,
                bound_ok: true,
                strict_ok: Some(true),
                coords_ok: None
            }
        );
        assert_eq!(
            l("y^3 - x^2"),
            GermRecord {
                mu0: 2,
                r: 1,
                bound_ok: true,
                strict_ok: None,
                coords_ok: None
            }
        );
        assert_eq!(l("y^2 - x^2 + y^3").coords_ok, Some(true));
        assert!(germ_check(&parse_xy("y^2 - x^4").unwrap(), lim, 0)
            .unwrap()
            .coords_ok
            .is_none());
    }

    #[test]
    fn branch_route_agrees_with_resultant() {
        let base = Tower::rationals(Limits::default());
        for (h, g) in [
            ("y^2 - x^3", "y"),
            ("y^2 - x^3", "y^2 - x^5"),
            ("x*y*(x + y)", "y - x^2"),
            ("y^3 + 3*y^2 - x^2", "x + y^2"),
            ("(y^2 - x^3)*(y - x)", "y^3 - 2*x^2"),
        ] {
            let hl = base.lift_q_bipoly(&parse_xy(h).unwrap());
            let gl = base.lift_q_bipoly(&parse_xy(g).unwrap());
            let z = Alg::zero();
            let a = settled(local_int_at(&base, &hl, &gl, &z, &z, 0)).unwrap();
            let b: usize = explore_all(&base, |t| local_int_by_branches(t, &hl, &gl, 0, 16))
                .unwrap()
                .into_iter()
                .map(|(_, v)| v)
                .sum();
            assert_eq!(a, b, "{h} vs {g}");
        }
    }
}
