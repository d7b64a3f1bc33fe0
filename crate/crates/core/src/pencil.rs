//! The pencil `f - λ` of a curve: d-regularity, critical values, fibers,
//! genus via the conductor identity, and the census of rational members.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::bipoly::BiPoly;
use crate::algebra::curve::{
    global_int, lagrange, localize_at_infinity, normalize, CurveNormalForm,
};
use crate::algebra::field::{q, q_to_string, Field, Rationals, Q};
use crate::algebra::resultant::resultant_y;
use crate::algebra::upoly::UPoly;
use crate::error::{settled, Dyn, Error, Result};
use crate::localgeom::{critical_points, local_report, r_infinity_of, PointClass};
use crate::report::{BiPolyView, PolyView};
use crate::tower::{explore_all, rational_roots, Alg, Limits, Tower};

const K: Rationals = Rationals;
const LAMBDA: &str = "lambda";

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub limits: Limits,
    pub seed: u64,
    /// First truncation order tried for series expansions.
    pub trunc_start: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            limits: Limits::default(),
            seed: 0,
            trunc_start: 16,
        }
    }
}

/// `μ = int(f_x, f_y)`.
pub fn total_milnor(c: &CurveNormalForm) -> Result<usize> {
    let fx = c.f.dx(&K);
    let fy = c.f.dy(&K);
    if fx.is_zero() && c.n > 1 {
        return Err(Error::DegeneratePencil);
    }
    global_int(&fy, &fx)
}

/// Invariants of the curve that do not depend on the member of the pencil.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlobalData {
    pub n: usize,
    pub mu: usize,
    pub r_inf: Option<usize>,
    pub mu_inf: Option<usize>,
    /// Degree condition holds and there is a single place at infinity.
    pub one_place: bool,
}

pub fn global_data(c: &CurveNormalForm, s: Settings) -> Result<GlobalData> {
    let mu = total_milnor(c)?;
    let (r_inf, mu_inf) = if c.degree_condition_holds {
        (
            Some(crate::localgeom::r_infinity(c, s.limits, s.seed)?),
            Some(crate::localgeom::mu_infinity(c)?),
        )
    } else {
        (None, None)
    };
    Ok(GlobalData {
        n: c.n,
        mu,
        r_inf,
        mu_inf,
        one_place: r_inf == Some(1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrregularValue {
    pub factor: PolyView,
    pub degree: usize,
    /// `i - int(f - λ_k, f_y)` at each root.
    pub defect: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilData {
    /// `res_y(f - λ, f_y)`, written with `lambda` in place of y.
    pub r: BiPolyView,
    pub i: usize,
    pub p0: PolyView,
    pub d_regular: bool,
    pub irregular_values: Vec<IrregularValue>,
    pub a_f: usize,
}

fn fiber_poly<F: Field>(k: &F, f: &BiPoly<F::E>, lambda: &F::E) -> BiPoly<F::E> {
    f.sub(k, &BiPoly::constant(k, lambda.clone()))
}

/// `R(x, λ)` with `x` inner and `λ` outer.
fn pencil_resultant(c: &CurveNormalForm) -> Result<BiPoly<Q>> {
    let fy = c.f.dy(&K);
    let mut pts = Vec::new();
    for l in 0..c.n.max(1) {
        let lam = q(l as i64);
        let r = settled(resultant_y(&K, &fiber_poly(&K, &c.f, &lam), &fy))?;
        pts.push((lam, r));
    }
    // interpolation yields λ inner, x outer
    Ok(lagrange(&pts).swap(&K))
}

pub fn build_pencil(c: &CurveNormalForm, s: Settings) -> Result<PencilData> {
    let r = pencil_resultant(c)?;
    let i = r.deg_x().unwrap_or(0);
    let p0 = UPoly::new(&K, (0..r.0.len()).map(|j| r.coeff(&K, i, j)).collect());
    let d_regular = p0.deg() == Some(0);
    let mut irregular = Vec::new();
    if !d_regular && !p0.is_zero() {
        let base = Tower::rationals(s.limits);
        let fy = base.lift_q_bipoly(&c.f.dy(&K));
        let f = base.lift_q_bipoly(&c.f);
        for (factor, _) in settled(p0.squarefree_decompose(&K))? {
            let pieces = settled(base.adjoin_roots(&base.lift_q_poly(&factor), "c0"))?;
            for piece in pieces {
                let found = explore_all(&piece.tower, |t| {
                    let lam = t.reduce(&piece.root);
                    let fl = fiber_poly(t, &t.reduce_bipoly(&f), &lam);
                    let res = resultant_y(t, &fl, &t.reduce_bipoly(&fy))?.certify(t)?;
                    Ok((t.min_poly_q(&lam), res.deg().unwrap_or(0)))
                })?;
                for (t, (mp, int)) in found {
                    irregular.push(IrregularValue {
                        factor: PolyView::new(&mp, LAMBDA),
                        degree: t.degree(),
                        defect: i.checked_sub(int).ok_or_else(|| {
                            Error::internal("fiber intersection exceeds the generic one")
                        })?,
                    });
                }
            }
        }
    }
    let a_f = irregular.iter().map(|v| v.defect * v.degree).sum();
    if d_regular != (a_f == 0) {
        return Err(Error::Violation(format!(
            "d-regularity ({d_regular}) disagrees with A_f = {a_f}"
        )));
    }
    Ok(PencilData {
        r: BiPolyView::new(&r, "x", LAMBDA),
        i,
        p0: PolyView::new(&p0, LAMBDA),
        d_regular,
        irregular_values: irregular,
        a_f,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySample {
    pub lambda: String,
    pub int_fiber: usize,
    pub expected: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub ok: bool,
    pub samples: Vec<IdentitySample>,
}

/// `int(f - λ0, f_y) = μ + n - 1 + A_f` at three random regular values.
pub fn generic_fiber_identity_check(
    c: &CurveNormalForm,
    pd: &PencilData,
    mu: usize,
    seed: u64,
) -> Result<IdentityCheck> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p0 = UPoly::new(
        &K,
        pd.p0
            .coeffs
            .iter()
            .map(|s| crate::algebra::field::q_parse(s).unwrap())
            .collect(),
    );
    let fy = c.f.dy(&K);
    let expected = mu + c.n - 1 + pd.a_f;
    let mut samples = Vec::new();
    while samples.len() < 3 {
        let lam = q(rng.gen_range(-1000..=1000));
        if p0.eval(&K, &lam) == q(0) {
            continue;
        }
        let res = settled(resultant_y(&K, &fiber_poly(&K, &c.f, &lam), &fy))?;
        samples.push(IdentitySample {
            lambda: q_to_string(&lam),
            int_fiber: res.deg().unwrap_or(0),
            expected,
        });
    }
    Ok(IdentityCheck {
        ok: samples.iter().all(|s| s.int_fiber == s.expected),
        samples,
    })
}

/// A Galois class of critical values with the critical points above it.
#[derive(Debug, Clone)]
pub struct CriticalValue {
    pub min_poly: UPoly<Q>,
    pub points: Vec<PointClass>,
}

/// Order by degree, then linear factors by their root.
fn poly_key(p: &UPoly<Q>) -> (usize, Option<Q>, Vec<Q>) {
    let root = (p.0.len() == 2).then(|| -&p.0[0] / &p.0[1]);
    (p.0.len(), root, p.0.clone())
}

pub fn critical_values(c: &CurveNormalForm, s: Settings) -> Result<Vec<CriticalValue>> {
    let mut out: Vec<CriticalValue> = Vec::new();
    for p in critical_points(c, s.limits)? {
        let t = &p.tower;
        let lam = t.lift_q_bipoly(&c.f).eval(t, &p.x, &p.y);
        let mp = t.min_poly_q(&lam);
        match out.iter_mut().find(|cv| cv.min_poly == mp) {
            Some(cv) => cv.points.push(p),
            None => out.push(CriticalValue {
                min_poly: mp,
                points: vec![p],
            }),
        }
    }
    out.sort_by_key(|cv| poly_key(&cv.min_poly));
    Ok(out)
}

/// Pairwise coprime squarefree polynomials with the same roots as `polys`.
pub fn gcd_free_basis(polys: &[UPoly<Q>]) -> Result<Vec<UPoly<Q>>> {
    let mut basis: Vec<UPoly<Q>> = Vec::new();
    for p in polys {
        let mut p = settled(p.squarefree_part(&K))?;
        for r in rational_roots(&p) {
            let lin = UPoly(vec![-r, q(1)]);
            p = settled(p.exact_div(&K, &lin))?;
            basis.push(lin);
        }
        if p.deg().unwrap_or(0) > 0 {
            basis.push(p);
        }
    }
    'outer: loop {
        for a in 0..basis.len() {
            for b in a + 1..basis.len() {
                let g = settled(UPoly::gcd(&K, &basis[a], &basis[b]))?;
                if g.deg().unwrap_or(0) > 0 {
                    let pa = settled(basis[a].exact_div(&K, &g))?;
                    let pb = settled(basis[b].exact_div(&K, &g))?;
                    basis.remove(b);
                    basis.remove(a);
                    basis.extend([pa, pb, g].into_iter().filter(|p| p.deg().unwrap_or(0) > 0));
                    continue 'outer;
                }
            }
        }
        break;
    }
    for p in basis.iter_mut() {
        *p = settled(p.monic(&K))?;
    }
    basis.sort_by_key(poly_key);
    basis.dedup();
    Ok(basis)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointView {
    pub x: String,
    pub y: String,
    pub tower: Vec<String>,
    pub orbit_degree: usize,
    pub mu: usize,
    pub r: usize,
    pub delta: usize,
}

impl SingularPointView {
    fn new(m: &Member) -> Self {
        let (x, y) = m.point.render();
        SingularPointView {
            x,
            y,
            tower: m.point.tower.describe(),
            orbit_degree: m.per_member,
            mu: m.mu,
            r: m.r,
            delta: m.delta,
        }
    }
}

/// One member `f = λ` of the pencil (or a class of conjugate members).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub lambda: String,
    pub lambda_min_poly: PolyView,
    /// Number of conjugate members this report stands for.
    pub lambda_degree: usize,
    pub lambda_tower: Vec<String>,
    pub singular_points: Vec<SingularPointView>,
    pub mu_fiber: usize,
    pub mu_bar: i64,
    pub a_member: i64,
    pub int_fiber_fy: usize,
    pub r_inf: Option<usize>,
    pub mu_inf: Option<usize>,
    pub genus: Option<i64>,
    pub genus_note: Option<String>,
    pub rational: Option<bool>,
}

/// A class of critical points with constant local invariants, each point
/// analysed on its own member `f = f(p)` of the pencil.
#[derive(Debug, Clone)]
pub struct CriticalPiece {
    pub point: PointClass,
    pub lambda: Alg,
    pub mu: usize,
    pub r: usize,
    pub delta: usize,
    /// `(s, c)`: each root of `s` is the value of `f` at exactly `c` points
    /// of the class (squarefree decomposition of the characteristic
    /// polynomial of `f(p)`).
    pub spread: Vec<(UPoly<Q>, usize)>,
}

pub fn critical_pieces(c: &CurveNormalForm, s: Settings) -> Result<Vec<CriticalPiece>> {
    // separate the critical points by critical value first, so that each
    // local analysis runs over the smallest tower possible
    let mut split = Vec::new();
    for p in critical_points(c, s.limits)? {
        let t = &p.tower;
        let lam = t.lift_q_bipoly(&c.f).eval(t, &p.x, &p.y);
        for b in gcd_free_basis(&[t.char_poly_q(&lam)])? {
            let found = explore_all(t, |t| {
                let bl = t.lift_q_poly(&b).eval(t, &t.reduce(&lam));
                t.zero_or_unit(&bl)
            })?;
            for (t, on) in found {
                if on {
                    split.push(p.in_tower(&t));
                }
            }
        }
    }
    let per: Vec<Result<Vec<CriticalPiece>>> = split
        .into_par_iter()
        .map(|p| {
            let t = &p.tower;
            let f = t.lift_q_bipoly(&c.f);
            let lam = f.eval(t, &p.x, &p.y);
            let fl = fiber_poly(t, &f, &lam);
            let mut out = Vec::new();
            for rep in settled(local_report(&fl, &p, s.seed))? {
                let t = &rep.point.tower;
                let lam = t.reduce(&lam);
                let spread = settled(t.char_poly_q(&lam).squarefree_decompose(&K))?
                    .into_iter()
                    .filter(|(p, _)| p.deg().unwrap_or(0) > 0)
                    .collect();
                out.push(CriticalPiece {
                    point: rep.point,
                    lambda: lam,
                    mu: rep.mu,
                    r: rep.r,
                    delta: rep.delta,
                    spread,
                });
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

/// Singular points of one class of members: a sub-class of a critical piece
/// and how many of its points lie on each member.
#[derive(Debug, Clone)]
struct Member {
    point: PointClass,
    per_member: usize,
    mu: usize,
    r: usize,
    delta: usize,
}

/// Everything needed to report on any member of the pencil.
pub struct Fibers<'a> {
    pub curve: &'a CurveNormalForm,
    pub global: GlobalData,
    pub settings: Settings,
    pub pieces: Vec<CriticalPiece>,
    /// `R_k(λ)`, the coefficient of `x^k` in `res_y(f - λ, f_y)`.
    r_coeffs: Vec<UPoly<Q>>,
    /// Coefficient of `u^k` in `res_y(F_u - nλu^(n-1), F_y)`.
    rinf_coeffs: Option<Vec<UPoly<Q>>>,
    big_f: Option<BiPoly<Q>>,
}

/// Interpolates `λ -> p(λ)` (a polynomial in one other variable) from its
/// values at `0..n`; returns the coefficients of that variable.
fn interpolate_lambda(
    n: usize,
    mut p: impl FnMut(&Q) -> Result<UPoly<Q>>,
) -> Result<Vec<UPoly<Q>>> {
    let mut pts = Vec::new();
    for l in 0..n.max(1) {
        let lam = q(l as i64);
        let v = p(&lam)?;
        pts.push((lam, v));
    }
    let r = lagrange(&pts);
    Ok(r.0)
}

impl<'a> Fibers<'a> {
    pub fn new(c: &'a CurveNormalForm, global: GlobalData, s: Settings) -> Result<Self> {
        let pieces = if global.mu == 0 {
            Vec::new()
        } else {
            critical_pieces(c, s)?
        };
        let fy = c.f.dy(&K);
        let r_coeffs = interpolate_lambda(c.n, |l| {
            settled(resultant_y(&K, &fiber_poly(&K, &c.f, l), &fy))
        })?;
        let big_f = if c.degree_condition_holds {
            Some(localize_at_infinity(c)?)
        } else {
            None
        };
        let rinf_coeffs = match &big_f {
            Some(bf) => {
                let (fu, fyy) = (bf.dx(&K), bf.dy(&K));
                let n = c.n;
                Some(interpolate_lambda(n, |l| {
                    let shift = BiPoly::term(&K, l * q(n as i64), n.saturating_sub(1), 0);
                    settled(resultant_y(&K, &fu.sub(&K, &shift), &fyy))
                })?)
            }
            None => None,
        };
        Ok(Fibers {
            curve: c,
            global,
            settings: s,
            pieces,
            r_coeffs,
            rinf_coeffs,
            big_f,
        })
    }

    /// Critical points on the members over the roots of `b`.
    fn members(&self, b: &UPoly<Q>) -> Result<Vec<Member>> {
        let mut out = Vec::new();
        for piece in &self.pieces {
            let mut count = None;
            for (sc, c) in &piece.spread {
                if settled(UPoly::gcd(&K, b, sc))?.deg().unwrap_or(0) > 0 {
                    count = Some(*c);
                }
            }
            let Some(count) = count else { continue };
            let found = explore_all(&piece.point.tower, |t| {
                let bl = t.lift_q_poly(b).eval(t, &t.reduce(&piece.lambda));
                t.zero_or_unit(&bl)
            })?;
            for (t, on) in found {
                if !on {
                    continue;
                }
                if t.degree() != count * b.deg().unwrap() {
                    return Err(Error::internal(
                        "critical values do not spread evenly over a member class",
                    ));
                }
                out.push(Member {
                    point: piece.point.in_tower(&t),
                    per_member: count,
                    mu: piece.mu,
                    r: piece.r,
                    delta: piece.delta,
                });
            }
        }
        out.sort_by_cached_key(|m| {
            let (x, y) = m.point.render();
            (m.per_member, x.len(), x, y)
        });
        Ok(out)
    }

    fn member_data(&self, t: &Tower, lam: &Alg) -> Dyn<(usize, Option<usize>, Option<usize>)> {
        let mut int_fy = 0;
        for (k, rk) in self.r_coeffs.iter().enumerate() {
            if !t.zero_or_unit(&t.lift_q_poly(rk).eval(t, lam))? {
                int_fy = k;
            }
        }
        let (mut r_inf, mut mu_inf) = (None, None);
        if let (Some(bf), Some(rc)) = (&self.big_f, &self.rinf_coeffs) {
            for (k, rk) in rc.iter().enumerate() {
                if !t.zero_or_unit(&t.lift_q_poly(rk).eval(t, lam))? {
                    mu_inf = Some(k);
                    break;
                }
            }
            if mu_inf.is_none() {
                return Err(Error::InfiniteLocalIntersection.into());
            }
            let shifted = t
                .lift_q_bipoly(bf)
                .sub(t, &BiPoly::term(t, lam.clone(), self.curve.n, 0));
            r_inf = Some(r_infinity_of(t, &shifted, self.settings.seed)?);
        }
        Ok((int_fy, r_inf, mu_inf))
    }

    /// Reports for the members `f = λ` with `b(λ) = 0`, one per class of
    /// conjugate members.
    pub fn over(&self, b: &UPoly<Q>) -> Result<Vec<FiberReport>> {
        let members = self.members(b)?;
        let base = Tower::rationals(self.settings.limits);
        let mut out = Vec::new();
        for piece in settled(base.adjoin_roots(&base.lift_q_poly(b), "c0"))? {
            let found = explore_all(&piece.tower, |t| {
                let lam = t.reduce(&piece.root);
                self.member_data(t, &lam).map(|d| (lam, d))
            })?;
            for (t, (lam, data)) in found {
                out.push(self.assemble(&t, &lam, data, &members)?);
            }
        }
        Ok(out)
    }

    pub fn at(&self, lambda: &Q) -> Result<FiberReport> {
        let mut v = self.over(&UPoly(vec![-lambda.clone(), q(1)]))?;
        Ok(v.remove(0))
    }

    /// Squarefree, pairwise coprime polynomials whose roots are exactly the
    /// critical values.
    pub fn critical_classes(&self) -> Result<Vec<UPoly<Q>>> {
        let all: Vec<UPoly<Q>> = self
            .pieces
            .iter()
            .flat_map(|p| p.spread.iter().map(|(s, _)| s.clone()))
            .collect();
        gcd_free_basis(&all)
    }

    /// Reports at every critical value, in a fixed order.
    pub fn critical(&self) -> Result<Vec<FiberReport>> {
        let basis = self.critical_classes()?;
        let per: Vec<Result<Vec<FiberReport>>> = basis.par_iter().map(|b| self.over(b)).collect();
        let mut out = Vec::new();
        for r in per {
            out.extend(r?);
        }
        let total: usize = out.iter().map(|f| f.mu_fiber * f.lambda_degree).sum();
        if total != self.global.mu {
            return Err(Error::Violation(format!(
                "fiber Milnor numbers sum to {total}, total Milnor number is {}",
                self.global.mu
            )));
        }
        Ok(out)
    }

    /// The member at the least positive integer that is not a critical value.
    pub fn generic(&self) -> Result<FiberReport> {
        let lam = (1..)
            .map(q)
            .find(|l| {
                self.pieces
                    .iter()
                    .all(|p| p.spread.iter().all(|(s, _)| s.eval(&K, l) != q(0)))
            })
            .unwrap();
        self.at(&lam)
    }

    fn assemble(
        &self,
        t: &Tower,
        lam: &Alg,
        (int_fy, r_inf, mu_inf): (usize, Option<usize>, Option<usize>),
        members: &[Member],
    ) -> Result<FiberReport> {
        let g = &self.global;
        let mu_fiber: usize = members.iter().map(|m| m.mu * m.per_member).sum();
        let mu_bar = g.mu as i64 - mu_fiber as i64;
        let a_member = int_fy as i64 - g.mu as i64 - (g.n as i64 - 1);
        if mu_bar < 0 {
            return Err(Error::Violation(format!(
                "fiber Milnor number {mu_fiber} exceeds total {}",
                g.mu
            )));
        }
        if r_inf != g.r_inf || mu_inf != g.mu_inf {
            return Err(Error::Violation(
                "localization at infinity varies along the pencil".into(),
            ));
        }
        let (genus, genus_note) = if g.one_place {
            let places: i64 = members
                .iter()
                .map(|m| (m.r as i64 - 1) * m.per_member as i64)
                .sum();
            let two_g = mu_bar + a_member - places - (r_inf.unwrap() as i64 - 1);
            if two_g < 0 || two_g % 2 != 0 {
                return Err(Error::Violation(format!(
                    "conductor identity gives 2g = {two_g}"
                )));
            }
            (Some(two_g / 2), None)
        } else {
            (
                None,
                Some("not computed (irreducibility not certified)".to_string()),
            )
        };
        Ok(FiberReport {
            lambda: t.render(lam),
            lambda_min_poly: PolyView::new(&t.min_poly_q(lam), LAMBDA),
            lambda_degree: t.degree(),
            lambda_tower: t.describe(),
            singular_points: members.iter().map(SingularPointView::new).collect(),
            mu_fiber,
            mu_bar,
            a_member,
            int_fiber_fy: int_fy,
            r_inf,
            mu_inf,
            rational: genus.map(|g| g == 0),
            genus,
            genus_note,
        })
    }
}

pub fn fiber_report(
    c: &CurveNormalForm,
    lambda: &Q,
    g: &GlobalData,
    s: Settings,
) -> Result<FiberReport> {
    Fibers::new(c, g.clone(), s)?.at(lambda)
}

/// Fiber reports at every critical value, in a fixed order.
pub fn critical_fibers(
    c: &CurveNormalForm,
    g: &GlobalData,
    s: Settings,
) -> Result<Vec<FiberReport>> {
    Fibers::new(c, g.clone(), s)?.critical()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub ok: bool,
    pub detail: Vec<String>,
}

/// Two rational members: each has `μ/2` as Milnor number, and exactly
/// `μ/2` singular points, all with two places and `μ_p = 1`.
pub fn structure_check(mu: usize, fibers: &[&FiberReport]) -> StructureCheck {
    let mut detail = Vec::new();
    if mu == 0 {
        return StructureCheck {
            ok: true,
            detail: vec!["n/a: mu = 0".into()],
        };
    }
    for f in fibers {
        if 2 * f.mu_fiber != mu {
            detail.push(format!(
                "lambda = {}: mu(fiber) = {} but mu/2 = {}",
                f.lambda,
                f.mu_fiber,
                mu as f64 / 2.0
            ));
        }
        for p in &f.singular_points {
            if p.mu != 1 || p.r != 2 {
                detail.push(format!(
                    "lambda = {}: point ({}, {}) has mu_p = {}, r_p = {}",
                    f.lambda, p.x, p.y, p.mu, p.r
                ));
            }
        }
        let count: usize = f.singular_points.iter().map(|p| p.orbit_degree).sum();
        if 2 * count != mu {
            detail.push(format!(
                "lambda = {}: {count} singular points, expected mu/2",
                f.lambda
            ));
        }
    }
    StructureCheck {
        ok: detail.is_empty(),
        detail,
    }
}

pub fn two_rational_structure_check(
    c: &CurveNormalForm,
    l0: &Q,
    l1: &Q,
    s: Settings,
) -> Result<StructureCheck> {
    let g = global_data(c, s)?;
    let f0 = fiber_report(c, l0, &g, s)?;
    let f1 = fiber_report(c, l1, &g, s)?;
    for f in [&f0, &f1] {
        if f.rational != Some(true) {
            return Ok(StructureCheck {
                ok: false,
                detail: vec![format!(
                    "precondition: member lambda = {} is not certified rational",
                    f.lambda
                )],
            });
        }
    }
    Ok(structure_check(g.mu, &[&f0, &f1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusCase {
    CoordinateCase,
    UniqueRational,
    TwoRational,
    NoneRational,
    /// One place at infinity could not be established.
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalMember {
    pub lambda: String,
    pub min_poly: PolyView,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusVerdict {
    pub case: CensusCase,
    pub mu: usize,
    pub rational_lambdas: Vec<RationalMember>,
    pub rational_count: usize,
    pub census_bound_ok: Option<bool>,
    pub structure_ok: Option<bool>,
    pub structure_detail: Vec<String>,
    pub uniqueness_reason: Option<String>,
    pub uniqueness_ok: Option<bool>,
    /// `deg_x a_n` divides `n` (coordinate case only).
    pub divisibility_ok: Option<bool>,
    /// `μ + μ_∞ = (n-1)(n-2)`, checked when `A(f) = 0`.
    pub infinity_identity_ok: Option<bool>,
    pub note: Option<String>,
    pub fibers: Vec<FiberReport>,
    /// A member away from every critical value.
    pub generic_fiber: Option<FiberReport>,
}

impl CensusVerdict {
    /// Failed checks; any entry means a statement was contradicted.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let named = [
            ("at most two rational members", self.census_bound_ok),
            ("two-member structure", self.structure_ok),
            (
                "singleton census forced by singular points",
                self.uniqueness_ok,
            ),
            ("deg a_n divides n", self.divisibility_ok),
            ("mu + mu_inf = (n-1)(n-2)", self.infinity_identity_ok),
        ];
        for (name, ok) in named {
            if ok == Some(false) {
                v.push(name.to_string());
            }
        }
        v
    }
}

fn uniqueness_reason(f: &FiberReport, mu: usize) -> Option<String> {
    if f.mu_fiber == 0 {
        return None;
    }
    if f.singular_points.iter().any(|p| p.mu > 0 && p.r == 1) {
        return Some("r_p = 1".into());
    }
    if f.singular_points.iter().any(|p| p.r >= 3) {
        return Some("r_p >= 3".into());
    }
    let s: usize = f
        .singular_points
        .iter()
        .filter(|p| p.mu > 0)
        .map(|p| p.orbit_degree)
        .sum();
    if 2 * s != mu {
        return Some(format!(
            "r_p = 2 at all {s} singular points but mu/2 = {}",
            mu as f64 / 2.0
        ));
    }
    None
}

pub fn rational_census(c: &CurveNormalForm, s: Settings) -> Result<CensusVerdict> {
    let g = global_data(c, s)?;
    let mut v = CensusVerdict {
        case: CensusCase::NotApplicable,
        mu: g.mu,
        rational_lambdas: Vec::new(),
        rational_count: 0,
        census_bound_ok: None,
        structure_ok: None,
        structure_detail: Vec::new(),
        uniqueness_reason: None,
        uniqueness_ok: None,
        divisibility_ok: None,
        infinity_identity_ok: None,
        note: None,
        fibers: Vec::new(),
        generic_fiber: None,
    };
    if !g.one_place {
        v.note = Some(match g.r_inf {
            None => "degree condition fails: more than one point at infinity".into(),
            Some(r) => format!("{r} places at infinity"),
        });
        return Ok(v);
    }
    let int_f_fy = global_int(&c.f, &c.f.dy(&K))?;
    let a_member = int_f_fy as i64 - g.mu as i64 - (g.n as i64 - 1);
    if a_member == 0 {
        let nn = g.n as i64;
        v.infinity_identity_ok = Some((g.mu + g.mu_inf.unwrap()) as i64 == (nn - 1) * (nn - 2));
    }
    if g.mu == 0 {
        v.case = CensusCase::CoordinateCase;
        let an = c.a(c.n);
        // a_n = 0 means f = y * (...), and reducedness with one place forces f = y
        v.divisibility_ok = Some(match an.deg() {
            None => true,
            Some(0) => c.n == 1,
            Some(d) => c.n.is_multiple_of(d),
        });
        v.census_bound_ok = Some(true);
        v.note = Some("every member of the pencil is rational".into());
        return Ok(v);
    }
    let fibers = Fibers::new(c, g.clone(), s)?;
    v.fibers = fibers.critical()?;
    v.generic_fiber = Some(fibers.generic()?);
    let rational: Vec<&FiberReport> = v
        .fibers
        .iter()
        .filter(|f| f.rational == Some(true))
        .collect();
    v.rational_count = rational.iter().map(|f| f.lambda_degree).sum();
    v.rational_lambdas = rational
        .iter()
        .map(|f| RationalMember {
            lambda: f.lambda.clone(),
            min_poly: f.lambda_min_poly.clone(),
            degree: f.lambda_degree,
        })
        .collect();
    v.census_bound_ok = Some(v.rational_count <= 2);
    v.case = match v.rational_count {
        0 => CensusCase::NoneRational,
        1 => CensusCase::UniqueRational,
        _ => CensusCase::TwoRational,
    };
    if v.rational_count == 2 {
        let sc = structure_check(g.mu, &rational);
        v.structure_ok = Some(sc.ok);
        v.structure_detail = sc.detail;
    }
    for f in &rational {
        if let Some(reason) = uniqueness_reason(f, g.mu) {
            v.uniqueness_ok = Some(v.rational_count == 1);
            v.uniqueness_reason = Some(reason);
            break;
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairCase {
    CaseI,
    CaseIi,
    CaseIii,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClassification {
    pub case: PairCase,
    pub intersection: usize,
    pub lambda1: Option<String>,
    pub mu: usize,
    pub structure: Option<StructureCheck>,
}

fn polynomially_parametrized(raw: &BiPoly<Q>, s: Settings, which: &str) -> Result<CurveNormalForm> {
    let c = normalize(raw, s.seed)?;
    let g = global_data(&c, s)?;
    if !g.one_place {
        return Err(Error::Invalid(format!(
            "{which} does not have one place at infinity"
        )));
    }
    let fr = fiber_report(&c, &q(0), &g, s)?;
    if fr.genus != Some(0) {
        return Err(Error::Invalid(format!("{which} is not rational")));
    }
    Ok(c)
}

/// Two monic polynomially parametrized curves either meet, or differ by a
/// constant; in the latter case they are coordinates or the two rational
/// members of their pencil.
pub fn classify_pair(f: &BiPoly<Q>, g: &BiPoly<Q>, s: Settings) -> Result<PairClassification> {
    let one = UPoly::one(&K);
    if f.lc_y() != Some(&one) || g.lc_y() != Some(&one) {
        return Err(Error::Invalid("both polynomials must be monic in y".into()));
    }
    if f == g {
        return Err(Error::Invalid("the two polynomials are equal".into()));
    }
    let cf = polynomially_parametrized(f, s, "f")?;
    polynomially_parametrized(g, s, "g")?;
    let int = global_int(f, g)?;
    let mu = total_milnor(&cf)?;
    if int > 0 {
        return Ok(PairClassification {
            case: PairCase::CaseIii,
            intersection: int,
            lambda1: None,
            mu,
            structure: None,
        });
    }
    let d = f.sub(&K, g);
    if d.total_deg() != Some(0) {
        return Err(Error::Violation(
            "disjoint curves whose difference is not a constant".into(),
        ));
    }
    let l1 = d.coeff(&K, 0, 0);
    if mu == 0 {
        return Ok(PairClassification {
            case: PairCase::CaseI,
            intersection: 0,
            lambda1: Some(q_to_string(&l1)),
            mu,
            structure: None,
        });
    }
    let sc = two_rational_structure_check(&cf, &q(0), &(cf.scale() * &l1), s)?;
    Ok(PairClassification {
        case: PairCase::CaseIi,
        intersection: 0,
        lambda1: Some(q_to_string(&l1)),
        mu,
        structure: Some(sc),
    })
}
