//! Plane curves in the normal form used by the pencil theory: monic in y,
//! and when possible with `y^n` as the whole leading form, so that the only
//! point at infinity is `(1:0:0)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::bipoly::BiPoly;
use crate::algebra::field::{q, q_to_string, Rationals, Q};
use crate::algebra::resultant::{exact_div_xy, gcd_xy, resultant_y};
use crate::algebra::upoly::UPoly;
use crate::error::{settled, Error, Result};

const K: Rationals = Rationals;

/// One step of the affine change applied by [`normalize`], in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// `f(x, y) -> f(y, x)`
    Swap,
    /// `f(x, y) -> f(x + c*y, y)`
    ShearX { c: String },
    /// `f(x, y) -> f(x, y + c*x)`
    ShearY { c: String },
    /// `f -> c*f`
    Scale { c: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveNormalForm {
    pub f: BiPoly<Q>,
    pub n: usize,
    /// `deg_x a_k < k` for all k: the leading form is `y^n`.
    pub degree_condition_holds: bool,
    /// The other standing assumption, `deg_x a_i < n - i`, reported only.
    pub strict_condition_holds: bool,
    pub applied_transform: Vec<Step>,
}

impl CurveNormalForm {
    /// `a_k(x)`, the coefficient of `y^(n-k)`.
    pub fn a(&self, k: usize) -> UPoly<Q> {
        self.f.ycoeff(self.n - k)
    }

    pub fn render(&self) -> String {
        self.f.render(&K, "x", "y")
    }

    /// Product of the scalings applied by normalization: a level set
    /// `f_raw = c` becomes `f = scale * c`.
    pub fn scale(&self) -> Q {
        self.applied_transform
            .iter()
            .filter_map(|s| match s {
                Step::Scale { c } => crate::algebra::field::q_parse(c),
                _ => None,
            })
            .fold(Q::one(), |a, b| a * b)
    }

    /// Wraps an already monic polynomial without any change of coordinates.
    pub fn from_monic(f: BiPoly<Q>) -> Result<Self> {
        let n = f
            .deg_y()
            .ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
        if f.lc_y() != Some(&UPoly::one(&K)) {
            return Err(Error::Invalid("polynomial is not monic in y".into()));
        }
        let (degree_condition_holds, strict_condition_holds) = conditions(&f, n);
        Ok(CurveNormalForm {
            f,
            n,
            degree_condition_holds,
            strict_condition_holds,
            applied_transform: Vec::new(),
        })
    }
}

fn conditions(f: &BiPoly<Q>, n: usize) -> (bool, bool) {
    let mut lead = true;
    let mut strict = true;
    for k in 1..=n {
        if let Some(d) = f.ycoeff(n - k).deg() {
            lead &= d < k;
            strict &= d < n - k;
        }
    }
    (lead, strict)
}

/// The deterministic shear sequence `1, -1, 2, -2, …`, entered at `seed`.
pub fn shear_candidates(seed: u64) -> impl Iterator<Item = Q> {
    (seed..).map(|i| {
        let m = (i / 2 + 1) as i64;
        if i % 2 == 0 {
            q(m)
        } else {
            q(-m)
        }
    })
}

/// Rejects polynomials with a repeated factor: `gcd(f, f_x, f_y)` must be
/// constant.
pub fn check_reduced(f: &BiPoly<Q>) -> Result<()> {
    let g = settled(gcd_xy(&K, f, &f.dx(&K)))?;
    let g = settled(gcd_xy(&K, &g, &f.dy(&K)))?;
    if g.total_deg().unwrap_or(0) > 0 {
        return Err(Error::NonReduced(format!(
            "repeated factor {}",
            g.render(&K, "x", "y")
        )));
    }
    Ok(())
}

/// Brings a reduced curve to monic-in-y form, moving a single point at
/// infinity to `(1:0:0)` whenever the leading form is a power of a linear
/// form.
pub fn normalize(f_raw: &BiPoly<Q>, seed: u64) -> Result<CurveNormalForm> {
    let d = f_raw
        .total_deg()
        .ok_or_else(|| Error::Invalid("zero polynomial".into()))?;
    if d == 0 {
        return Err(Error::Invalid("constant polynomial".into()));
    }
    check_reduced(f_raw)?;
    let mut steps = Vec::new();
    let mut f = f_raw.clone();
    let top = f.homogeneous_part(&K, d);
    let cy = top.coeff(&K, 0, d);
    let cx = top.coeff(&K, d, 0);
    let mut pure_power = false;
    if !cy.is_zero() {
        let alpha = top.coeff(&K, 1, d - 1) / (&cy * q(d as i64));
        let lin = BiPoly::y(&K).add(&K, &BiPoly::x(&K).scale(&K, &alpha));
        if lin.pow(&K, d).scale(&K, &cy) == top {
            pure_power = true;
            if !alpha.is_zero() {
                let c = -alpha;
                let ys = BiPoly::y(&K).add(&K, &BiPoly::x(&K).scale(&K, &c));
                f = f.subst(&K, &BiPoly::x(&K), &ys);
                steps.push(Step::ShearY { c: q_to_string(&c) });
            }
        }
    } else if top == BiPoly::term(&K, cx.clone(), d, 0) {
        pure_power = true;
        f = f.swap(&K);
        steps.push(Step::Swap);
    }
    if !pure_power && cy.is_zero() {
        let c = shear_candidates(seed)
            .find(|c| !top.eval(&K, c, &Q::one()).is_zero())
            .unwrap();
        f = f.shear(&K, &c);
        steps.push(Step::ShearX { c: q_to_string(&c) });
    }
    let lead = f.lc_y().and_then(|p| p.lc()).cloned().unwrap();
    if f.lc_y().map(|p| p.deg()) != Some(Some(0)) {
        return Err(Error::internal(
            "normalization failed to reach a constant leading coefficient",
        ));
    }
    if !lead.is_one() {
        let s = lead.recip();
        f = f.scale(&K, &s);
        steps.push(Step::Scale { c: q_to_string(&s) });
    }
    let mut cnf = CurveNormalForm::from_monic(f)?;
    cnf.applied_transform = steps;
    Ok(cnf)
}

/// `int(f, g) = deg_x Res_y(f, g)` for `f` monic in y.
pub fn global_int(f: &BiPoly<Q>, g: &BiPoly<Q>) -> Result<usize> {
    match f.lc_y() {
        Some(l) if l.deg() == Some(0) => {}
        _ => return Err(Error::Invalid("first argument must be monic in y".into())),
    }
    let r = settled(resultant_y(&K, f, g))?;
    r.deg().ok_or(Error::InfiniteIntersection)
}

/// Local equation at `(1:0:0)`: `F(y, u) = u^n f(1/u, y/u)`, stored with `u`
/// as the inner variable.
pub fn localize_at_infinity(c: &CurveNormalForm) -> Result<BiPoly<Q>> {
    if !c.degree_condition_holds {
        return Err(Error::MultiplePointsAtInfinity);
    }
    let terms: Vec<_> =
        c.f.terms(&K)
            .into_iter()
            .map(|(i, j, v)| (c.n - i - j, j, v))
            .collect();
    Ok(BiPoly::from_terms(&K, &terms))
}

pub(crate) fn lagrange(points: &[(Q, UPoly<Q>)]) -> BiPoly<Q> {
    // values are polynomials in y; the result has x as inner variable
    let mut acc = BiPoly::zero();
    for (i, (xi, vi)) in points.iter().enumerate() {
        let mut basis = UPoly::one(&K);
        let mut den = Q::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul(&K, &UPoly(vec![-xj.clone(), Q::one()]));
                den *= xi - xj;
            }
        }
        let basis = basis.scale(&K, &den.recip());
        let term = BiPoly::new(vi.0.iter().map(|c| basis.scale(&K, c)).collect());
        acc = acc.add(&K, &term);
    }
    acc
}

/// `Res_t(x - x(t), y - y(t))`, scaled monic in y, before normalization.
pub fn implicit_equation(xt: &UPoly<Q>, yt: &UPoly<Q>) -> Result<BiPoly<Q>> {
    let (Some(a), Some(b)) = (xt.deg(), yt.deg()) else {
        return Err(Error::Invalid("parametrization must be nonconstant".into()));
    };
    if a == 0 || b == 0 {
        return Err(Error::Invalid("parametrization must be nonconstant".into()));
    }
    let mut pts = Vec::with_capacity(b + 1);
    for s in 0..=b as i64 {
        let x0 = q(s);
        // outer variable t, inner variable y
        let lhs = BiPoly::from_outer(&K, &UPoly::constant(&K, x0.clone()).sub(&K, xt));
        let rhs = BiPoly::from_inner(UPoly::var(&K)).sub(&K, &BiPoly::from_outer(&K, yt));
        pts.push((x0, settled(resultant_y(&K, &lhs, &rhs))?));
    }
    let f = lagrange(&pts);
    let lead = f.lc_y().and_then(|p| p.lc()).cloned().unwrap();
    Ok(f.scale(&K, &lead.recip()))
}

/// Implicit equation of a polynomial parametrization, in normal form.
pub fn implicitize(xt: &UPoly<Q>, yt: &UPoly<Q>, seed: u64) -> Result<CurveNormalForm> {
    let f = implicit_equation(xt, yt)?;
    let g = settled(gcd_xy(&K, &f, &f.dy(&K)))?;
    if g.deg_y().unwrap_or(0) > 0 {
        let base = settled(exact_div_xy(&K, &f, &g))?;
        let power = f.deg_y().unwrap() / base.deg_y().unwrap();
        return Err(Error::ImproperParametrization {
            power,
            base: base.render(&K, "x", "y"),
        });
    }
    let on_curve = f.0.iter().rev().fold(UPoly::zero(), |acc: UPoly<Q>, c| {
        acc.mul(&K, yt).add(&K, &c.compose(&K, xt))
    });
    if !on_curve.is_zero() {
        return Err(Error::internal(
            "implicit equation does not vanish on the parametrization",
        ));
    }
    normalize(&f, seed)
}
