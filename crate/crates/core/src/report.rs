//! Serializable views of results, and the envelope every command emits.

use serde::{Deserialize, Serialize};

use crate::algebra::bipoly::BiPoly;
use crate::algebra::curve::{CurveNormalForm, Step};
use crate::algebra::field::{q_to_string, Rationals, Q};
use crate::algebra::upoly::UPoly;

/// A univariate polynomial: ascending coefficients and a readable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyView {
    pub text: String,
    pub coeffs: Vec<String>,
}

impl PolyView {
    pub fn new(p: &UPoly<Q>, var: &str) -> Self {
        PolyView {
            text: p.render(&Rationals, var),
            coeffs: p.0.iter().map(q_to_string).collect(),
        }
    }
}

/// A bivariate polynomial: sparse terms `[i, j, c]` for `c x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiPolyView {
    pub text: String,
    pub terms: Vec<(usize, usize, String)>,
}

impl BiPolyView {
    pub fn new(p: &BiPoly<Q>, xv: &str, yv: &str) -> Self {
        BiPolyView {
            text: p.render(&Rationals, xv, yv),
            terms: p
                .terms(&Rationals)
                .into_iter()
                .map(|(i, j, c)| (i, j, q_to_string(&c)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveView {
    pub f: BiPolyView,
    pub n: usize,
    pub degree_condition_holds: bool,
    pub strict_condition_holds: bool,
    pub applied_transform: Vec<Step>,
}

impl CurveView {
    pub fn new(c: &CurveNormalForm) -> Self {
        CurveView {
            f: BiPolyView::new(&c.f, "x", "y"),
            n: c.n,
            degree_condition_holds: c.degree_condition_holds,
            strict_condition_holds: c.strict_condition_holds,
            applied_transform: c.applied_transform.clone(),
        }
    }
}
