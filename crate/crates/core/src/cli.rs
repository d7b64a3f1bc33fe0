//! Command implementations behind the binary, returning report envelopes so
//! that tests can drive them without a process boundary.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::curve::{
    global_int, implicit_equation, implicitize, normalize, CurveNormalForm,
};
use crate::algebra::field::{q, q_to_string, Rationals, Q};
use crate::algebra::parse::{parse_t, parse_xy};
use crate::algebra::upoly::UPoly;
use crate::error::{settled, Error, Result};
use crate::localgeom::{germ_check, local_int_at, local_int_by_branches, GermRecord};
use crate::oracle::{quotient_dim_global, quotient_dim_local, rational_common_zeros};
use crate::pencil::{
    build_pencil, critical_values, generic_fiber_identity_check, global_data, rational_census,
    CensusCase, CensusVerdict, FiberReport, Fibers, GlobalData, IdentityCheck, PairClassification,
    PencilData, Settings,
};
use crate::report::{BiPolyView, CurveView, PolyView};
use crate::tower::{Alg, Tower};

const K: Rationals = Rationals;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: Vec<String>,
    pub seed: u64,
    pub result: Payload,
    /// Wall-clock time, only when requested: it would break byte-identical
    /// output otherwise.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Payload {
    Analyze(Box<AnalyzeReport>),
    Pencil(Box<PencilReport>),
    Census(Box<CensusReport>),
    Implicitize(ImplicitizeReport),
    Pair(PairReport),
    Lemma(GermRecord),
    CorpusMember(Box<CorpusMember>),
    CorpusSummary(CorpusSummary),
    Verify(VerifyReport),
    Error(ErrorReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl ErrorReport {
    pub fn new(e: &Error) -> Self {
        let kind = format!("{e:?}");
        let kind = kind.split(['(', ' ', '{']).next().unwrap_or("").to_string();
        ErrorReport {
            kind,
            message: e.to_string(),
            exit_code: e.exit_code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub input: BiPolyView,
    pub normal_form: CurveView,
    pub global: GlobalData,
    pub coordinate_case: bool,
    /// `int(f, f_y) - μ - (n - 1)` for `f` itself.
    pub a_member: i64,
    pub delta_inf: Option<usize>,
    /// The curve itself, i.e. the member `λ = 0`.
    pub curve: FiberReport,
    /// One report per class of critical values, with its singular points.
    pub critical_fibers: Vec<FiberReport>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalValueView {
    pub min_poly: PolyView,
    pub points: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PencilReport {
    pub normal_form: CurveView,
    pub global: GlobalData,
    pub pencil: PencilData,
    pub identity: IdentityCheck,
    pub critical_values: Vec<CriticalValueView>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub normal_form: CurveView,
    pub verdict: CensusVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImplicitizeReport {
    pub x_t: PolyView,
    pub y_t: PolyView,
    pub implicit: BiPolyView,
    pub normal_form: CurveView,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub f: BiPolyView,
    pub g: BiPolyView,
    pub classification: PairClassification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheck {
    pub x: String,
    pub y: String,
    pub resultant: usize,
    pub oracle: usize,
    pub branches: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub global_resultant: usize,
    pub global_oracle: usize,
    pub rational_points: Vec<PointCheck>,
    /// Local numbers at rational points add up to the global one.
    pub local_sum_complete: bool,
    pub agree: bool,
}

/// Parameters of a random family of polynomially parametrized curves
/// `(t^a + ..., t^b + ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub count: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub coef_bound: i64,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            count: 100,
            min_degree: 2,
            max_degree: 5,
            coef_bound: 3,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusMember {
    pub index: usize,
    pub x_t: String,
    pub y_t: String,
    pub f: String,
    pub n: usize,
    pub mu: usize,
    pub mu_inf: Option<usize>,
    pub d_regular: bool,
    pub generic_identity_ok: bool,
    pub infinity_identity_ok: Option<bool>,
    pub census: Option<CensusCase>,
    pub rational_lambdas: Vec<String>,
    pub rational_count: usize,
    pub genera: Vec<Option<i64>>,
    pub violations: Vec<String>,
    pub error: Option<ErrorReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub spec: CorpusSpec,
    pub analyzed: usize,
    pub discarded_improper: usize,
    pub coordinate: usize,
    /// Members with μ > 0 by number of rational members: 0, 1, 2, more.
    pub census_sizes: [usize; 4],
    pub violations: usize,
    pub errors: usize,
    pub table: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub settings: Settings,
    pub timing: bool,
}

fn envelope(command: &str, input: Vec<String>, seed: u64, result: Payload) -> ReportEnvelope {
    ReportEnvelope {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        command: command.to_string(),
        input,
        seed,
        result,
        timing_ms: None,
    }
}

/// Runs `body` and wraps its payload, or the error, into an envelope.
pub fn run(
    command: &str,
    input: &[&str],
    opts: RunOptions,
    body: impl FnOnce() -> Result<Payload>,
) -> ReportEnvelope {
    let start = Instant::now();
    let result = body().unwrap_or_else(|e| Payload::Error(ErrorReport::new(&e)));
    let mut env = envelope(
        command,
        input.iter().map(|s| s.to_string()).collect(),
        opts.settings.seed,
        result,
    );
    if opts.timing {
        env.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    env
}

impl ReportEnvelope {
    /// 0 on success, otherwise the code of the failure or violation found.
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Payload::Error(e) => e.exit_code,
            Payload::Census(c) if !c.verdict.violations().is_empty() => 3,
            Payload::Pencil(p) if !p.identity.ok => 3,
            Payload::Pair(p) if p.classification.structure.as_ref().is_some_and(|s| !s.ok) => 3,
            Payload::Lemma(l)
                if !l.bound_ok || l.strict_ok == Some(false) || l.coords_ok == Some(false) =>
            {
                3
            }
            Payload::CorpusMember(m) if !m.violations.is_empty() => 3,
            Payload::CorpusSummary(s) if s.violations > 0 => 3,
            Payload::Verify(v) if !v.agree => 3,
            _ => 0,
        }
    }
}

pub fn analyze(input: &str, s: Settings) -> Result<AnalyzeReport> {
    let raw = parse_xy(input)?;
    let c = normalize(&raw, s.seed)?;
    let g = global_data(&c, s)?;
    let mut notes = Vec::new();
    if !c.degree_condition_holds {
        notes.push("degree condition fails: pencil theorems not applicable".into());
    } else if !g.one_place {
        notes.push("more than one place at infinity: genus not certified".into());
    }
    let int_f_fy = global_int(&c.f, &c.f.dy(&K))?;
    let delta_inf = match (g.mu_inf, g.r_inf) {
        (Some(m), Some(r)) => Some(crate::localgeom::delta_from(m, r)?),
        _ => None,
    };
    let fibers = Fibers::new(&c, g.clone(), s)?;
    Ok(AnalyzeReport {
        input: BiPolyView::new(&raw, "x", "y"),
        normal_form: CurveView::new(&c),
        coordinate_case: g.mu == 0 && g.one_place,
        a_member: int_f_fy as i64 - g.mu as i64 - (g.n as i64 - 1),
        delta_inf,
        curve: fibers.at(&q(0))?,
        critical_fibers: fibers.critical()?,
        global: g,
        notes,
    })
}

pub fn pencil(input: &str, s: Settings) -> Result<PencilReport> {
    let c = normalize(&parse_xy(input)?, s.seed)?;
    let g = global_data(&c, s)?;
    let pd = build_pencil(&c, s)?;
    let identity = generic_fiber_identity_check(&c, &pd, g.mu, s.seed)?;
    let cvs = if g.mu == 0 {
        Vec::new()
    } else {
        critical_values(&c, s)?
    };
    Ok(PencilReport {
        normal_form: CurveView::new(&c),
        global: g,
        pencil: pd,
        identity,
        critical_values: cvs
            .iter()
            .map(|cv| CriticalValueView {
                min_poly: PolyView::new(&cv.min_poly, "lambda"),
                points: cv.points.iter().map(|p| p.render()).collect(),
            })
            .collect(),
    })
}

pub fn census(input: &str, s: Settings) -> Result<CensusReport> {
    let c = normalize(&parse_xy(input)?, s.seed)?;
    Ok(CensusReport {
        normal_form: CurveView::new(&c),
        verdict: rational_census(&c, s)?,
    })
}

pub fn implicitize_cmd(xt: &str, yt: &str, s: Settings) -> Result<ImplicitizeReport> {
    let (x, y) = (parse_t(xt)?, parse_t(yt)?);
    let raw = implicit_equation(&x, &y)?;
    let c = implicitize(&x, &y, s.seed)?;
    Ok(ImplicitizeReport {
        x_t: PolyView::new(&x, "t"),
        y_t: PolyView::new(&y, "t"),
        implicit: BiPolyView::new(&raw, "x", "y"),
        normal_form: CurveView::new(&c),
    })
}

pub fn pair(f: &str, g: &str, s: Settings) -> Result<PairReport> {
    let (pf, pg) = (parse_xy(f)?, parse_xy(g)?);
    Ok(PairReport {
        f: BiPolyView::new(&pf, "x", "y"),
        g: BiPolyView::new(&pg, "x", "y"),
        classification: crate::pencil::classify_pair(&pf, &pg, s)?,
    })
}

pub fn lemma(h: &str, s: Settings) -> Result<GermRecord> {
    germ_check(&parse_xy(h)?, s.limits, s.seed)
}

/// Both global routes, and at each rational common zero the three local
/// routes: sheared resultant, truncated quotient, and branch orders.
pub fn verify(f: &str, g: &str, s: Settings) -> Result<VerifyReport> {
    let (pf, pg) = (parse_xy(f)?, parse_xy(g)?);
    let global_resultant = global_int(&pf, &pg)?;
    let global_oracle = quotient_dim_global(&pf, &pg)?;
    let base = Tower::rationals(s.limits);
    let (lf, lg) = (base.lift_q_bipoly(&pf), base.lift_q_bipoly(&pg));
    let mut points = Vec::new();
    for (x0, y0) in rational_common_zeros(&pf, &pg)? {
        let (ax, ay) = (Alg::Q(x0.clone()), Alg::Q(y0.clone()));
        let resultant = settled(local_int_at(&base, &lf, &lg, &ax, &ay, s.seed))?;
        let oracle = quotient_dim_local(&pf, &pg, (&x0, &y0))?;
        let (tf, tg) = (lf.translate(&base, &ax, &ay), lg.translate(&base, &ax, &ay));
        let branches: usize = crate::tower::explore_all(&base, |t| {
            local_int_by_branches(
                t,
                &t.reduce_bipoly(&tf),
                &t.reduce_bipoly(&tg),
                s.seed,
                s.trunc_start,
            )
        })?
        .into_iter()
        .map(|(_, v)| v)
        .sum();
        points.push(PointCheck {
            x: q_to_string(&x0),
            y: q_to_string(&y0),
            resultant,
            oracle,
            branches,
        });
    }
    let local_total: usize = points.iter().map(|p| p.resultant).sum();
    let agree = global_resultant == global_oracle
        && points
            .iter()
            .all(|p| p.resultant == p.oracle && p.oracle == p.branches)
        && local_total <= global_resultant;
    Ok(VerifyReport {
        global_resultant,
        global_oracle,
        local_sum_complete: local_total == global_resultant,
        rational_points: points,
        agree,
    })
}

fn random_param(rng: &mut ChaCha8Rng, deg: usize, bound: i64) -> UPoly<Q> {
    let mut c: Vec<Q> = (0..deg).map(|_| q(rng.gen_range(-bound..=bound))).collect();
    c.push(q(1));
    UPoly(c)
}

/// The parametrizations of a corpus, in order: degrees `(a, b)` coprime
/// with `min_degree <= max(a, b) <= max_degree`.
pub fn corpus_params(spec: &CorpusSpec) -> Vec<(UPoly<Q>, UPoly<Q>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut pairs = Vec::new();
    for b in spec.min_degree.max(2)..=spec.max_degree {
        for a in 2..b {
            if num_integer::gcd(a, b) == 1 {
                pairs.push((a, b));
            }
        }
    }
    (0..spec.count)
        .map(|_| {
            let (a, b) = pairs[rng.gen_range(0..pairs.len())];
            let (a, b) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            (
                random_param(&mut rng, a, spec.coef_bound),
                random_param(&mut rng, b, spec.coef_bound),
            )
        })
        .collect()
}

fn corpus_member(index: usize, xt: &UPoly<Q>, yt: &UPoly<Q>, s: Settings) -> Option<CorpusMember> {
    let mut m = CorpusMember {
        index,
        x_t: xt.render(&K, "t"),
        y_t: yt.render(&K, "t"),
        f: String::new(),
        n: 0,
        mu: 0,
        mu_inf: None,
        d_regular: false,
        generic_identity_ok: false,
        infinity_identity_ok: None,
        census: None,
        rational_lambdas: Vec::new(),
        rational_count: 0,
        genera: Vec::new(),
        violations: Vec::new(),
        error: None,
    };
    let c = match implicitize(xt, yt, s.seed) {
        Ok(c) => c,
        Err(Error::ImproperParametrization { .. }) => return None,
        Err(e) => {
            m.error = Some(ErrorReport::new(&e));
            return Some(m);
        }
    };
    m.f = c.render();
    m.n = c.n;
    let body = |m: &mut CorpusMember| -> Result<()> {
        let g = global_data(&c, s)?;
        m.mu = g.mu;
        m.mu_inf = g.mu_inf;
        if !g.one_place {
            m.violations
                .push("polynomial parametrization without one place at infinity".into());
            return Ok(());
        }
        let pd = build_pencil(&c, s)?;
        m.d_regular = pd.d_regular;
        if !pd.d_regular {
            m.violations
                .push("one place at infinity but not d-regular".into());
        }
        m.generic_identity_ok = generic_fiber_identity_check(&c, &pd, g.mu, s.seed)?.ok;
        if !m.generic_identity_ok {
            m.violations
                .push("int(f_lambda, f_y) differs from mu + n - 1".into());
        }
        let v = rational_census(&c, s)?;
        m.infinity_identity_ok = v.infinity_identity_ok;
        m.census = Some(v.case);
        m.rational_lambdas = v
            .rational_lambdas
            .iter()
            .map(|r| r.lambda.clone())
            .collect();
        m.rational_count = v.rational_count;
        m.genera = v
            .fibers
            .iter()
            .chain(v.generic_fiber.iter())
            .map(|f| f.genus)
            .collect();
        // the curve itself is rational: it must appear in its own census
        let own = v
            .fibers
            .iter()
            .find(|f| f.lambda == "0")
            .or(v.generic_fiber.as_ref());
        if let Some(own) = own.filter(|f| f.genus != Some(0)) {
            m.violations
                .push(format!("parametrized curve has genus {:?}", own.genus));
        }
        m.violations.extend(v.violations());
        Ok(())
    };
    if let Err(e) = body(&mut m) {
        if e.exit_code() == 3 {
            m.violations.push(e.to_string());
        }
        m.error = Some(ErrorReport::new(&e));
    }
    Some(m)
}

/// Census over a generated corpus: one envelope per member, then a summary.
pub fn corpus(spec: &CorpusSpec, opts: RunOptions) -> Vec<ReportEnvelope> {
    let s = opts.settings;
    let params = corpus_params(spec);
    let members: Vec<(Option<CorpusMember>, u64)> = params
        .par_iter()
        .enumerate()
        .map(|(i, (xt, yt))| {
            let start = Instant::now();
            (
                corpus_member(i, xt, yt, s),
                start.elapsed().as_millis() as u64,
            )
        })
        .collect();
    let mut out = Vec::new();
    let mut sum = CorpusSummary {
        spec: spec.clone(),
        analyzed: 0,
        discarded_improper: 0,
        coordinate: 0,
        census_sizes: [0; 4],
        violations: 0,
        errors: 0,
        table: Vec::new(),
    };
    for (m, ms) in members {
        let Some(m) = m else {
            sum.discarded_improper += 1;
            continue;
        };
        sum.analyzed += 1;
        sum.violations += usize::from(!m.violations.is_empty());
        sum.errors += usize::from(m.error.is_some());
        match m.census {
            Some(CensusCase::CoordinateCase) => sum.coordinate += 1,
            Some(_) => sum.census_sizes[m.rational_count.min(3)] += 1,
            None => {}
        }
        let input = vec![m.x_t.clone(), m.y_t.clone()];
        let mut env = envelope("corpus", input, s.seed, Payload::CorpusMember(Box::new(m)));
        if opts.timing {
            env.timing_ms = Some(ms);
        }
        out.push(env);
    }
    sum.table = vec![
        format!("{:<28}{:>6}", "members analyzed", sum.analyzed),
        format!(
            "{:<28}{:>6}",
            "improper (discarded)", sum.discarded_improper
        ),
        format!("{:<28}{:>6}", "coordinates (mu = 0)", sum.coordinate),
        format!("{:<28}{:>6}", "census size 0", sum.census_sizes[0]),
        format!("{:<28}{:>6}", "census size 1", sum.census_sizes[1]),
        format!("{:<28}{:>6}", "census size 2", sum.census_sizes[2]),
        format!("{:<28}{:>6}", "census size > 2", sum.census_sizes[3]),
        format!("{:<28}{:>6}", "members with violations", sum.violations),
        format!("{:<28}{:>6}", "members with errors", sum.errors),
    ];
    out.push(envelope(
        "corpus",
        vec![serde_json::to_string(spec).unwrap()],
        s.seed,
        Payload::CorpusSummary(sum),
    ));
    out
}

/// Line-oriented rendering of the JSON form.
pub fn to_text(env: &ReportEnvelope) -> String {
    fn walk(v: &Value, indent: usize, key: &str, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(m) => {
                if !key.is_empty() {
                    out.push_str(&format!("{pad}{key}:\n"));
                }
                let next = if key.is_empty() { indent } else { indent + 1 };
                for (k, x) in m {
                    walk(x, next, k, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar).collect();
                out.push_str(&format!("{pad}{key}: [{}]\n", items.join(", ")));
            }
            Value::Array(a) => {
                out.push_str(&format!("{pad}{key}:\n"));
                for (i, x) in a.iter().enumerate() {
                    walk(x, indent + 1, &format!("[{i}]"), out);
                }
            }
            _ => out.push_str(&format!("{pad}{key}: {}\n", scalar(v))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk(&serde_json::to_value(env).unwrap(), 0, "", &mut out);
    out
}

/// Normal form of a raw input, used by callers that need the curve itself.
pub fn normal_form(input: &str, seed: u64) -> Result<CurveNormalForm> {
    normalize(&parse_xy(input)?, seed)
}
