// One PASS/FAIL line per acceptance criterion; the test fails if any is red.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use placeone::algebra::curve::check_reduced;
use placeone::algebra::parse::parse_xy;
use placeone::algebra::{global_int, q, BiPoly, Rationals, Q};
use placeone::cli::{self, CorpusSpec, Payload, ReportEnvelope, RunOptions};
use placeone::localgeom::{
    germ_check, local_int_at, local_int_by_branches, milnor_at, place_count,
};
use placeone::oracle::{quotient_dim_global, quotient_dim_local};
use placeone::pencil::{CensusCase, PairCase, Settings};
use placeone::tower::{explore_all, Alg, Tower};

const GOLDEN: &str = "y^3 - x^2 - 3*y + 2";

struct Outcome {
    ok: bool,
    detail: String,
}

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn settings() -> Settings {
    Settings::default()
}

fn golden_run() -> Outcome {
    let start = Instant::now();
    let s = settings();
    let mut bad = Vec::new();
    let imp = cli::implicitize_cmd("t^3 - 3*t", "t^2 - 2", s).unwrap();
    if imp.normal_form.f.text != GOLDEN {
        bad.push(format!("implicit equation {}", imp.normal_form.f.text));
    }
    let pair = cli::pair(GOLDEN, "y^3 - x^2 - 3*y - 2", s)
        .unwrap()
        .classification;
    if pair.intersection != 0
        || pair.case != PairCase::CaseIi
        || pair.lambda1.as_deref() != Some("4")
    {
        bad.push(format!(
            "pair {:?} int {} lambda1 {:?}",
            pair.case, pair.intersection, pair.lambda1
        ));
    }
    let v = cli::census(GOLDEN, s).unwrap().verdict;
    if v.mu != 2 {
        bad.push(format!("mu = {}", v.mu));
    }
    let lambdas: Vec<&str> = v
        .rational_lambdas
        .iter()
        .map(|r| r.lambda.as_str())
        .collect();
    if v.case != CensusCase::TwoRational || lambdas != ["0", "4"] {
        bad.push(format!("census {:?} {lambdas:?}", v.case));
    }
    if v.structure_ok != Some(true) {
        bad.push(format!("structure {:?}", v.structure_detail));
    }
    for f in v.fibers.iter().filter(|f| f.rational == Some(true)) {
        let nodes = f
            .singular_points
            .iter()
            .filter(|p| p.mu > 0)
            .collect::<Vec<_>>();
        let one_node = f.mu_fiber == 1
            && nodes.len() == 1
            && nodes[0].orbit_degree == 1
            && nodes[0].mu == 1
            && nodes[0].r == 2;
        if !one_node {
            bad.push(format!("fiber {}: not a single node", f.lambda));
        }
    }
    let generic = v.generic_fiber.as_ref().and_then(|f| f.genus);
    if generic != Some(1) {
        bad.push(format!("generic genus {generic:?}"));
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(5) {
        bad.push(format!("took {elapsed:?}"));
    }
    check(
        bad.is_empty(),
        format!("{:.2}s {}", elapsed.as_secs_f64(), bad.join("; ")),
    )
}

fn cusp_run() -> Outcome {
    let s = settings();
    let mut bad = Vec::new();
    let a = cli::analyze("y^3 - x^2", s).unwrap();
    if (a.global.mu, a.global.r_inf, a.global.mu_inf) != (2, Some(1), Some(0)) {
        bad.push(format!("global {:?}", a.global));
    }
    let p = cli::pencil("y^3 - x^2", s).unwrap().pencil;
    if p.r.text != "27*x^4 + 54*x^2*lambda + 27*lambda^2" || !p.d_regular {
        bad.push(format!("R = {} d_regular {}", p.r.text, p.d_regular));
    }
    let v = cli::census("y^3 - x^2", s).unwrap().verdict;
    let lambdas: Vec<&str> = v
        .rational_lambdas
        .iter()
        .map(|r| r.lambda.as_str())
        .collect();
    if v.case != CensusCase::UniqueRational || lambdas != ["0"] {
        bad.push(format!("census {:?} {lambdas:?}", v.case));
    }
    if v.uniqueness_reason.as_deref() != Some("r_p = 1") || v.uniqueness_ok != Some(true) {
        bad.push(format!("reason {:?}", v.uniqueness_reason));
    }
    check(bad.is_empty(), bad.join("; "))
}

fn coordinate_detection() -> Outcome {
    let mut bad = Vec::new();
    for f in ["y", "y - x^2"] {
        let a = cli::analyze(f, settings()).unwrap();
        let v = cli::census(f, settings()).unwrap().verdict;
        if a.global.mu != 0
            || !a.coordinate_case
            || v.case != CensusCase::CoordinateCase
            || v.divisibility_ok != Some(true)
        {
            bad.push(format!(
                "{f}: mu {} case {:?} divisibility {:?}",
                a.global.mu, v.case, v.divisibility_ok
            ));
        }
    }
    check(bad.is_empty(), bad.join("; "))
}

fn corpus_lines(spec: &CorpusSpec) -> Vec<String> {
    let opts = RunOptions {
        settings: settings(),
        timing: false,
    };
    cli::corpus(spec, opts)
        .iter()
        .map(|e| serde_json::to_string(e).unwrap())
        .collect()
}

fn corpus_spec() -> CorpusSpec {
    CorpusSpec {
        count: 100,
        min_degree: 2,
        max_degree: 5,
        coef_bound: 3,
        seed: 0,
    }
}

fn identity_suite(envs: &[ReportEnvelope], elapsed: Duration) -> Outcome {
    let mut bad = Vec::new();
    let mut analyzed = 0;
    for env in envs {
        match &env.result {
            Payload::CorpusMember(m) => {
                analyzed += 1;
                let genera_ok = m.genera.iter().all(|g| matches!(g, Some(g) if *g >= 0));
                let census_ok = m.mu == 0 || m.rational_count <= 2;
                let ok = m.error.is_none()
                    && m.violations.is_empty()
                    && m.d_regular
                    && m.generic_identity_ok
                    && m.infinity_identity_ok == Some(true)
                    && genera_ok
                    && census_ok
                    && env.exit_code() == 0;
                if !ok {
                    bad.push(format!("member {} ({})", m.index, m.f));
                }
            }
            Payload::CorpusSummary(_) => {}
            _ => bad.push("unexpected payload".into()),
        }
    }
    if analyzed < 100 {
        bad.push(format!("only {analyzed} members"));
    }
    if elapsed > Duration::from_secs(600) {
        bad.push(format!("took {elapsed:?}"));
    }
    check(
        bad.is_empty(),
        format!(
            "{analyzed} members in {:.1}s {}",
            elapsed.as_secs_f64(),
            bad.join("; ")
        ),
    )
}

/// A smooth or cuspidal branch through the origin.
fn random_branch(rng: &mut ChaCha8Rng) -> BiPoly<Q> {
    let k = Rationals;
    let (x, y) = (BiPoly::x(&k), BiPoly::y(&k));
    let a = q(rng.gen_range(-3..=3));
    let b = q(rng.gen_range(-2..=2));
    let c = q(rng.gen_range(1..=3));
    let (u, v) = if rng.gen_bool(0.8) { (x, y) } else { (y, x) };
    // v - a*u - b*u^2, or (v - a*u)^2 - c*u^3
    let lin = v.sub(&k, &u.scale(&k, &a));
    if rng.gen_bool(0.7) {
        lin.sub(&k, &u.mul(&k, &u).scale(&k, &b))
    } else {
        lin.mul(&k, &lin).sub(&k, &u.pow(&k, 3).scale(&k, &c))
    }
}

fn at_origin<T>(job: impl FnMut(&Tower) -> placeone::error::Dyn<T>) -> Vec<T> {
    explore_all(&Tower::rationals(Default::default()), job)
        .unwrap()
        .into_iter()
        .map(|(_, v)| v)
        .collect()
}

fn local_theory_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let k = Rationals;
    let zero = Alg::zero();
    let (mut done, mut extremal, mut three_plus) = (0, 0, 0);
    let mut bad = Vec::new();
    while done < 40 {
        let count = 1 + done % 4;
        let branches: Vec<BiPoly<Q>> = (0..count).map(|_| random_branch(&mut rng)).collect();
        let h = branches
            .iter()
            .fold(BiPoly::one(&k), |acc, b| acc.mul(&k, b));
        if check_reduced(&h).is_err() {
            continue;
        }
        done += 1;
        let mu: usize = at_origin(|t| milnor_at(t, &t.lift_q_bipoly(&h), &zero, &zero, 0))
            .into_iter()
            .sum();
        let r: usize = at_origin(|t| place_count(t, &t.lift_q_bipoly(&h), 0))
            .into_iter()
            .sum();
        // delta from the branches: their own deltas plus pairwise intersections
        let own: usize = branches
            .iter()
            .map(|b| if b.order(&k) == Some(2) { 1 } else { 0 })
            .sum();
        let mut pairs = 0;
        for i in 0..count {
            for j in i + 1..count {
                pairs += at_origin(|t| {
                    local_int_at(
                        t,
                        &t.lift_q_bipoly(&branches[i]),
                        &t.lift_q_bipoly(&branches[j]),
                        &zero,
                        &zero,
                        0,
                    )
                })
                .into_iter()
                .sum::<usize>();
            }
        }
        let delta = own + pairs;
        let rec = germ_check(&h, Default::default(), 0).unwrap();
        let mut ok =
            r == count && rec.r == r && rec.mu0 == mu && 2 * delta == mu + r - 1 && rec.bound_ok;
        ok &= mu >= (r - 1) * (r - 1);
        if r >= 3 {
            three_plus += 1;
            ok &= mu > r - 1 && rec.strict_ok == Some(true);
        }
        if r == 2 && mu == 1 {
            extremal += 1;
            ok &= rec.coords_ok == Some(true);
        }
        if !ok {
            bad.push(format!(
                "{} (mu {mu}, r {r}, delta {delta})",
                h.render(&k, "x", "y")
            ));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{done} germs, {three_plus} with r >= 3, {extremal} nodes {}",
            bad.join("; ")
        ),
    )
}

/// Sheared resultant, truncated quotient and branch orders at a rational point.
fn three_routes(f: &str, g: &str, p: (Q, Q)) -> (usize, usize, usize) {
    let (f, g) = (parse_xy(f).unwrap(), parse_xy(g).unwrap());
    let (ax, ay) = (Alg::Q(p.0.clone()), Alg::Q(p.1.clone()));
    let resultant: usize =
        at_origin(|t| local_int_at(t, &t.lift_q_bipoly(&f), &t.lift_q_bipoly(&g), &ax, &ay, 0))
            .into_iter()
            .sum();
    let oracle = quotient_dim_local(&f, &g, (&p.0, &p.1)).unwrap();
    let branches: usize = at_origin(|t| {
        let (tf, tg) = (
            t.lift_q_bipoly(&f).translate(t, &ax, &ay),
            t.lift_q_bipoly(&g).translate(t, &ax, &ay),
        );
        local_int_by_branches(t, &tf, &tg, 0, 16)
    })
    .into_iter()
    .sum();
    (resultant, oracle, branches)
}

/// Random polynomial of total degree at most 3; when `monic`, of the form
/// `y^d + (terms of y-degree < d)`.
fn random_poly(rng: &mut ChaCha8Rng, monic: bool) -> BiPoly<Q> {
    let k = Rationals;
    let deg = rng.gen_range(1..=3);
    let mut terms = Vec::new();
    if monic {
        terms.push((0, deg, q(1)));
    }
    for i in 0..=deg {
        for j in 0..=deg - i {
            if (!monic || j < deg) && rng.gen_bool(0.6) {
                terms.push((i, j, q(rng.gen_range(-3..=3))));
            }
        }
    }
    BiPoly::from_terms(&k, &terms)
}

fn oracle_equivalence() -> Outcome {
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut pairs = 0;
    while pairs < 25 {
        let (f, g) = (random_poly(&mut rng, true), random_poly(&mut rng, false));
        if f.total_deg().unwrap_or(0) == 0 || g.total_deg().unwrap_or(0) == 0 {
            continue;
        }
        let Ok(res) = global_int(&f, &g) else {
            continue;
        };
        pairs += 1;
        let oracle = quotient_dim_global(&f, &g).unwrap();
        if res != oracle {
            bad.push(format!(
                "({}, {}): {res} vs {oracle}",
                f.render(&Rationals, "x", "y"),
                g.render(&Rationals, "x", "y")
            ));
        }
    }
    let origin = (q(0), q(0));
    let local = [
        ("x", "y", origin.clone(), 1),
        ("y^2 - x^3", "y", origin.clone(), 3),
        ("-2*x", "3*y^2 - 3", (q(0), q(1)), 1),
        ("-2*x", "3*y^2", origin.clone(), 2),
        ("x", "y^2", origin.clone(), 2),
        ("y^3 - x^2", "3*y^2", origin.clone(), 4),
        ("2*x*y + y^2", "x^2 + 2*x*y", origin.clone(), 4),
    ];
    let examples = local.len();
    for (f, g, p, expected) in local {
        let got = three_routes(f, g, p);
        if got != (expected, expected, expected) {
            bad.push(format!("({f}, {g}): {got:?}, expected {expected}"));
        }
    }
    check(
        bad.is_empty(),
        format!(
            "{pairs} random pairs, {examples} local examples {}",
            bad.join("; ")
        ),
    )
}

fn main() {
    let mut results = vec![
        ("1 golden example", golden_run()),
        ("2 cusp", cusp_run()),
        ("3 coordinate detection", coordinate_detection()),
    ];
    let spec = corpus_spec();
    let start = Instant::now();
    let envs = cli::corpus(
        &spec,
        RunOptions {
            settings: settings(),
            timing: false,
        },
    );
    let elapsed = start.elapsed();
    results.push(("4 corpus identities", identity_suite(&envs, elapsed)));
    results.push(("5 local theory", local_theory_suite()));
    results.push(("6 oracle equivalence", oracle_equivalence()));
    let first: Vec<String> = envs
        .iter()
        .map(|e| serde_json::to_string(e).unwrap())
        .collect();
    let second = corpus_lines(&spec);
    results.push((
        "7 determinism",
        check(first == second, format!("{} lines", first.len())),
    ));
    let mut all = true;
    for (name, o) in &results {
        println!(
            "{} {name}: {}",
            if o.ok { "PASS" } else { "FAIL" },
            o.detail.trim()
        );
        all &= o.ok;
    }
    if !all {
        std::process::exit(1);
    }
}
