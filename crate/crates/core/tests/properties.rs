use proptest::prelude::*;

use placeone::algebra::curve::check_reduced;
use placeone::algebra::{global_int, normalize, q, BiPoly, Rationals, UPoly, Q};
use placeone::cli::{self, Payload, ReportEnvelope, RunOptions};
use placeone::error::Error;
use placeone::localgeom::{local_int_at, milnor_at};
use placeone::oracle::quotient_dim_global;
use placeone::pencil::{critical_fibers, global_data, rational_census, Settings};
use placeone::tower::{explore_all, Alg, Tower};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn poly(terms: &[(usize, usize, i64)]) -> BiPoly<Q> {
    let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q(c))).collect();
    BiPoly::from_terms(&Rationals, &t)
}

/// Terms of total degree 1..=3 (the polynomial passes through the origin).
fn germ() -> impl Strategy<Value = BiPoly<Q>> {
    prop::collection::vec(((0usize..=3), (0usize..=3), -3i64..=3), 1..6).prop_map(|ts| {
        let ts: Vec<_> = ts
            .into_iter()
            .filter(|&(i, j, _)| i + j >= 1 && i + j <= 3)
            .collect();
        poly(&ts)
    })
}

/// `y^d + lower y-degree terms` of total degree at most 3.
fn monic() -> impl Strategy<Value = BiPoly<Q>> {
    (
        1usize..=3,
        prop::collection::vec(((0usize..=3), (0usize..=2), -3i64..=3), 0..6),
    )
        .prop_map(|(d, ts)| {
            let mut ts: Vec<_> = ts
                .into_iter()
                .filter(|&(i, j, _)| j < d && i + j <= d)
                .collect();
            ts.push((0, d, 1));
            poly(&ts)
        })
}

fn local_at_origin(f: &BiPoly<Q>, g: &BiPoly<Q>) -> Result<usize, Error> {
    let zero = Alg::zero();
    let found = explore_all(&Tower::rationals(Default::default()), |t| {
        local_int_at(t, &t.lift_q_bipoly(f), &t.lift_q_bipoly(g), &zero, &zero, 0)
    })?;
    Ok(found.into_iter().map(|(_, v)| v).sum())
}

fn milnor_at_origin(f: &BiPoly<Q>) -> Result<usize, Error> {
    let zero = Alg::zero();
    let found = explore_all(&Tower::rationals(Default::default()), |t| {
        milnor_at(t, &t.lift_q_bipoly(f), &zero, &zero, 0)
    })?;
    Ok(found.into_iter().map(|(_, v)| v).sum())
}

/// `f(x + a*y, y + b*x)` followed by translation of the origin to `(c, d)`.
fn affine(f: &BiPoly<Q>, a: i64, b: i64, c: i64, d: i64) -> BiPoly<Q> {
    let k = Rationals;
    let (x, y) = (BiPoly::x(&k), BiPoly::y(&k));
    let xs = x.add(&k, &y.scale(&k, &q(a)));
    let ys = y.add(&k, &x.scale(&k, &q(b)));
    f.subst(&k, &xs, &ys).translate(&k, &q(-c), &q(-d))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn local_intersection_is_symmetric(f in germ(), g in germ()) {
        let (a, b) = (local_at_origin(&f, &g), local_at_origin(&g, &f));
        match (a, b) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(Error::InfiniteLocalIntersection), Err(Error::InfiniteLocalIntersection)) => {}
            (a, b) => prop_assert!(false, "{:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn local_intersection_is_affine_invariant(
        f in germ(), g in germ(), (a, b) in (-2i64..=2, -2i64..=2), (c, d) in (-3i64..=3, -3i64..=3)
    ) {
        prop_assume!(a * b != 1);
        let Ok(before) = local_at_origin(&f, &g) else { return Ok(()) };
        let (fa, ga) = (affine(&f, a, b, c, d), affine(&g, a, b, c, d));
        let p = (Alg::Q(q(c)), Alg::Q(q(d)));
        let after: usize = explore_all(&Tower::rationals(Default::default()), |t| {
            local_int_at(t, &t.lift_q_bipoly(&fa), &t.lift_q_bipoly(&ga), &p.0, &p.1, 0)
        }).unwrap().into_iter().map(|(_, v)| v).sum();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn milnor_number_is_affine_invariant(f in germ(), (a, b) in (-2i64..=2, -2i64..=2)) {
        prop_assume!(a * b != 1);
        let Ok(before) = milnor_at_origin(&f) else { return Ok(()) };
        let after = milnor_at_origin(&affine(&f, a, b, 0, 0)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn resultant_and_quotient_agree(f in monic(), g in germ()) {
        if let Ok(r) = global_int(&f, &g) {
            prop_assert_eq!(r, quotient_dim_global(&f, &g).unwrap());
        }
    }

    #[test]
    fn fiber_milnor_numbers_add_up(f in monic(), extra in prop::collection::vec(((0usize..=4), -3i64..=3), 0..3)) {
        // y^n plus x-terms keeps the degree condition for most draws
        let k = Rationals;
        let mut f = f.add(&k, &poly(&[(0, 4, 1)]));
        for (i, c) in extra {
            f = f.add(&k, &poly(&[(i, 0, c)]));
        }
        prop_assume!(check_reduced(&f).is_ok());
        let Ok(c) = normalize(&f, 0) else { return Ok(()) };
        let s = Settings::default();
        let Ok(g) = global_data(&c, s) else { return Ok(()) };
        let fibers = critical_fibers(&c, &g, s).unwrap();
        let total: usize = fibers.iter().map(|f| f.mu_fiber * f.lambda_degree).sum();
        prop_assert_eq!(total, g.mu);
    }
}

fn param_curve(xt: &[i64], yt: &[i64]) -> BiPoly<Q> {
    let up = |c: &[i64]| UPoly(c.iter().map(|&v| q(v)).collect::<Vec<Q>>());
    placeone::algebra::curve::implicit_equation(&up(xt), &up(yt)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..config() })]

    #[test]
    fn census_follows_translation(shift in -5i64..=5, a in -2i64..=2, b in -2i64..=2) {
        let k = Rationals;
        let f = param_curve(&[0, a, b, 1], &[b, 0, 1]);
        let shifted = f.add(&k, &BiPoly::constant(&k, q(shift)));
        let s = Settings::default();
        let (c0, c1) = (normalize(&f, 0).unwrap(), normalize(&shifted, 0).unwrap());
        // normalization may rescale f; the shift is rescaled with it
        prop_assert_eq!(c0.scale(), c1.scale());
        let shift = c0.scale() * q(shift);
        let v0 = rational_census(&c0, s).unwrap();
        let v1 = rational_census(&c1, s).unwrap();
        prop_assert_eq!(v0.case, v1.case);
        let l0: Vec<Q> = v0.rational_lambdas.iter().map(|r| placeone::algebra::field::q_parse(&r.lambda).unwrap() + &shift).collect();
        let l1: Vec<Q> = v1.rational_lambdas.iter().map(|r| placeone::algebra::field::q_parse(&r.lambda).unwrap()).collect();
        prop_assert_eq!(l0, l1);
    }

    #[test]
    fn envelopes_round_trip(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3) {
        let f = param_curve(&[a, b, 1], &[c, a, 0, 1]).render(&Rationals, "x", "y");
        let s = Settings::default();
        let opts = RunOptions { settings: s, timing: false };
        for env in [
            cli::run("analyze", &[&f], opts, || Ok(Payload::Analyze(Box::new(cli::analyze(&f, s)?)))),
            cli::run("census", &[&f], opts, || Ok(Payload::Census(Box::new(cli::census(&f, s)?)))),
            cli::run("pencil", &[&f], opts, || Ok(Payload::Pencil(Box::new(cli::pencil(&f, s)?)))),
        ] {
            let text = serde_json::to_string(&env).unwrap();
            let back: ReportEnvelope = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(&back, &env);
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), text);
        }
    }
}
