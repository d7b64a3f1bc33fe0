// Fibers assembled from critical-point classes against a direct solve of
// each rational member's singular locus.

use placeone::algebra::field::q_parse;
use placeone::algebra::parse::parse_xy;
use placeone::algebra::{normalize, BiPoly, Rationals};
use placeone::localgeom::{fiber_singular_points, milnor_local};
use placeone::pencil::{global_data, Fibers, Settings};
use placeone::tower::{explore_all, Alg, Tower};

const CURVES: &[&str] = &[
    "y^3 - x^2 - 3*y + 2",
    "y^3 - x^2",
    "y^4 - x^2 - x",
    "y^4 + x*y^2 + x^3 - 2*y",
    "y^5 - 5*y^3 + 5*y - x^2 + x",
];

#[test]
fn class_fibers_match_direct_solve() {
    let s = Settings::default();
    for f in CURVES {
        let c = normalize(&parse_xy(f).unwrap(), 0).unwrap();
        let g = global_data(&c, s).unwrap();
        let fibers = Fibers::new(&c, g.clone(), s).unwrap();
        let reports = fibers.critical().unwrap();
        assert_eq!(
            reports
                .iter()
                .map(|r| r.mu_fiber * r.lambda_degree)
                .sum::<usize>(),
            g.mu,
            "{f}"
        );
        for r in reports.iter().filter(|r| r.lambda_degree == 1) {
            let lam = q_parse(&r.lambda).unwrap();
            let base = Tower::rationals(s.limits);
            let points: Vec<_> = explore_all(&base, |t| {
                fiber_singular_points(t, &t.lift_q_bipoly(&c.f), &Alg::Q(lam.clone()))
            })
            .unwrap()
            .into_iter()
            .flat_map(|(_, v)| v)
            .collect();
            let fl =
                c.f.sub(&Rationals, &BiPoly::constant(&Rationals, lam.clone()));
            let (mut count, mut mu) = (0, 0);
            for p in &points {
                for (sub, m) in milnor_local(&fl, p, 0).unwrap() {
                    count += sub.orbit_degree();
                    mu += m * sub.orbit_degree();
                }
            }
            let reported: usize = r.singular_points.iter().map(|p| p.orbit_degree).sum();
            assert_eq!(
                (count, mu),
                (reported, r.mu_fiber),
                "{f} at lambda = {}",
                r.lambda
            );
        }
        // a regular value has no singular points
        let generic = fibers.generic().unwrap();
        assert!(
            generic.singular_points.is_empty() && generic.mu_fiber == 0,
            "{f}"
        );
    }
}
