use enrichfix::maps::{averaged_map, builtin_pairs, enriched_structure_weight};
use enrichfix::spaces::builtin_space_names;
use enrichfix::{
    a_priori_bound, check_contraction, check_convexity_inequality, check_metric_axioms,
    condition_residual, iterate_pair, stop_index, ContractionSpec, Family, MapPair, PairSampler,
    Point, SolveOptions, SpaceSpec, TwoFloat,
};
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn plane_point() -> impl Strategy<Value = Point<f64>> {
    (coord(), coord()).prop_map(|(a, b)| Point::from_f64s(&[a, b]).unwrap())
}

fn positive_point() -> impl Strategy<Value = Point<f64>> {
    (0.1..10.0f64, coord()).prop_map(|(a, b)| Point::from_f64s(&[a, b]).unwrap())
}

fn space(name: &str) -> SpaceSpec<f64> {
    SpaceSpec::builtin(name).unwrap()
}

fn pair(name: &str) -> MapPair<f64> {
    MapPair::builtin(name).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn structure_endpoints_on_linear_spaces(x in plane_point(), y in plane_point()) {
        for name in ["r2-euclidean", "r2-taxicab-diag", "r2-order-piecewise"] {
            let s = space(name);
            prop_assert_eq!(s.convex_combine(&x, &y, 1.0).unwrap(), x.clone());
            prop_assert_eq!(s.convex_combine(&x, &y, 0.0).unwrap(), y.clone());
        }
    }

    #[test]
    fn structure_endpoints_on_nonnormed(x in positive_point(), y in positive_point()) {
        let s = space("r2-nonnormed");
        for (lambda, target) in [(1.0, &x), (0.0, &y)] {
            let w = s.convex_combine(&x, &y, lambda).unwrap();
            for (a, b) in w.coords().iter().zip(target.coords()) {
                prop_assert!((a - b).abs() <= 1e-12, "{} vs {}", w, target);
            }
        }
    }

    #[test]
    fn nonnormed_geodesic(x in positive_point(), y in positive_point(), lambda in 0.0..=1.0f64) {
        let s = space("r2-nonnormed");
        let w = s.convex_combine(&x, &y, lambda).unwrap();
        let lhs = s.distance(&x, &w).unwrap();
        let rhs = (1.0 - lambda) * s.distance(&x, &y).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn symmetrized_order_metric_is_symmetric(a in plane_point(), b in plane_point()) {
        let s = space("r2-order-piecewise");
        prop_assert_eq!(s.distance(&a, &b).unwrap(), s.distance(&b, &a).unwrap());
    }

    #[test]
    fn linear_averaged_identity(x in plane_point(), lambda in 0.0..1.0f64) {
        for name in ["negation", "identity"] {
            let p = pair(name);
            let s = space("r2-euclidean");
            let got = averaged_map(&s, &p.t, lambda, &x).unwrap();
            let fx = p.t.apply(&x).unwrap();
            let want: Vec<f64> = x.coords().iter().zip(fx.coords())
                .map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect();
            prop_assert_eq!(got.coords(), &want[..]);
        }
    }

    #[test]
    fn linear_averaged_identity_interval(x in 0.0..=1.0f64, lambda in 0.0..1.0f64) {
        let s = space("r1-interval");
        let p = pair("one-minus-x");
        let x = Point::from_f64s(&[x]).unwrap();
        let got = averaged_map(&s, &p.t, lambda, &x).unwrap();
        let fx = p.t.apply(&x).unwrap();
        prop_assert_eq!(got.coords()[0], lambda * x.coords()[0] + (1.0 - lambda) * fx.coords()[0]);
    }

    #[test]
    fn fixed_set_invariance(x in plane_point(), k in 0usize..5, fixed in any::<bool>()) {
        let lambda = [0.1, 0.3, 0.5, 0.7, 0.9][k];
        for info in builtin_pairs() {
            let s = space(info.home_space);
            let p = pair(info.name);
            let x = match (info.name, fixed) {
                ("one-minus-x", true) => Point::from_f64s(&[0.5]).unwrap(),
                ("one-minus-x", false) => Point::from_f64s(&[(x.coords()[0] + 10.0) / 20.0]).unwrap(),
                (_, true) => Point::origin(2),
                _ => x.clone(),
            };
            let tx = p.t.apply(&x).unwrap();
            let tlx = averaged_map(&s, &p.t, lambda, &x).unwrap();
            let plain = s.distance(&x, &tx).unwrap() < 1e-9;
            let avg = s.distance(&x, &tlx).unwrap() < (1.0 - lambda) * 1e-9;
            prop_assert_eq!(plain, avg, "{} at {} λ={}", info.name, x, lambda);
        }
    }

    #[test]
    fn transform_consistency(x in plane_point(), y in plane_point(), k in 0usize..4) {
        // double-double arithmetic keeps cancellation error far below 1e-12
        let b = TwoFloat::from([0.0, 0.5, 1.0, 3.0][k]);
        let s = SpaceSpec::<TwoFloat>::builtin("r2-euclidean").unwrap();
        let p = MapPair::<TwoFloat>::builtin("negation").unwrap();
        let lift = |q: &Point<f64>| Point::new(q.coords().iter().map(|c| TwoFloat::from(*c)).collect()).unwrap();
        let (x, y) = (lift(&x), lift(&y));
        let a = TwoFloat::from(0.25);
        let enriched = condition_residual(&s, &p, &ContractionSpec::new(Family::EnrichedKannan, a).b(b), &x, &y).unwrap();
        let avg = p.averaged(&s, enriched_structure_weight(b).unwrap()).unwrap();
        let plain = condition_residual(&s, &avg, &ContractionSpec::new(Family::Kannan, a), &x, &y).unwrap();
        for (e, k) in [(enriched.lhs, plain.lhs), (enriched.rhs, plain.rhs)] {
            let scaled = (b + 1.0) * k;
            let denom = e.abs().max(scaled.abs());
            if denom > 0.0 {
                let rel: f64 = ((e - scaled).abs() / denom).into();
                prop_assert!(rel <= 1e-12, "{:?} vs {:?}", e, scaled);
            }
        }
    }

    #[test]
    fn contraction_violations_monotone_in_a(a1 in 0.0..0.5f64, a2 in 0.0..0.5f64, seed in any::<u64>()) {
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let s = space("r1-interval");
        let p = pair("one-minus-x");
        let run = |a| check_contraction(&s, &p, &ContractionSpec::new(Family::Kannan, a),
            &PairSampler::Uniform, 200, 1e-9, seed).unwrap().violations;
        prop_assert!(run(hi) <= run(lo));
    }

    #[test]
    fn bound_domination_and_decay(c in coord(), x0 in 0.0..=1.0f64) {
        let a = 0.25;
        let cases = [
            ("r2-taxicab-diag", "paper-main-pair", Point::from_f64s(&[c, c]).unwrap()),
            ("r1-interval", "one-minus-x", Point::from_f64s(&[x0]).unwrap()),
        ];
        for (sn, pn, start) in cases {
            let s = space(sn);
            let p = pair(pn);
            let opts = SolveOptions::new(0.5, 1e-10).a_hint(a);
            let tr = iterate_pair(&s, &p, &start, &opts).unwrap();
            let d01 = tr.step_dist[0];
            for n in 0..tr.points.len() {
                let bound = a_priori_bound(a, n, d01).unwrap();
                for m in n..tr.points.len() {
                    prop_assert!(s.distance(&tr.points[n], &tr.points[m]).unwrap() <= bound + 1e-9);
                }
                if n < tr.step_dist.len() {
                    prop_assert!(tr.step_dist[n] <= a.powi(n as i32) * d01 + 1e-9);
                }
            }
        }
    }

    #[test]
    fn stop_index_is_minimal(a in 0.0..0.99f64, d01 in 0.0..100.0f64, e in -12i32..0) {
        let tol = 10f64.powi(e);
        let n = stop_index(a, d01, tol).unwrap();
        prop_assert!(a_priori_bound(a, n, d01).unwrap() <= tol);
        if n > 0 {
            prop_assert!(a_priori_bound(a, n - 1, d01).unwrap() > tol);
        }
    }

    #[test]
    fn checks_are_deterministic(seed in any::<u64>()) {
        for name in builtin_space_names() {
            let s = space(name);
            prop_assert_eq!(check_metric_axioms(&s, 50, 1e-9, seed).unwrap(), check_metric_axioms(&s, 50, 1e-9, seed).unwrap());
            prop_assert_eq!(check_convexity_inequality(&s, 50, 1e-9, seed).unwrap(), check_convexity_inequality(&s, 50, 1e-9, seed).unwrap());
        }
    }
}

#[test]
fn converged_limits_are_common_fixed_points() {
    let s = space("r2-taxicab-diag");
    let p = pair("paper-main-pair");
    for start in [[2.0, 2.0], [3.0, 1.0], [-4.0, 7.5]] {
        let tol = 1e-10;
        let tr = iterate_pair(
            &s,
            &p,
            &Point::from_f64s(&start).unwrap(),
            &SolveOptions::new(0.5, tol),
        )
        .unwrap();
        assert!(tr.converged);
        let (rt, rs) = tr.residuals_at_last;
        assert!(rt <= 10.0 * tol && rs <= 10.0 * tol);
    }
}

#[test]
fn generic_over_f32() {
    let s = SpaceSpec::<f32>::builtin("r2-taxicab-diag").unwrap();
    let p = MapPair::<f32>::builtin("paper-main-pair").unwrap();
    let tr = iterate_pair(
        &s,
        &p,
        &Point::from_f64s(&[2.0, 2.0]).unwrap(),
        &SolveOptions::new(0.5f32, 1e-6),
    )
    .unwrap();
    assert!(tr.converged);
    assert_eq!(tr.last().coords(), &[0.0f32, 0.0]);
}
