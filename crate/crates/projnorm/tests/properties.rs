//! Property tests over random jets, catalog members, coefficient vectors and flow times.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use projnorm::catalog::{make_entry, reference_entry, reference_params, FamilyId, Params};
use projnorm::jets::{complex_lift, seed_point, Point2, RJet};
use projnorm::projective::{
    class_combination, combination_section, liouville_from_metric, metric_from_liouville, ProjectiveConnection,
};
use projnorm::report::{ReportDocument, RunConfig, VerificationReport};
use projnorm::spectra::{polar_inverse, polar_reparam};
use projnorm::transforms::flow_jets;

fn jet(order: usize) -> impl Strategy<Value = RJet> {
    let n = (order + 1) * (order + 2) / 2;
    prop::collection::vec(-3.0..3.0f64, n).prop_map(move |c| RJet::from_coeffs(order, c))
}

fn three_jets() -> impl Strategy<Value = (RJet, RJet, RJet)> {
    (0usize..=4).prop_flat_map(|o| (jet(o), jet(o), jet(o)))
}

fn family() -> impl Strategy<Value = FamilyId> {
    prop::sample::select(FamilyId::ALL.to_vec())
}

fn close(a: &RJet, b: &RJet, rel: f64) -> bool {
    let scale = a.max_abs().max(b.max_abs()).max(1.0);
    a.coeffs().iter().zip(b.coeffs()).all(|(u, v)| (u - v).abs() <= rel * scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn products_distribute_over_sums((a, b, c) in three_jets()) {
        let lhs = &(&a + &b) * &c;
        let rhs = &(&a * &c) + &(&b * &c);
        prop_assert!(close(&lhs, &rhs, 1e-13));
    }

    #[test]
    fn exp_inverts_log_of_positive_jets(a in (0usize..=4).prop_flat_map(jet), shift in 0.5..4.0f64) {
        let mut a = a;
        a.set_coeff(0, 0, a.value().abs() + shift);
        let back = a.ln_abs().unwrap().exp();
        prop_assert!(close(&back, &a, 1e-12));
    }

    #[test]
    fn derivatives_match_central_differences(x in -1.0..1.0f64, y in -1.0..1.0f64) {
        let f = |x: &RJet, y: &RJet| -> RJet {
            let u = x * y + x.sin();
            &u.exp() + &(y * y + 1.0).pow_abs(1.5).unwrap() + u.arctan().unwrap()
        };
        let (xj, yj) = seed_point(Point2::new(x, y), 2);
        let j = f(&xj, &yj);
        let val = |px: f64, py: f64| {
            let (a, b) = seed_point(Point2::new(px, py), 0);
            f(&a, &b).value()
        };
        let h = 1e-5;
        let fx = (val(x + h, y) - val(x - h, y)) / (2.0 * h);
        let fy = (val(x, y + h) - val(x, y - h)) / (2.0 * h);
        let fxx = (val(x + h, y) - 2.0 * val(x, y) + val(x - h, y)) / (h * h);
        let rel = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol * a.abs().max(1.0);
        prop_assert!(rel(j.derivative(1, 0).unwrap(), fx, 1e-6));
        prop_assert!(rel(j.derivative(0, 1).unwrap(), fy, 1e-6));
        prop_assert!(rel(j.derivative(2, 0).unwrap(), fxx, 1e-3));
    }

    #[test]
    fn holomorphic_jets_satisfy_cauchy_riemann(x in -1.0..1.0f64, y in -0.5..0.5f64) {
        let (z, _) = complex_lift(Point2::new(x, y), 3);
        let f = &(&z.sin() * &z.exp()) + &z.powi(3);
        let i = Complex64::new(0.0, 1.0);
        for (a, b) in [(1, 0), (2, 0), (1, 1)] {
            // Taylor coefficients: c[a-1][b+1] = i c[a][b] a / (b + 1)
            let want = i * f.coeff(a, b) * (a as f64) / ((b + 1) as f64);
            let got = f.coeff(a - 1, b + 1);
            prop_assert!((got - want).norm() <= 1e-13 * want.norm().max(1.0));
        }
    }

    #[test]
    fn polar_coordinates_round_trip(k1 in -3.0..3.0f64, k2 in -3.0..3.0f64, lambda in 0.0..1.5f64) {
        prop_assume!(k1.hypot(k2) > 1e-3);
        let (k, theta) = polar_reparam(k1, k2, lambda).unwrap();
        let (a, b) = polar_inverse(k, theta, lambda);
        prop_assert!((a - k1).abs() < 1e-12 * k1.hypot(k2).max(1.0));
        prop_assert!((b - k2).abs() < 1e-12 * k1.hypot(k2).max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn psi_and_its_inverse_compose_to_identity(id in family(), seed in any::<u64>()) {
        let e = reference_entry(id);
        let p = e.sample_points(&mut ChaCha8Rng::seed_from_u64(seed), 1).unwrap()[0];
        let g = e.generators[0].eval(p, 2).unwrap();
        let back = metric_from_liouville(&liouville_from_metric(&e.generators[0])).eval(p, 2).unwrap();
        for (a, b) in [(&g.g11, &back.g11), (&g.g12, &back.g12), (&g.g22, &back.g22)] {
            prop_assert!(close(a, b, 1e-12), "{id}");
        }
    }

    #[test]
    fn well_conditioned_combinations_share_the_connection(
        id in family(),
        k in prop::collection::vec(-2.0..2.0f64, 3),
        seed in any::<u64>(),
    ) {
        let e = reference_entry(id);
        let secs = e.sections();
        let k = &k[..secs.len()];
        prop_assume!(k.iter().map(|v| v * v).sum::<f64>() >= 0.25);
        let s = combination_section(&secs, k).unwrap();
        let pts = e.sample_points(&mut ChaCha8Rng::seed_from_u64(seed), 5).unwrap();
        let ok = |p: Point2| s.eval(p, 0).map(|a| a.det().value().abs() >= 1e-2 * a.max_abs().powi(2)).unwrap_or(false);
        prop_assume!(pts.iter().all(|&p| ok(p)));
        let c = ProjectiveConnection::from_metric(&class_combination(&secs, k).unwrap());
        let base = ProjectiveConnection::from_metric(&e.generators[0]);
        for p in pts {
            let d = c.eval(p, 0).unwrap().rel_diff(&base.eval(p, 0).unwrap());
            prop_assert!(d < 1e-10, "{id} {k:?} {p:?} {d:e}");
        }
    }

    #[test]
    fn flows_compose(id in family(), s in -0.3..0.3f64, t in -0.3..0.3f64, seed in any::<u64>()) {
        let e = reference_entry(id);
        let p = e.sample_points(&mut ChaCha8Rng::seed_from_u64(seed), 1).unwrap()[0];
        let (x, y) = seed_point(p, 0);
        let Ok((x1, y1)) = flow_jets(e.flow, t, &x, &y) else { return Ok(()) };
        let Ok((x2, y2)) = flow_jets(e.flow, s, &x1, &y1) else { return Ok(()) };
        let Ok((x3, y3)) = flow_jets(e.flow, s + t, &x, &y) else { return Ok(()) };
        let scale = x3.value().abs().max(y3.value().abs()).max(1.0);
        prop_assert!((x2.value() - x3.value()).abs() < 1e-12 * scale);
        prop_assert!((y2.value() - y3.value()).abs() < 1e-12 * scale);
    }

    #[test]
    fn canonical_params_round_trip(id in family()) {
        let p = reference_params(id);
        let again = Params::parse(&p.to_string()).unwrap();
        prop_assert_eq!(&again, &p);
        prop_assert!(make_entry(id, &again).is_ok());
    }

    #[test]
    fn report_order_does_not_depend_on_input_order(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let items: Vec<VerificationReport> = (0..6)
            .map(|i| VerificationReport::new(["b", "a", "c"][i % 3], ["A1", "C8"][i % 2], "", 0).below(i as f64, 10.0, 1))
            .collect();
        let shuffled: Vec<_> = perm.iter().map(|&i| items[i].clone()).collect();
        let cfg = RunConfig::default();
        prop_assert_eq!(
            ReportDocument::new(vec![], cfg, items).to_json(),
            ReportDocument::new(vec![], cfg, shuffled).to_json()
        );
    }
}
