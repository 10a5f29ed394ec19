//! Property-based checks of the distribution identities and statistic invariances.

use approx::assert_relative_eq;
use modi_lfr::estimation::{mlfr_score, score_numeric, Sample};
use modi_lfr::gof::{ad_test, cvm_test, ks_test, InfoCriteria};
use modi_lfr::properties::{order_stat_cdf, order_stat_cdf_beta, stress_strength};
use modi_lfr::special::{ad_sf, cvm_sf, kolmogorov_sf};
use modi_lfr::{Mlfr, Mlfr32, Model, ModelId};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = Mlfr> {
    (0.05f64..5.0, 0.1f64..3.0, 0.0f64..2.0, 0.0f64..2.0)
        .prop_filter("a + b > 0", |(_, _, a, b)| a + b > 0.05)
        .prop_map(|(al, be, a, b)| Mlfr::new(al, be, a, b).unwrap())
}

proptest! {
    #[test]
    fn survival_complements_cdf(p in params(), x in 0.0f64..8.0) {
        prop_assert!((p.cdf(x) + p.survival(x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hazard_is_pdf_over_survival(p in params(), x in 0.0f64..6.0) {
        let s = p.survival(x);
        prop_assume!(s > 1e-300);
        let h = p.hazard(x);
        prop_assert!((h - p.pdf(x) / s).abs() <= 1e-10 * h.max(1e-300));
    }

    #[test]
    fn exp_log_pdf_is_pdf(p in params(), x in 0.0f64..6.0) {
        let f = p.pdf(x);
        prop_assume!(f > 0.0);
        prop_assert!((p.ln_pdf(x).exp() - f).abs() <= 1e-12 * f);
    }

    #[test]
    fn quantile_inverts_cdf(p in params(), u in 0.0f64..0.999) {
        let x = p.quantile(u).unwrap();
        prop_assert!((p.cdf(x) - u).abs() < 1e-10);
    }

    #[test]
    fn cdf_is_monotone(p in params(), x in 0.0f64..6.0, dx in 0.0f64..1.0) {
        prop_assert!(p.cdf(x + dx) >= p.cdf(x));
    }

    #[test]
    fn theta_collapse(theta in 0.01f64..50.0, beta in 0.1f64..4.0, a in 0.01f64..2.0, b in 0.0f64..2.0, x in 0.0f64..5.0) {
        let p1 = Mlfr::from_theta(theta, a, b).unwrap();
        let p2 = Mlfr::new(theta.powf(1.0 / beta), beta, a, b).unwrap();
        prop_assert!((p1.cdf(x) - p2.cdf(x)).abs() <= 1e-12 * p1.cdf(x).max(1e-300) + 1e-300);
    }

    #[test]
    fn single_precision_tracks_double(p in params(), x in 0.01f64..4.0) {
        let q = Mlfr32::new(p.alpha() as f32, p.beta() as f32, p.a() as f32, p.b() as f32).unwrap();
        prop_assert!((q.cdf(x as f32) as f64 - p.cdf(x)).abs() < 1e-4);
    }

    #[test]
    fn info_criteria_identities(neg2 in -1e4f64..1e4, k in 0usize..10, n in 3usize..100_000) {
        let c = InfoCriteria::new(neg2, k, n).unwrap();
        let (kf, ln_n) = (k as f64, (n as f64).ln());
        prop_assert_eq!(c.aic, neg2 + 2.0 * kf);
        prop_assert_eq!(c.bic, neg2 + kf * ln_n);
        prop_assert_eq!(c.caic, neg2 + kf * (ln_n + 1.0));
        prop_assert_eq!(c.hqic, neg2 + 2.0 * kf * ln_n.ln());
    }

    #[test]
    fn gof_depends_only_on_sorted_values(seed in 0u64..1000, rot in 1usize..30) {
        let p = Mlfr::new(1.5, 0.1, 0.75, 0.25).unwrap();
        let xs = p.sample(30, seed).unwrap();
        let mut ys = xs.clone();
        ys.rotate_left(rot);
        let (a, b) = (Sample::new(xs).unwrap(), Sample::new(ys).unwrap());
        let m = Model::from(p);
        prop_assert_eq!(ks_test(&a, &m), ks_test(&b, &m));
        prop_assert_eq!(cvm_test(&a, &m), cvm_test(&b, &m));
        prop_assert_eq!(ad_test(&a, &m), ad_test(&b, &m));
        prop_assert!(ad_test(&a, &m).stat >= 0.0);
    }

    #[test]
    fn p_values_decrease_with_statistic(z in 0.0f64..5.0, dz in 0.0f64..1.0) {
        prop_assert!(kolmogorov_sf(z + dz) <= kolmogorov_sf(z) + 1e-15);
        prop_assert!(cvm_sf(z + dz) <= cvm_sf(z) + 1e-12);
        prop_assert!(ad_sf(z + dz) <= ad_sf(z) + 1e-12);
    }
}

#[test]
fn analytic_and_numeric_scores_agree() {
    let mut stream = modi_lfr::rng::UniformStream::new(99);
    for i in 0..20 {
        let mut draw = |lo: f64, hi: f64| lo + (hi - lo) * stream.next_open01();
        let p = Mlfr::new(draw(0.2, 3.0), draw(0.3, 2.0), draw(0.1, 1.5), draw(0.1, 1.5)).unwrap();
        let data = Sample::new(p.sample(15, i).unwrap()).unwrap();
        let numeric = score_numeric(&Model::from(p), &data).unwrap();
        let analytic = mlfr_score(&p, &data);
        for (n, a) in numeric.iter().zip(&analytic) {
            assert!((n - a).abs() <= 1e-5 * a.abs().max(1.0), "instance {i}: {numeric:?} vs {analytic:?}");
        }
    }
}

#[test]
fn order_statistic_routes_agree() {
    let p = Mlfr::new(0.25, 0.5, 0.8, 0.75).unwrap();
    for n in 1..=12u64 {
        for k in 1..=n {
            for &x in &[0.05, 0.4, 1.0, 2.5] {
                let a = order_stat_cdf(&p, n, k, x).unwrap();
                let b = order_stat_cdf_beta(&p, n, k, x).unwrap();
                assert!((a - b).abs() < 1e-9, "n={n} k={k} x={x}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn stress_strength_of_identical_laws_is_half() {
    for p in [Mlfr::new(1.5, 0.1, 0.75, 0.25).unwrap(), Mlfr::new(3.0, 0.25, 1.2, 1.0).unwrap()] {
        assert_relative_eq!(stress_strength(&p, &p, 1e-10).unwrap(), 0.5, epsilon = 1e-6);
    }
}

#[test]
fn ks_uniformity_under_the_null() {
    let p = Mlfr::new(0.25, 0.5, 0.8, 0.75).unwrap();
    let m = Model::from(p);
    let mut ps: Vec<f64> = (0..500)
        .map(|i| ks_test(&Sample::new(p.sample(100, 1000 + i).unwrap()).unwrap(), &m).p)
        .collect();
    ps.sort_by(f64::total_cmp);
    let d = ps
        .iter()
        .enumerate()
        .map(|(i, &u)| ((i as f64 + 1.0) / 500.0 - u).max(u - i as f64 / 500.0))
        .fold(0.0, f64::max);
    assert!(d < 0.1, "distance to uniform {d}");
}

#[test]
fn model_ids_round_trip_through_text() {
    for m in ModelId::ALL {
        assert_eq!(m.to_string().parse::<ModelId>().unwrap(), m);
    }
}
