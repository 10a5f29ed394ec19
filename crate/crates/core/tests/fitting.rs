//! Maximum-likelihood fitting on the embedded data and on simulated samples.

use modi_lfr::estimation::{
    identified_information, log_likelihood, observed_information, score_numeric, wald_intervals, Sample,
};
use modi_lfr::rng::derive_seed;
use modi_lfr::study::{compare_models, datasets};
use modi_lfr::{fit_mle, FitConfig, Mlfr, Model, ModelId};

fn bladder() -> Sample {
    datasets::bladder().sample().unwrap()
}

#[test]
fn bladder_mlfr_reaches_global_optimum() {
    let data = bladder();
    let fit = fit_mle(ModelId::Mlfr, &data, &FitConfig::default()).unwrap();
    assert!(fit.converged);
    // Independent multi-start optimum: 818.3695 at θ = 0.019061, a = 7.6422e-4, b = 7.0039e-4.
    assert!((fit.neg2_loglik - 818.3695).abs() < 1e-3, "{}", fit.neg2_loglik);
    assert!((fit.theta_hat / 0.019061 - 1.0).abs() < 1e-3);
    assert_eq!(fit.neg2_loglik, -2.0 * log_likelihood(&fit.params(), &data));
    assert!(!fit.alpha_beta_identified);
    assert!(!fit.theta_unbounded);
}

#[test]
fn covariance_and_intervals_are_consistent() {
    let data = datasets::guinea().sample().unwrap();
    let fit = fit_mle(ModelId::Mlfr, &data, &FitConfig::default()).unwrap();
    let cov = fit.covariance.as_ref().expect("interior optimum has covariance");
    for i in 0..cov.len() {
        assert!(cov[i][i] >= 0.0);
        for j in 0..cov.len() {
            assert!((cov[i][j] - cov[j][i]).abs() <= 1e-12 * (cov[i][i] * cov[j][j]).sqrt());
        }
    }
    let w = wald_intervals(&fit, 0.05).unwrap();
    for (iv, est) in w.iter().zip(&fit.estimates) {
        assert!((0.5 * (iv.lower + iv.upper) - est).abs() <= 1e-12 * est.abs().max(1.0));
    }
    let info = identified_information(ModelId::Mlfr, &fit.estimates, &[true; 3], &data).unwrap();
    let norm = info.matrix.norm();
    assert!(info.max_asymmetry < 1e-4 * norm, "{} vs {norm}", info.max_asymmetry);
}

#[test]
fn stationary_at_refit_optimum() {
    let data = bladder();
    let fit = fit_mle(ModelId::Mlfr, &data, &FitConfig::default()).unwrap();
    // Gradient in (θ, a, b) scaled by each coordinate, per observation.
    let probe = |v: &[f64]| log_likelihood(&modi_lfr::estimation::model_from_identified(ModelId::Mlfr, v).unwrap(), &data);
    let est = fit.estimates.clone();
    for i in 0..3 {
        let h = 1e-5 * est[i];
        let mut up = est.clone();
        let mut down = est.clone();
        up[i] += h;
        down[i] -= h;
        let g = (probe(&up) - probe(&down)) / (2.0 * h) * est[i];
        assert!(g.abs() / data.len() as f64 <= 1e-2, "coordinate {i}: {g}");
    }
}

#[test]
fn full_information_is_singular_along_theta_level_set() {
    let data = bladder();
    let fit = fit_mle(ModelId::Mlfr, &data, &FitConfig::default()).unwrap();
    let p = Model::from_values(ModelId::Mlfr, &[fit.theta_hat.sqrt(), 2.0, fit.estimates[1], fit.estimates[2]]).unwrap();
    let info = observed_information(&p, &data).unwrap();
    let eig = info.matrix.clone().symmetric_eigen().eigenvalues;
    let smallest = eig.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    assert!(smallest <= 1e-6 * info.matrix.trace().abs(), "{eig:?}");
}

#[test]
fn score_numeric_matches_fit_stationarity_scale() {
    let data = bladder();
    let fit = fit_mle(ModelId::Me, &data, &FitConfig::default()).unwrap();
    // The ME optimum runs off to θ = ∞ on this data; the rate is still well defined.
    assert!(fit.theta_unbounded);
    assert!((fit.neg2_loglik - 828.6646).abs() < 1e-3);
    let g = score_numeric(&Model::from_values(ModelId::Me, &[1.0, 1.0, 0.1]).unwrap(), &data).unwrap();
    assert_eq!(g.len(), 3);
}

#[test]
fn fits_are_deterministic_and_monotone_in_starts() {
    let data = datasets::guinea().sample().unwrap();
    let cfg = FitConfig { n_starts: 2, ..FitConfig::default() };
    let a = fit_mle(ModelId::Mw, &data, &cfg).unwrap();
    let b = fit_mle(ModelId::Mw, &data, &cfg).unwrap();
    assert_eq!(a, b);
    let more = fit_mle(ModelId::Mw, &data, &FitConfig { n_starts: 6, ..cfg }).unwrap();
    assert!(more.log_likelihood >= a.log_likelihood);
}

#[test]
fn theta_collapse_fits_agree() {
    let p1 = Mlfr::new(1.5, 0.1, 0.75, 0.25).unwrap();
    let p2 = Mlfr::new(p1.theta().powf(1.0 / 2.0), 2.0, 0.75, 0.25).unwrap();
    let cfg = FitConfig::default();
    let f1 = fit_mle(ModelId::Mlfr, &Sample::new(p1.sample(200, 5).unwrap()).unwrap(), &cfg).unwrap();
    let f2 = fit_mle(ModelId::Mlfr, &Sample::new(p2.sample(200, 5).unwrap()).unwrap(), &cfg).unwrap();
    assert!((f1.neg2_loglik - f2.neg2_loglik).abs() < 1e-6);
    let split = fit_mle(ModelId::Mlfr, &Sample::new(p1.sample(200, 5).unwrap()).unwrap(), &FitConfig { beta_reference: Some(0.1), ..cfg }).unwrap();
    assert_eq!(split.theta_hat, f1.theta_hat);
    assert!((split.alpha_hat.powf(split.beta_hat) / split.theta_hat - 1.0).abs() < 1e-12);
    let reported = split.reported_params().unwrap();
    let data = Sample::new(p1.sample(200, 5).unwrap()).unwrap();
    assert!((log_likelihood(&reported, &data) - split.log_likelihood).abs() < 1e-6);
}

#[test]
fn theta_estimates_concentrate_with_sample_size() {
    let truth = Mlfr::new(1.5, 0.1, 0.75, 0.25).unwrap();
    let cfg = FitConfig { n_starts: 0, boundary_check: false, compute_covariance: false, ..FitConfig::default() };
    let median_error = |n: usize| {
        let mut errs: Vec<f64> = (0..200)
            .map(|i| {
                let seed = derive_seed(77, &[n as u64, i]);
                let data = Sample::new(truth.sample(n, seed).unwrap()).unwrap();
                let fit = fit_mle(ModelId::Mlfr, &data, &cfg).unwrap();
                (fit.theta_hat - truth.theta()).abs()
            })
            .collect();
        errs.sort_by(f64::total_cmp);
        errs[100]
    };
    let (small, large) = (median_error(50), median_error(1000));
    assert!(large < small, "n=1000 {large} vs n=50 {small}");
}

#[test]
fn boundary_post_pass_finds_exponential_edge() {
    // Data from the b = 0 edge: the post-pass must not lose to the interior search.
    let p = Mlfr::from_theta(2.0, 1.0, 0.0).unwrap();
    let data = Sample::new(p.sample(300, 3).unwrap()).unwrap();
    let with = fit_mle(ModelId::Mlfr, &data, &FitConfig::default()).unwrap();
    let without = fit_mle(ModelId::Mlfr, &data, &FitConfig { boundary_check: false, ..FitConfig::default() }).unwrap();
    assert!(with.log_likelihood >= without.log_likelihood);
}

#[test]
fn single_model_comparison_ranks_first() {
    let data = datasets::guinea().sample().unwrap();
    let c = compare_models(&data, &[ModelId::Mlfr], &FitConfig::default());
    assert_eq!(c.ranking.len(), 1);
    assert_eq!(c.ranking[0].rank, 1);
    assert!(c.failures.is_empty());
}
