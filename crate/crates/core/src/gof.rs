//! Goodness-of-fit statistics, information criteria and model ranking.
//!
//! p-values come from the asymptotic null distributions with no correction for
//! estimated parameters.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimation::{FitResult, Sample};
use crate::family::{ModelId, ModelParams};
use crate::special::{ad_sf, cvm_sf, kolmogorov_sf};

/// Clamp applied to fitted CDF values before taking logarithms in the AD statistic.
pub const AD_CLAMP: f64 = 1e-15;

/// A test statistic with its asymptotic p-value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TestResult {
    pub stat: f64,
    pub p: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GofReport {
    pub model: ModelId,
    pub ks_stat: f64,
    pub ks_p: f64,
    pub cvm_stat: f64,
    pub cvm_p: f64,
    pub ad_stat: f64,
    pub ad_p: f64,
    /// Number of fitted CDF values clamped into `[1e-15, 1 - 1e-15]` for the AD statistic.
    pub ad_clamped: usize,
    /// Always false: p-values ignore that the parameters were estimated.
    pub estimation_corrected: bool,
}

impl GofReport {
    pub fn new(data: &Sample, params: &ModelParams<f64>) -> Self {
        let u = fitted_uniforms(data, params);
        let ks = ks_from_uniforms(&u);
        let cvm = cvm_from_uniforms(&u);
        let (ad, ad_clamped) = ad_from_uniforms(&u);
        Self {
            model: params.model_id(),
            ks_stat: ks.stat,
            ks_p: ks.p,
            cvm_stat: cvm.stat,
            cvm_p: cvm.p,
            ad_stat: ad.stat,
            ad_p: ad.p,
            ad_clamped,
            estimation_corrected: false,
        }
    }
}

/// Fitted CDF at the sorted observations.
fn fitted_uniforms(data: &Sample, params: &ModelParams<f64>) -> Vec<f64> {
    data.sorted().into_iter().map(|x| params.cdf(x)).collect()
}

fn ks_from_uniforms(u: &[f64]) -> TestResult {
    let n = u.len() as f64;
    let d = u
        .iter()
        .enumerate()
        .map(|(i, &f)| ((i as f64 + 1.0) / n - f).max(f - i as f64 / n))
        .fold(0.0, f64::max);
    TestResult { stat: d, p: kolmogorov_sf(n.sqrt() * d) }
}

fn cvm_from_uniforms(u: &[f64]) -> TestResult {
    let n = u.len() as f64;
    let w2 = 1.0 / (12.0 * n)
        + u.iter()
            .enumerate()
            .map(|(i, &f)| (f - (2.0 * i as f64 + 1.0) / (2.0 * n)).powi(2))
            .sum::<f64>();
    TestResult { stat: w2, p: cvm_sf(w2) }
}

fn ad_from_uniforms(u: &[f64]) -> (TestResult, usize) {
    let n = u.len();
    let mut clamped = 0;
    let c: Vec<f64> = u
        .iter()
        .map(|&f| {
            let v = f.clamp(AD_CLAMP, 1.0 - AD_CLAMP);
            if v != f {
                clamped += 1;
            }
            v
        })
        .collect();
    let s: f64 = (0..n)
        .map(|i| (2.0 * i as f64 + 1.0) * (c[i].ln() + (-c[n - 1 - i]).ln_1p()))
        .sum();
    let a2 = (-(n as f64) - s / n as f64).max(0.0);
    (TestResult { stat: a2, p: ad_sf(a2) }, clamped)
}

/// Kolmogorov–Smirnov `D = max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n)`.
pub fn ks_test(data: &Sample, params: &ModelParams<f64>) -> TestResult {
    ks_from_uniforms(&fitted_uniforms(data, params))
}

/// Cramér–von Mises `W² = 1/(12n) + Σ (F(x_(i)) - (2i-1)/(2n))²`.
pub fn cvm_test(data: &Sample, params: &ModelParams<f64>) -> TestResult {
    cvm_from_uniforms(&fitted_uniforms(data, params))
}

/// Anderson–Darling `A² = -n - (1/n) Σ (2i-1)[ln F(x_(i)) + ln(1 - F(x_(n+1-i)))]`.
pub fn ad_test(data: &Sample, params: &ModelParams<f64>) -> TestResult {
    ad_from_uniforms(&fitted_uniforms(data, params)).0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InfoCriteria {
    pub neg2_loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub caic: f64,
    pub hqic: f64,
    pub k: usize,
    pub n: usize,
}

impl InfoCriteria {
    pub fn new(neg2_loglik: f64, k: usize, n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("information criteria need n >= 3, got {n}")));
        }
        let kf = k as f64;
        let ln_n = (n as f64).ln();
        Ok(Self {
            neg2_loglik,
            aic: neg2_loglik + 2.0 * kf,
            bic: neg2_loglik + kf * ln_n,
            caic: neg2_loglik + kf * (ln_n + 1.0),
            hqic: neg2_loglik + 2.0 * kf * ln_n.ln(),
            k,
            n,
        })
    }

    pub fn from_fit(fit: &FitResult) -> Result<Self> {
        Self::new(fit.neg2_loglik, fit.k, fit.n)
    }
}

/// One model's row in a comparison table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelReport {
    pub fit: FitResult,
    pub gof: GofReport,
    pub criteria: InfoCriteria,
}

impl ModelReport {
    pub fn new(fit: FitResult, data: &Sample) -> Result<Self> {
        let gof = GofReport::new(data, &fit.params());
        let criteria = InfoCriteria::from_fit(&fit)?;
        Ok(Self { fit, gof, criteria })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RankedModel {
    pub rank: usize,
    pub model: ModelId,
    pub aic: f64,
    pub bic: f64,
    pub ks_p: f64,
}

/// Orders models by AIC, then BIC, then K-S p-value (descending), then model id.
pub fn rank_models(reports: &[ModelReport]) -> Vec<RankedModel> {
    let mut idx: Vec<usize> = (0..reports.len()).collect();
    idx.sort_by(|&i, &j| {
        let (a, b) = (&reports[i], &reports[j]);
        a.criteria
            .aic
            .total_cmp(&b.criteria.aic)
            .then(a.criteria.bic.total_cmp(&b.criteria.bic))
            .then(b.gof.ks_p.total_cmp(&a.gof.ks_p))
            .then(a.fit.model.cmp(&b.fit.model))
            .then(Ordering::Equal)
    });
    idx.into_iter()
        .enumerate()
        .map(|(r, i)| RankedModel {
            rank: r + 1,
            model: reports[i].fit.model,
            aic: reports[i].criteria.aic,
            bic: reports[i].criteria.bic,
            ks_p: reports[i].gof.ks_p,
        })
        .collect()
}
