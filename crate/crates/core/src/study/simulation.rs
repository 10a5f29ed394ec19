//! Monte Carlo bias and MSE of the maximum-likelihood estimators.
//!
//! Replicate `i` of the size-`n` cell draws its sample from the seed
//! `derive_seed(master, [scenario, n, i])`, so cells and replicates can run in any order
//! and on any number of threads with identical results.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::estimation::{fit_mle, FitConfig, Sample};
use crate::family::ModelId;
use crate::mlfr::MlfrParams;
use crate::rng::derive_seed;

/// Sample sizes of the reference study.
pub const DEFAULT_SIZES: [usize; 6] = [20, 50, 100, 200, 500, 1000];

/// Largest tolerated share of failed replicates in any cell.
pub const MAX_FAILURE_SHARE: f64 = 0.2;

/// Parameters summarised per cell, in output order.
pub const SIM_PARAMS: [&str; 5] = ["theta", "a", "b", "alpha", "beta"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimScenario {
    pub id: u64,
    pub true_params: MlfrParams<f64>,
    pub sample_sizes: Vec<usize>,
    pub replicates: usize,
    pub seed: u64,
}

impl SimScenario {
    pub fn new(id: u64, true_params: MlfrParams<f64>, sample_sizes: Vec<usize>, replicates: usize, seed: u64) -> Result<Self> {
        if replicates == 0 {
            return Err(Error::InvalidParameter("replicates must be at least 1".into()));
        }
        if sample_sizes.is_empty() || sample_sizes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("sample sizes must be non-empty and strictly increasing".into()));
        }
        if sample_sizes[0] < crate::estimation::MIN_FIT_SIZE {
            return Err(Error::InvalidParameter(format!(
                "sample sizes must be at least {}",
                crate::estimation::MIN_FIT_SIZE
            )));
        }
        Ok(Self { id, true_params, sample_sizes, replicates, seed })
    }

    /// Scenarios I to III: `(α, β, a, b)` = (1.5, 0.1, 0.75, 0.25), (0.25, 0.5, 0.8, 0.75),
    /// (3, 0.25, 1.2, 1), with the published sizes and 1000 replicates.
    pub fn preset(id: u64, seed: u64) -> Result<Self> {
        let (alpha, beta, a, b) = match id {
            1 => (1.5, 0.1, 0.75, 0.25),
            2 => (0.25, 0.5, 0.8, 0.75),
            3 => (3.0, 0.25, 1.2, 1.0),
            _ => return Err(Error::InvalidParameter(format!("scenario must be 1, 2 or 3, got {id}"))),
        };
        Self::new(id, MlfrParams::new(alpha, beta, a, b)?, DEFAULT_SIZES.to_vec(), 1000, seed)
    }

    /// True values in [`SIM_PARAMS`] order.
    pub fn truth(&self) -> [f64; 5] {
        let p = &self.true_params;
        [p.theta(), p.a(), p.b(), p.alpha(), p.beta()]
    }
}

/// Fit settings used by the study: the deterministic start grid only, no boundary
/// post-pass and no covariance, with `β` reported at its true value.
pub fn simulation_fit_config(s: &SimScenario, seed: u64) -> FitConfig {
    FitConfig {
        n_starts: 0,
        seed,
        beta_reference: Some(s.true_params.beta()),
        boundary_check: false,
        compute_covariance: false,
        ..FitConfig::default()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParamSummary {
    pub name: String,
    pub truth: f64,
    pub bias: f64,
    pub mse: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimCell {
    pub scenario: u64,
    pub n: usize,
    pub replicates: usize,
    /// Replicates whose fit errored, did not converge, or ran off to `θ = ∞`; excluded
    /// from the averages.
    pub failures: usize,
    pub params: Vec<ParamSummary>,
}

impl SimCell {
    pub fn param(&self, name: &str) -> Option<&ParamSummary> {
        self.params.iter().find(|p| p.name == name)
    }
}

/// Outcome of one replicate: estimates in [`SIM_PARAMS`] order, or `None` on failure.
pub fn run_replicate(s: &SimScenario, base: &FitConfig, n: usize, i: usize) -> Option<[f64; 5]> {
    let seed = derive_seed(s.seed, &[s.id, n as u64, i as u64]);
    let xs = s.true_params.sample(n, seed).ok()?;
    let data = Sample::new(xs).ok()?;
    let cfg = FitConfig { seed, ..base.clone() };
    let fit = fit_mle(ModelId::Mlfr, &data, &cfg).ok()?;
    if !fit.converged || fit.theta_unbounded {
        return None;
    }
    Some([fit.theta_hat, fit.estimates[1], fit.estimates[2], fit.alpha_hat, fit.beta_hat])
}

/// Runs every cell of the scenario. `base` supplies the optimizer settings; its seed is
/// replaced per replicate.
pub fn run_simulation(s: &SimScenario, base: &FitConfig) -> Result<Vec<SimCell>> {
    let truth = s.truth();
    let mut cells = Vec::with_capacity(s.sample_sizes.len());
    for &n in &s.sample_sizes {
        let outcomes: Vec<Option<[f64; 5]>> =
            (0..s.replicates).into_par_iter().map(|i| run_replicate(s, base, n, i)).collect();
        let ok: Vec<&[f64; 5]> = outcomes.iter().flatten().collect();
        let failures = s.replicates - ok.len();
        if failures as f64 > MAX_FAILURE_SHARE * s.replicates as f64 {
            return Err(Error::Infeasible(format!(
                "scenario {}: {failures} of {} replicates failed at n = {n}",
                s.id, s.replicates
            )));
        }
        let used = ok.len() as f64;
        let params = SIM_PARAMS
            .iter()
            .enumerate()
            .map(|(j, name)| {
                let bias = ok.iter().map(|e| e[j] - truth[j]).sum::<f64>() / used;
                let mse = ok.iter().map(|e| (e[j] - truth[j]).powi(2)).sum::<f64>() / used;
                ParamSummary { name: name.to_string(), truth: truth[j], bias, mse }
            })
            .collect();
        cells.push(SimCell { scenario: s.id, n, replicates: s.replicates, failures, params });
    }
    Ok(cells)
}
