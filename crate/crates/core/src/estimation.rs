//! Maximum-likelihood estimation for the MLFR law and its Modi-family competitors.
//!
//! Every model depends on `(α, β)` only through `θ = α^β`, so fitting runs in the
//! identified coordinates `(θ, baseline parameters...)`, searched on the log scale:
//! a Nelder–Mead simplex from each start, then a BFGS polish with central-difference
//! gradients. The best start wins; ties keep the lowest start index.
//!
//! The reported `(α̂, β̂)` pair fixes `β̂` to a reference value (1 unless supplied) and sets
//! `α̂ = θ̂^{1/β̂}`. It is flagged as not identified.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{ModelId, ModelParams};
use crate::mlfr::MlfrParams;
use crate::optim::{self, BfgsOptions, NelderMeadOptions, CBRT_EPS};
use crate::rng::{derive_seed, UniformStream};
use crate::special::normal_quantile;

/// Fourth root of machine epsilon, the relative step of the numerical Hessian.
const QRT_EPS: f64 = 1.220_703_125e-4;

/// Largest magnitude of a log-scale coordinate the optimizer may visit.
const LOG_BOUND: f64 = 650.0;

/// Stand-in for `θ = ∞` when probing the untransformed-baseline limit.
const THETA_LIMIT: f64 = 1e300;

/// Minimum sample size accepted by [`fit_mle`].
pub const MIN_FIT_SIZE: usize = 5;

/// Observed lifetimes: finite and strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    obs: Vec<f64>,
}

impl Sample {
    pub fn new(obs: Vec<f64>) -> Result<Self> {
        if obs.is_empty() {
            return Err(Error::DegenerateData("no observations".into()));
        }
        if let Some(bad) = obs.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
            return Err(Error::DegenerateData(format!("observation {bad} is not a finite positive number")));
        }
        Ok(Self { obs })
    }

    pub fn values(&self) -> &[f64] {
        &self.obs
    }

    pub fn len(&self) -> usize {
        self.obs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obs.is_empty()
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.obs.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn mean(&self) -> f64 {
        self.obs.iter().sum::<f64>() / self.obs.len() as f64
    }
}

/// Optimizer settings.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitConfig {
    /// Iteration cap for each simplex run (the BFGS polish uses a tenth of it, at least 100).
    pub max_iter: usize,
    /// Relative objective tolerance for the simplex stage.
    pub tol: f64,
    /// Random starts added to the deterministic start grid.
    pub n_starts: usize,
    pub seed: u64,
    /// Confidence level parameter ζ of the Wald intervals (level 1 - ζ).
    pub zeta: f64,
    /// Reference `β` used to report an `(α, β)` split of `θ̂`.
    pub beta_reference: Option<f64>,
    /// For MLFR, also fit the `b = 0` and `a = 0` edges and keep the best.
    pub boundary_check: bool,
    /// Compute the observed information, covariance and Wald intervals.
    pub compute_covariance: bool,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            max_iter: 2000,
            tol: 1e-10,
            n_starts: 4,
            seed: 20_250_101,
            zeta: 0.05,
            beta_reference: None,
            boundary_check: true,
            compute_covariance: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaldInterval {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptimizerTrace {
    pub iterations: usize,
    pub grad_norm: f64,
    pub starts: usize,
    pub best_start: usize,
    /// Boundary sub-model that won the post-pass, if any (`"b=0"` or `"a=0"`).
    pub boundary: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    pub model: ModelId,
    pub n: usize,
    /// Parameter count used by the information criteria.
    pub k: usize,
    /// Names of the identified parameters (`theta` followed by the baseline parameters).
    pub names: Vec<String>,
    pub estimates: Vec<f64>,
    /// Parameters pinned at zero by the boundary post-pass.
    pub fixed: Vec<bool>,
    pub theta_hat: f64,
    pub alpha_hat: f64,
    pub beta_hat: f64,
    /// Always false: the likelihood only sees `α^β`.
    pub alpha_beta_identified: bool,
    pub log_likelihood: f64,
    pub neg2_loglik: f64,
    /// Inverse observed information over the identified parameters.
    pub covariance: Option<Vec<Vec<f64>>>,
    pub covariance_note: Option<String>,
    pub zeta: f64,
    pub wald_intervals: Vec<WaldInterval>,
    pub converged: bool,
    /// The likelihood is at least as high in the `θ → ∞` limit (the untransformed
    /// baseline with the same baseline parameters), so `θ̂` is an arbitrary point on a
    /// ridge and the supremum is not attained.
    pub theta_unbounded: bool,
    pub trace: OptimizerTrace,
}

impl FitResult {
    /// Fitted model with `α = θ̂`, `β = 1`; evaluates exactly like any other split.
    pub fn params(&self) -> ModelParams<f64> {
        model_from_identified(self.model, &self.estimates).expect("fitted parameters are valid")
    }

    /// Fitted model using the reported `(α̂, β̂)` split.
    pub fn reported_params(&self) -> Result<ModelParams<f64>> {
        let mut v = vec![self.alpha_hat, self.beta_hat];
        v.extend_from_slice(&self.estimates[1..]);
        ModelParams::from_values(self.model, &v)
    }

    pub fn estimate(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|i| self.estimates[i])
    }
}

/// Names of the identified parameters of a model.
pub fn identified_names(model: ModelId) -> Vec<String> {
    std::iter::once("theta".to_string())
        .chain(model.param_names()[2..].iter().map(|s| s.to_string()))
        .collect()
}

/// Model from identified coordinates `(θ, rest...)`, with `α = θ`, `β = 1`.
pub fn model_from_identified(model: ModelId, v: &[f64]) -> Result<ModelParams<f64>> {
    let mut natural = Vec::with_capacity(v.len() + 1);
    natural.push(v[0]);
    natural.push(1.0);
    natural.extend_from_slice(&v[1..]);
    ModelParams::from_values(model, &natural)
}

/// `Σ ln f(x_i)`; `-∞` when an observation has zero density.
pub fn log_likelihood(params: &ModelParams<f64>, data: &Sample) -> f64 {
    match params {
        ModelParams::Mlfr(p) => data.values().iter().map(|&x| p.ln_pdf(x)).sum(),
        ModelParams::Modi(c) => data.values().iter().map(|&x| c.ln_pdf(x)).sum(),
    }
}

/// Log-likelihood at a natural parameter vector ordered as [`ModelId::param_names`].
pub fn log_likelihood_at(model: ModelId, values: &[f64], data: &Sample) -> Result<f64> {
    Ok(log_likelihood(&ModelParams::from_values(model, values)?, data))
}

/// Analytic MLFR score with respect to `(α, β, a, b)`, derived from the log of the density
/// `ln θ + ln(1+θ) + ln(a+bx) - T - 2 ln(θ + 1 - e^{-T})`.
pub fn mlfr_score(p: &MlfrParams<f64>, data: &Sample) -> [f64; 4] {
    let theta = p.theta();
    let (a, b) = (p.a(), p.b());
    let n = data.len() as f64;
    let mut d_theta = n * (1.0 / theta + 1.0 / (1.0 + theta));
    let mut d_a = 0.0;
    let mut d_b = 0.0;
    for &x in data.values() {
        let t = p.cumulative_hazard(x);
        let eg = (-t).exp();
        let denom = theta - (-t).exp_m1();
        let rate = a + b * x;
        d_theta -= 2.0 / denom;
        let w = 2.0 * eg / denom;
        d_a += 1.0 / rate - x - w * x;
        d_b += x / rate - 0.5 * x * x - w * 0.5 * x * x;
    }
    let d_alpha = d_theta * p.beta() * theta / p.alpha();
    let d_beta = d_theta * theta * p.alpha().ln();
    [d_alpha, d_beta, d_a, d_b]
}

/// Central-difference score in natural coordinates with steps `ε^{1/3} max(|p_i|, 1)`.
///
/// Fails with [`Error::NonFiniteLikelihood`] when a stencil point leaves the parameter
/// space or has zero likelihood.
pub fn score_numeric(params: &ModelParams<f64>, data: &Sample) -> Result<Vec<f64>> {
    let model = params.model_id();
    let v = params.values();
    let mut probe = v.clone();
    let mut out = Vec::with_capacity(v.len());
    for i in 0..v.len() {
        let h = CBRT_EPS * v[i].abs().max(1.0);
        let eval = |x: f64, probe: &mut Vec<f64>| -> Result<f64> {
            probe[i] = x;
            let ll = log_likelihood_at(model, probe, data)
                .map_err(|e| Error::NonFiniteLikelihood(format!("stencil point invalid: {e}")))?;
            if ll.is_finite() {
                Ok(ll)
            } else {
                Err(Error::NonFiniteLikelihood(format!("log-likelihood is {ll} at stencil point")))
            }
        };
        let up = eval(v[i] + h, &mut probe)?;
        let down = eval(v[i] - h, &mut probe)?;
        probe[i] = v[i];
        out.push((up - down) / (2.0 * h));
    }
    Ok(out)
}

/// Negative numerical Hessian, plus the largest asymmetry seen before symmetrizing.
#[derive(Clone, Debug, PartialEq)]
pub struct Information {
    pub matrix: DMatrix<f64>,
    pub max_asymmetry: f64,
}

/// `-∇²ℓ` by central differences of a central-difference gradient, relative steps
/// `ε^{1/4} |v_i|`, symmetrized as `(H + Hᵀ)/2`.
fn negative_hessian<G: FnMut(&[f64]) -> f64>(mut ll: G, v: &[f64]) -> Result<Information> {
    let d = v.len();
    let steps: Vec<f64> = v.iter().map(|x| QRT_EPS * x.abs().max(f64::MIN_POSITIVE.sqrt())).collect();
    let mut checked = |x: &[f64]| -> Result<f64> {
        let val = ll(x);
        if val.is_finite() {
            Ok(val)
        } else {
            Err(Error::NonFiniteLikelihood("log-likelihood not finite near the estimate".into()))
        }
    };
    let mut gradient_at = |x: &[f64]| -> Result<Vec<f64>> {
        let mut probe = x.to_vec();
        (0..d)
            .map(|j| {
                probe[j] = x[j] + steps[j];
                let up = checked(&probe)?;
                probe[j] = x[j] - steps[j];
                let down = checked(&probe)?;
                probe[j] = x[j];
                Ok((up - down) / (2.0 * steps[j]))
            })
            .collect()
    };
    let mut h = DMatrix::zeros(d, d);
    let mut probe = v.to_vec();
    for i in 0..d {
        probe[i] = v[i] + steps[i];
        let g_up = gradient_at(&probe)?;
        probe[i] = v[i] - steps[i];
        let g_down = gradient_at(&probe)?;
        probe[i] = v[i];
        for j in 0..d {
            h[(i, j)] = -(g_up[j] - g_down[j]) / (2.0 * steps[i]);
        }
    }
    let max_asymmetry = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .map(|(i, j)| (h[(i, j)] - h[(j, i)]).abs())
        .fold(0.0, f64::max);
    let sym = (&h + h.transpose()) * 0.5;
    Ok(Information { matrix: sym, max_asymmetry })
}

/// Observed information in natural coordinates (for MLFR `(α, β, a, b)`).
///
/// The `(α, β)` block is singular along `α^β = const`; this matrix is diagnostic and is
/// not inverted. Covariances come from the identified coordinates instead.
pub fn observed_information(params: &ModelParams<f64>, data: &Sample) -> Result<Information> {
    let model = params.model_id();
    negative_hessian(
        |v| log_likelihood_at(model, v, data).unwrap_or(f64::NEG_INFINITY),
        &params.values(),
    )
}

/// Observed information over the free identified coordinates.
pub fn identified_information(model: ModelId, estimates: &[f64], free: &[bool], data: &Sample) -> Result<Information> {
    let free_idx: Vec<usize> = (0..estimates.len()).filter(|&i| free[i]).collect();
    let point: Vec<f64> = free_idx.iter().map(|&i| estimates[i]).collect();
    negative_hessian(
        |sub| {
            let mut full = estimates.to_vec();
            for (k, &i) in free_idx.iter().enumerate() {
                full[i] = sub[k];
            }
            model_from_identified(model, &full).map(|m| log_likelihood(&m, data)).unwrap_or(f64::NEG_INFINITY)
        },
        &point,
    )
}

/// Inverts an information matrix that is positive semidefinite within `1e-6 · trace`.
pub fn invert_information(info: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let eig = info.clone().symmetric_eigen();
    let trace = info.trace().abs();
    let min_eig = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(min_eig > -1e-6 * trace) || min_eig <= 1e-12 * trace || !min_eig.is_finite() {
        return Err(Error::SingularInformation);
    }
    info.clone().try_inverse().ok_or(Error::SingularInformation)
}

/// Wald intervals `estimate ± z_{ζ/2} sqrt(V)` from the fit's covariance.
pub fn wald_intervals(fit: &FitResult, zeta: f64) -> Result<Vec<WaldInterval>> {
    let cov = fit.covariance.as_ref().ok_or(Error::MissingCovariance)?;
    intervals_from(&fit.names, &fit.estimates, cov, zeta)
}

fn intervals_from(names: &[String], est: &[f64], cov: &[Vec<f64>], zeta: f64) -> Result<Vec<WaldInterval>> {
    if !(zeta > 0.0 && zeta < 1.0) {
        return Err(Error::Domain(format!("zeta must lie in (0, 1), got {zeta}")));
    }
    let z = normal_quantile(1.0 - zeta / 2.0);
    Ok(names
        .iter()
        .zip(est)
        .enumerate()
        .map(|(i, (name, &e))| {
            let se = cov[i][i].max(0.0).sqrt();
            WaldInterval { name: name.clone(), estimate: e, std_error: se, lower: e - z * se, upper: e + z * se }
        })
        .collect())
}

/// One optimisation problem: a model with some identified coordinates pinned at zero.
struct Problem<'a> {
    model: ModelId,
    data: &'a Sample,
    free: Vec<bool>,
}

impl Problem<'_> {
    fn expand(&self, y: &[f64]) -> Option<Vec<f64>> {
        let mut full = Vec::with_capacity(self.free.len());
        let mut it = y.iter();
        for &f in &self.free {
            if f {
                let yi = *it.next()?;
                if !(yi.abs() <= LOG_BOUND) {
                    return None;
                }
                full.push(yi.exp());
            } else {
                full.push(0.0);
            }
        }
        Some(full)
    }

    fn objective(&self, y: &[f64]) -> f64 {
        let Some(full) = self.expand(y) else { return f64::INFINITY };
        match model_from_identified(self.model, &full) {
            Ok(m) => {
                let ll = log_likelihood(&m, self.data);
                if ll.is_finite() {
                    -ll
                } else {
                    f64::INFINITY
                }
            }
            Err(_) => f64::INFINITY,
        }
    }
}

struct StartOutcome {
    y: Vec<f64>,
    objective: f64,
    iterations: usize,
    grad_norm: f64,
    converged: bool,
}

fn run_start(problem: &Problem<'_>, y0: &[f64], cfg: &FitConfig) -> StartOutcome {
    let f = |y: &[f64]| problem.objective(y);
    let scale = 1.0 + f(y0).abs().min(1e12);
    let nm_opts = NelderMeadOptions {
        max_iter: cfg.max_iter,
        f_tol: if scale.is_finite() { cfg.tol * scale } else { cfg.tol },
        x_tol: 1e-7,
        initial_step: 0.5,
    };
    let nm = optim::nelder_mead(f, y0, &nm_opts);
    let bfgs_opts = BfgsOptions { max_iter: (cfg.max_iter / 10).max(100), ..BfgsOptions::default() };
    let mut fg = f;
    let polish = optim::bfgs(f, |y| optim::central_gradient(&mut fg, y), &nm.x, &bfgs_opts);
    let (y, objective) = if polish.fx <= nm.fx { (polish.x, polish.fx) } else { (nm.x, nm.fx) };
    StartOutcome {
        y,
        objective,
        iterations: nm.iterations + polish.iterations,
        grad_norm: polish.grad_norm,
        converged: polish.converged,
    }
}

/// Deterministic start grid (identified scale) for the free coordinates.
fn base_starts(model: ModelId, free: &[bool], data: &Sample) -> Vec<Vec<f64>> {
    let x = data.values();
    let n = x.len() as f64;
    let mean = data.mean();
    let mean_sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let sorted = data.sorted();
    let median = sorted[sorted.len() / 2];
    let rest: Vec<f64> = match model {
        ModelId::Mlfr => {
            if free[1] && free[2] {
                vec![1.0 / mean, 1.0 / mean_sq]
            } else if free[1] {
                vec![1.0 / mean]
            } else {
                vec![2.0 / mean_sq]
            }
        }
        ModelId::Mr => vec![(mean_sq / 2.0).sqrt()],
        ModelId::Me => vec![1.0 / mean],
        ModelId::Mw => vec![1.0, mean],
        ModelId::Mf => vec![1.0, median],
    };
    [0.1, 1.0, 10.0]
        .iter()
        .map(|&theta| std::iter::once(theta).chain(rest.iter().cloned()).collect())
        .collect()
}

fn starts_for(problem: &Problem<'_>, cfg: &FitConfig, variant: u64) -> Vec<Vec<f64>> {
    let base = base_starts(problem.model, &problem.free, problem.data);
    let mut logs: Vec<Vec<f64>> = base.iter().map(|s| s.iter().map(|v| v.ln()).collect()).collect();
    let centre = logs[1].clone();
    let mut stream = UniformStream::new(derive_seed(cfg.seed, &[problem.model as u64, variant]));
    for _ in 0..cfg.n_starts {
        let jittered = centre
            .iter()
            .enumerate()
            .map(|(i, c)| c + if i == 0 { 2.0 } else { 1.0 } * stream.next_normal())
            .collect();
        logs.push(jittered);
    }
    logs
}

struct VariantFit {
    estimates: Vec<f64>,
    free: Vec<bool>,
    log_likelihood: f64,
    converged: bool,
    iterations: usize,
    grad_norm: f64,
    starts: usize,
    best_start: usize,
}

fn fit_variant(model: ModelId, data: &Sample, free: Vec<bool>, cfg: &FitConfig, variant: u64) -> Result<VariantFit> {
    let problem = Problem { model, data, free };
    let starts = starts_for(&problem, cfg, variant);
    let mut best: Option<(usize, StartOutcome)> = None;
    for (i, y0) in starts.iter().enumerate() {
        let out = run_start(&problem, y0, cfg);
        if !out.objective.is_finite() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, b)) => out.objective < b.objective,
        };
        if better {
            best = Some((i, out));
        }
    }
    let (best_start, out) = best.ok_or_else(|| {
        Error::AllStartsFailed(format!("{} starts for {model} produced no finite likelihood", starts.len()))
    })?;
    let estimates = problem.expand(&out.y).expect("finite optimum lies inside the log bounds");
    Ok(VariantFit {
        estimates,
        free: problem.free,
        log_likelihood: -out.objective,
        converged: out.converged,
        iterations: out.iterations,
        grad_norm: out.grad_norm,
        starts: starts.len(),
        best_start,
    })
}

/// Maximum-likelihood fit of `model` to `data`.
pub fn fit_mle(model: ModelId, data: &Sample, cfg: &FitConfig) -> Result<FitResult> {
    if data.len() < MIN_FIT_SIZE {
        return Err(Error::DegenerateData(format!(
            "{} observations, at least {MIN_FIT_SIZE} required",
            data.len()
        )));
    }
    let first = data.values()[0];
    if data.values().iter().all(|&x| x == first) {
        return Err(Error::DegenerateData("all observations are equal".into()));
    }
    let names = identified_names(model);
    let dim = names.len();
    let mut best = fit_variant(model, data, vec![true; dim], cfg, 0)?;
    let mut boundary = None;
    if model == ModelId::Mlfr && cfg.boundary_check {
        for (variant, free, label) in [(1, vec![true, true, false], "b=0"), (2, vec![true, false, true], "a=0")] {
            if let Ok(edge) = fit_variant(model, data, free, cfg, variant) {
                if edge.log_likelihood > best.log_likelihood {
                    best = edge;
                    boundary = Some(label.to_string());
                }
            }
        }
    }

    let params = model_from_identified(model, &best.estimates)?;
    let log_lik = log_likelihood(&params, data);
    let theta_hat = best.estimates[0];
    let theta_unbounded = {
        let mut limit = best.estimates.clone();
        limit[0] = THETA_LIMIT;
        let ll_limit = log_likelihood(&model_from_identified(model, &limit)?, data);
        ll_limit >= log_lik - 1e-9 * (1.0 + log_lik.abs())
    };
    let beta_hat = cfg.beta_reference.unwrap_or(1.0);
    let alpha_hat = if beta_hat == 1.0 { theta_hat } else { theta_hat.powf(1.0 / beta_hat) };

    let (covariance, covariance_note) = if cfg.compute_covariance {
        match covariance_for(model, &best.estimates, &best.free, data) {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, Some("not requested".to_string()))
    };
    let wald = match &covariance {
        Some(c) => intervals_from(&names, &best.estimates, c, cfg.zeta)?,
        None => Vec::new(),
    };

    Ok(FitResult {
        model,
        n: data.len(),
        k: model.n_params(),
        fixed: best.free.iter().map(|f| !f).collect(),
        names,
        estimates: best.estimates,
        theta_hat,
        alpha_hat,
        beta_hat,
        alpha_beta_identified: false,
        log_likelihood: log_lik,
        neg2_loglik: -2.0 * log_lik,
        covariance,
        covariance_note,
        zeta: cfg.zeta,
        wald_intervals: wald,
        converged: best.converged,
        theta_unbounded,
        trace: OptimizerTrace {
            iterations: best.iterations,
            grad_norm: best.grad_norm,
            starts: best.starts,
            best_start: best.best_start,
            boundary,
        },
    })
}

/// Covariance over all identified coordinates; pinned coordinates get zero rows and columns.
fn covariance_for(model: ModelId, estimates: &[f64], free: &[bool], data: &Sample) -> Result<Vec<Vec<f64>>> {
    let info = identified_information(model, estimates, free, data)?;
    let inv = invert_information(&info.matrix)?;
    let free_idx: Vec<usize> = (0..estimates.len()).filter(|&i| free[i]).collect();
    let mut cov = vec![vec![0.0; estimates.len()]; estimates.len()];
    for (r, &i) in free_idx.iter().enumerate() {
        for (c, &j) in free_idx.iter().enumerate() {
            cov[i][j] = inv[(r, c)];
        }
    }
    Ok(cov)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn small_sample() -> Sample {
        Sample::new(vec![0.3, 0.8, 1.1, 1.7, 2.2, 0.5, 0.9, 3.1]).unwrap()
    }

    #[test]
    fn sample_validation() {
        assert!(Sample::new(vec![]).is_err());
        assert!(Sample::new(vec![1.0, -2.0]).is_err());
        assert!(Sample::new(vec![1.0, f64::NAN]).is_err());
        assert_eq!(small_sample().len(), 8);
    }

    #[test]
    fn degenerate_data_rejected() {
        let cfg = FitConfig::default();
        let few = Sample::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(fit_mle(ModelId::Mlfr, &few, &cfg), Err(Error::DegenerateData(_))));
        let flat = Sample::new(vec![2.0; 10]).unwrap();
        assert!(matches!(fit_mle(ModelId::Me, &flat, &cfg), Err(Error::DegenerateData(_))));
    }

    #[test]
    fn log_likelihood_of_unit_density_point() {
        // ME with θ = 1 has density 2a at the origin limit; choose a so that f(x) = 1.
        let me = ModelParams::from_values(ModelId::Me, &[1.0, 1.0, 0.5]).unwrap();
        let x = 1e-12;
        assert_relative_eq!(me.pdf(x), 1.0, max_relative = 1e-10);
        let ll = log_likelihood(&me, &Sample::new(vec![x]).unwrap());
        assert!(ll.abs() < 1e-10);
    }

    #[test]
    fn log_likelihood_minus_infinity_at_zero_density() {
        let m = ModelParams::from_values(ModelId::Mlfr, &[1.0, 1.0, 0.0, 1.0]).unwrap();
        let data = Sample::new(vec![1.0, 2.0]).unwrap();
        assert!(log_likelihood(&m, &data).is_finite());
        let p = MlfrParams::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(p.ln_pdf(0.0), f64::NEG_INFINITY);
    }

    #[test]
    fn central_score_is_antisymmetric_in_perturbation() {
        let data = small_sample();
        let m = ModelParams::from_values(ModelId::Mlfr, &[1.3, 0.7, 0.4, 0.2]).unwrap();
        let g = score_numeric(&m, &data).unwrap();
        let ana = mlfr_score(&MlfrParams::new(1.3, 0.7, 0.4, 0.2).unwrap(), &data);
        for (n, a) in g.iter().zip(ana.iter()) {
            assert_relative_eq!(n, a, max_relative = 1e-6, epsilon = 1e-8);
        }
    }

    #[test]
    fn score_stencil_outside_space_is_error() {
        let data = small_sample();
        let m = ModelParams::from_values(ModelId::Mlfr, &[1.3, 0.7, 1e-9, 0.2]).unwrap();
        assert!(matches!(score_numeric(&m, &data), Err(Error::NonFiniteLikelihood(_))));
    }

    #[test]
    fn wald_interval_properties() {
        let names = vec!["theta".to_string(), "a".to_string()];
        let est = vec![2.0, 0.5];
        let cov = vec![vec![0.25, 0.0], vec![0.0, 0.0]];
        let w = intervals_from(&names, &est, &cov, 0.05).unwrap();
        let z = 1.959_963_984_540_054;
        assert_relative_eq!(w[0].upper - w[0].estimate, z * 0.5, max_relative = 1e-12);
        assert_relative_eq!(w[0].estimate - w[0].lower, z * 0.5, max_relative = 1e-12);
        assert_eq!((w[1].lower, w[1].upper), (0.5, 0.5));
        let cov2 = vec![vec![0.5, 0.0], vec![0.0, 0.0]];
        let w2 = intervals_from(&names, &est, &cov2, 0.05).unwrap();
        assert_relative_eq!(
            (w2[0].upper - w2[0].lower) / (w[0].upper - w[0].lower),
            2f64.sqrt(),
            max_relative = 1e-12
        );
        assert!(intervals_from(&names, &est, &cov, 1.5).is_err());
    }

    #[test]
    fn missing_covariance_is_error() {
        let data = small_sample();
        let cfg = FitConfig { compute_covariance: false, n_starts: 0, ..FitConfig::default() };
        let fit = fit_mle(ModelId::Me, &data, &cfg).unwrap();
        assert!(matches!(wald_intervals(&fit, 0.05), Err(Error::MissingCovariance)));
    }
}
