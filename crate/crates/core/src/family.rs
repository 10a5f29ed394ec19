//! Modi-family competitor models and the common distribution interface.
//!
//! Each competitor applies the Modi transform `F = (1 + θ) G / (θ + G)` to a baseline
//! CDF `G`: Rayleigh (MR), Weibull (MW), exponential (ME) or Fréchet (MF).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mlfr::{check_positive, modi_theta, MlfrParams};
use crate::rng::UniformStream;
use crate::scalar::{lit, Real};

/// The five models compared in the reproduction tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ModelId {
    #[serde(rename = "MLFR")]
    Mlfr,
    #[serde(rename = "MR")]
    Mr,
    #[serde(rename = "MW")]
    Mw,
    #[serde(rename = "ME")]
    Me,
    #[serde(rename = "MF")]
    Mf,
}

impl ModelId {
    pub const ALL: [ModelId; 5] = [ModelId::Mlfr, ModelId::Mr, ModelId::Mw, ModelId::Me, ModelId::Mf];

    /// Parameter count `k` used by the information criteria.
    pub fn n_params(self) -> usize {
        match self {
            ModelId::Mr | ModelId::Me => 3,
            ModelId::Mlfr | ModelId::Mw | ModelId::Mf => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelId::Mlfr => "MLFR",
            ModelId::Mr => "MR",
            ModelId::Mw => "MW",
            ModelId::Me => "ME",
            ModelId::Mf => "MF",
        }
    }

    /// Names of the natural parameters, in the order accepted by [`ModelParams::from_values`].
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            ModelId::Mlfr | ModelId::Mw | ModelId::Mf => &["alpha", "beta", "a", "b"],
            ModelId::Mr => &["alpha", "beta", "sigma"],
            ModelId::Me => &["alpha", "beta", "a"],
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mlfr" => Ok(ModelId::Mlfr),
            "mr" => Ok(ModelId::Mr),
            "mw" => Ok(ModelId::Mw),
            "me" => Ok(ModelId::Me),
            "mf" => Ok(ModelId::Mf),
            other => Err(Error::Parse(format!("unknown model '{other}'"))),
        }
    }
}

/// Parameters of a Modi-family competitor. All fields are strictly positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CompetitorParams<F> {
    /// Rayleigh baseline `G = 1 - exp(-x²/(2σ²))`.
    Rayleigh { alpha: F, beta: F, sigma: F },
    /// Weibull baseline `G = 1 - exp(-(x/b)^a)` with shape `a`, scale `b`.
    Weibull { alpha: F, beta: F, a: F, b: F },
    /// Exponential baseline `G = 1 - exp(-a x)`.
    Exponential { alpha: F, beta: F, a: F },
    /// Fréchet baseline `G = exp(-(b/x)^a)` with shape `a`, scale `b`.
    Frechet { alpha: F, beta: F, a: F, b: F },
}

/// Baseline CDF, its complement and the log baseline density at one point.
struct Baseline<F> {
    cdf: F,
    sf: F,
    ln_pdf: F,
}

impl<F: Real> CompetitorParams<F> {
    pub fn rayleigh(alpha: F, beta: F, sigma: F) -> Result<Self> {
        Self::Rayleigh { alpha, beta, sigma }.validated()
    }

    pub fn weibull(alpha: F, beta: F, a: F, b: F) -> Result<Self> {
        Self::Weibull { alpha, beta, a, b }.validated()
    }

    pub fn exponential(alpha: F, beta: F, a: F) -> Result<Self> {
        Self::Exponential { alpha, beta, a }.validated()
    }

    pub fn frechet(alpha: F, beta: F, a: F, b: F) -> Result<Self> {
        Self::Frechet { alpha, beta, a, b }.validated()
    }

    fn validated(self) -> Result<Self> {
        let v = self.values();
        for (name, x) in self.model_id().param_names().iter().zip(v.iter()) {
            check_positive(name, *x)?;
        }
        modi_theta(v[0], v[1])?;
        Ok(self)
    }

    pub fn model_id(&self) -> ModelId {
        match self {
            Self::Rayleigh { .. } => ModelId::Mr,
            Self::Weibull { .. } => ModelId::Mw,
            Self::Exponential { .. } => ModelId::Me,
            Self::Frechet { .. } => ModelId::Mf,
        }
    }

    /// Natural parameter vector in [`ModelId::param_names`] order.
    pub fn values(&self) -> Vec<F> {
        match *self {
            Self::Rayleigh { alpha, beta, sigma } => vec![alpha, beta, sigma],
            Self::Weibull { alpha, beta, a, b } | Self::Frechet { alpha, beta, a, b } => vec![alpha, beta, a, b],
            Self::Exponential { alpha, beta, a } => vec![alpha, beta, a],
        }
    }

    pub fn theta(&self) -> F {
        let (alpha, beta) = match *self {
            Self::Rayleigh { alpha, beta, .. }
            | Self::Weibull { alpha, beta, .. }
            | Self::Exponential { alpha, beta, .. }
            | Self::Frechet { alpha, beta, .. } => (alpha, beta),
        };
        alpha.powf(beta)
    }

    fn baseline(&self, x: F) -> Baseline<F> {
        match *self {
            Self::Rayleigh { sigma, .. } => {
                let z = x * x / (lit::<F>(2.0) * sigma * sigma);
                Baseline { cdf: -(-z).exp_m1(), sf: (-z).exp(), ln_pdf: x.ln() - lit::<F>(2.0) * sigma.ln() - z }
            }
            Self::Weibull { a, b, .. } => {
                let r = x / b;
                let z = r.powf(a);
                Baseline { cdf: -(-z).exp_m1(), sf: (-z).exp(), ln_pdf: a.ln() - b.ln() + (a - F::one()) * r.ln() - z }
            }
            Self::Exponential { a, .. } => {
                let z = a * x;
                Baseline { cdf: -(-z).exp_m1(), sf: (-z).exp(), ln_pdf: a.ln() - z }
            }
            Self::Frechet { a, b, .. } => {
                let z = (b / x).powf(a);
                Baseline {
                    cdf: (-z).exp(),
                    sf: -(-z).exp_m1(),
                    ln_pdf: a.ln() + a * b.ln() - (a + F::one()) * x.ln() - z,
                }
            }
        }
    }

    /// Baseline inverse CDF at level `g`, given also `1 - g` to keep precision near one.
    fn baseline_quantile(&self, g: F, one_minus_g: F) -> F {
        match *self {
            Self::Rayleigh { sigma, .. } => sigma * (lit::<F>(2.0) * -one_minus_g.ln()).sqrt(),
            Self::Weibull { a, b, .. } => b * (-one_minus_g.ln()).powf(a.recip()),
            Self::Exponential { a, .. } => -one_minus_g.ln() / a,
            Self::Frechet { a, b, .. } => b * (-g.ln()).powf(-a.recip()),
        }
    }

    /// `F` at baseline level `g`: `(1 + θ) g / (θ + g)`.
    pub fn transform(&self, g: F) -> F {
        let theta = self.theta();
        (F::one() + theta) * g / (theta + g)
    }

    pub fn cdf(&self, x: F) -> F {
        if x <= F::zero() {
            return F::zero();
        }
        self.transform(self.baseline(x).cdf)
    }

    pub fn survival(&self, x: F) -> F {
        if x <= F::zero() {
            return F::one();
        }
        let bl = self.baseline(x);
        let theta = self.theta();
        theta * bl.sf / (theta + bl.cdf)
    }

    pub fn ln_pdf(&self, x: F) -> F {
        if x <= F::zero() {
            return F::neg_infinity();
        }
        let bl = self.baseline(x);
        let theta = self.theta();
        bl.ln_pdf - (bl.cdf / theta).ln_1p() + (bl.sf / (theta + bl.cdf)).ln_1p()
    }

    pub fn pdf(&self, x: F) -> F {
        if x <= F::zero() {
            return F::zero();
        }
        self.ln_pdf(x).exp()
    }

    /// Inverse CDF on the open interval `(0, 1)`.
    ///
    /// Inverts the Modi transform to the baseline level `g = u θ / (1 + θ - u)`,
    /// `1 - g = (1 + θ)(1 - u) / (1 + θ - u)`, then applies the baseline inverse.
    pub fn quantile(&self, u: F) -> Result<F> {
        if !(u > F::zero() && u < F::one()) {
            return Err(Error::Domain(format!("quantile level must lie in (0, 1), got {u}")));
        }
        Ok(self.quantile_unchecked(u))
    }

    fn quantile_unchecked(&self, u: F) -> F {
        let theta = self.theta();
        let d = F::one() + theta - u;
        let g = u * theta / d;
        let one_minus_g = (F::one() + theta) * (F::one() - u) / d;
        self.baseline_quantile(g, one_minus_g)
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<F>> {
        if n == 0 {
            return Err(Error::Domain("sample size must be >= 1".into()));
        }
        let mut stream = UniformStream::new(seed);
        Ok((0..n).map(|_| self.quantile_unchecked(lit(stream.next_open01()))).collect())
    }
}

/// Any of the five compared models with concrete parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModelParams<F> {
    Mlfr(MlfrParams<F>),
    Modi(CompetitorParams<F>),
}

impl<F: Real> ModelParams<F> {
    /// Builds parameters from a natural parameter vector ordered as [`ModelId::param_names`].
    pub fn from_values(model: ModelId, v: &[F]) -> Result<Self> {
        let want = model.param_names().len();
        if v.len() != want {
            return Err(Error::InvalidParameter(format!(
                "{model} expects {want} parameters ({}), got {}",
                model.param_names().join(", "),
                v.len()
            )));
        }
        Ok(match model {
            ModelId::Mlfr => ModelParams::Mlfr(MlfrParams::new(v[0], v[1], v[2], v[3])?),
            ModelId::Mr => ModelParams::Modi(CompetitorParams::rayleigh(v[0], v[1], v[2])?),
            ModelId::Mw => ModelParams::Modi(CompetitorParams::weibull(v[0], v[1], v[2], v[3])?),
            ModelId::Me => ModelParams::Modi(CompetitorParams::exponential(v[0], v[1], v[2])?),
            ModelId::Mf => ModelParams::Modi(CompetitorParams::frechet(v[0], v[1], v[2], v[3])?),
        })
    }

    pub fn model_id(&self) -> ModelId {
        match self {
            ModelParams::Mlfr(_) => ModelId::Mlfr,
            ModelParams::Modi(c) => c.model_id(),
        }
    }

    pub fn values(&self) -> Vec<F> {
        match self {
            ModelParams::Mlfr(p) => vec![p.alpha(), p.beta(), p.a(), p.b()],
            ModelParams::Modi(c) => c.values(),
        }
    }

    pub fn n_params(&self) -> usize {
        self.model_id().n_params()
    }

    pub fn theta(&self) -> F {
        match self {
            ModelParams::Mlfr(p) => p.theta(),
            ModelParams::Modi(c) => c.theta(),
        }
    }

    pub fn cdf(&self, x: F) -> F {
        match self {
            ModelParams::Mlfr(p) => p.cdf(x),
            ModelParams::Modi(c) => c.cdf(x),
        }
    }

    pub fn survival(&self, x: F) -> F {
        match self {
            ModelParams::Mlfr(p) => p.survival(x),
            ModelParams::Modi(c) => c.survival(x),
        }
    }

    pub fn pdf(&self, x: F) -> F {
        match self {
            ModelParams::Mlfr(p) => p.pdf(x),
            ModelParams::Modi(c) => c.pdf(x),
        }
    }

    pub fn ln_pdf(&self, x: F) -> F {
        match self {
            ModelParams::Mlfr(p) => p.ln_pdf(x),
            ModelParams::Modi(c) => c.ln_pdf(x),
        }
    }

    /// `pdf / survival`; falls back to the log-space ratio deep in the tail.
    pub fn hazard(&self, x: F) -> F {
        match self {
            ModelParams::Mlfr(p) => p.hazard(x),
            ModelParams::Modi(c) => {
                let s = c.survival(x);
                if s > F::zero() {
                    c.pdf(x) / s
                } else {
                    F::infinity()
                }
            }
        }
    }

    /// Inverse CDF on `(0, 1)`.
    pub fn quantile(&self, u: F) -> Result<F> {
        match self {
            ModelParams::Mlfr(p) => {
                if u == F::zero() {
                    return Err(Error::Domain("quantile level must lie in (0, 1), got 0".into()));
                }
                p.quantile(u)
            }
            ModelParams::Modi(c) => c.quantile(u),
        }
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<F>> {
        match self {
            ModelParams::Mlfr(p) => p.sample(n, seed),
            ModelParams::Modi(c) => c.sample(n, seed),
        }
    }
}

impl<F: Real> From<MlfrParams<F>> for ModelParams<F> {
    fn from(p: MlfrParams<F>) -> Self {
        ModelParams::Mlfr(p)
    }
}

impl<F: Real> From<CompetitorParams<F>> for ModelParams<F> {
    fn from(c: CompetitorParams<F>) -> Self {
        ModelParams::Modi(c)
    }
}
