//! Closed-form Modi linear failure rate (MLFR) distribution.
//!
//! The law is the Modi transform `F = (1 + θ) G / (θ + G)` of the linear failure rate
//! baseline `G(x) = 1 - exp(-T(x))`, `T(x) = a x + b x² / 2`, with `θ = α^β`.
//! Every function below depends on `(α, β)` only through `θ`.

use crate::error::{Error, Result};
use crate::rng::UniformStream;
use crate::scalar::{lit, Real};

/// Parameters `(α, β, a, b)` of the MLFR distribution.
///
/// `θ = α^β` is computed once at construction and is the only way `α` and `β` enter
/// the distribution functions.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct MlfrParams<F> {
    alpha: F,
    beta: F,
    a: F,
    b: F,
    theta: F,
}

/// A value in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Probability<F>(F);

impl<F: Real> Probability<F> {
    pub fn new(value: F) -> Result<Self> {
        if value >= F::zero() && value <= F::one() {
            Ok(Self(value))
        } else {
            Err(Error::Domain(format!("probability must lie in [0, 1], got {value}")))
        }
    }

    pub fn value(self) -> F {
        self.0
    }
}

pub(crate) fn check_positive<F: Real>(name: &str, v: F) -> Result<()> {
    if v.is_finite() && v > F::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be finite and > 0, got {v}")))
    }
}

pub(crate) fn modi_theta<F: Real>(alpha: F, beta: F) -> Result<F> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    let theta = alpha.powf(beta);
    if theta.is_finite() && theta > F::zero() {
        Ok(theta)
    } else {
        Err(Error::InvalidParameter(format!(
            "alpha^beta = {alpha}^{beta} is not a finite positive number"
        )))
    }
}

impl<F: Real> MlfrParams<F> {
    pub fn new(alpha: F, beta: F, a: F, b: F) -> Result<Self> {
        let theta = modi_theta(alpha, beta)?;
        Self::check_hazard(a, b)?;
        Ok(Self { alpha, beta, a, b, theta })
    }

    /// Parameters given directly through `θ`, reported as `α = θ`, `β = 1`.
    pub fn from_theta(theta: F, a: F, b: F) -> Result<Self> {
        Self::new(theta, F::one(), a, b)
    }

    fn check_hazard(a: F, b: F) -> Result<()> {
        for (name, v) in [("a", a), ("b", b)] {
            if !(v.is_finite() && v >= F::zero()) {
                return Err(Error::InvalidParameter(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if a + b > F::zero() {
            Ok(())
        } else {
            Err(Error::InvalidParameter("a + b must be > 0".into()))
        }
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn beta(&self) -> F {
        self.beta
    }

    pub fn a(&self) -> F {
        self.a
    }

    pub fn b(&self) -> F {
        self.b
    }

    /// The effective Modi parameter `α^β`.
    pub fn theta(&self) -> F {
        self.theta
    }

    /// Baseline cumulative hazard `a x + b x² / 2`.
    #[inline]
    pub fn cumulative_hazard(&self, x: F) -> F {
        x * (self.a + lit::<F>(0.5) * self.b * x)
    }

    /// Baseline CDF `G` and its complement `exp(-T)`, both accurate near zero and one.
    #[inline]
    fn baseline(&self, x: F) -> (F, F) {
        let t = self.cumulative_hazard(x);
        (-(-t).exp_m1(), (-t).exp())
    }

    pub fn cdf(&self, x: F) -> F {
        if x <= F::zero() {
            return F::zero();
        }
        let (g, _) = self.baseline(x);
        (F::one() + self.theta) * g / (self.theta + g)
    }

    pub fn survival(&self, x: F) -> F {
        if x <= F::zero() {
            return F::one();
        }
        let (g, eg) = self.baseline(x);
        self.theta * eg / (self.theta + g)
    }

    pub fn pdf(&self, x: F) -> F {
        if x < F::zero() {
            return F::zero();
        }
        let (g, eg) = self.baseline(x);
        let d = self.theta + g;
        (self.a + self.b * x) * eg * (self.theta / d) * ((F::one() + self.theta) / d)
    }

    /// Log-density, evaluated without forming the density.
    ///
    /// Uses `ln θ - ln(θ + G) = -ln1p(G/θ)` and `ln(1 + θ) - ln(θ + G) = ln1p(e^{-T}/(θ + G))`,
    /// so neither large `θ` nor large `x` overflows. Returns `-∞` where `a + b x = 0`.
    pub fn ln_pdf(&self, x: F) -> F {
        if x < F::zero() {
            return F::neg_infinity();
        }
        let rate = self.a + self.b * x;
        if rate <= F::zero() {
            return F::neg_infinity();
        }
        let t = self.cumulative_hazard(x);
        let eg = (-t).exp();
        let g = -(-t).exp_m1();
        rate.ln() - t - (g / self.theta).ln_1p() + (eg / (self.theta + g)).ln_1p()
    }

    pub fn hazard(&self, x: F) -> F {
        let x = x.max(F::zero());
        let (g, _) = self.baseline(x);
        (self.theta + F::one()) * (self.a + self.b * x) / (self.theta + g)
    }

    /// Baseline cumulative hazard reached at probability level `u`:
    /// `ln((θ + 1 - u) / ((1 + θ)(1 - u))) = ln1p(u θ / ((1 + θ)(1 - u)))`.
    #[inline]
    pub(crate) fn level(theta: F, u: F) -> F {
        (u * theta / ((F::one() + theta) * (F::one() - u))).ln_1p()
    }

    /// Inverse CDF on `[0, 1)`.
    ///
    /// Solves `a x + b x²/2 = L` in the rationalised form `2L / (a + sqrt(a² + 2bL))`,
    /// which reduces to `L / a` when `b = 0` and to `sqrt(2L / b)` when `a = 0`.
    pub fn quantile(&self, u: F) -> Result<F> {
        if !(u >= F::zero() && u < F::one()) {
            return Err(Error::Domain(format!("quantile level must lie in [0, 1), got {u}")));
        }
        Ok(self.quantile_unchecked(u))
    }

    #[inline]
    fn quantile_unchecked(&self, u: F) -> F {
        let level = Self::level(self.theta, u);
        if level == F::zero() {
            return F::zero();
        }
        let two = lit::<F>(2.0);
        if self.b == F::zero() {
            return level / self.a;
        }
        two * level / (self.a + (self.a * self.a + two * self.b * level).sqrt())
    }

    pub fn median(&self) -> F {
        self.quantile_unchecked(lit(0.5))
    }

    /// `n` inverse-transform draws from a ChaCha20 stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<F>> {
        if n == 0 {
            return Err(Error::Domain("sample size must be >= 1".into()));
        }
        let mut stream = UniformStream::new(seed);
        Ok(self.sample_from(&mut stream, n))
    }

    pub fn sample_from(&self, stream: &mut UniformStream, n: usize) -> Vec<F> {
        (0..n).map(|_| self.quantile_unchecked(lit(stream.next_open01()))).collect()
    }
}
