//! Modi linear failure rate (MLFR) lifetime distribution.
//!
//! Closed-form evaluation and sampling ([`mlfr`], [`family`]), reliability properties by
//! adaptive quadrature ([`properties`]), maximum-likelihood fitting with Wald intervals
//! ([`estimation`]), goodness of fit and model selection ([`gof`]) and the reproduction
//! harness for simulation studies and survival datasets ([`study`]).
//!
//! The distribution types are generic over [`Real`] (`f32` or `f64`); the statistical
//! machinery works in `f64`. Aliases for the common instantiations are exported at the root.

pub mod error;
pub mod estimation;
pub mod family;
pub mod gof;
pub mod mlfr;
pub mod optim;
pub mod properties;
pub mod quadrature;
pub mod rng;
pub mod scalar;
pub mod special;
pub mod study;

pub use error::{Error, Result};
pub use estimation::{fit_mle, FitConfig, FitResult, Sample};
pub use family::{CompetitorParams, ModelId, ModelParams};
pub use gof::{GofReport, InfoCriteria};
pub use mlfr::{MlfrParams, Probability};
pub use scalar::Real;

/// MLFR parameters in double precision.
pub type Mlfr = MlfrParams<f64>;
/// MLFR parameters in single precision.
pub type Mlfr32 = MlfrParams<f32>;
/// Competitor parameters in double precision.
pub type Competitor = CompetitorParams<f64>;
/// Any compared model in double precision.
pub type Model = ModelParams<f64>;
