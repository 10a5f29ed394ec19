//! Reproduction harness: embedded datasets, descriptive statistics, plot data,
//! the Monte Carlo study and the full model comparison.

pub mod curves;
pub mod datasets;
pub mod descriptive;
pub mod simulation;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::estimation::{fit_mle, FitConfig, Sample};
use crate::family::ModelId;
use crate::gof::{rank_models, ModelReport, RankedModel};

pub use curves::{curve_grid, ecdf, pp_points, ttt_curve, CurveRow, EcdfPoint, PpPoint, TttPoint};
pub use datasets::Dataset;
pub use descriptive::{descriptive_stats, DescriptiveStats, QuantileRule};
pub use simulation::{run_simulation, SimCell, SimScenario};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModelFailure {
    pub model: ModelId,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    /// Successful fits in the order the models were requested.
    pub reports: Vec<ModelReport>,
    pub failures: Vec<ModelFailure>,
    pub ranking: Vec<RankedModel>,
}

impl Comparison {
    pub fn report(&self, model: ModelId) -> Option<&ModelReport> {
        self.reports.iter().find(|r| r.fit.model == model)
    }
}

/// Fits each model, computes goodness of fit and information criteria, and ranks them.
pub fn compare_models(data: &Sample, models: &[ModelId], cfg: &FitConfig) -> Comparison {
    let outcomes: Vec<(ModelId, Result<ModelReport>)> = models
        .par_iter()
        .map(|&m| (m, fit_mle(m, data, cfg).and_then(|fit| ModelReport::new(fit, data))))
        .collect();
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (model, out) in outcomes {
        match out {
            Ok(r) => reports.push(r),
            Err(e) => failures.push(ModelFailure { model, error: e.to_string() }),
        }
    }
    let ranking = rank_models(&reports);
    Comparison { reports, failures, ranking }
}
