//! Summary statistics with selectable sample-quantile conventions.

use serde::Serialize;

use crate::error::{Error, Result};

/// Continuous sample-quantile rules of Hyndman and Fan (1996), types 4 to 9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QuantileRule {
    Type4,
    Type5,
    Type6,
    Type7,
    Type8,
    Type9,
}

impl QuantileRule {
    pub const ALL: [QuantileRule; 6] = [
        QuantileRule::Type4,
        QuantileRule::Type5,
        QuantileRule::Type6,
        QuantileRule::Type7,
        QuantileRule::Type8,
        QuantileRule::Type9,
    ];

    /// Plotting-position constants `(α, β)` with `p_k = (k - α) / (n + 1 - α - β)`.
    fn constants(self) -> (f64, f64) {
        match self {
            QuantileRule::Type4 => (0.0, 1.0),
            QuantileRule::Type5 => (0.5, 0.5),
            QuantileRule::Type6 => (0.0, 0.0),
            QuantileRule::Type7 => (1.0, 1.0),
            QuantileRule::Type8 => (1.0 / 3.0, 1.0 / 3.0),
            QuantileRule::Type9 => (3.0 / 8.0, 3.0 / 8.0),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            QuantileRule::Type4 => "hyndman-fan-4",
            QuantileRule::Type5 => "hyndman-fan-5",
            QuantileRule::Type6 => "hyndman-fan-6",
            QuantileRule::Type7 => "hyndman-fan-7",
            QuantileRule::Type8 => "hyndman-fan-8",
            QuantileRule::Type9 => "hyndman-fan-9",
        }
    }
}

/// Rule used for quartiles: it reproduces the published bladder quartiles 3.348 and 11.838.
pub const QUARTILE_RULE: QuantileRule = QuantileRule::Type7;

/// Kurtosis is reported as `m₄ / m₂²` (not excess).
pub const KURTOSIS_CONVENTION: &str = "non-excess m4/m2^2";

/// Quantile of already sorted data.
pub fn sample_quantile(sorted: &[f64], p: f64, rule: QuantileRule) -> f64 {
    let n = sorted.len();
    let (a, b) = rule.constants();
    let h = ((n as f64 + 1.0 - a - b) * p + a).clamp(1.0, n as f64);
    let lo = h.floor() as usize;
    let frac = h - lo as f64;
    if lo >= n {
        return sorted[n - 1];
    }
    sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1])
}

/// The first rule whose quartiles match `(q1, q3)` within `tol`.
pub fn calibrate_quartile_rule(values: &[f64], q1: f64, q3: f64, tol: f64) -> Option<QuantileRule> {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    QuantileRule::ALL.into_iter().find(|&r| {
        (sample_quantile(&sorted, 0.25, r) - q1).abs() <= tol && (sample_quantile(&sorted, 0.75, r) - q3).abs() <= tol
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescriptiveStats {
    pub n: usize,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub mean: f64,
    pub q3: f64,
    pub max: f64,
    pub std_dev: f64,
    pub skewness: f64,
    pub kurtosis: f64,
    pub quartile_rule: String,
    pub kurtosis_convention: String,
}

pub fn descriptive_stats(values: &[f64]) -> Result<DescriptiveStats> {
    descriptive_stats_with(values, QUARTILE_RULE)
}

pub fn descriptive_stats_with(values: &[f64], rule: QuantileRule) -> Result<DescriptiveStats> {
    let n = values.len();
    if n < 4 {
        return Err(Error::DegenerateData(format!("{n} observations, at least 4 required")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let central = |r: i32| values.iter().map(|x| (x - mean).powi(r)).sum::<f64>() / nf;
    let (m2, m3, m4) = (central(2), central(3), central(4));
    if m2 <= 0.0 {
        return Err(Error::DegenerateData("zero variance".into()));
    }
    Ok(DescriptiveStats {
        n,
        min: sorted[0],
        q1: sample_quantile(&sorted, 0.25, rule),
        median: sample_quantile(&sorted, 0.5, rule),
        mean,
        q3: sample_quantile(&sorted, 0.75, rule),
        max: sorted[n - 1],
        std_dev: (m2 * nf / (nf - 1.0)).sqrt(),
        skewness: m3 / m2.powf(1.5),
        kurtosis: m4 / (m2 * m2),
        quartile_rule: rule.id().to_string(),
        kurtosis_convention: KURTOSIS_CONVENTION.to_string(),
    })
}
