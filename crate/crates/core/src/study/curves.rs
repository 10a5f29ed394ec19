//! Plot data: ECDF, scaled TTT transform, PP points and fitted-function grids.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::ModelParams;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TttPoint {
    pub fraction: f64,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EcdfPoint {
    pub x: f64,
    pub ecdf: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PpPoint {
    pub empirical: f64,
    pub theoretical: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurveRow {
    pub x: f64,
    pub pdf: f64,
    pub cdf: f64,
    pub survival: f64,
    pub hazard: f64,
}

fn sorted(values: &[f64]) -> Vec<f64> {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Scaled total time on test `(Σ_{j≤i} x_(j) + (n - i) x_(i)) / Σ x_(j)` at `i/n`.
pub fn ttt_curve(values: &[f64]) -> Result<Vec<TttPoint>> {
    let n = values.len();
    if n < 2 {
        return Err(Error::DegenerateData(format!("TTT curve needs at least 2 observations, got {n}")));
    }
    let x = sorted(values);
    let total: f64 = x.iter().sum();
    let mut partial = 0.0;
    Ok(x.iter()
        .enumerate()
        .map(|(i, &xi)| {
            partial += xi;
            let i1 = i + 1;
            let value = if i1 == n { 1.0 } else { (partial + (n - i1) as f64 * xi) / total };
            TttPoint { fraction: i1 as f64 / n as f64, value }
        })
        .collect())
}

/// Empirical CDF `i/n` at the sorted observations.
pub fn ecdf(values: &[f64]) -> Vec<EcdfPoint> {
    let n = values.len() as f64;
    sorted(values)
        .into_iter()
        .enumerate()
        .map(|(i, x)| EcdfPoint { x, ecdf: (i as f64 + 1.0) / n })
        .collect()
}

/// Pairs `((i - 0.5)/n, F(x_(i)))`.
pub fn pp_points(values: &[f64], params: &ModelParams<f64>) -> Vec<PpPoint> {
    let n = values.len() as f64;
    sorted(values)
        .into_iter()
        .enumerate()
        .map(|(i, x)| PpPoint { empirical: (i as f64 + 0.5) / n, theoretical: params.cdf(x) })
        .collect()
}

/// Evenly spaced grid on `[lo, hi]` with density, CDF, survival and hazard.
pub fn curve_grid(params: &ModelParams<f64>, lo: f64, hi: f64, n_points: usize) -> Result<Vec<CurveRow>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::Domain(format!("grid range must satisfy lo < hi, got [{lo}, {hi}]")));
    }
    if n_points < 2 {
        return Err(Error::Domain(format!("grid needs at least 2 points, got {n_points}")));
    }
    let step = (hi - lo) / (n_points - 1) as f64;
    Ok((0..n_points)
        .map(|i| {
            let x = if i + 1 == n_points { hi } else { lo + i as f64 * step };
            CurveRow { x, pdf: params.pdf(x), cdf: params.cdf(x), survival: params.survival(x), hazard: params.hazard(x) }
        })
        .collect())
}
