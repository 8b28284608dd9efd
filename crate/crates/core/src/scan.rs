//! Detection thresholds along one-parameter state families.
//!
//! A coarse grid finds the first parameter where a criterion's margin exceeds
//! [`VERDICT_EPS`]; bisection on the margin sign then narrows the bracket.
//! Norm-based margins along white-noise rays are convex in the mixing
//! parameter, so they cross zero upwards at most once and the first crossing
//! is the threshold.

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::StateFamily;
use crate::criteria::{CriterionId, CriterionReport, VERDICT_EPS};
use crate::error::{Error, Result};
use crate::matcore::DensityMatrix;

pub const DEFAULT_GRID: usize = 201;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThresholdStatus {
    Found,
    /// Margin never exceeds the verdict epsilon on the range.
    NoCrossing,
    /// Margin already exceeds it at the start of the range.
    AlwaysViolated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub family: String,
    pub criterion: String,
    /// Midpoint of the final bracket when found.
    pub x_star: Option<f64>,
    /// Half-width: `margin(x_star - bracket) ≤ ε < margin(x_star + bracket)`.
    pub bracket: f64,
    pub evaluations: usize,
    pub status: ThresholdStatus,
}

fn margin_at<F>(family: &StateFamily, eval: &F, x: f64) -> Result<f64>
where
    F: Fn(&DensityMatrix) -> Result<CriterionReport>,
{
    Ok(eval(&family.at(x)?)?.margin)
}

/// Threshold of a black-box criterion evaluator along `family`.
pub fn threshold<F>(
    family: &StateFamily,
    criterion: &str,
    eval: F,
    grid: usize,
    tol: f64,
) -> Result<ThresholdResult>
where
    F: Fn(&DensityMatrix) -> Result<CriterionReport> + Sync,
{
    if grid < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 2 points, got {grid}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let (lo, hi) = family.range;
    let xs: Vec<f64> = (0..grid)
        .map(|k| {
            if k + 1 == grid {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (grid - 1) as f64
            }
        })
        .collect();
    let margins: Vec<f64> = xs
        .par_iter()
        .map(|&x| margin_at(family, &eval, x))
        .collect::<Result<_>>()?;

    let mut result = ThresholdResult {
        family: family.name.to_string(),
        criterion: criterion.to_string(),
        x_star: None,
        bracket: 0.0,
        evaluations: grid,
        status: ThresholdStatus::NoCrossing,
    };
    let Some(first) = margins.iter().position(|&m| m > VERDICT_EPS) else {
        return Ok(result);
    };
    if first == 0 {
        result.status = ThresholdStatus::AlwaysViolated;
        result.x_star = Some(lo);
        return Ok(result);
    }

    let (mut a, mut b) = (xs[first - 1], xs[first]);
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if margin_at(family, &eval, mid)? > VERDICT_EPS {
            b = mid;
        } else {
            a = mid;
        }
        result.evaluations += 1;
    }
    result.status = ThresholdStatus::Found;
    result.x_star = Some(0.5 * (a + b));
    result.bracket = 0.5 * (b - a);
    Ok(result)
}

/// [`threshold`] for a named criterion.
pub fn threshold_for(
    family: &StateFamily,
    id: CriterionId,
    grid: usize,
    tol: f64,
) -> Result<ThresholdResult> {
    if !id.applies_to(family.dims) {
        return Err(Error::InvalidArgument(format!(
            "criterion '{id}' does not apply to family '{}' with dims {:?}",
            family.name, family.dims
        )));
    }
    threshold(family, id.name(), |rho| id.evaluate(rho), grid, tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub family: String,
    pub criterion: String,
    pub status: ThresholdStatus,
    pub threshold: Option<f64>,
    pub bracket: f64,
}

impl From<ThresholdResult> for TableRow {
    fn from(r: ThresholdResult) -> Self {
        Self {
            family: r.family,
            criterion: r.criterion,
            status: r.status,
            threshold: r.x_star,
            bracket: r.bracket,
        }
    }
}

/// Thresholds for every applicable (family, criterion) pair, families outer,
/// criteria inner, in the order given.
pub fn compare_table(
    families: &[StateFamily],
    criteria: &[CriterionId],
    grid: usize,
    tol: f64,
) -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for family in families {
        for &id in criteria.iter().filter(|id| id.applies_to(family.dims)) {
            rows.push(threshold_for(family, id, grid, tol)?.into());
        }
    }
    Ok(rows)
}

pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
