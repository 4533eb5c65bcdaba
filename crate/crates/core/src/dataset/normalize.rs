use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-dataset min-max scaling parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub dataset_name: String,
    pub min_seconds: f64,
    pub max_seconds: f64,
}

impl NormalizationParams {
    /// `(x - min) / (max - min)`, unclamped.
    pub fn normalize(&self, seconds: f64) -> f64 {
        (seconds - self.min_seconds) / (self.max_seconds - self.min_seconds)
    }

    pub fn denormalize(&self, target: f64) -> f64 {
        self.min_seconds + target * (self.max_seconds - self.min_seconds)
    }
}

/// Scale execution times into `[0, 1]`.
///
/// Without `params` the range is fitted to `seconds` and the smallest and
/// largest values map to exactly 0 and 1. With `params` (inference on new
/// data) the stored range is applied and results are clamped to `[0, 1]`.
///
/// ```
/// use javagraph::dataset::normalize_targets;
///
/// let (t, p) = normalize_targets("hadoop", &[0.2, 1059.67, 529.935], None).unwrap();
/// assert_eq!((t[0], t[1]), (0.0, 1.0));
/// assert!((t[2] - 0.5).abs() < 1e-12);
/// assert_eq!(p.max_seconds, 1059.67);
/// ```
pub fn normalize_targets(
    dataset_name: &str,
    seconds: &[f64],
    params: Option<&NormalizationParams>,
) -> Result<(Vec<f64>, NormalizationParams)> {
    if let Some(p) = params {
        if p.min_seconds.partial_cmp(&p.max_seconds) != Some(Ordering::Less) {
            return Err(Error::DegenerateRange(p.min_seconds));
        }
        let t = seconds.iter().map(|&x| p.normalize(x).clamp(0.0, 1.0)).collect();
        return Ok((t, p.clone()));
    }
    let min = seconds.iter().copied().fold(f64::INFINITY, f64::min);
    let max = seconds.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if seconds.is_empty() || min.partial_cmp(&max) != Some(Ordering::Less) {
        return Err(Error::DegenerateRange(if seconds.is_empty() { f64::NAN } else { min }));
    }
    let p = NormalizationParams {
        dataset_name: dataset_name.to_string(),
        min_seconds: min,
        max_seconds: max,
    };
    let t = seconds
        .iter()
        .map(|&x| {
            // Exact endpoints regardless of rounding in the division.
            if x == min {
                0.0
            } else if x == max {
                1.0
            } else {
                p.normalize(x)
            }
        })
        .collect();
    Ok((t, p))
}
