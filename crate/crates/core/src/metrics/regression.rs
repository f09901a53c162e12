use super::{check_lengths, MetricsError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionStats {
    pub r2: f64,
    pub target_mean: f64,
    /// Population standard deviation (divisor N).
    pub target_std: f64,
}

/// Mean and population standard deviation.
pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn check_finite(values: &[f64]) -> Result<(), MetricsError> {
    match values.iter().find(|v| !v.is_finite()) {
        Some(&bad) => Err(MetricsError::NonFinite(bad)),
        None => Ok(()),
    }
}

/// R² together with the truth's mean and standard deviation.
///
/// A constant truth vector makes R² undefined; the error still carries the
/// mean and standard deviation.
pub fn regression_stats(truth: &[f64], predicted: &[f64]) -> Result<RegressionStats, MetricsError> {
    check_lengths(truth.len(), predicted.len())?;
    check_finite(truth)?;
    check_finite(predicted)?;
    let (mean, std) = mean_std(truth);
    let ss_tot: f64 = truth.iter().map(|t| (t - mean) * (t - mean)).sum();
    if ss_tot == 0.0 {
        return Err(MetricsError::ZeroVariance { mean, std });
    }
    let ss_res: f64 = truth.iter().zip(predicted).map(|(t, p)| (t - p) * (t - p)).sum();
    Ok(RegressionStats { r2: 1.0 - ss_res / ss_tot, target_mean: mean, target_std: std })
}

pub fn r_squared(truth: &[f64], predicted: &[f64]) -> Result<f64, MetricsError> {
    regression_stats(truth, predicted).map(|s| s.r2)
}

pub fn mean_squared_error(truth: &[f64], predicted: &[f64]) -> Result<f64, MetricsError> {
    check_lengths(truth.len(), predicted.len())?;
    check_finite(predicted)?;
    let sum: f64 = truth.iter().zip(predicted).map(|(t, p)| (t - p) * (t - p)).sum();
    Ok(sum / truth.len() as f64)
}

pub fn mean_absolute_error(truth: &[f64], predicted: &[f64]) -> Result<f64, MetricsError> {
    check_lengths(truth.len(), predicted.len())?;
    check_finite(predicted)?;
    let sum: f64 = truth.iter().zip(predicted).map(|(t, p)| (t - p).abs()).sum();
    Ok(sum / truth.len() as f64)
}
