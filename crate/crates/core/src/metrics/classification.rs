use super::{check_lengths, MetricsError};

/// Fraction of records whose prediction equals the truth.
pub fn standard_accuracy<T: PartialEq>(truth: &[T], predicted: &[T]) -> Result<f64, MetricsError> {
    check_lengths(truth.len(), predicted.len())?;
    let correct = truth.iter().zip(predicted).filter(|(t, p)| t == p).count();
    Ok(correct as f64 / truth.len() as f64)
}

/// Binary confusion matrix relative to one positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn from_labels<T: PartialEq>(truth: &[T], predicted: &[T], positive: &T) -> Result<Self, MetricsError> {
        check_lengths(truth.len(), predicted.len())?;
        let mut counts = ConfusionCounts::default();
        for (t, p) in truth.iter().zip(predicted) {
            match (t == positive, p == positive) {
                (true, true) => counts.tp += 1,
                (false, true) => counts.fp += 1,
                (false, false) => counts.tn += 1,
                (true, false) => counts.fn_ += 1,
            }
        }
        Ok(counts)
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }

    /// tp / (tp + fp), or 0 when nothing was predicted positive.
    pub fn precision(&self) -> f64 {
        ratio(self.tp, self.tp + self.fp)
    }

    /// tp / (tp + fn), or 0 when there are no positives.
    pub fn recall(&self) -> f64 {
        ratio(self.tp, self.tp + self.fn_)
    }

    /// Harmonic mean of precision and recall, or 0 when both are 0.
    pub fn f1(&self) -> f64 {
        let (p, r) = (self.precision(), self.recall());
        if p + r == 0.0 {
            0.0
        } else {
            2.0 * p * r / (p + r)
        }
    }
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionRecallF1 {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

pub fn precision_recall_f1<T: PartialEq>(
    truth: &[T],
    predicted: &[T],
    positive: &T,
) -> Result<PrecisionRecallF1, MetricsError> {
    let c = ConfusionCounts::from_labels(truth, predicted, positive)?;
    Ok(PrecisionRecallF1 { precision: c.precision(), recall: c.recall(), f1: c.f1() })
}
