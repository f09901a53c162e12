use std::cmp::Ordering;

use super::{check_lengths, MetricsError};

/// Area under the ROC curve via the Mann-Whitney rank-sum statistic.
///
/// Equals the fraction of (positive, negative) pairs in which the positive
/// record scores higher, with tied pairs counted as one half. Runs in
/// O(n log n): scores are sorted once and tied runs receive their mean rank.
pub fn auc<T: PartialEq>(scores: &[f64], truth: &[T], positive: &T) -> Result<f64, MetricsError> {
    check_lengths(truth.len(), scores.len())?;
    if let Some(&bad) = scores.iter().find(|s| !s.is_finite()) {
        return Err(MetricsError::NonFinite(bad));
    }

    let mut ranked: Vec<(f64, bool)> = scores.iter().zip(truth).map(|(&s, t)| (s, t == positive)).collect();
    let n_pos = ranked.iter().filter(|(_, p)| *p).count();
    let n_neg = ranked.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(MetricsError::SingleClass);
    }

    ranked.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));

    // Sum of (doubled) 1-based ranks over positives; doubling keeps tied
    // mean ranks integral so the sum is exact.
    let mut doubled_rank_sum: u128 = 0;
    let mut start = 0;
    while start < ranked.len() {
        let mut end = start + 1;
        while end < ranked.len() && ranked[end].0 == ranked[start].0 {
            end += 1;
        }
        // ranks start+1 ..= end; mean = (start + 1 + end) / 2
        let doubled_mean = (start + 1 + end) as u128;
        let positives = ranked[start..end].iter().filter(|(_, p)| *p).count() as u128;
        doubled_rank_sum += doubled_mean * positives;
        start = end;
    }

    let (p, q) = (n_pos as u128, n_neg as u128);
    // 2U = 2R - p(p+1)
    let doubled_u = doubled_rank_sum - p * (p + 1);
    Ok(doubled_u as f64 / (2 * p * q) as f64)
}
