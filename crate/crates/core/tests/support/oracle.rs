//! Slow, obviously-correct reference computations.

#![allow(dead_code)]

/// Fraction of (positive, negative) pairs ranked correctly, ties counting half.
pub fn auc_pairs(scores: &[f64], truth: &[&str], positive: &str) -> f64 {
    let mut wins = 0.0;
    let mut pairs = 0.0;
    for (i, &si) in scores.iter().enumerate() {
        if truth[i] != positive {
            continue;
        }
        for (j, &sj) in scores.iter().enumerate() {
            if truth[j] == positive {
                continue;
            }
            pairs += 1.0;
            if si > sj {
                wins += 1.0;
            } else if si == sj {
                wins += 0.5;
            }
        }
    }
    wins / pairs
}

/// (tp, fp, tn, fn) by walking every index.
pub fn confusion(truth: &[&str], pred: &[&str], positive: &str) -> (u64, u64, u64, u64) {
    let mut c = (0, 0, 0, 0);
    for (t, p) in truth.iter().zip(pred) {
        match (*t == positive, *p == positive) {
            (true, true) => c.0 += 1,
            (false, true) => c.1 += 1,
            (false, false) => c.2 += 1,
            (true, false) => c.3 += 1,
        }
    }
    c
}

/// Precision, recall and F1 from counts, zero whenever a denominator is zero.
pub fn prf(truth: &[&str], pred: &[&str], positive: &str) -> (f64, f64, f64) {
    let (tp, fp, _, fn_) = confusion(truth, pred, positive);
    let p = if tp + fp == 0 { 0.0 } else { tp as f64 / (tp + fp) as f64 };
    let r = if tp + fn_ == 0 { 0.0 } else { tp as f64 / (tp + fn_) as f64 };
    let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
    (p, r, f)
}

/// Baseline back-solved from a reported (raw, percent over baseline) pair.
pub fn back_solved_baseline(raw: f64, pct: f64) -> f64 {
    raw / (1.0 + pct / 100.0)
}
