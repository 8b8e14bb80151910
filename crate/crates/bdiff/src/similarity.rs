//! String similarity: unit-cost Levenshtein distance and its normalized
//! ratio.

/// Unit-cost Levenshtein distance over characters.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut cur: Vec<usize> = (0..=b.len()).collect();
    for (i, &ca) in a.iter().enumerate() {
        let mut prev_diag = cur[0];
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let tmp = cur[j + 1];
            cur[j + 1] = (tmp + 1)
                .min(cur[j] + 1)
                .min(prev_diag + usize::from(ca != cb));
            prev_diag = tmp;
        }
    }
    cur[b.len()]
}

/// Normalized similarity: 1 − distance / max(|a|, |b|), and 1 when both
/// strings are empty.
pub fn levenshtein_ratio(a: &str, b: &str) -> f64 {
    let la = a.chars().count();
    let lb = b.chars().count();
    let max = la.max(lb);
    if max == 0 {
        return 1.0;
    }
    1.0 - levenshtein(a, b) as f64 / max as f64
}

/// Whether `levenshtein_ratio(a, b)` exceeds `threshold`, computed without
/// the full distance when a cheap bound already decides the answer.
///
/// Returns the ratio when it exceeds the threshold, `None` otherwise.
pub fn ratio_above(a: &str, b: &str, threshold: f64) -> Option<f64> {
    let la = a.chars().count();
    let lb = b.chars().count();
    let max = la.max(lb);
    if max == 0 {
        // both empty: ratio is exactly 1
        return if 1.0 > threshold { Some(1.0) } else { None };
    }
    // distance is at least the length difference
    let min_dist = la.abs_diff(lb);
    if 1.0 - min_dist as f64 / max as f64 <= threshold {
        return None;
    }
    // distance strictly below this leaves the ratio above the threshold
    let cutoff = ((1.0 - threshold) * max as f64).ceil() as usize;
    let dist = levenshtein_bounded(a, b, cutoff)?;
    let ratio = 1.0 - dist as f64 / max as f64;
    (ratio > threshold).then_some(ratio)
}

/// Levenshtein distance if it is strictly below `cutoff`, else `None`.
/// Runs a diagonal band of width O(cutoff).
fn levenshtein_bounded(a: &str, b: &str, cutoff: usize) -> Option<usize> {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a.len().abs_diff(b.len()) >= cutoff {
        return None;
    }
    if a.is_empty() || b.is_empty() {
        let d = a.len().max(b.len());
        return (d < cutoff).then_some(d);
    }
    let big = usize::MAX / 2;
    let width = cutoff;
    let mut cur: Vec<usize> = vec![big; b.len() + 1];
    for (j, slot) in cur.iter_mut().enumerate().take(width.min(b.len()) + 1) {
        *slot = j;
    }
    for i in 1..=a.len() {
        let lo = i.saturating_sub(width).max(1);
        let hi = (i + width).min(b.len());
        if lo > hi {
            return None;
        }
        let mut prev_diag = cur[lo - 1];
        cur[lo - 1] = if lo == 1 { i } else { big };
        let mut row_min = cur[lo - 1];
        for j in lo..=hi {
            let tmp = cur[j];
            cur[j] = (tmp + 1)
                .min(cur[j - 1] + 1)
                .min(prev_diag + usize::from(a[i - 1] != b[j - 1]));
            prev_diag = tmp;
            row_min = row_min.min(cur[j]);
        }
        if hi < b.len() {
            cur[hi + 1] = big;
        }
        if row_min >= cutoff {
            return None;
        }
    }
    (cur[b.len()] < cutoff).then_some(cur[b.len()])
}
