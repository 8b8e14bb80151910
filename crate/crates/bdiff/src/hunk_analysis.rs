//! Per-hunk analysis: exact line splits and merges, then candidate line
//! updates with crossing removal.

use crate::base_diff::Hunk;
use crate::config::Config;
use crate::line::SourceLine;
use crate::script::{ActionKind, LineRange};
use crate::similarity::levenshtein_ratio;

/// An exact line split or merge committed during hunk analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMerge {
    pub kind: ActionKind,
    pub src: LineRange,
    pub dst: LineRange,
}

/// A proposed line-update correspondence.
#[derive(Debug, Clone, PartialEq)]
pub struct LuCandidate {
    pub src_line: u32,
    pub dst_line: u32,
    /// Combined content/context similarity in [0, 1].
    pub score: f64,
}

/// Everything hunk analysis yields for one hunk.
#[derive(Debug, Default)]
pub struct HunkAnalysis {
    pub splits: Vec<SplitMerge>,
    pub merges: Vec<SplitMerge>,
    pub lu_candidates: Vec<LuCandidate>,
    /// Deleted lines not consumed by a split or merge.
    pub remaining_deleted: Vec<u32>,
    /// Added lines not consumed by a split or merge.
    pub remaining_added: Vec<u32>,
}

/// Runs the full per-hunk stage: split/merge identification (committed
/// immediately, lines removed), then line-update candidates over what is
/// left, with crossing mappings removed.
pub fn analyze_hunk(
    hunk: &Hunk,
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
) -> HunkAnalysis {
    let del: Vec<u32> = hunk.deleted.map(|r| r.lines().collect()).unwrap_or_default();
    let add: Vec<u32> = hunk.added.map(|r| r.lines().collect()).unwrap_or_default();
    let mut del_consumed = vec![false; del.len()];
    let mut add_consumed = vec![false; add.len()];

    let mut analysis = HunkAnalysis::default();
    if cfg.enabled(ActionKind::Ls) {
        analysis.splits = detect_splits(&del, &add, left, right, cfg, &mut del_consumed, &mut add_consumed);
    }
    if cfg.enabled(ActionKind::Lm) {
        analysis.merges = detect_merges(&del, &add, left, right, cfg, &mut del_consumed, &mut add_consumed);
    }
    analysis.remaining_deleted = del
        .iter()
        .zip(&del_consumed)
        .filter(|(_, &c)| !c)
        .map(|(&l, _)| l)
        .collect();
    analysis.remaining_added = add
        .iter()
        .zip(&add_consumed)
        .filter(|(_, &c)| !c)
        .map(|(&r, _)| r)
        .collect();
    if cfg.enabled(ActionKind::Lu) {
        let raw = candidate_lus(
            &analysis.remaining_deleted,
            &analysis.remaining_added,
            left,
            right,
            cfg,
        );
        analysis.lu_candidates = remove_max_intersections(raw);
    }
    analysis
}

/// Identifies exact splits: one deleted line equal to the concatenation of
/// consecutive added lines. Matched lines are marked consumed.
pub fn detect_splits(
    del: &[u32],
    add: &[u32],
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
    del_consumed: &mut [bool],
    add_consumed: &mut [bool],
) -> Vec<SplitMerge> {
    let mut found = Vec::new();
    if del.is_empty() || add.len() < 2 {
        return found;
    }
    for (di, &dline) in del.iter().enumerate() {
        if del_consumed[di] {
            continue;
        }
        let src_raw = &left[dline as usize - 1].raw;
        if src_raw.is_empty() {
            continue;
        }
        for start in 0..add.len() {
            if add_consumed[start] {
                continue;
            }
            if let Some(end) = walk_concat(src_raw, |k| {
                let idx = start + k;
                if idx >= add.len() || add_consumed[idx] {
                    None
                } else {
                    Some(right[add[idx] as usize - 1].raw.as_str())
                }
            }, cfg.max_split_attempts) {
                del_consumed[di] = true;
                for slot in add_consumed.iter_mut().take(start + end + 1).skip(start) {
                    *slot = true;
                }
                found.push(SplitMerge {
                    kind: ActionKind::Ls,
                    src: LineRange::single(dline),
                    dst: LineRange::new(add[start], add[start + end]),
                });
                break;
            }
        }
    }
    found
}

/// Identifies exact merges: one added line equal to the concatenation of
/// consecutive deleted lines. Mirror of split detection.
pub fn detect_merges(
    del: &[u32],
    add: &[u32],
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
    del_consumed: &mut [bool],
    add_consumed: &mut [bool],
) -> Vec<SplitMerge> {
    let mut found = Vec::new();
    if add.is_empty() || del.len() < 2 {
        return found;
    }
    for (ai, &aline) in add.iter().enumerate() {
        if add_consumed[ai] {
            continue;
        }
        let dst_raw = &right[aline as usize - 1].raw;
        if dst_raw.is_empty() {
            continue;
        }
        for start in 0..del.len() {
            if del_consumed[start] {
                continue;
            }
            if let Some(end) = walk_concat(dst_raw, |k| {
                let idx = start + k;
                if idx >= del.len() || del_consumed[idx] {
                    None
                } else {
                    Some(left[del[idx] as usize - 1].raw.as_str())
                }
            }, cfg.max_split_attempts) {
                add_consumed[ai] = true;
                for slot in del_consumed.iter_mut().take(start + end + 1).skip(start) {
                    *slot = true;
                }
                found.push(SplitMerge {
                    kind: ActionKind::Lm,
                    src: LineRange::new(del[start], del[start + end]),
                    dst: LineRange::single(aline),
                });
                break;
            }
        }
    }
    found
}

/// Walks pieces `0, 1, 2, ...` checking whether `whole` equals their exact
/// concatenation. Blank pieces are skipped without using up an attempt but
/// stay inside the span. Returns the offset of the final piece on success.
///
/// At least two pieces must take part; a piece identical to the whole line
/// is not a split. At most `cap` non-blank pieces may be consumed.
fn walk_concat<'a>(whole: &str, piece: impl Fn(usize) -> Option<&'a str>, cap: u32) -> Option<usize> {
    let mut remainder = whole;
    let mut used = 0u32;
    let mut k = 0usize;
    loop {
        let p = piece(k)?;
        if remainder == p {
            if k == 0 {
                return None;
            }
            if !p.is_empty() {
                used += 1;
                if used > cap {
                    return None;
                }
            }
            return Some(k);
        }
        if p.is_empty() {
            k += 1;
            continue;
        }
        let rest = remainder.strip_prefix(p)?;
        used += 1;
        if used > cap {
            return None;
        }
        remainder = rest;
        k += 1;
    }
}

/// Combined line similarity: weighted content similarity plus the matched
/// share of a context window around both lines.
///
/// Context positions pair by offset; a position counts only when both
/// versions have a line there, so windows shrink at file edges instead of
/// penalizing them. Context lines match by exact equality after trimming
/// trailing whitespace.
pub fn w_besti_line(
    l: u32,
    r: u32,
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
) -> f64 {
    let content = levenshtein_ratio(
        &left[l as usize - 1].raw,
        &right[r as usize - 1].raw,
    );
    let mut total = 0u32;
    let mut matched = 0u32;
    let mut probe = |dl: i64, dr: i64| {
        if dl >= 1 && dl <= left.len() as i64 && dr >= 1 && dr <= right.len() as i64 {
            total += 1;
            let a = left[dl as usize - 1].raw.trim_end();
            let b = right[dr as usize - 1].raw.trim_end();
            matched += u32::from(a == b);
        }
    };
    for off in 1..=cfg.ctx_len as i64 {
        probe(l as i64 - off, r as i64 - off);
        probe(l as i64 + off, r as i64 + off);
    }
    let context = if total == 0 {
        1.0
    } else {
        matched as f64 / total as f64
    };
    cfg.line_weight * content + (1.0 - cfg.line_weight) * context
}

/// All (deleted, added) pairs within one hunk whose combined similarity
/// reaches the threshold.
pub fn candidate_lus(
    del: &[u32],
    add: &[u32],
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
) -> Vec<LuCandidate> {
    let mut out = Vec::new();
    if del.is_empty() || add.is_empty() {
        return out;
    }
    for &r in add {
        for &l in del {
            let score = w_besti_line(l, r, left, right, cfg);
            if score >= cfg.sim_threshold {
                out.push(LuCandidate {
                    src_line: l,
                    dst_line: r,
                    score,
                });
            }
        }
    }
    out
}

fn crosses(a: &LuCandidate, b: &LuCandidate) -> bool {
    (a.src_line as i64 - b.src_line as i64) * (a.dst_line as i64 - b.dst_line as i64) < 0
}

/// Repeatedly discards the candidate with the highest crossing count until
/// no two candidates cross. Ties on the count discard the lowest-scoring
/// candidate, so better mappings survive; remaining ties discard the
/// largest (src, dst) pair for determinism. Conflicting (line-sharing)
/// candidates are kept: later assignment resolves them.
pub fn remove_max_intersections(candidates: Vec<LuCandidate>) -> Vec<LuCandidate> {
    let mut alive: Vec<LuCandidate> = candidates;
    let mut counts: Vec<usize> = vec![0; alive.len()];
    for i in 0..alive.len() {
        for j in i + 1..alive.len() {
            if crosses(&alive[i], &alive[j]) {
                counts[i] += 1;
                counts[j] += 1;
            }
        }
    }
    loop {
        let mut worst: Option<usize> = None;
        for i in 0..alive.len() {
            if counts[i] == 0 {
                continue;
            }
            worst = Some(match worst {
                None => i,
                Some(w) => {
                    let a = &alive[i];
                    let b = &alive[w];
                    let key_a = (counts[i], -a.score, a.src_line, a.dst_line);
                    let key_b = (counts[w], -b.score, b.src_line, b.dst_line);
                    if key_a.partial_cmp(&key_b) == Some(std::cmp::Ordering::Greater) {
                        i
                    } else {
                        w
                    }
                }
            });
        }
        let Some(idx) = worst else { break };
        let removed = alive.remove(idx);
        counts.remove(idx);
        for (i, c) in alive.iter().enumerate() {
            if crosses(c, &removed) {
                counts[i] -= 1;
            }
        }
    }
    alive
}
