//! Block move/copy candidate generation: positional per-line matching over
//! contiguous runs, uniform indentation deltas, intra-block update
//! recording, and effective-length filtering.

use crate::config::Config;
use crate::line::SourceLine;
use crate::script::{ActionKind, LineRange};
use crate::similarity::ratio_above;

/// How one source line relates to one destination line inside a block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineMatch {
    /// Bodies are equal. `delta` is the indentation shift; a blank pair
    /// carries no shift of its own and is compatible with any block delta.
    Exact { delta: Option<i64> },
    /// Bodies differ but are similar enough to count as an in-block update.
    Updated { delta: i64, sim: f64 },
    None,
}

/// A proposed block move or copy.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockCandidate {
    pub kind: ActionKind,
    pub src: LineRange,
    pub dst: LineRange,
    /// Uniform indentation shift of every non-blank pair.
    pub indent_delta: i64,
    /// Positional (src, dst) pairs that matched by similarity, not identity.
    pub inner_updates: Vec<(u32, u32)>,
    /// Source lines that are neither blank nor stop-word-only.
    pub effective_len: u32,
}

/// Classifies a source/destination line pair for block matching.
pub fn line_block_match(l: &SourceLine, r: &SourceLine, cfg: &Config) -> LineMatch {
    if l.is_blank() && r.is_blank() {
        return LineMatch::Exact { delta: None };
    }
    let delta = r.indent as i64 - l.indent as i64;
    if l.body() == r.body() {
        return LineMatch::Exact { delta: Some(delta) };
    }
    match ratio_above(l.body(), r.body(), cfg.block_line_sim) {
        Some(sim) => LineMatch::Updated { delta, sim },
        None => LineMatch::None,
    }
}

/// Count of lines that are neither blank nor stop-word-only.
pub fn effective_length(lines: &[SourceLine], cfg: &Config) -> u32 {
    lines
        .iter()
        .filter(|l| {
            let body = l.body().trim_end();
            !body.is_empty() && !cfg.is_stop_word(body)
        })
        .count() as u32
}

/// Groups a sorted list of line numbers into maximal contiguous runs.
pub fn contiguous_runs(lines: &[u32]) -> Vec<LineRange> {
    let mut runs = Vec::new();
    let mut iter = lines.iter().copied();
    let Some(first) = iter.next() else {
        return runs;
    };
    let mut start = first;
    let mut end = first;
    for n in iter {
        if n == end + 1 {
            end = n;
        } else {
            runs.push(LineRange::new(start, end));
            start = n;
            end = n;
        }
    }
    runs.push(LineRange::new(start, end));
    runs
}

/// Block-move candidates: every maximal positional pairing of a deleted run
/// against an added run in which all pairs match under one consistent
/// indentation delta. Runs must already exclude split/merge lines.
pub fn find_bm_candidates(
    deleted_runs: &[LineRange],
    added_runs: &[LineRange],
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
) -> Vec<BlockCandidate> {
    let mut out = Vec::new();
    for src_run in deleted_runs {
        for dst_run in added_runs {
            scan_run_pair(
                ActionKind::Bm,
                *src_run,
                *dst_run,
                left,
                right,
                cfg,
                &mut out,
            );
        }
    }
    out
}

/// Block-copy candidates: like moves, but the source side ranges over every
/// contiguous window of the whole left version, changed or unchanged.
pub fn find_bc_candidates(
    added_runs: &[LineRange],
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
) -> Vec<BlockCandidate> {
    let mut out = Vec::new();
    if left.is_empty() {
        return out;
    }
    let all_left = LineRange::new(1, left.len() as u32);
    for dst_run in added_runs {
        scan_run_pair(ActionKind::Bc, all_left, *dst_run, left, right, cfg, &mut out);
    }
    out
}

/// Walks every diagonal of a (source run × destination run) rectangle and
/// emits the maximal delta-consistent segments as candidates.
fn scan_run_pair(
    kind: ActionKind,
    src_run: LineRange,
    dst_run: LineRange,
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
    out: &mut Vec<BlockCandidate>,
) {
    let (s0, s1) = (src_run.start as i64, src_run.end as i64);
    let (d0, d1) = (dst_run.start as i64, dst_run.end as i64);
    for off in (d0 - s1)..=(d1 - s0) {
        let lo = s0.max(d0 - off);
        let hi = s1.min(d1 - off);
        let mut run_start = lo;
        let mut s = lo;
        let mut matches: Vec<LineMatch> = Vec::new();
        let flush = |run_start: i64, matches: &mut Vec<LineMatch>, out: &mut Vec<BlockCandidate>| {
            if !matches.is_empty() {
                emit_segments(kind, run_start, off, matches, left, cfg, out);
                matches.clear();
            }
        };
        while s <= hi {
            let m = line_block_match(
                &left[s as usize - 1],
                &right[(s + off) as usize - 1],
                cfg,
            );
            if m == LineMatch::None {
                flush(run_start, &mut matches, out);
                run_start = s + 1;
            } else {
                matches.push(m);
            }
            s += 1;
        }
        flush(run_start, &mut matches, out);
    }
}

/// Splits one maximal matching run into maximal segments whose concrete
/// deltas agree, letting blank (wildcard) pairs join the segments on both
/// sides of a delta boundary.
fn emit_segments(
    kind: ActionKind,
    run_start: i64,
    off: i64,
    matches: &[LineMatch],
    left: &[SourceLine],
    cfg: &Config,
    out: &mut Vec<BlockCandidate>,
) {
    // positions of pairs that pin a concrete delta
    let concrete: Vec<(usize, i64)> = matches
        .iter()
        .enumerate()
        .filter_map(|(i, m)| match m {
            LineMatch::Exact { delta: Some(d) } => Some((i, *d)),
            LineMatch::Updated { delta, .. } => Some((i, *delta)),
            _ => None,
        })
        .collect();
    if concrete.is_empty() {
        // an all-blank run has no effective lines and can never reach the
        // minimum block length
        return;
    }
    let mut groups: Vec<(usize, usize, i64)> = Vec::new(); // first, last, delta
    for &(pos, delta) in &concrete {
        match groups.last_mut() {
            Some((_, last, d)) if *d == delta => *last = pos,
            _ => groups.push((pos, pos, delta)),
        }
    }
    for gi in 0..groups.len() {
        let (first, last, delta) = groups[gi];
        let seg_start = if gi == 0 { 0 } else { groups[gi - 1].1 + 1 };
        let seg_end = if gi + 1 == groups.len() {
            matches.len() - 1
        } else {
            groups[gi + 1].0 - 1
        };
        debug_assert!(seg_start <= first && last <= seg_end);
        push_candidate(kind, run_start, off, seg_start, seg_end, delta, matches, left, cfg, out);
    }
}

#[allow(clippy::too_many_arguments)]
fn push_candidate(
    kind: ActionKind,
    run_start: i64,
    off: i64,
    seg_start: usize,
    seg_end: usize,
    delta: i64,
    matches: &[LineMatch],
    left: &[SourceLine],
    cfg: &Config,
    out: &mut Vec<BlockCandidate>,
) {
    let src_start = (run_start + seg_start as i64) as u32;
    let src_end = (run_start + seg_end as i64) as u32;
    let src = LineRange::new(src_start, src_end);
    let dst = LineRange::new((src_start as i64 + off) as u32, (src_end as i64 + off) as u32);
    let effective = effective_length(
        &left[src_start as usize - 1..src_end as usize],
        cfg,
    );
    let min_len = if kind == ActionKind::Bm { cfg.min_bm } else { cfg.min_bc };
    if effective < min_len {
        return;
    }
    let inner_updates: Vec<(u32, u32)> = (seg_start..=seg_end)
        .filter(|&i| matches!(matches[i], LineMatch::Updated { .. }))
        .map(|i| {
            let s = (run_start + i as i64) as u32;
            ((s), (s as i64 + off) as u32)
        })
        .collect();
    // a copy pays for itself only while at least one line arrives verbatim
    if kind == ActionKind::Bc && inner_updates.len() as u32 >= src.len() {
        return;
    }
    out.push(BlockCandidate {
        kind,
        src,
        dst,
        indent_delta: delta,
        inner_updates,
        effective_len: effective,
    });
}
