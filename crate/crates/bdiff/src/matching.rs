//! Optimal mapping selection: merges line and block candidates into a
//! weighted bipartite graph, resolves conflicts by minimum-weight
//! assignment, and iterates over the leftover fragments until every
//! candidate is either selected or exhausted.

use std::collections::{BTreeMap, BTreeSet};

use crate::base_diff::{BaseDiffResult, MergedTimeline};
use crate::block_analysis::{effective_length, BlockCandidate};
use crate::config::Config;
use crate::hunk_analysis::LuCandidate;
use crate::line::SourceLine;
use crate::script::{ActionKind, LineRange};
use crate::similarity::levenshtein_ratio;

/// A line-update, block-move, or block-copy mapping awaiting selection.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub kind: ActionKind,
    pub src: LineRange,
    pub dst: LineRange,
    pub indent_delta: i64,
    pub inner_updates: Vec<(u32, u32)>,
    pub effective_len: u32,
    /// Combined line similarity; meaningful for LU candidates only.
    pub score: f64,
}

impl From<LuCandidate> for Candidate {
    fn from(c: LuCandidate) -> Self {
        Candidate {
            kind: ActionKind::Lu,
            src: LineRange::single(c.src_line),
            dst: LineRange::single(c.dst_line),
            indent_delta: 0,
            inner_updates: Vec::new(),
            effective_len: 1,
            score: c.score,
        }
    }
}

impl From<BlockCandidate> for Candidate {
    fn from(c: BlockCandidate) -> Self {
        Candidate {
            kind: c.kind,
            src: c.src,
            dst: c.dst,
            indent_delta: c.indent_delta,
            inner_updates: c.inner_updates,
            effective_len: c.effective_len,
            score: 0.0,
        }
    }
}

/// Number of primitive edits a mapping stands for. Line updates count 1.
/// Moves start at 2 and copies at 3; each gains one more for an
/// indentation change and one more for carrying any inner updates.
pub fn edit_times(c: &Candidate) -> u32 {
    match c.kind {
        ActionKind::Lu => 1,
        ActionKind::Bm | ActionKind::Bc => {
            let base = if c.kind == ActionKind::Bm { 2 } else { 3 };
            base + u32::from(c.indent_delta != 0) + u32::from(!c.inner_updates.is_empty())
        }
        _ => unreachable!("only LU/BM/BC mappings carry weights"),
    }
}

fn context_text(lines: &[SourceLine], range: LineRange, ctx_len: u32) -> String {
    let mut parts: Vec<&str> = Vec::new();
    let lo = range.start.saturating_sub(ctx_len).max(1);
    for n in lo..range.start {
        parts.push(&lines[n as usize - 1].raw);
    }
    let hi = (range.end + ctx_len).min(lines.len() as u32);
    for n in range.end + 1..=hi {
        parts.push(&lines[n as usize - 1].raw);
    }
    parts.join("\n")
}

/// Similarity of the surroundings of two blocks: the Levenshtein ratio of
/// the up-to-`ctx_len` lines above and below each block, truncated at file
/// edges.
pub fn block_ctx_sim(
    src: LineRange,
    dst: LineRange,
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
) -> f64 {
    let a = context_text(left, src, cfg.ctx_len);
    let b = context_text(right, dst, cfg.ctx_len);
    levenshtein_ratio(&a, &b)
}

/// Weight of a block mapping:
/// `EditTimes / Len + (1 - CtxSim) / 10 + Dist / 100`.
pub fn block_weight(edit_times: u32, effective_len: u32, ctx_sim: f64, dist: u32) -> f64 {
    edit_times as f64 / effective_len.max(1) as f64 + (1.0 - ctx_sim) / 10.0 + dist as f64 / 100.0
}

/// Weight of a line-update mapping: `1 + (1 - Sim) / 10`. Updates live
/// inside one hunk, so no distance term applies.
pub fn lu_weight(score: f64) -> f64 {
    1.0 + (1.0 - score) / 10.0
}

fn candidate_weight(
    c: &Candidate,
    left: &[SourceLine],
    right: &[SourceLine],
    timeline: &MergedTimeline,
    cfg: &Config,
) -> f64 {
    match c.kind {
        ActionKind::Lu => lu_weight(c.score),
        _ => {
            let ctx = block_ctx_sim(c.src, c.dst, left, right, cfg);
            let dist = timeline.distance(c.src.start, c.dst.start);
            block_weight(edit_times(c), c.effective_len, ctx, dist)
        }
    }
}

/// One edge of the bipartite mapping graph.
#[derive(Debug, Clone)]
pub struct WeightedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    /// Index of the candidate this edge stands for.
    pub candidate: usize,
}

/// The bipartite graph: merged left/right vertex counts plus one edge per
/// candidate (parallel edges between the same vertex pair keep only the
/// lightest representative).
#[derive(Debug)]
pub struct Bipartite {
    pub left_vertices: usize,
    pub right_vertices: usize,
    pub edges: Vec<WeightedEdge>,
}

fn kind_rank(kind: ActionKind) -> u8 {
    match kind {
        ActionKind::Bm => 0,
        ActionKind::Bc => 1,
        _ => 2,
    }
}

/// Merges overlapping same-side spans into single vertices. Left spans of
/// copies become additional (phantom) vertices that may overlap anything,
/// so a copied block never competes for its source lines.
pub fn build_bipartite(candidates: &[Candidate], weights: &[f64]) -> Bipartite {
    // merge overlapping non-copy source spans into interval groups
    let mut left_intervals: Vec<LineRange> = candidates
        .iter()
        .filter(|c| c.kind != ActionKind::Bc)
        .map(|c| c.src)
        .collect();
    left_intervals.sort_by_key(|r| (r.start, r.end));
    let merged_left = merge_intervals(&left_intervals);

    let mut right_intervals: Vec<LineRange> = candidates.iter().map(|c| c.dst).collect();
    right_intervals.sort_by_key(|r| (r.start, r.end));
    let merged_right = merge_intervals(&right_intervals);

    let mut next_left = merged_left.len();
    let mut edges: Vec<WeightedEdge> = Vec::new();
    let mut best: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (idx, c) in candidates.iter().enumerate() {
        let u = if c.kind == ActionKind::Bc {
            let u = next_left;
            next_left += 1;
            u
        } else {
            find_interval(&merged_left, c.src.start)
        };
        let v = find_interval(&merged_right, c.dst.start);
        let edge = WeightedEdge {
            u,
            v,
            weight: weights[idx],
            candidate: idx,
        };
        match best.get(&(u, v)) {
            Some(&existing) => {
                let old = &edges[existing];
                let old_c = &candidates[old.candidate];
                let new_key = (edge.weight, kind_rank(c.kind), c.src.start, c.dst.start);
                let old_key = (old.weight, kind_rank(old_c.kind), old_c.src.start, old_c.dst.start);
                if new_key.partial_cmp(&old_key) == Some(std::cmp::Ordering::Less) {
                    edges[existing] = edge;
                }
            }
            None => {
                best.insert((u, v), edges.len());
                edges.push(edge);
            }
        }
    }
    Bipartite {
        left_vertices: next_left,
        right_vertices: merged_right.len(),
        edges,
    }
}

fn merge_intervals(sorted: &[LineRange]) -> Vec<LineRange> {
    let mut out: Vec<LineRange> = Vec::new();
    for r in sorted {
        match out.last_mut() {
            Some(last) if r.start <= last.end => last.end = last.end.max(r.end),
            _ => out.push(*r),
        }
    }
    out
}

fn find_interval(merged: &[LineRange], line: u32) -> usize {
    merged
        .partition_point(|r| r.end < line)
        .min(merged.len().saturating_sub(1))
}

/// Minimum-weight matching of maximum cardinality over the given edges.
/// Returns indices into `edges`.
///
/// Solved as a square assignment problem: missing pairs are padded with a
/// weight larger than any feasible total, and padded assignments are
/// discarded from the result.
pub fn km_min_matching(bipartite: &Bipartite) -> Vec<usize> {
    if bipartite.edges.is_empty() {
        return Vec::new();
    }
    let n = bipartite.left_vertices.max(bipartite.right_vertices);
    let big = bipartite.edges.iter().map(|e| e.weight).sum::<f64>() + 1.0;
    let mut cost = vec![vec![big; n]; n];
    let mut edge_at: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, e) in bipartite.edges.iter().enumerate() {
        cost[e.u][e.v] = e.weight;
        edge_at.insert((e.u, e.v), i);
    }
    let assignment = hungarian(&cost);
    let mut chosen: Vec<usize> = assignment
        .iter()
        .enumerate()
        .filter_map(|(row, &col)| edge_at.get(&(row, col)).copied())
        .collect();
    chosen.sort_unstable();
    chosen
}

/// Classic O(n³) Hungarian algorithm over a square cost matrix; returns the
/// column assigned to each row.
fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    let inf = f64::INFINITY;
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut assigned_row = vec![0usize; n + 1]; // column -> row (1-based, 0 = free)
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        assigned_row[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = assigned_row[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[assigned_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if assigned_row[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            assigned_row[j0] = assigned_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut result = vec![0usize; n];
    for j in 1..=n {
        if assigned_row[j] > 0 {
            result[assigned_row[j] - 1] = j - 1;
        }
    }
    result
}

/// Runs assignment rounds until the candidate pool is exhausted.
///
/// After each round the selected spans are subtracted from the unselected
/// candidates; the surviving fragments re-enter with freshly computed
/// weights, and fragments below the minimum block length drop out.
pub fn iterative_km(
    candidates: Vec<Candidate>,
    left: &[SourceLine],
    right: &[SourceLine],
    base: &BaseDiffResult,
    cfg: &Config,
) -> Vec<Candidate> {
    let timeline = MergedTimeline::new(base);
    let mut pool = candidates;
    let mut selected: Vec<Candidate> = Vec::new();
    let mut claimed_left: BTreeSet<u32> = BTreeSet::new();
    let mut claimed_right: BTreeSet<u32> = BTreeSet::new();
    while !pool.is_empty() {
        pool.sort_by(|a, b| {
            (a.src.start, a.src.end, a.dst.start, a.dst.end, kind_rank(a.kind))
                .cmp(&(b.src.start, b.src.end, b.dst.start, b.dst.end, kind_rank(b.kind)))
        });
        pool.dedup();
        let weights: Vec<f64> = pool
            .iter()
            .map(|c| candidate_weight(c, left, right, &timeline, cfg))
            .collect();
        let graph = build_bipartite(&pool, &weights);
        let chosen_edges = km_min_matching(&graph);
        let chosen: BTreeSet<usize> = chosen_edges
            .iter()
            .map(|&e| graph.edges[e].candidate)
            .collect();
        if chosen.is_empty() {
            break;
        }
        for &idx in &chosen {
            let c = &pool[idx];
            if c.kind != ActionKind::Bc {
                claimed_left.extend(c.src.lines());
            }
            claimed_right.extend(c.dst.lines());
            selected.push(c.clone());
        }
        let mut next = Vec::new();
        for (idx, c) in pool.into_iter().enumerate() {
            if chosen.contains(&idx) {
                continue;
            }
            trim_candidate(c, &claimed_left, &claimed_right, left, cfg, &mut next);
        }
        pool = next;
    }
    selected.sort_by_key(|c| (c.dst.start, c.src.start, kind_rank(c.kind)));
    selected
}

/// Subtracts claimed lines from an unselected candidate, producing zero or
/// more contiguous fragments. Copy sources never conflict, so copies are
/// trimmed on the destination side only.
fn trim_candidate(
    c: Candidate,
    claimed_left: &BTreeSet<u32>,
    claimed_right: &BTreeSet<u32>,
    left: &[SourceLine],
    cfg: &Config,
    out: &mut Vec<Candidate>,
) {
    if c.kind == ActionKind::Lu {
        if !claimed_left.contains(&c.src.start) && !claimed_right.contains(&c.dst.start) {
            out.push(c);
        }
        return;
    }
    let len = c.src.len();
    let keep: Vec<bool> = (0..len)
        .map(|k| {
            let s = c.src.start + k;
            let d = c.dst.start + k;
            let src_free = c.kind == ActionKind::Bc || !claimed_left.contains(&s);
            src_free && !claimed_right.contains(&d)
        })
        .collect();
    let mut k = 0usize;
    while k < len as usize {
        if !keep[k] {
            k += 1;
            continue;
        }
        let start = k;
        while k < len as usize && keep[k] {
            k += 1;
        }
        let end = k - 1;
        let src = LineRange::new(c.src.start + start as u32, c.src.start + end as u32);
        let dst = LineRange::new(c.dst.start + start as u32, c.dst.start + end as u32);
        let effective = effective_length(&left[src.start as usize - 1..src.end as usize], cfg);
        let min_len = if c.kind == ActionKind::Bm { cfg.min_bm } else { cfg.min_bc };
        if effective < min_len {
            continue;
        }
        let inner: Vec<(u32, u32)> = c
            .inner_updates
            .iter()
            .copied()
            .filter(|&(s, _)| src.contains(s))
            .collect();
        if c.kind == ActionKind::Bc && inner.len() as u32 >= src.len() {
            continue;
        }
        out.push(Candidate {
            kind: c.kind,
            src,
            dst,
            indent_delta: c.indent_delta,
            inner_updates: inner,
            effective_len: effective,
            score: c.score,
        });
    }
}
