//! Base line diff: deleted/added/unchanged lines and hunks between two
//! versions, computed by Myers or a histogram-style anchor strategy.

use std::collections::HashMap;

use crate::config::BaseAlgorithm;
use crate::script::LineRange;

/// A maximal run of consecutive deleted and/or added lines between two
/// unchanged anchors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hunk {
    /// Contiguous left line numbers deleted in this hunk, if any.
    pub deleted: Option<LineRange>,
    /// Contiguous right line numbers added in this hunk, if any.
    pub added: Option<LineRange>,
}

/// The outcome of the base diff. `deleted`, `added`, and `unchanged`
/// partition both versions; `unchanged` is strictly monotone in both
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseDiffResult {
    pub deleted: Vec<u32>,
    pub added: Vec<u32>,
    pub unchanged: Vec<(u32, u32)>,
    pub hunks: Vec<Hunk>,
    pub left_len: u32,
    pub right_len: u32,
}

impl BaseDiffResult {
    /// Number of primitive delete/add actions this diff implies.
    pub fn primitive_count(&self) -> usize {
        self.deleted.len() + self.added.len()
    }
}

fn intern<'a>(left: &[&'a str], right: &[&'a str]) -> (Vec<u32>, Vec<u32>) {
    let mut ids: HashMap<&'a str, u32> = HashMap::new();
    let mut tok = |s: &'a str| -> u32 {
        let next = ids.len() as u32;
        *ids.entry(s).or_insert(next)
    };
    let l = left.iter().map(|s| tok(s)).collect();
    let r = right.iter().map(|s| tok(s)).collect();
    (l, r)
}

/// Line diff with the requested algorithm; lines compare by exact text
/// equality.
pub fn compute(left: &[&str], right: &[&str], algorithm: BaseAlgorithm) -> BaseDiffResult {
    let (l_tok, r_tok) = intern(left, right);
    let mut pairs = Vec::new();
    match algorithm {
        BaseAlgorithm::Myers => myers_region(&l_tok, &r_tok, 0, 0, &mut pairs),
        BaseAlgorithm::Histogram => histogram_pairs(&l_tok, &r_tok, &mut pairs),
    }
    from_pairs(pairs, left.len() as u32, right.len() as u32)
}

/// Myers minimal diff.
pub fn myers_diff(left: &[&str], right: &[&str]) -> BaseDiffResult {
    compute(left, right, BaseAlgorithm::Myers)
}

/// Histogram-style diff: anchors on lines unique to both sides,
/// recursively, and falls back to Myers where no unique anchor exists.
pub fn histogram_diff(left: &[&str], right: &[&str]) -> BaseDiffResult {
    compute(left, right, BaseAlgorithm::Histogram)
}

fn from_pairs(pairs: Vec<(usize, usize)>, left_len: u32, right_len: u32) -> BaseDiffResult {
    let unchanged: Vec<(u32, u32)> = pairs
        .into_iter()
        .map(|(i, j)| (i as u32 + 1, j as u32 + 1))
        .collect();
    let mut deleted = Vec::new();
    let mut added = Vec::new();
    let mut li = 1u32;
    let mut ri = 1u32;
    for &(l, r) in &unchanged {
        deleted.extend(li..l);
        added.extend(ri..r);
        li = l + 1;
        ri = r + 1;
    }
    deleted.extend(li..=left_len);
    added.extend(ri..=right_len);
    let hunks = build_hunks_from(&unchanged, left_len, right_len);
    BaseDiffResult {
        deleted,
        added,
        unchanged,
        hunks,
        left_len,
        right_len,
    }
}

/// Groups the deleted/added lines of a diff into maximal hunks.
pub fn build_hunks(result: &BaseDiffResult) -> Vec<Hunk> {
    build_hunks_from(&result.unchanged, result.left_len, result.right_len)
}

fn build_hunks_from(unchanged: &[(u32, u32)], left_len: u32, right_len: u32) -> Vec<Hunk> {
    let mut hunks = Vec::new();
    let mut li = 1u32;
    let mut ri = 1u32;
    let mut push = |del_from: u32, del_to: u32, add_from: u32, add_to: u32| {
        let deleted = (del_from <= del_to).then(|| LineRange::new(del_from, del_to));
        let added = (add_from <= add_to).then(|| LineRange::new(add_from, add_to));
        if deleted.is_some() || added.is_some() {
            hunks.push(Hunk { deleted, added });
        }
    };
    for &(l, r) in unchanged {
        push(li, l.wrapping_sub(1), ri, r.wrapping_sub(1));
        li = l + 1;
        ri = r + 1;
    }
    push(li, left_len, ri, right_len);
    hunks
}

// ---------------------------------------------------------------------
// Myers greedy shortest-edit-script search with full trace backtracking.
// ---------------------------------------------------------------------

/// Appends the matched (left, right) index pairs of a minimal diff of
/// `a`/`b` to `out`, offsetting indices by `a_off`/`b_off`.
fn myers_region(a: &[u32], b: &[u32], a_off: usize, b_off: usize, out: &mut Vec<(usize, usize)>) {
    // common prefix
    let mut pre = 0;
    while pre < a.len() && pre < b.len() && a[pre] == b[pre] {
        out.push((a_off + pre, b_off + pre));
        pre += 1;
    }
    let (a, b) = (&a[pre..], &b[pre..]);
    let (a_off, b_off) = (a_off + pre, b_off + pre);
    // common suffix
    let mut suf = 0;
    while suf < a.len() && suf < b.len() && a[a.len() - 1 - suf] == b[b.len() - 1 - suf] {
        suf += 1;
    }
    let suffix_pairs: Vec<(usize, usize)> = (0..suf)
        .rev()
        .map(|k| (a_off + a.len() - 1 - k, b_off + b.len() - 1 - k))
        .collect();
    let (a, b) = (&a[..a.len() - suf], &b[..b.len() - suf]);

    if !a.is_empty() && !b.is_empty() && has_common_token(a, b) {
        let matched = myers_core(a, b);
        out.extend(matched.into_iter().map(|(i, j)| (a_off + i, b_off + j)));
    }
    out.extend(suffix_pairs);
}

fn has_common_token(a: &[u32], b: &[u32]) -> bool {
    let set: std::collections::HashSet<u32> = a.iter().copied().collect();
    b.iter().any(|t| set.contains(t))
}

/// The k-indexed furthest-reaching endpoints for one search depth.
struct VRow {
    d: isize,
    v: Vec<usize>,
}

impl VRow {
    fn get(&self, k: isize) -> usize {
        self.v[(k + self.d) as usize]
    }
}

fn myers_core(a: &[u32], b: &[u32]) -> Vec<(usize, usize)> {
    let n = a.len();
    let m = b.len();
    let max = n + m;
    let offset = max as isize;
    let mut v = vec![0usize; 2 * max + 2];
    let mut trace: Vec<VRow> = Vec::new();
    let mut found_d = None;
    'outer: for d in 0..=(max as isize) {
        trace.push(VRow {
            d,
            v: v[(offset - d) as usize..=(offset + d) as usize].to_vec(),
        });
        let mut k = -d;
        while k <= d {
            let mut x = if k == -d || (k != d && v[(offset + k - 1) as usize] < v[(offset + k + 1) as usize])
            {
                v[(offset + k + 1) as usize]
            } else {
                v[(offset + k - 1) as usize] + 1
            };
            let mut y = (x as isize - k) as usize;
            while x < n && y < m && a[x] == b[y] {
                x += 1;
                y += 1;
            }
            v[(offset + k) as usize] = x;
            if x >= n && y >= m {
                found_d = Some(d);
                break 'outer;
            }
            k += 2;
        }
    }
    let found_d = found_d.expect("search space exhausted without reaching the sink");

    // walk the trace backwards, collecting diagonal (match) moves
    let mut pairs = Vec::new();
    let mut x = n;
    let mut y = m;
    for d in (0..=found_d).rev() {
        let row = &trace[d as usize];
        let k = x as isize - y as isize;
        let prev_k = if k == -d || (k != d && row.get(k - 1) < row.get(k + 1)) {
            k + 1
        } else {
            k - 1
        };
        let (prev_x, prev_y) = if d > 0 {
            let px = row.get(prev_k);
            (px, (px as isize - prev_k) as usize)
        } else {
            (0, 0)
        };
        while x > prev_x && y > prev_y {
            pairs.push((x - 1, y - 1));
            x -= 1;
            y -= 1;
        }
        if d > 0 {
            x = prev_x;
            y = prev_y;
        }
    }
    pairs.reverse();
    pairs
}

// ---------------------------------------------------------------------
// Histogram-style anchoring: lines unique to both sides form candidate
// anchors; the longest monotone chain of them splits the region and the
// algorithm recurses on each gap.
// ---------------------------------------------------------------------

fn histogram_pairs(a: &[u32], b: &[u32], out: &mut Vec<(usize, usize)>) {
    let mut work = vec![(0usize, a.len(), 0usize, b.len())];
    let mut regions = Vec::new();
    while let Some((al, ar, bl, br)) = work.pop() {
        let sa = &a[al..ar];
        let sb = &b[bl..br];
        if sa.len() < 3 || sb.len() < 3 {
            regions.push((al, ar, bl, br, None));
            continue;
        }
        let anchors = unique_anchor_chain(sa, sb);
        if anchors.is_empty() {
            regions.push((al, ar, bl, br, None));
            continue;
        }
        let mut pa = 0;
        let mut pb = 0;
        let mut resolved = Vec::new();
        for (i, j) in anchors {
            work.push((al + pa, al + i, bl + pb, bl + j));
            resolved.push((al + i, bl + j));
            pa = i + 1;
            pb = j + 1;
        }
        work.push((al + pa, ar, bl + pb, br));
        regions.push((al, ar, bl, br, Some(resolved)));
    }
    // regions were produced depth-first; rebuild the matched pairs in
    // ascending order
    let mut pairs = Vec::new();
    for (_, _, _, _, resolved) in &regions {
        if let Some(anchor_pairs) = resolved {
            pairs.extend(anchor_pairs.iter().copied());
        }
    }
    for &(al, ar, bl, br, ref resolved) in &regions {
        if resolved.is_none() {
            let mut sub = Vec::new();
            myers_region(&a[al..ar], &b[bl..br], al, bl, &mut sub);
            pairs.extend(sub);
        }
    }
    pairs.sort_unstable();
    out.extend(pairs);
}

/// The longest strictly increasing chain of (left, right) positions of
/// tokens that occur exactly once on each side. Ties resolve to the
/// earliest left positions.
fn unique_anchor_chain(a: &[u32], b: &[u32]) -> Vec<(usize, usize)> {
    let mut count_a: HashMap<u32, usize> = HashMap::new();
    let mut pos_a: HashMap<u32, usize> = HashMap::new();
    for (i, &t) in a.iter().enumerate() {
        *count_a.entry(t).or_insert(0) += 1;
        pos_a.insert(t, i);
    }
    let mut count_b: HashMap<u32, usize> = HashMap::new();
    let mut pos_b: HashMap<u32, usize> = HashMap::new();
    for (j, &t) in b.iter().enumerate() {
        *count_b.entry(t).or_insert(0) += 1;
        pos_b.insert(t, j);
    }
    // candidate anchors in left order
    let mut cands: Vec<(usize, usize)> = Vec::new();
    for (i, &t) in a.iter().enumerate() {
        if count_a[&t] == 1 && count_b.get(&t) == Some(&1) {
            cands.push((i, pos_b[&t]));
        }
    }
    if cands.is_empty() {
        return Vec::new();
    }
    // patience-style longest increasing subsequence on the right positions
    let mut tails: Vec<usize> = Vec::new(); // indices into cands
    let mut back: Vec<Option<usize>> = vec![None; cands.len()];
    for (idx, &(_, j)) in cands.iter().enumerate() {
        let slot = tails.partition_point(|&t| cands[t].1 < j);
        if slot > 0 {
            back[idx] = Some(tails[slot - 1]);
        }
        if slot == tails.len() {
            tails.push(idx);
        } else {
            tails[slot] = idx;
        }
    }
    let mut chain = Vec::new();
    let mut cur = tails.last().copied();
    while let Some(idx) = cur {
        chain.push(cands[idx]);
        cur = back[idx];
    }
    chain.reverse();
    chain
}

// ---------------------------------------------------------------------
// Merged timeline: a single ordering of unchanged pairs and hunk lines,
// used to measure how far apart two positions sit across versions.
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EventKind {
    Pair,
    Del,
    Add,
}

/// Positions of every line of both versions on one merged ordering.
/// Deleted and added lines of a hunk interleave pairwise so that
/// positionally aligned lines sit next to each other.
#[derive(Debug)]
pub struct MergedTimeline {
    pos_left: Vec<usize>,
    pos_right: Vec<usize>,
    pref_pair: Vec<u32>,
    pref_del: Vec<u32>,
    pref_add: Vec<u32>,
}

impl MergedTimeline {
    pub fn new(diff: &BaseDiffResult) -> Self {
        let mut events: Vec<EventKind> = Vec::new();
        let mut pos_left = vec![0usize; diff.left_len as usize + 1];
        let mut pos_right = vec![0usize; diff.right_len as usize + 1];
        let mut li = 1u32;
        let mut ri = 1u32;
        let emit_gap = |events: &mut Vec<EventKind>,
                            pos_left: &mut Vec<usize>,
                            pos_right: &mut Vec<usize>,
                            dels: std::ops::Range<u32>,
                            adds: std::ops::Range<u32>| {
            let dl: Vec<u32> = dels.collect();
            let ad: Vec<u32> = adds.collect();
            for k in 0..dl.len().max(ad.len()) {
                if let Some(&l) = dl.get(k) {
                    pos_left[l as usize] = events.len();
                    events.push(EventKind::Del);
                }
                if let Some(&r) = ad.get(k) {
                    pos_right[r as usize] = events.len();
                    events.push(EventKind::Add);
                }
            }
        };
        for &(l, r) in &diff.unchanged {
            emit_gap(&mut events, &mut pos_left, &mut pos_right, li..l, ri..r);
            pos_left[l as usize] = events.len();
            pos_right[r as usize] = events.len();
            events.push(EventKind::Pair);
            li = l + 1;
            ri = r + 1;
        }
        emit_gap(
            &mut events,
            &mut pos_left,
            &mut pos_right,
            li..diff.left_len + 1,
            ri..diff.right_len + 1,
        );
        let mut pref_pair = vec![0u32; events.len() + 1];
        let mut pref_del = vec![0u32; events.len() + 1];
        let mut pref_add = vec![0u32; events.len() + 1];
        for (i, ev) in events.iter().enumerate() {
            pref_pair[i + 1] = pref_pair[i] + u32::from(*ev == EventKind::Pair);
            pref_del[i + 1] = pref_del[i] + u32::from(*ev == EventKind::Del);
            pref_add[i + 1] = pref_add[i] + u32::from(*ev == EventKind::Add);
        }
        MergedTimeline {
            pos_left,
            pos_right,
            pref_pair,
            pref_del,
            pref_add,
        }
    }

    /// Lines separating left line `l` from right line `r` on the merged
    /// ordering: unchanged pairs plus the larger of the added and deleted
    /// counts strictly between the two positions.
    pub fn distance(&self, l: u32, r: u32) -> u32 {
        let a = self.pos_left[l as usize];
        let b = self.pos_right[r as usize];
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if hi <= lo + 1 {
            return 0;
        }
        let pairs = self.pref_pair[hi] - self.pref_pair[lo + 1];
        let dels = self.pref_del[hi] - self.pref_del[lo + 1];
        let adds = self.pref_add[hi] - self.pref_add[lo + 1];
        pairs + dels.max(adds)
    }
}
