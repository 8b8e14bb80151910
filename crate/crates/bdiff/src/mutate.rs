//! Mutation-based evaluation: inject random edit actions into a file,
//! emit the mutated version plus the ground-truth script, and score a
//! computed script against that truth.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::line::SourceLine;
use crate::script::{ActionKind, EditAction, EditScript, LineRange};

/// A mutated right version together with the script that produced it.
#[derive(Debug, Clone)]
pub struct GroundTruth {
    pub right_version: Vec<String>,
    pub es: EditScript,
}

/// One working line of the evolving right version. Entries keep a stable
/// id so destinations can be resolved after later edits move things
/// around.
#[derive(Debug, Clone)]
struct Entry {
    id: u64,
    content: String,
    left_line: Option<u32>,
    /// May still be targeted by a new mutation.
    available: bool,
    /// Untouched original line; mutation sites keep pristine neighbors so
    /// injected edits stay in separate hunks.
    pristine: bool,
}

#[derive(Debug)]
struct Pending {
    kind: ActionKind,
    src: Option<LineRange>,
    dst_ids: Vec<u64>,
    indent_delta: i64,
    /// Block offsets whose bodies were perturbed.
    inner_offsets: Vec<u32>,
}

/// Randomly mutates `left` with the action kinds enabled in `cfg`,
/// drawing the edit-count bound from the file size.
pub fn mutate(left: &[String], seed: u64, cfg: &Config) -> GroundTruth {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = rng.gen_range(1..=(left.len() as u32 / 10).max(3));
    mutate_with_bound(left, seed.wrapping_add(0x9e37_79b9), cfg, bound)
}

/// Mutation with an explicit edit-count bound. A bound of zero returns the
/// identity mutation.
pub fn mutate_with_bound(left: &[String], seed: u64, cfg: &Config, bound: u32) -> GroundTruth {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = Mutator {
        entries: left
            .iter()
            .enumerate()
            .map(|(i, content)| Entry {
                id: i as u64 + 1,
                content: content.clone(),
                left_line: Some(i as u32 + 1),
                available: true,
                pristine: true,
            })
            .collect(),
        next_id: left.len() as u64 + 1,
        actions: Vec::new(),
        cfg: cfg.clone(),
    };
    let kinds: Vec<ActionKind> = ActionKind::ALL
        .iter()
        .copied()
        .filter(|&k| cfg.enabled.contains(&k))
        .collect();
    let mut cursor = 0usize;
    let mut count = 0u32;
    while count < bound && !kinds.is_empty() {
        let jump = if count == 0 {
            rng.gen_range(0..=3)
        } else {
            rng.gen_range(1..=4)
        };
        let Some(pos) = state.next_site(cursor + jump) else {
            break;
        };
        let mut order = kinds.clone();
        order.shuffle(&mut rng);
        let mut applied = None;
        for kind in order {
            if let Some(next_cursor) = state.try_apply(kind, pos, &mut rng) {
                applied = Some(next_cursor);
                break;
            }
        }
        match applied {
            Some(next_cursor) => {
                cursor = next_cursor;
                count += 1;
            }
            None => cursor = pos + 1,
        }
    }
    state.finish(left)
}

struct Mutator {
    entries: Vec<Entry>,
    next_id: u64,
    actions: Vec<Pending>,
    cfg: Config,
}

impl Mutator {
    fn next_site(&self, from: usize) -> Option<usize> {
        (from..self.entries.len()).find(|&i| self.entries[i].available)
    }

    fn fresh_id(&mut self) -> u64 {
        let id = self.next_id;
        self.next_id += 1;
        id
    }

    /// A mutation site needs available targets and pristine neighbors, so
    /// every injected edit lands in its own hunk.
    fn site_ok(&self, start: usize, len: usize) -> bool {
        if start + len > self.entries.len() {
            return false;
        }
        if !self.entries[start..start + len].iter().all(|e| e.available) {
            return false;
        }
        let before_ok = start == 0 || self.entries[start - 1].pristine;
        let after_ok = start + len == self.entries.len() || self.entries[start + len].pristine;
        before_ok && after_ok
    }

    fn gap_ok(&self, gap: usize) -> bool {
        let before_ok = gap == 0 || self.entries[gap - 1].pristine;
        let after_ok = gap == self.entries.len() || self.entries[gap].pristine;
        before_ok && after_ok
    }

    /// A run of available originals with consecutive left lines.
    fn original_run(&self, start: usize, len: usize) -> Option<LineRange> {
        if !self.site_ok(start, len) {
            return None;
        }
        let first = self.entries[start].left_line?;
        for (k, e) in self.entries[start..start + len].iter().enumerate() {
            if e.left_line != Some(first + k as u32) {
                return None;
            }
        }
        Some(LineRange::new(first, first + len as u32 - 1))
    }

    fn effective_len(&self, start: usize, len: usize) -> u32 {
        self.entries[start..start + len]
            .iter()
            .filter(|e| {
                let line = SourceLine::new(1, e.content.clone(), self.cfg.tab_size);
                let trimmed = line.body().trim_end();
                !trimmed.is_empty() && !self.cfg.is_stop_word(trimmed)
            })
            .count() as u32
    }

    fn try_apply(&mut self, kind: ActionKind, pos: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        match kind {
            ActionKind::Ld => self.apply_ld(pos),
            ActionKind::La => self.apply_la(pos, rng),
            ActionKind::Lu => self.apply_lu(pos, rng),
            ActionKind::Ls => self.apply_ls(pos, rng),
            ActionKind::Lm => self.apply_lm(pos, rng),
            ActionKind::Bm => self.apply_block(ActionKind::Bm, pos, rng),
            ActionKind::Bc => self.apply_block(ActionKind::Bc, pos, rng),
        }
    }

    fn apply_ld(&mut self, pos: usize) -> Option<usize> {
        let src = self.original_run(pos, 1)?;
        self.entries.remove(pos);
        self.actions.push(Pending {
            kind: ActionKind::Ld,
            src: Some(src),
            dst_ids: Vec::new(),
            indent_delta: 0,
            inner_offsets: Vec::new(),
        });
        Some(pos)
    }

    fn apply_la(&mut self, pos: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        if !self.gap_ok(pos) {
            return None;
        }
        let indent = self
            .entries
            .get(pos)
            .map(|e| leading_whitespace(&e.content))
            .unwrap_or_default()
            .to_string();
        let id = self.fresh_id();
        let content = format!("{indent}inserted_marker_{:05} = {}", id, rng.gen_range(0..1000));
        self.entries.insert(
            pos,
            Entry {
                id,
                content,
                left_line: None,
                available: false,
                pristine: false,
            },
        );
        self.actions.push(Pending {
            kind: ActionKind::La,
            src: None,
            dst_ids: vec![id],
            indent_delta: 0,
            inner_offsets: Vec::new(),
        });
        Some(pos + 1)
    }

    fn apply_lu(&mut self, pos: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        let src = self.original_run(pos, 1)?;
        let old = self.entries[pos].content.clone();
        if old.trim().len() < 6 {
            return None;
        }
        let new = perturb_line(&old, 0.85, rng)?;
        let e = &mut self.entries[pos];
        e.content = new;
        e.available = false;
        e.pristine = false;
        let id = e.id;
        self.actions.push(Pending {
            kind: ActionKind::Lu,
            src: Some(src),
            dst_ids: vec![id],
            indent_delta: 0,
            inner_offsets: Vec::new(),
        });
        Some(pos + 1)
    }

    fn apply_ls(&mut self, pos: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        let src = self.original_run(pos, 1)?;
        let content = self.entries[pos].content.clone();
        let chars: Vec<char> = content.chars().collect();
        if chars.len() < 6 {
            return None;
        }
        let max_pieces = 3.min(chars.len() / 2).max(2);
        let pieces_wanted = rng.gen_range(2..=max_pieces);
        let mut cuts: Vec<usize> = Vec::new();
        for _ in 0..pieces_wanted - 1 {
            let cut = rng.gen_range(1..chars.len());
            if !cuts.contains(&cut) {
                cuts.push(cut);
            }
        }
        if cuts.is_empty() {
            return None;
        }
        cuts.sort_unstable();
        let mut pieces = Vec::new();
        let mut prev = 0usize;
        for &cut in &cuts {
            pieces.push(chars[prev..cut].iter().collect::<String>());
            prev = cut;
        }
        pieces.push(chars[prev..].iter().collect::<String>());
        self.entries.remove(pos);
        let mut ids = Vec::new();
        for (k, piece) in pieces.iter().enumerate() {
            let id = self.fresh_id();
            ids.push(id);
            self.entries.insert(
                pos + k,
                Entry {
                    id,
                    content: piece.clone(),
                    left_line: None,
                    available: false,
                    pristine: false,
                },
            );
        }
        let next = pos + pieces.len();
        self.actions.push(Pending {
            kind: ActionKind::Ls,
            src: Some(src),
            dst_ids: ids,
            indent_delta: 0,
            inner_offsets: Vec::new(),
        });
        Some(next)
    }

    fn apply_lm(&mut self, pos: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        let want = rng.gen_range(2..=4usize);
        let len = (2..=want).rev().find(|&k| self.original_run(pos, k).is_some())?;
        let src = self.original_run(pos, len)?;
        let parts: Vec<&str> = self.entries[pos..pos + len]
            .iter()
            .map(|e| e.content.as_str())
            .collect();
        // at least two parts must carry text, or the merge degenerates;
        // a trailing blank part would be undetectable because the result
        // already equals the concatenation without it
        if parts.iter().filter(|p| !p.is_empty()).count() < 2
            || parts.last().is_some_and(|p| p.is_empty())
        {
            return None;
        }
        let merged: String = parts.concat();
        let id = self.fresh_id();
        self.entries.drain(pos..pos + len);
        self.entries.insert(
            pos,
            Entry {
                id,
                content: merged,
                left_line: None,
                available: false,
                pristine: false,
            },
        );
        self.actions.push(Pending {
            kind: ActionKind::Lm,
            src: Some(src),
            dst_ids: vec![id],
            indent_delta: 0,
            inner_offsets: Vec::new(),
        });
        Some(pos + 1)
    }

    fn apply_block(&mut self, kind: ActionKind, pos: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
        let min_len = if kind == ActionKind::Bm {
            self.cfg.min_bm
        } else {
            self.cfg.min_bc
        };
        let want = 2 + (0..4).take_while(|_| rng.gen_bool(0.4)).count();
        let len = (2..=want.max(2))
            .rev()
            .find(|&k| self.original_run(pos, k).is_some() && self.effective_len(pos, k) >= min_len)?;
        let src = self.original_run(pos, len)?;
        let block: Vec<String> = self.entries[pos..pos + len]
            .iter()
            .map(|e| e.content.clone())
            .collect();

        let min_indent: i64 = block
            .iter()
            .filter(|c| !c.trim().is_empty())
            .map(|c| SourceLine::new(1, c.clone(), self.cfg.tab_size).indent as i64)
            .min()
            .unwrap_or(0);
        let tab = self.cfg.tab_size as i64;
        let mut delta_choices = vec![0, tab];
        if min_indent >= tab {
            delta_choices.push(-tab);
        }
        let in_place =
            kind == ActionKind::Bm && self.effective_len(pos, len) >= 3 && rng.gen_bool(0.25);
        let delta = if in_place {
            // a pure indentation adjustment must change something
            *delta_choices[1..].choose(rng).unwrap()
        } else {
            *delta_choices.choose(rng).unwrap()
        };

        // moves take their source out; copies leave it in place but lock it
        // so later edits cannot blur the ground truth
        let (gap, anchor_id) = if kind == ActionKind::Bm {
            self.entries.drain(pos..pos + len);
            let anchor = self.entries.get(pos).map(|e| e.id);
            let gap = if in_place {
                pos
            } else {
                self.pick_gap(rng, Some(pos))?
            };
            (gap, anchor)
        } else {
            for e in &mut self.entries[pos..pos + len] {
                e.available = false;
            }
            let anchor = self.entries.get(pos + len).map(|e| e.id);
            (self.pick_gap(rng, None)?, anchor)
        };

        let inner_count = if len > 1 && rng.gen_bool(0.35) {
            rng.gen_range(1..=(len - 1).min(2))
        } else {
            0
        };
        let mut inner_offsets: Vec<u32> = (0..len as u32).collect();
        inner_offsets.shuffle(rng);
        inner_offsets.truncate(inner_count);
        inner_offsets.sort_unstable();
        let mut ids = Vec::new();
        let mut new_entries = Vec::new();
        for (k, original) in block.iter().enumerate() {
            let line = SourceLine::new(1, original.clone(), self.cfg.tab_size);
            let mut content = if delta != 0 && !line.is_blank() {
                let new_indent = (line.indent as i64 + delta).max(0) as usize;
                format!("{}{}", " ".repeat(new_indent), line.body())
            } else {
                original.clone()
            };
            if inner_offsets.contains(&(k as u32)) {
                let line = SourceLine::new(1, content.clone(), self.cfg.tab_size);
                let indent_str = leading_whitespace(&content).to_string();
                match perturb_line(line.body(), 0.78, rng) {
                    Some(body) => content = format!("{indent_str}{body}"),
                    None => inner_offsets.retain(|&o| o != k as u32),
                }
            }
            let id = self.fresh_id();
            ids.push(id);
            new_entries.push(Entry {
                id,
                content,
                left_line: None,
                available: false,
                pristine: false,
            });
        }
        for (k, e) in new_entries.into_iter().enumerate() {
            self.entries.insert(gap + k, e);
        }
        self.actions.push(Pending {
            kind,
            src: Some(src),
            dst_ids: ids,
            indent_delta: delta,
            inner_offsets,
        });
        // continue below everything this edit touched
        let anchor_pos = anchor_id
            .and_then(|id| self.entries.iter().position(|e| e.id == id))
            .unwrap_or(self.entries.len());
        Some(anchor_pos.max(gap + len))
    }

    /// A random insertion gap with pristine neighbors, excluding the
    /// removal point of an ordinary move (which would be a no-op).
    fn pick_gap(&self, rng: &mut ChaCha8Rng, removal_pos: Option<usize>) -> Option<usize> {
        let candidates: Vec<usize> = (0..=self.entries.len())
            .filter(|&g| self.gap_ok(g) && removal_pos != Some(g))
            .collect();
        candidates.choose(rng).copied()
    }

    fn finish(self, left: &[String]) -> GroundTruth {
        let mut line_of: BTreeMap<u64, u32> = BTreeMap::new();
        for (i, e) in self.entries.iter().enumerate() {
            line_of.insert(e.id, i as u32 + 1);
        }
        let right_version: Vec<String> = self.entries.iter().map(|e| e.content.clone()).collect();
        let mut actions = Vec::new();
        for p in &self.actions {
            let dst = if p.dst_ids.is_empty() {
                None
            } else {
                let first = line_of[&p.dst_ids[0]];
                let last = line_of[p.dst_ids.last().unwrap()];
                debug_assert_eq!(last - first + 1, p.dst_ids.len() as u32);
                Some(LineRange::new(first, last))
            };
            let mut action = EditAction::new(p.kind, p.src, dst);
            action.indent_delta = p.indent_delta;
            match p.kind {
                ActionKind::La | ActionKind::Lu | ActionKind::Ls => {
                    let d = dst.unwrap();
                    action.text_overrides = d
                        .lines()
                        .map(|r| (r, right_version[r as usize - 1].clone()))
                        .collect();
                }
                ActionKind::Bm | ActionKind::Bc => {
                    let (s, d) = (p.src.unwrap(), dst.unwrap());
                    action.inner_updates = p
                        .inner_offsets
                        .iter()
                        .map(|&k| (s.start + k, d.start + k))
                        .collect();
                    for k in 0..s.len() {
                        let dst_line = d.start + k;
                        let new = &right_version[dst_line as usize - 1];
                        let old = &left[(s.start + k) as usize - 1];
                        if new != old {
                            action.text_overrides.push((dst_line, new.clone()));
                        }
                    }
                }
                _ => {}
            }
            actions.push(action);
        }
        actions.sort_by_key(|a| (a.dst.map_or(u32::MAX, |d| d.start), a.src.map_or(0, |s| s.start)));
        let es = EditScript {
            actions,
            left_line_count: left.len() as u32,
            right_line_count: right_version.len() as u32,
        };
        GroundTruth { right_version, es }
    }
}

fn leading_whitespace(s: &str) -> &str {
    let end = s
        .char_indices()
        .find(|(_, c)| !c.is_whitespace())
        .map_or(s.len(), |(i, _)| i);
    &s[..end]
}

/// Rewrites a few characters of `line`, keeping the similarity ratio at or
/// above `min_ratio` and the result different from the input.
fn perturb_line(line: &str, min_ratio: f64, rng: &mut ChaCha8Rng) -> Option<String> {
    let chars: Vec<char> = line.chars().collect();
    let budget = ((1.0 - min_ratio) * chars.len() as f64).floor() as usize;
    if budget == 0 {
        return None;
    }
    let edits = budget.min(4);
    let replacements = ['q', 'z', '7', '3', 'k', '9'];
    for _ in 0..8 {
        let mut out = chars.clone();
        for _ in 0..edits {
            let idx = rng.gen_range(0..out.len());
            if out[idx].is_whitespace() {
                continue;
            }
            out[idx] = replacements[rng.gen_range(0..replacements.len())];
        }
        let candidate: String = out.into_iter().collect();
        if candidate != line {
            return Some(candidate);
        }
    }
    None
}

/// Whether two actions identify the same edit: same kind, same source
/// lines (adds have none), same target lines (deletes have none). Block
/// metadata is not part of the identity.
pub fn ea_equivalent(a: &EditAction, b: &EditAction) -> bool {
    a.kind == b.kind
        && (a.kind == ActionKind::La || a.src == b.src)
        && (a.kind == ActionKind::Ld || a.dst == b.dst)
}

fn equivalence_key(a: &EditAction) -> (ActionKind, Option<LineRange>, Option<LineRange>) {
    (
        a.kind,
        if a.kind == ActionKind::La { None } else { a.src },
        if a.kind == ActionKind::Ld { None } else { a.dst },
    )
}

/// Fraction of ground-truth actions that the computed script identifies,
/// consuming each computed action at most once. Empty truth scores 1.
pub fn matching_rate(computed: &EditScript, truth: &EditScript) -> f64 {
    if truth.actions.is_empty() {
        return 1.0;
    }
    let (matched, total) = tally_matches(computed, truth, None);
    matched as f64 / total as f64
}

/// Matched/total ground-truth counts, optionally restricted to one kind.
fn tally_matches(
    computed: &EditScript,
    truth: &EditScript,
    kind: Option<ActionKind>,
) -> (usize, usize) {
    let mut pool: BTreeMap<_, usize> = BTreeMap::new();
    for a in &computed.actions {
        *pool.entry(equivalence_key(a)).or_insert(0) += 1;
    }
    let mut matched = 0;
    let mut total = 0;
    for t in &truth.actions {
        if kind.is_some_and(|k| t.kind != k) {
            continue;
        }
        total += 1;
        let slot = pool.entry(equivalence_key(t)).or_insert(0);
        if *slot > 0 {
            *slot -= 1;
            matched += 1;
        }
    }
    (matched, total)
}

/// Two scripts are equivalent when each matches the other completely.
pub fn es_equivalent(a: &EditScript, b: &EditScript) -> bool {
    matching_rate(a, b) == 1.0 && matching_rate(b, a) == 1.0
}

// ---------------------------------------------------------------------
// Evaluation driver and report.
// ---------------------------------------------------------------------

/// Scores of one group of cases (one file extension, or the total row).
#[derive(Debug, Clone, Default, Serialize)]
pub struct EvalRow {
    pub group: String,
    pub cases: usize,
    pub truth_size_mean: f64,
    pub truth_size_median: f64,
    pub computed_size_mean: f64,
    pub computed_size_median: f64,
    pub kind_rates: BTreeMap<String, KindRate>,
    pub total_rate: f64,
    pub fully_matched_fraction: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct KindRate {
    pub matched: usize,
    pub total: usize,
}

impl KindRate {
    pub fn rate(&self) -> Option<f64> {
        (self.total > 0).then(|| self.matched as f64 / self.total as f64)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub cases: usize,
    pub seed: u64,
    pub kind_distribution: String,
    pub block_length_distribution: String,
    pub rows: Vec<EvalRow>,
    pub total: EvalRow,
}

#[derive(Debug, Default, Clone)]
struct Tally {
    truth_sizes: Vec<usize>,
    computed_sizes: Vec<usize>,
    matched_by_kind: BTreeMap<ActionKind, KindRate>,
    matched_total: usize,
    truth_total: usize,
    fully_matched: usize,
}

impl Tally {
    fn add_case(&mut self, computed: &EditScript, truth: &EditScript) {
        self.truth_sizes.push(truth.size());
        self.computed_sizes.push(computed.size());
        let mut all = 0;
        let mut matched_all = 0;
        for kind in ActionKind::ALL {
            let (matched, total) = tally_matches(computed, truth, Some(kind));
            let slot = self.matched_by_kind.entry(kind).or_default();
            slot.matched += matched;
            slot.total += total;
            matched_all += matched;
            all += total;
        }
        self.matched_total += matched_all;
        self.truth_total += all;
        if matched_all == all {
            self.fully_matched += 1;
        }
    }

    fn row(&self, group: &str) -> EvalRow {
        fn mean(v: &[usize]) -> f64 {
            if v.is_empty() {
                0.0
            } else {
                v.iter().sum::<usize>() as f64 / v.len() as f64
            }
        }
        fn median(v: &[usize]) -> f64 {
            if v.is_empty() {
                return 0.0;
            }
            let mut s = v.to_vec();
            s.sort_unstable();
            if s.len() % 2 == 1 {
                s[s.len() / 2] as f64
            } else {
                (s[s.len() / 2 - 1] + s[s.len() / 2]) as f64 / 2.0
            }
        }
        EvalRow {
            group: group.to_string(),
            cases: self.truth_sizes.len(),
            truth_size_mean: mean(&self.truth_sizes),
            truth_size_median: median(&self.truth_sizes),
            computed_size_mean: mean(&self.computed_sizes),
            computed_size_median: median(&self.computed_sizes),
            kind_rates: self
                .matched_by_kind
                .iter()
                .map(|(k, v)| (k.as_str().to_string(), v.clone()))
                .collect(),
            total_rate: if self.truth_total == 0 {
                1.0
            } else {
                self.matched_total as f64 / self.truth_total as f64
            },
            fully_matched_fraction: if self.truth_sizes.is_empty() {
                1.0
            } else {
                self.fully_matched as f64 / self.truth_sizes.len() as f64
            },
        }
    }
}

/// One generated evaluation case.
#[derive(Debug)]
pub struct EvalCase {
    pub file_name: String,
    pub seed: u64,
    pub left: Vec<String>,
    pub truth: GroundTruth,
    pub computed: EditScript,
}

/// Mutates the corpus files round-robin, runs the differencing pipeline on
/// each generated pair, and accumulates matching rates per extension group
/// plus a total row.
pub fn run_eval(
    corpus: &[(String, String)],
    cases: usize,
    seed: u64,
    cfg: &Config,
    mut per_case: impl FnMut(&EvalCase),
) -> EvalReport {
    let mut groups: BTreeMap<String, Tally> = BTreeMap::new();
    let mut total = Tally::default();
    for i in 0..cases {
        let (name, content) = &corpus[i % corpus.len()];
        let left: Vec<String> = crate::line::split_lines(content)
            .into_iter()
            .map(String::from)
            .collect();
        let case_seed = seed.wrapping_add(i as u64);
        let truth = mutate(&left, case_seed, cfg);
        let right_text = join_lines(&truth.right_version);
        let result = crate::pipeline::diff_lines(content, &right_text, cfg)
            .expect("pipeline failed on a generated pair");
        let group = name.rsplit('.').next().unwrap_or("other").to_string();
        groups
            .entry(group)
            .or_default()
            .add_case(&result.script, &truth.es);
        total.add_case(&result.script, &truth.es);
        per_case(&EvalCase {
            file_name: name.clone(),
            seed: case_seed,
            left,
            truth,
            computed: result.script,
        });
    }
    EvalReport {
        cases,
        seed,
        kind_distribution: "uniform over enabled kinds".to_string(),
        block_length_distribution: "geometric, mean 3, clamped to [2, 6]".to_string(),
        rows: groups.iter().map(|(g, t)| t.row(g)).collect(),
        total: total.row("total"),
    }
}

pub fn join_lines(lines: &[String]) -> String {
    let mut out = String::new();
    for l in lines {
        out.push_str(l);
        out.push('\n');
    }
    out
}

impl EvalReport {
    /// Aligned text table: one row per extension group plus the total.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# cases={} seed={} kinds: {}; block lengths: {}\n",
            self.cases, self.seed, self.kind_distribution, self.block_length_distribution
        ));
        let header = [
            "Group", "Cases", "GT mean", "GT med", "ES mean", "ES med", "Total", "LD", "LA",
            "LU", "LS", "LM", "BM", "BC", "Full ES",
        ];
        let mut table: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for row in self.rows.iter().chain(std::iter::once(&self.total)) {
            let mut cells = vec![
                row.group.clone(),
                row.cases.to_string(),
                format!("{:.1}", row.truth_size_mean),
                format!("{:.1}", row.truth_size_median),
                format!("{:.1}", row.computed_size_mean),
                format!("{:.1}", row.computed_size_median),
                format!("{:.3}", row.total_rate),
            ];
            for kind in ActionKind::ALL {
                let cell = row
                    .kind_rates
                    .get(kind.as_str())
                    .and_then(|r| r.rate())
                    .map(|r| format!("{r:.3}"))
                    .unwrap_or_else(|| "-".to_string());
                cells.push(cell);
            }
            cells.push(format!("{:.3}", row.fully_matched_fraction));
            table.push(cells);
        }
        let widths: Vec<usize> = (0..header.len())
            .map(|c| table.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        for row in &table {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect();
            out.push_str(line.join("  ").trim_end());
            out.push('\n');
        }
        out
    }
}
