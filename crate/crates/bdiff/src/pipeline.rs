//! End-to-end differencing: base diff, per-hunk split/merge and update
//! candidates, block candidates, assignment, and script deduction.

use crate::base_diff::{self, BaseDiffResult};
use crate::block_analysis::{contiguous_runs, find_bc_candidates, find_bm_candidates};
use crate::config::Config;
use crate::es_builder::{apply_es, deduce_es, BuildError, ReplayError};
use crate::hunk_analysis::{analyze_hunk, SplitMerge};
use crate::line::{source_lines, SourceLine};
use crate::matching::{iterative_km, Candidate};
use crate::script::{ActionKind, EditScript};

/// Everything one diff run produces, kept so callers can render or verify
/// without re-parsing the inputs.
#[derive(Debug)]
pub struct DiffResult {
    pub script: EditScript,
    pub left: Vec<SourceLine>,
    pub right: Vec<SourceLine>,
    pub base: BaseDiffResult,
}

/// Diffs two file bodies.
pub fn diff_lines(left_text: &str, right_text: &str, cfg: &Config) -> Result<DiffResult, BuildError> {
    let left = source_lines(left_text, cfg.tab_size);
    let right = source_lines(right_text, cfg.tab_size);
    let left_refs: Vec<&str> = left.iter().map(|l| l.raw.as_str()).collect();
    let right_refs: Vec<&str> = right.iter().map(|l| l.raw.as_str()).collect();
    let base = base_diff::compute(&left_refs, &right_refs, cfg.base_algorithm);

    let mut splits: Vec<SplitMerge> = Vec::new();
    let mut merges: Vec<SplitMerge> = Vec::new();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut remaining_deleted: Vec<u32> = Vec::new();
    let mut remaining_added: Vec<u32> = Vec::new();
    for hunk in &base.hunks {
        let analysis = analyze_hunk(hunk, &left, &right, cfg);
        splits.extend(analysis.splits);
        merges.extend(analysis.merges);
        candidates.extend(analysis.lu_candidates.into_iter().map(Candidate::from));
        remaining_deleted.extend(analysis.remaining_deleted);
        remaining_added.extend(analysis.remaining_added);
    }

    let deleted_runs = contiguous_runs(&remaining_deleted);
    let added_runs = contiguous_runs(&remaining_added);
    if cfg.enabled(ActionKind::Bm) {
        candidates.extend(
            find_bm_candidates(&deleted_runs, &added_runs, &left, &right, cfg)
                .into_iter()
                .map(Candidate::from),
        );
    }
    if cfg.enabled(ActionKind::Bc) {
        candidates.extend(
            find_bc_candidates(&added_runs, &left, &right, cfg)
                .into_iter()
                .map(Candidate::from),
        );
    }

    let mappings = iterative_km(candidates, &left, &right, &base, cfg);
    let script = deduce_es(&splits, &merges, &mappings, &base, &left, &right, cfg)?;
    Ok(DiffResult {
        script,
        left,
        right,
        base,
    })
}

/// Replays a computed script against the original left text and checks it
/// reproduces the right version exactly.
pub fn verify_replay(left_text: &str, right_text: &str, result: &DiffResult) -> Result<(), ReplayError> {
    let left: Vec<String> = crate::line::split_lines(left_text)
        .into_iter()
        .map(String::from)
        .collect();
    let right: Vec<String> = crate::line::split_lines(right_text)
        .into_iter()
        .map(String::from)
        .collect();
    let replayed = apply_es(&left, &result.script)?;
    if replayed == right {
        Ok(())
    } else {
        Err(ReplayError::CoverageMismatch {
            unclaimed_left: 0,
            unproduced_right: 0,
        })
    }
}
