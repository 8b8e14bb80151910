//! Final edit-script deduction and deterministic replay.
//!
//! `deduce_es` assembles committed splits/merges, the selected mapping
//! set, and the leftover deleted/added lines into one script. `apply_es`
//! replays a script against the left version; pipeline soundness means the
//! replay reproduces the right version byte for byte.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::base_diff::BaseDiffResult;
use crate::config::Config;
use crate::hunk_analysis::SplitMerge;
use crate::line::SourceLine;
use crate::matching::Candidate;
use crate::script::{ActionKind, EditAction, EditScript, LineRange};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("left line {line} is claimed by more than one action")]
    LeftClaimedTwice { line: u32 },
    #[error("right line {line} is produced by more than one action")]
    RightClaimedTwice { line: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("script declares {declared} left lines but input has {actual}")]
    LeftCountMismatch { declared: u32, actual: u32 },
    #[error("{kind} action references out-of-range line {line}")]
    OutOfRange { kind: ActionKind, line: u32 },
    #[error("left line {line} is claimed by more than one action")]
    LeftClaimedTwice { line: u32 },
    #[error("right line {line} is produced by more than one action")]
    RightClaimedTwice { line: u32 },
    #[error("{unclaimed_left} unclaimed left lines cannot fill {unproduced_right} remaining right lines")]
    CoverageMismatch {
        unclaimed_left: u32,
        unproduced_right: u32,
    },
    #[error("{kind} action carries no text for right line {line}")]
    MissingText { kind: ActionKind, line: u32 },
    #[error("split of left line {line} does not concatenate back to its source")]
    SplitMismatch { line: u32 },
}

/// Deduces the final edit script.
///
/// Mappings claim their lines; every deleted line left unclaimed becomes an
/// LD and every added line an LA, so disabling an action kind degrades the
/// affected lines to plain deletes and adds. Actions are ordered by
/// destination position, with deletes placed at the right-version position
/// where they happened.
pub fn deduce_es(
    splits: &[SplitMerge],
    merges: &[SplitMerge],
    mappings: &[Candidate],
    base: &BaseDiffResult,
    left: &[SourceLine],
    right: &[SourceLine],
    cfg: &Config,
) -> Result<EditScript, BuildError> {
    let mut claimed_left: BTreeMap<u32, ()> = BTreeMap::new();
    let mut claimed_right: BTreeMap<u32, ()> = BTreeMap::new();
    let claim_left = |range: LineRange, claimed_left: &mut BTreeMap<u32, ()>| {
        for line in range.lines() {
            if claimed_left.insert(line, ()).is_some() {
                return Err(BuildError::LeftClaimedTwice { line });
            }
        }
        Ok(())
    };
    let claim_right = |range: LineRange, claimed_right: &mut BTreeMap<u32, ()>| {
        for line in range.lines() {
            if claimed_right.insert(line, ()).is_some() {
                return Err(BuildError::RightClaimedTwice { line });
            }
        }
        Ok(())
    };

    let mut actions: Vec<EditAction> = Vec::new();
    for sm in splits.iter().chain(merges) {
        if !cfg.enabled(sm.kind) {
            continue;
        }
        claim_left(sm.src, &mut claimed_left)?;
        claim_right(sm.dst, &mut claimed_right)?;
        let mut action = EditAction::new(sm.kind, Some(sm.src), Some(sm.dst));
        if sm.kind == ActionKind::Ls {
            // pieces cannot be recovered from the source alone
            action.text_overrides = sm
                .dst
                .lines()
                .map(|d| (d, right[d as usize - 1].raw.clone()))
                .collect();
        }
        actions.push(action);
    }
    for m in mappings {
        if !cfg.enabled(m.kind) {
            continue;
        }
        if m.kind != ActionKind::Bc {
            claim_left(m.src, &mut claimed_left)?;
        }
        claim_right(m.dst, &mut claimed_right)?;
        let mut action = EditAction::new(m.kind, Some(m.src), Some(m.dst));
        match m.kind {
            ActionKind::Lu => {
                action.text_overrides =
                    vec![(m.dst.start, right[m.dst.start as usize - 1].raw.clone())];
            }
            ActionKind::Bm | ActionKind::Bc => {
                action.indent_delta = m.indent_delta;
                action.inner_updates = m.inner_updates.clone();
                // any pair whose bytes differ (updates, indent shifts,
                // whitespace restyling) carries the destination text
                for k in 0..m.src.len() {
                    let s = &left[(m.src.start + k) as usize - 1].raw;
                    let d = &right[(m.dst.start + k) as usize - 1].raw;
                    if s != d {
                        action.text_overrides.push((m.dst.start + k, d.clone()));
                    }
                }
            }
            _ => unreachable!("mappings are LU/BM/BC"),
        }
        actions.push(action);
    }
    for &l in &base.deleted {
        if !claimed_left.contains_key(&l) {
            actions.push(EditAction::new(
                ActionKind::Ld,
                Some(LineRange::single(l)),
                None,
            ));
        }
    }
    for &r in &base.added {
        if !claimed_right.contains_key(&r) {
            let mut action = EditAction::new(ActionKind::La, None, Some(LineRange::single(r)));
            action.text_overrides = vec![(r, right[r as usize - 1].raw.clone())];
            actions.push(action);
        }
    }

    // order by destination; a delete sorts just after the right line that
    // precedes its source position
    let mut proj = vec![0u32; left.len() + 2];
    {
        let mut r_before = 0u32;
        let mut pair_iter = base.unchanged.iter().peekable();
        for l in 1..=left.len() as u32 {
            proj[l as usize] = r_before;
            if let Some(&&(pl, pr)) = pair_iter.peek() {
                if pl == l {
                    r_before = pr;
                    pair_iter.next();
                }
            }
        }
    }
    actions.sort_by_key(|a| match a.dst {
        Some(d) => (d.start, 0u8, a.src.map_or(0, |s| s.start)),
        None => {
            let s = a.src.expect("LD carries a source").start;
            (proj[s as usize] + 1, 1u8, s)
        }
    });

    let es = EditScript {
        actions,
        left_line_count: left.len() as u32,
        right_line_count: right.len() as u32,
    };
    debug_assert_eq!(es.validate(), Ok(()));
    Ok(es)
}

/// Replays a script against the left version, producing the right version.
///
/// Destination lines are emitted in order; each is produced by exactly one
/// action or filled from the next unclaimed left line. Block lines copy
/// their source text unless the action recorded an override; split pieces
/// must concatenate back to their source line exactly.
pub fn apply_es(left: &[String], es: &EditScript) -> Result<Vec<String>, ReplayError> {
    if es.left_line_count != left.len() as u32 {
        return Err(ReplayError::LeftCountMismatch {
            declared: es.left_line_count,
            actual: left.len() as u32,
        });
    }
    let left_count = left.len() as u32;
    let mut claimed_left: BTreeMap<u32, ()> = BTreeMap::new();
    let mut produced: BTreeMap<u32, (usize, u32)> = BTreeMap::new();
    for (idx, a) in es.actions.iter().enumerate() {
        if let Some(s) = a.src {
            if s.start < 1 || s.end > left_count {
                return Err(ReplayError::OutOfRange {
                    kind: a.kind,
                    line: s.end,
                });
            }
            if a.kind != ActionKind::Bc {
                for line in s.lines() {
                    if claimed_left.insert(line, ()).is_some() {
                        return Err(ReplayError::LeftClaimedTwice { line });
                    }
                }
            }
        }
        if let Some(d) = a.dst {
            if d.start < 1 || d.end > es.right_line_count {
                return Err(ReplayError::OutOfRange {
                    kind: a.kind,
                    line: d.end,
                });
            }
            for (k, line) in d.lines().enumerate() {
                if produced.insert(line, (idx, k as u32)).is_some() {
                    return Err(ReplayError::RightClaimedTwice { line });
                }
            }
        }
    }
    let unchanged: Vec<u32> = (1..=left_count)
        .filter(|l| !claimed_left.contains_key(l))
        .collect();
    let unproduced = es.right_line_count as usize - produced.len();
    if unchanged.len() != unproduced {
        return Err(ReplayError::CoverageMismatch {
            unclaimed_left: unchanged.len() as u32,
            unproduced_right: unproduced as u32,
        });
    }

    fn override_for(a: &EditAction, line: u32) -> Option<&String> {
        a.text_overrides
            .iter()
            .find(|(d, _)| *d == line)
            .map(|(_, t)| t)
    }

    // split pieces must reassemble their source exactly
    for a in &es.actions {
        if a.kind != ActionKind::Ls {
            continue;
        }
        let (src, dst) = (a.src.unwrap(), a.dst.unwrap());
        let mut assembled = String::new();
        for d in dst.lines() {
            let piece = override_for(a, d).ok_or(ReplayError::MissingText {
                kind: a.kind,
                line: d,
            })?;
            assembled.push_str(piece);
        }
        if assembled != left[src.start as usize - 1] {
            return Err(ReplayError::SplitMismatch { line: src.start });
        }
    }

    let mut output = Vec::with_capacity(es.right_line_count as usize);
    let mut next_unchanged = unchanged.into_iter();
    for r in 1..=es.right_line_count {
        match produced.get(&r) {
            None => {
                let l = next_unchanged.next().expect("coverage already checked");
                output.push(left[l as usize - 1].clone());
            }
            Some(&(idx, k)) => {
                let a = &es.actions[idx];
                let text = match a.kind {
                    ActionKind::La | ActionKind::Lu | ActionKind::Ls => override_for(a, r)
                        .cloned()
                        .ok_or(ReplayError::MissingText { kind: a.kind, line: r })?,
                    ActionKind::Lm => {
                        let src = a.src.unwrap();
                        src.lines()
                            .map(|l| left[l as usize - 1].as_str())
                            .collect::<String>()
                    }
                    ActionKind::Bm | ActionKind::Bc => match override_for(a, r) {
                        Some(t) => t.clone(),
                        None => {
                            let s = a.src.unwrap().start + k;
                            left[s as usize - 1].clone()
                        }
                    },
                    ActionKind::Ld => unreachable!("deletes produce no destination"),
                };
                output.push(text);
            }
        }
    }
    Ok(output)
}
