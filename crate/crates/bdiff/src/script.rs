//! The edit-script data model: typed edit actions, script validation,
//! sizing, and the JSON interchange format.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{Map, Value};
use thiserror::Error;

/// The seven edit-action kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ActionKind {
    /// Line delete.
    Ld,
    /// Line add.
    La,
    /// Line update.
    Lu,
    /// Line split (one line becomes several).
    Ls,
    /// Line merge (several lines become one).
    Lm,
    /// Block move.
    Bm,
    /// Block copy.
    Bc,
}

impl ActionKind {
    pub const ALL: [ActionKind; 7] = [
        ActionKind::Ld,
        ActionKind::La,
        ActionKind::Lu,
        ActionKind::Ls,
        ActionKind::Lm,
        ActionKind::Bm,
        ActionKind::Bc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ActionKind::Ld => "LD",
            ActionKind::La => "LA",
            ActionKind::Lu => "LU",
            ActionKind::Ls => "LS",
            ActionKind::Lm => "LM",
            ActionKind::Bm => "BM",
            ActionKind::Bc => "BC",
        }
    }

    pub fn parse(s: &str) -> Option<ActionKind> {
        match s.to_ascii_uppercase().as_str() {
            "LD" => Some(ActionKind::Ld),
            "LA" => Some(ActionKind::La),
            "LU" => Some(ActionKind::Lu),
            "LS" => Some(ActionKind::Ls),
            "LM" => Some(ActionKind::Lm),
            "BM" => Some(ActionKind::Bm),
            "BC" => Some(ActionKind::Bc),
            _ => None,
        }
    }

    pub fn is_block(self) -> bool {
        matches!(self, ActionKind::Bm | ActionKind::Bc)
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An inclusive, contiguous range of 1-based line numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineRange {
    pub start: u32,
    pub end: u32,
}

impl LineRange {
    pub fn new(start: u32, end: u32) -> Self {
        debug_assert!(start >= 1 && start <= end);
        LineRange { start, end }
    }

    pub fn single(line: u32) -> Self {
        LineRange::new(line, line)
    }

    pub fn len(&self) -> u32 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, line: u32) -> bool {
        self.start <= line && line <= self.end
    }

    pub fn overlaps(&self, other: &LineRange) -> bool {
        self.start <= other.end && other.start <= self.end
    }

    pub fn lines(&self) -> impl Iterator<Item = u32> {
        self.start..=self.end
    }
}

impl fmt::Display for LineRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}-{}", self.start, self.end)
        }
    }
}

/// A single edit action.
///
/// `src` ranges over left-version line numbers and is absent for LA; `dst`
/// ranges over right-version line numbers and is absent for LD.
/// `indent_delta` and `inner_updates` are meaningful only for BM/BC.
///
/// `text_overrides` carries the destination text an action introduces
/// (added lines, updated lines, split pieces, and block lines whose bytes
/// are not identical to their source). It exists for replay and is never
/// serialized; action equality and equivalence ignore it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditAction {
    pub kind: ActionKind,
    pub src: Option<LineRange>,
    pub dst: Option<LineRange>,
    pub indent_delta: i64,
    /// Positional (src, dst) line pairs inside a block that matched by
    /// similarity rather than identity.
    pub inner_updates: Vec<(u32, u32)>,
    pub text_overrides: Vec<(u32, String)>,
}

impl EditAction {
    pub fn new(kind: ActionKind, src: Option<LineRange>, dst: Option<LineRange>) -> Self {
        EditAction {
            kind,
            src,
            dst,
            indent_delta: 0,
            inner_updates: Vec::new(),
            text_overrides: Vec::new(),
        }
    }

    /// The positional identity of the action: kind, source lines, and
    /// destination lines. Everything the interchange format carries except
    /// block metadata.
    pub fn position_key(&self) -> (ActionKind, Option<LineRange>, Option<LineRange>) {
        (self.kind, self.src, self.dst)
    }
}

/// An ordered collection of edit actions plus the line totals they were
/// computed against.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EditScript {
    pub actions: Vec<EditAction>,
    pub left_line_count: u32,
    pub right_line_count: u32,
}

/// Validation failures for an edit script.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScriptError {
    #[error("{kind} action has malformed ranges")]
    MalformedAction { kind: ActionKind },
    #[error("left line {line} claimed by more than one action")]
    SourceClaimedTwice { line: u32 },
    #[error("right line {line} produced by more than one action")]
    DestClaimedTwice { line: u32 },
    #[error("{kind} action references out-of-range line {line}")]
    OutOfRange { kind: ActionKind, line: u32 },
    #[error("inner update ({src}, {dst}) falls outside its block")]
    InnerUpdateOutside { src: u32, dst: u32 },
}

impl EditScript {
    pub fn new(left_line_count: u32, right_line_count: u32) -> Self {
        EditScript {
            actions: Vec::new(),
            left_line_count,
            right_line_count,
        }
    }

    /// The script size: one per action plus one per line update recorded
    /// inside a block move or copy.
    pub fn size(&self) -> usize {
        self.actions
            .iter()
            .map(|a| 1 + if a.kind.is_block() { a.inner_updates.len() } else { 0 })
            .sum()
    }

    /// Checks the structural invariants: per-kind range shapes, bounds,
    /// destination-line uniqueness, and source-line uniqueness for every
    /// action kind except BC.
    pub fn validate(&self) -> Result<(), ScriptError> {
        let mut src_claimed: BTreeMap<u32, ()> = BTreeMap::new();
        let mut dst_claimed: BTreeMap<u32, ()> = BTreeMap::new();
        for a in &self.actions {
            let malformed = ScriptError::MalformedAction { kind: a.kind };
            match a.kind {
                ActionKind::Ld => {
                    if a.src.is_none() || a.dst.is_some() {
                        return Err(malformed);
                    }
                }
                ActionKind::La => {
                    if a.src.is_some() || a.dst.is_none() {
                        return Err(malformed);
                    }
                }
                ActionKind::Lu => {
                    let (s, d) = match (a.src, a.dst) {
                        (Some(s), Some(d)) => (s, d),
                        _ => return Err(malformed),
                    };
                    if s.len() != 1 || d.len() != 1 {
                        return Err(malformed);
                    }
                }
                ActionKind::Ls => {
                    let (s, d) = match (a.src, a.dst) {
                        (Some(s), Some(d)) => (s, d),
                        _ => return Err(malformed),
                    };
                    if s.len() != 1 || d.len() < 2 {
                        return Err(malformed);
                    }
                }
                ActionKind::Lm => {
                    let (s, d) = match (a.src, a.dst) {
                        (Some(s), Some(d)) => (s, d),
                        _ => return Err(malformed),
                    };
                    if s.len() < 2 || d.len() != 1 {
                        return Err(malformed);
                    }
                }
                ActionKind::Bm | ActionKind::Bc => {
                    let (s, d) = match (a.src, a.dst) {
                        (Some(s), Some(d)) => (s, d),
                        _ => return Err(malformed),
                    };
                    if s.len() != d.len() {
                        return Err(malformed);
                    }
                    for &(us, ud) in &a.inner_updates {
                        if !s.contains(us) || !d.contains(ud) || us - s.start != ud - d.start {
                            return Err(ScriptError::InnerUpdateOutside { src: us, dst: ud });
                        }
                    }
                }
            }
            if let Some(s) = a.src {
                if s.start < 1 || s.end > self.left_line_count {
                    return Err(ScriptError::OutOfRange {
                        kind: a.kind,
                        line: s.end,
                    });
                }
                if a.kind != ActionKind::Bc {
                    for line in s.lines() {
                        if src_claimed.insert(line, ()).is_some() {
                            return Err(ScriptError::SourceClaimedTwice { line });
                        }
                    }
                }
            }
            if let Some(d) = a.dst {
                if d.start < 1 || d.end > self.right_line_count {
                    return Err(ScriptError::OutOfRange {
                        kind: a.kind,
                        line: d.end,
                    });
                }
                for line in d.lines() {
                    if dst_claimed.insert(line, ()).is_some() {
                        return Err(ScriptError::DestClaimedTwice { line });
                    }
                }
            }
        }
        Ok(())
    }

    /// Order-insensitive equality on the actions' positional identities,
    /// including block metadata.
    pub fn same_actions(&self, other: &EditScript) -> bool {
        type ActionIdentity = (ActionKind, Option<LineRange>, Option<LineRange>, i64, Vec<(u32, u32)>);
        fn key_multiset(es: &EditScript) -> BTreeMap<ActionIdentity, usize> {
            let mut m = BTreeMap::new();
            for a in &es.actions {
                *m.entry((a.kind, a.src, a.dst, a.indent_delta, a.inner_updates.clone()))
                    .or_insert(0) += 1;
            }
            m
        }
        key_multiset(self) == key_multiset(other)
    }

    pub fn count_kind(&self, kind: ActionKind) -> usize {
        self.actions.iter().filter(|a| a.kind == kind).count()
    }
}

/// Errors from parsing the JSON interchange format.
#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid json: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("expected a top-level array")]
    NotAnArray,
    #[error("action {index}: {reason}")]
    BadAction { index: usize, reason: String },
}

fn range_to_json(range: &LineRange) -> Value {
    Value::Array(range.lines().map(Value::from).collect())
}

/// Renders a script to its JSON interchange form: a top-level array where
/// each element carries `type`, optional `src`/`dst` arrays of 1-based line
/// numbers, and `indentDelta`/`innerUpdates` for block actions.
pub fn render_json(es: &EditScript) -> String {
    let items: Vec<Value> = es
        .actions
        .iter()
        .map(|a| {
            let mut obj = Map::new();
            obj.insert("type".into(), Value::from(a.kind.as_str()));
            if let Some(src) = &a.src {
                obj.insert("src".into(), range_to_json(src));
            }
            if let Some(dst) = &a.dst {
                obj.insert("dst".into(), range_to_json(dst));
            }
            if a.kind.is_block() {
                obj.insert("indentDelta".into(), Value::from(a.indent_delta));
                obj.insert(
                    "innerUpdates".into(),
                    Value::Array(
                        a.inner_updates
                            .iter()
                            .map(|&(s, d)| Value::Array(vec![Value::from(s), Value::from(d)]))
                            .collect(),
                    ),
                );
            }
            Value::Object(obj)
        })
        .collect();
    serde_json::to_string_pretty(&Value::Array(items)).expect("json rendering cannot fail")
}

fn parse_range(value: &Value, index: usize, field: &str) -> Result<LineRange, JsonError> {
    let bad = |reason: String| JsonError::BadAction { index, reason };
    let arr = value
        .as_array()
        .ok_or_else(|| bad(format!("{field} must be an array")))?;
    if arr.is_empty() {
        return Err(bad(format!("{field} must be non-empty")));
    }
    let mut nums = Vec::with_capacity(arr.len());
    for v in arr {
        let n = v
            .as_u64()
            .filter(|&n| n >= 1 && n <= u32::MAX as u64)
            .ok_or_else(|| bad(format!("{field} holds a non-positive line number")))?;
        nums.push(n as u32);
    }
    for w in nums.windows(2) {
        if w[1] != w[0] + 1 {
            return Err(bad(format!("{field} must be contiguous and ascending")));
        }
    }
    Ok(LineRange::new(nums[0], *nums.last().unwrap()))
}

/// Parses the JSON interchange form back into an edit script.
///
/// Line totals are not part of the wire format; they are inferred as the
/// maxima referenced so the result can be validated structurally.
pub fn parse_json(text: &str) -> Result<EditScript, JsonError> {
    let value: Value = serde_json::from_str(text)?;
    let items = value.as_array().ok_or(JsonError::NotAnArray)?;
    let mut es = EditScript::default();
    for (index, item) in items.iter().enumerate() {
        let bad = |reason: &str| JsonError::BadAction {
            index,
            reason: reason.to_string(),
        };
        let obj = item.as_object().ok_or_else(|| bad("not an object"))?;
        let kind_str = obj
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing type"))?;
        let kind = ActionKind::parse(kind_str).ok_or_else(|| bad("unknown type"))?;
        let src = match obj.get("src") {
            Some(v) => Some(parse_range(v, index, "src")?),
            None => None,
        };
        let dst = match obj.get("dst") {
            Some(v) => Some(parse_range(v, index, "dst")?),
            None => None,
        };
        let mut action = EditAction::new(kind, src, dst);
        if kind.is_block() {
            action.indent_delta = obj
                .get("indentDelta")
                .and_then(Value::as_i64)
                .ok_or_else(|| bad("missing indentDelta"))?;
            let updates = obj
                .get("innerUpdates")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("missing innerUpdates"))?;
            for u in updates {
                let pair = u.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
                    bad("innerUpdates entries must be [src, dst] pairs")
                })?;
                let s = pair[0]
                    .as_u64()
                    .filter(|&n| n >= 1 && n <= u32::MAX as u64)
                    .ok_or_else(|| bad("bad innerUpdates src"))?;
                let d = pair[1]
                    .as_u64()
                    .filter(|&n| n >= 1 && n <= u32::MAX as u64)
                    .ok_or_else(|| bad("bad innerUpdates dst"))?;
                action.inner_updates.push((s as u32, d as u32));
            }
        } else if obj.contains_key("indentDelta") || obj.contains_key("innerUpdates") {
            return Err(bad("indentDelta/innerUpdates are only valid on BM/BC"));
        }
        es.actions.push(action);
    }
    es.left_line_count = es
        .actions
        .iter()
        .filter_map(|a| a.src.map(|r| r.end))
        .max()
        .unwrap_or(0);
    es.right_line_count = es
        .actions
        .iter()
        .filter_map(|a| a.dst.map(|r| r.end))
        .max()
        .unwrap_or(0);
    Ok(es)
}
