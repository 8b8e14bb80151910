//! Algorithm configuration and the key=value config-file format.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::script::ActionKind;

/// Which base line-diff algorithm feeds the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BaseAlgorithm {
    Myers,
    #[default]
    Histogram,
}

impl BaseAlgorithm {
    pub fn parse(s: &str) -> Option<BaseAlgorithm> {
        match s.to_ascii_lowercase().as_str() {
            "myers" => Some(BaseAlgorithm::Myers),
            "histogram" => Some(BaseAlgorithm::Histogram),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BaseAlgorithm::Myers => "myers",
            BaseAlgorithm::Histogram => "histogram",
        }
    }
}

/// Tunable parameters shared by the whole pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Columns per tab stop when expanding indentation.
    pub tab_size: u32,
    /// Context window radius, in lines, for line similarity.
    pub ctx_len: u32,
    /// Weight of content similarity in the combined line score.
    pub line_weight: f64,
    /// Minimum combined score for a line-update candidate.
    pub sim_threshold: f64,
    /// Minimum per-line similarity for a non-identical block line pair.
    pub block_line_sim: f64,
    /// Maximum non-blank lines a split or merge may span.
    pub max_split_attempts: u32,
    /// Minimum effective length of a block move.
    pub min_bm: u32,
    /// Minimum effective length of a block copy.
    pub min_bc: u32,
    /// Line bodies treated as non-meaningful for block sizing.
    pub stop_words: BTreeSet<String>,
    /// Which edit-action kinds may be identified. LD and LA are the
    /// fallback representation and are always emitted.
    pub enabled: BTreeSet<ActionKind>,
    pub base_algorithm: BaseAlgorithm,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            tab_size: 4,
            ctx_len: 4,
            line_weight: 0.6,
            sim_threshold: 0.5,
            block_line_sim: 0.6,
            max_split_attempts: 8,
            min_bm: 2,
            min_bc: 2,
            stop_words: default_stop_words(),
            enabled: ActionKind::ALL.iter().copied().collect(),
            base_algorithm: BaseAlgorithm::Histogram,
        }
    }
}

/// The default stop-word set: structural tokens that carry no meaning of
/// their own, plus the empty string so blank lines never count.
pub fn default_stop_words() -> BTreeSet<String> {
    ["{", "}", "(", ")", ";", "[", "]", "{}", "();", ""]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: expected key=value, got `{text}`")]
    Syntax { line: usize, text: String },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },
    #[error("{0}")]
    Constraint(String),
}

impl Config {
    pub fn enabled(&self, kind: ActionKind) -> bool {
        // LD/LA are the primitive fallback and cannot be turned off.
        matches!(kind, ActionKind::Ld | ActionKind::La) || self.enabled.contains(&kind)
    }

    pub fn is_stop_word(&self, body: &str) -> bool {
        self.stop_words.contains(body.trim_end())
    }

    /// Checks the documented parameter bounds.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let unit = |name: &str, v: f64| {
            if (0.0..=1.0).contains(&v) {
                Ok(())
            } else {
                Err(ConfigError::Constraint(format!(
                    "{name} must lie in [0, 1], got {v}"
                )))
            }
        };
        unit("line-weight", self.line_weight)?;
        unit("sim-threshold", self.sim_threshold)?;
        unit("block-line-sim", self.block_line_sim)?;
        if self.tab_size == 0 {
            return Err(ConfigError::Constraint("tab-size must be positive".into()));
        }
        if self.max_split_attempts == 0 {
            return Err(ConfigError::Constraint("max-split must be positive".into()));
        }
        if self.min_bm < 2 || self.min_bc < 2 {
            return Err(ConfigError::Constraint(
                "min-bm and min-bc must be at least 2; one-line blocks are never block edits"
                    .into(),
            ));
        }
        Ok(())
    }

    /// Applies one `key=value` override. Keys match the CLI flag names.
    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let invalid = |reason: &str| ConfigError::InvalidValue {
            key: key.to_string(),
            reason: reason.to_string(),
        };
        match key {
            "algorithm" => {
                self.base_algorithm =
                    BaseAlgorithm::parse(value).ok_or_else(|| invalid("expected myers or histogram"))?;
            }
            "tab-size" => self.tab_size = value.parse().map_err(|_| invalid("expected a positive integer"))?,
            "ctx-len" => self.ctx_len = value.parse().map_err(|_| invalid("expected an integer"))?,
            "line-weight" => self.line_weight = value.parse().map_err(|_| invalid("expected a number"))?,
            "sim-threshold" => self.sim_threshold = value.parse().map_err(|_| invalid("expected a number"))?,
            "block-line-sim" => self.block_line_sim = value.parse().map_err(|_| invalid("expected a number"))?,
            "max-split" => self.max_split_attempts = value.parse().map_err(|_| invalid("expected a positive integer"))?,
            "min-bm" => self.min_bm = value.parse().map_err(|_| invalid("expected an integer"))?,
            "min-bc" => self.min_bc = value.parse().map_err(|_| invalid("expected an integer"))?,
            "stop-words" => {
                self.stop_words = value
                    .split(',')
                    .map(|w| w.trim().to_string())
                    .collect();
                self.stop_words.insert(String::new());
            }
            "disable" => {
                for part in value.split(',').filter(|p| !p.trim().is_empty()) {
                    let kind = ActionKind::parse(part.trim())
                        .ok_or_else(|| invalid("expected edit-action kinds (LD,LA,LU,LS,LM,BM,BC)"))?;
                    self.enabled.remove(&kind);
                }
            }
            _ => return Err(ConfigError::UnknownKey(key.to_string())),
        }
        Ok(())
    }
}

/// Parses the config-file format: one `key=value` per line, `#` comments,
/// blank lines ignored. Later keys override earlier ones.
pub fn parse_config_text(text: &str, into: &mut Config) -> Result<(), ConfigError> {
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: idx + 1,
            text: raw.to_string(),
        })?;
        into.apply_kv(key.trim(), value.trim())?;
    }
    into.validate()
}
