//! Physical source lines and indentation handling.

/// One physical line of a file version.
///
/// `index` is the 1-based line number within its version. `raw` holds the
/// full text without the line terminator. `indent` is the column width of
/// the leading whitespace after tab expansion; `body` is the text that
/// follows it. `raw` stays authoritative: `body` is a view, not a
/// re-rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceLine {
    pub index: u32,
    pub raw: String,
    pub indent: u32,
    body_start: usize,
}

impl SourceLine {
    pub fn new(index: u32, raw: String, tab_size: u32) -> Self {
        let (indent, body_start) = indent_of(&raw, tab_size);
        SourceLine {
            index,
            raw,
            indent,
            body_start,
        }
    }

    /// The line content with leading whitespace removed.
    pub fn body(&self) -> &str {
        &self.raw[self.body_start..]
    }

    /// A line is blank when nothing but whitespace remains.
    pub fn is_blank(&self) -> bool {
        self.body().is_empty()
    }
}

/// Width in columns of the leading whitespace of `raw`, with each tab
/// advancing to the next multiple of `tab_size`, plus the byte offset at
/// which the body starts.
fn indent_of(raw: &str, tab_size: u32) -> (u32, usize) {
    let tab_size = tab_size.max(1);
    let mut col = 0u32;
    for (pos, ch) in raw.char_indices() {
        match ch {
            ' ' => col += 1,
            '\t' => col = (col / tab_size + 1) * tab_size,
            _ => return (col, pos),
        }
    }
    (col, raw.len())
}

/// Splits `raw` into its indentation width and body under the tab-stop rule.
pub fn expand_indent(raw: &str, tab_size: u32) -> (u32, &str) {
    let (indent, body_start) = indent_of(raw, tab_size);
    (indent, &raw[body_start..])
}

/// Line terminator styles recognized on ingestion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminator {
    Lf,
    CrLf,
}

impl Terminator {
    pub fn as_str(self) -> &'static str {
        match self {
            Terminator::Lf => "\n",
            Terminator::CrLf => "\r\n",
        }
    }
}

/// Splits a file body into terminator-stripped lines.
///
/// An empty input has zero lines; a trailing terminator does not create a
/// final empty line, matching the usual line-oriented diff convention.
pub fn split_lines(text: &str) -> Vec<&str> {
    if text.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest = text;
    loop {
        match rest.find('\n') {
            Some(pos) => {
                let line = &rest[..pos];
                out.push(line.strip_suffix('\r').unwrap_or(line));
                rest = &rest[pos + 1..];
                if rest.is_empty() {
                    break;
                }
            }
            None => {
                out.push(rest);
                break;
            }
        }
    }
    out
}

/// The dominant terminator of `text`, used when rendering output that
/// needs to re-add terminators. LF wins ties and is the default for
/// terminator-free input.
pub fn dominant_terminator(text: &str) -> Terminator {
    let total_lf = text.matches('\n').count();
    let crlf = text.matches("\r\n").count();
    if crlf > total_lf - crlf {
        Terminator::CrLf
    } else {
        Terminator::Lf
    }
}

/// Parses a version's text into indexed source lines.
pub fn source_lines(text: &str, tab_size: u32) -> Vec<SourceLine> {
    split_lines(text)
        .into_iter()
        .enumerate()
        .map(|(i, raw)| SourceLine::new(i as u32 + 1, raw.to_string(), tab_size))
        .collect()
}
