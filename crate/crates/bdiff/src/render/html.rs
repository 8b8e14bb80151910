//! Static side-by-side HTML export. One self-contained document, no
//! scripts, no external fetches; block moves and copies carry paired
//! anchors between their source, their destination, and a sidebar entry.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::script::{ActionKind, EditScript};

const STYLE: &str = "\
body { font-family: monospace; margin: 0; background: #fafafa; color: #1a1a1a; }
.layout { display: flex; gap: 8px; padding: 8px; align-items: flex-start; }
.pane { flex: 3; background: #fff; border: 1px solid #ccc; overflow-x: auto; }
.sidebar { flex: 1; background: #fff; border: 1px solid #ccc; padding: 4px 8px; }
table { border-collapse: collapse; width: 100%; }
td.num { color: #999; text-align: right; padding: 0 6px; user-select: none; width: 1%; }
td.line { white-space: pre; padding: 0 4px; }
td.ld { background: #ffd7d5; }
td.la { background: #d1f7c4; }
td.lu { background: #fff3b0; }
td.ls { background: #ffe2c4; }
td.lm { background: #e8d5f2; }
td.bm { background: #cfe3ff; }
td.bc { background: #d5f0f0; }
.tag { font-size: 80%; border: 1px solid #888; border-radius: 3px; padding: 0 3px; margin-right: 4px; text-decoration: none; color: #333; }
.sidebar li { margin: 3px 0; }
h2 { font-size: 100%; margin: 4px 0; }
";

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            _ => out.push(c),
        }
    }
    out
}

#[derive(Default, Clone)]
struct LineMark {
    class: Option<&'static str>,
    /// (own anchor id, peer anchor id, action index) on a block boundary.
    anchor: Option<(String, String, usize)>,
}

fn class_of(kind: ActionKind) -> &'static str {
    match kind {
        ActionKind::Ld => "ld",
        ActionKind::La => "la",
        ActionKind::Lu => "lu",
        ActionKind::Ls => "ls",
        ActionKind::Lm => "lm",
        ActionKind::Bm => "bm",
        ActionKind::Bc => "bc",
    }
}

/// Renders the whole diff as one static document.
pub fn render_html(es: &EditScript, left: &[String], right: &[String]) -> String {
    let mut left_marks: BTreeMap<u32, LineMark> = BTreeMap::new();
    let mut right_marks: BTreeMap<u32, LineMark> = BTreeMap::new();
    let mut sidebar: Vec<String> = Vec::new();
    for (idx, a) in es.actions.iter().enumerate() {
        let class = class_of(a.kind);
        if let Some(s) = a.src {
            for line in s.lines() {
                left_marks.entry(line).or_default().class = Some(class);
            }
        }
        if let Some(d) = a.dst {
            for line in d.lines() {
                right_marks.entry(line).or_default().class = Some(class);
            }
        }
        let describe = |a: &crate::script::EditAction| match (a.src, a.dst) {
            (Some(s), Some(d)) => format!("{} {s} &rarr; {d}", a.kind),
            (Some(s), None) => format!("{} {s}", a.kind),
            (None, Some(d)) => format!("{} &rarr; {d}", a.kind),
            (None, None) => a.kind.to_string(),
        };
        if a.kind.is_block() {
            let (s, d) = (a.src.unwrap(), a.dst.unwrap());
            let src_id = format!("a{idx}-src");
            let dst_id = format!("a{idx}-dst");
            left_marks.entry(s.start).or_default().anchor =
                Some((src_id.clone(), dst_id.clone(), idx));
            right_marks.entry(d.start).or_default().anchor =
                Some((dst_id.clone(), src_id.clone(), idx));
            sidebar.push(format!(
                "<li id=\"action-{idx}\">{} (<a href=\"#{src_id}\">source</a>, <a href=\"#{dst_id}\">target</a>)</li>",
                describe(a)
            ));
        } else {
            sidebar.push(format!("<li id=\"action-{idx}\">{}</li>", describe(a)));
        }
    }

    let pane = |lines: &[String], marks: &BTreeMap<u32, LineMark>, side: &str| -> String {
        let mut rows = String::new();
        for (i, text) in lines.iter().enumerate() {
            let n = i as u32 + 1;
            let mark = marks.get(&n).cloned().unwrap_or_default();
            let class = mark.class.unwrap_or("ctx");
            let mut cell = String::new();
            if let Some((own, peer, action)) = &mark.anchor {
                write!(
                    cell,
                    "<a class=\"tag\" id=\"{own}\" href=\"#{peer}\">&#8644;</a><a class=\"tag\" href=\"#action-{action}\">#{action}</a>"
                )
                .unwrap();
            }
            cell.push_str(&escape(text));
            writeln!(
                rows,
                "<tr><td class=\"num\">{n}</td><td class=\"line {class}\" id=\"{side}{n}\">{cell}</td></tr>"
            )
            .unwrap();
        }
        rows
    };

    let mut doc = String::new();
    doc.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    doc.push_str("<title>diff</title>\n<style>\n");
    doc.push_str(STYLE);
    doc.push_str("</style>\n</head>\n<body>\n<div class=\"layout\">\n");
    doc.push_str("<div class=\"pane\"><table>\n");
    doc.push_str(&pane(left, &left_marks, "L"));
    doc.push_str("</table></div>\n");
    doc.push_str("<div class=\"pane\"><table>\n");
    doc.push_str(&pane(right, &right_marks, "R"));
    doc.push_str("</table></div>\n");
    doc.push_str("<div class=\"sidebar\">\n<h2>Edit actions</h2>\n<ol>\n");
    for entry in &sidebar {
        doc.push_str(entry);
        doc.push('\n');
    }
    doc.push_str("</ol>\n</div>\n</div>\n</body>\n</html>\n");
    doc
}

/// Minimal structural well-formedness check: tags must balance and nest.
/// Panics with a description of the first violation. Used by tests and
/// the acceptance suite.
pub fn check_structure(doc: &str) {
    const VOID: &[&str] = &["meta", "br", "hr", "img", "link", "input"];
    let mut stack: Vec<String> = Vec::new();
    let mut rest = doc;
    while let Some(start) = rest.find('<') {
        rest = &rest[start + 1..];
        let end = rest.find('>').expect("unclosed tag");
        let tag = &rest[..end];
        rest = &rest[end + 1..];
        if tag.starts_with('!') || tag.ends_with('/') {
            continue;
        }
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().unwrap_or_else(|| panic!("stray </{name}>"));
            assert_eq!(open, name, "mismatched close tag");
        } else {
            let name = tag.split_whitespace().next().unwrap().to_string();
            if !VOID.contains(&name.as_str()) {
                stack.push(name);
            }
        }
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}
