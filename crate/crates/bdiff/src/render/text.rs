//! Plain-text rendering: one action per line, git-like ± prefixes for
//! plain deletes and adds.

use crate::script::{ActionKind, EditScript};

pub fn render_text(es: &EditScript, left: &[String], right: &[String]) -> String {
    let mut out = String::new();
    for a in &es.actions {
        match a.kind {
            ActionKind::Ld => {
                let s = a.src.unwrap();
                for line in s.lines() {
                    out.push_str(&format!("- {:<5} {}\n", line, left[line as usize - 1]));
                }
            }
            ActionKind::La => {
                let d = a.dst.unwrap();
                for line in d.lines() {
                    out.push_str(&format!("+ {:<5} {}\n", line, right[line as usize - 1]));
                }
            }
            ActionKind::Lu => {
                let (s, d) = (a.src.unwrap(), a.dst.unwrap());
                out.push_str(&format!(
                    "U {} -> {} | {} => {}\n",
                    s.start,
                    d.start,
                    left[s.start as usize - 1].trim_end(),
                    right[d.start as usize - 1].trim_end()
                ));
            }
            ActionKind::Ls => {
                let (s, d) = (a.src.unwrap(), a.dst.unwrap());
                out.push_str(&format!("S {} -> {}\n", s.start, d));
            }
            ActionKind::Lm => {
                let (s, d) = (a.src.unwrap(), a.dst.unwrap());
                out.push_str(&format!("M {} -> {}\n", s, d.start));
            }
            ActionKind::Bm | ActionKind::Bc => {
                let (s, d) = (a.src.unwrap(), a.dst.unwrap());
                out.push_str(&format!(
                    "{} {} -> {} | indent {:+} | updates {}\n",
                    a.kind, s, d, a.indent_delta,
                    a.inner_updates.len()
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::{EditAction, LineRange};

    #[test]
    fn renders_one_line_per_action() {
        let left = vec!["gone".to_string(), "kept".to_string()];
        let right = vec!["kept".to_string(), "fresh".to_string()];
        let mut es = EditScript::new(2, 2);
        es.actions.push(EditAction::new(
            ActionKind::Ld,
            Some(LineRange::single(1)),
            None,
        ));
        es.actions.push(EditAction::new(
            ActionKind::La,
            None,
            Some(LineRange::single(2)),
        ));
        let text = render_text(&es, &left, &right);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("- 1"));
        assert!(lines[0].ends_with("gone"));
        assert!(lines[1].starts_with("+ 2"));
        assert!(lines[1].ends_with("fresh"));
    }

    #[test]
    fn block_lines_carry_ranges_and_delta() {
        let left: Vec<String> = (1..=4).map(|i| format!("l{i}")).collect();
        let right: Vec<String> = (1..=4).map(|i| format!("r{i}")).collect();
        let mut es = EditScript::new(4, 4);
        let mut a = EditAction::new(
            ActionKind::Bm,
            Some(LineRange::new(1, 2)),
            Some(LineRange::new(3, 4)),
        );
        a.indent_delta = -4;
        a.inner_updates = vec![(2, 4)];
        es.actions.push(a);
        let text = render_text(&es, &left, &right);
        assert_eq!(text, "BM 1-2 -> 3-4 | indent -4 | updates 1\n");
    }
}
