use alloc::vec::Vec;

use super::{lex, Language, LexToken, TokenKind};

/// A Python statement line after implicit (bracket) and explicit
/// (backslash) joining.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalLine<'a> {
    /// Leading columns of the first physical line, tabs expanded to 8.
    pub indent_width: usize,
    /// Significant tokens without comments and continuation backslashes.
    pub tokens: Vec<LexToken<'a>>,
    pub implicit_join: bool,
    pub explicit_join: bool,
    /// Open bracket depth at the end; non-zero only for incomplete input.
    pub depth: usize,
    /// Ended by a line break (as opposed to end of input).
    pub terminated: bool,
    /// Byte range of the line, trailing line break included.
    pub start: usize,
    pub end: usize,
}

impl<'a> LogicalLine<'a> {
    pub fn is_blank(&self) -> bool {
        self.tokens.is_empty()
    }

    fn open(start: usize) -> Self {
        LogicalLine {
            indent_width: 0,
            tokens: Vec::new(),
            implicit_join: false,
            explicit_join: false,
            depth: 0,
            terminated: false,
            start,
            end: start,
        }
    }
}

/// Column width of a leading space/tab run.
pub fn indent_width(text: &str) -> usize {
    text.bytes().fold(0, |w, b| match b {
        b'\t' => (w / 8 + 1) * 8,
        // A form feed resets the column.
        b'\x0c' => 0,
        _ => w + 1,
    })
}

/// Groups Python source into logical lines.
pub fn logical_lines(source: &str) -> Vec<LogicalLine<'_>> {
    logical_lines_of(&lex(source, Language::Python))
}

pub(crate) fn logical_lines_of<'a>(tokens: &[LexToken<'a>]) -> Vec<LogicalLine<'a>> {
    let mut lines = Vec::new();
    let mut cur = LogicalLine::open(0);
    let mut fresh = true;
    let mut depth: usize = 0;
    let mut pending_backslash = false;

    for (i, tok) in tokens.iter().enumerate() {
        cur.end = tok.end();
        match tok.kind {
            TokenKind::Indent if fresh => cur.indent_width = indent_width(tok.text),
            TokenKind::Newline => {
                if depth > 0 {
                    cur.implicit_join = true;
                } else if pending_backslash {
                    cur.explicit_join = true;
                } else {
                    cur.terminated = true;
                    cur.depth = depth;
                    let next = LogicalLine::open(tok.end());
                    lines.push(core::mem::replace(&mut cur, next));
                    fresh = true;
                    continue;
                }
            }
            TokenKind::Whitespace | TokenKind::Indent => {}
            TokenKind::LineComment | TokenKind::BlockComment => fresh = false,
            TokenKind::Punct if tok.text == "\\" && matches!(tokens.get(i + 1).map(|t| t.kind), Some(TokenKind::Newline)) => {
                pending_backslash = true;
                fresh = false;
                continue;
            }
            _ => {
                fresh = false;
                match tok.text {
                    "(" | "[" | "{" if tok.kind == TokenKind::Punct => depth += 1,
                    ")" | "]" | "}" if tok.kind == TokenKind::Punct => depth = depth.saturating_sub(1),
                    _ => {}
                }
                cur.tokens.push(*tok);
            }
        }
        pending_backslash = false;
    }
    if cur.end > cur.start {
        cur.depth = depth;
        lines.push(cur);
    }
    lines
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn texts<'a>(l: &LogicalLine<'a>) -> Vec<&'a str> {
        l.tokens.iter().map(|t| t.text).collect()
    }

    #[test]
    fn single_statement() {
        let lines = logical_lines("x=1\n");
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].indent_width, 0);
        assert_eq!(texts(&lines[0]), vec!["x", "=", "1"]);
        assert!(lines[0].terminated);
    }

    #[test]
    fn implicit_join() {
        let lines = logical_lines("f(1,\n 2)\n");
        assert_eq!(lines.len(), 1);
        assert!(lines[0].implicit_join);
        assert_eq!(lines[0].depth, 0);
        assert_eq!(texts(&lines[0]), vec!["f", "(", "1", ",", "2", ")"]);
    }

    #[test]
    fn explicit_join() {
        let lines = logical_lines("x = 1 + \\\n    2\ny\n");
        assert_eq!(lines.len(), 2);
        assert!(lines[0].explicit_join);
        assert_eq!(texts(&lines[0]), vec!["x", "=", "1", "+", "2"]);
    }

    #[test]
    fn indented_block() {
        let lines = logical_lines("if a:\n    b=1\n");
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].indent_width, 0);
        assert_eq!(lines[1].indent_width, 4);
    }

    #[test]
    fn blank_and_comment_lines_are_empty() {
        let lines = logical_lines("a\n\n  # c\n\tb\n");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].is_blank());
        assert!(lines[2].is_blank());
        assert_eq!(lines[3].indent_width, 8);
    }

    #[test]
    fn incomplete_input_keeps_depth() {
        let lines = logical_lines("x = [1,\n");
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].depth, 1);
        assert!(!lines[0].terminated);
    }

    #[test]
    fn tab_expansion() {
        assert_eq!(indent_width("\t"), 8);
        assert_eq!(indent_width("  \t"), 8);
        assert_eq!(indent_width("\t  "), 10);
        assert_eq!(indent_width(""), 0);
    }
}
