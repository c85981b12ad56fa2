//! Equivalence checking on normalized significant-token streams.
//!
//! Two texts are equivalent when their significant tokens match one for one.
//! Comments compare by their interior text with whitespace runs collapsed,
//! unless strict mode is asked for. Python streams carry `NEWLINE`, `INDENT`
//! and `DEDENT` markers, so indentation structure is compared as well.

use alloc::borrow::Cow;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::lexkit::{indent_width, lex, Language, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    Token(TokenKind),
    Newline,
    Indent,
    Dedent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormToken<'a> {
    pub kind: NormKind,
    pub text: Cow<'a, str>,
    /// Position of the token (or of what triggered the marker), 1-based.
    pub line: u32,
    pub col: u32,
}

impl NormToken<'_> {
    fn same(&self, other: &NormToken<'_>) -> bool {
        self.kind == other.kind && self.text == other.text
    }
}

impl fmt::Display for NormToken<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            NormKind::Token(_) => f.write_str(&self.text),
            NormKind::Newline => f.write_str("NEWLINE"),
            NormKind::Indent => f.write_str("INDENT"),
            NormKind::Dedent => f.write_str("DEDENT"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub index: usize,
    /// `None` when that side ended first.
    pub left: Option<String>,
    pub right: Option<String>,
    pub left_pos: Option<(u32, u32)>,
    pub right_pos: Option<(u32, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub first_divergence: Option<Divergence>,
    /// Number of positions that compared equal.
    pub compared_tokens: usize,
}

fn comment_interior(kind: TokenKind, text: &str) -> &str {
    match kind {
        TokenKind::LineComment => text
            .strip_prefix("//")
            .or_else(|| text.strip_prefix('#'))
            .unwrap_or(text),
        TokenKind::BlockComment => {
            let inner = text.strip_prefix("/*").unwrap_or(text);
            inner.strip_suffix("*/").unwrap_or(inner)
        }
        _ => text,
    }
}

fn collapse(text: &str) -> Cow<'_, str> {
    let trimmed = text.trim();
    let already = !trimmed.contains(|c: char| c.is_whitespace() && c != ' ') && !trimmed.contains("  ");
    if already {
        return Cow::Borrowed(trimmed);
    }
    let mut out = String::with_capacity(trimmed.len());
    for (k, word) in trimmed.split_whitespace().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        out.push_str(word);
    }
    Cow::Owned(out)
}

/// The normalized significant-token stream of `source`.
pub fn normalize_stream(source: &str, language: Language) -> Vec<NormToken<'_>> {
    normalize_with(source, language, false)
}

/// As [`normalize_stream`]; `strict` compares comments byte for byte.
pub fn normalize_with(source: &str, language: Language, strict: bool) -> Vec<NormToken<'_>> {
    let tokens = lex(source, language);
    let mut out = Vec::with_capacity(tokens.len());
    let python = language == Language::Python;

    let mut stack: Vec<usize> = Vec::from([0]);
    let mut depth = 0usize;
    let mut continued = false;
    let mut line_start = true;
    let mut indent = 0usize;
    let mut line_has_code = false;
    let mut last = (1, 1);

    for t in &tokens {
        match t.kind {
            TokenKind::Whitespace => continue,
            TokenKind::Indent => {
                if line_start {
                    indent = indent_width(t.text);
                }
                continue;
            }
            TokenKind::Newline => {
                if python && depth == 0 && !continued {
                    if line_has_code {
                        out.push(marker(NormKind::Newline, t.line, t.col));
                    }
                    line_has_code = false;
                    line_start = true;
                    indent = 0;
                }
                continued = false;
                continue;
            }
            _ => {}
        }
        last = (t.line, t.col);
        if python {
            if t.is_punct("\\") {
                continued = true;
                continue;
            }
            continued = false;
            let comment = t.kind.is_comment();
            if line_start && !comment {
                if indent > *stack.last().unwrap() {
                    stack.push(indent);
                    out.push(marker(NormKind::Indent, t.line, t.col));
                } else {
                    while stack.len() > 1 && indent < *stack.last().unwrap() {
                        stack.pop();
                        out.push(marker(NormKind::Dedent, t.line, t.col));
                    }
                }
                line_start = false;
            }
            if !comment {
                line_has_code = true;
                match t.text {
                    "(" | "[" | "{" if t.kind == TokenKind::Punct => depth += 1,
                    ")" | "]" | "}" if t.kind == TokenKind::Punct => depth = depth.saturating_sub(1),
                    _ => {}
                }
            }
        }
        let text = if t.kind.is_comment() && !strict && !t.unterminated {
            collapse(comment_interior(t.kind, t.text))
        } else {
            Cow::Borrowed(t.text)
        };
        out.push(NormToken { kind: NormKind::Token(t.kind), text, line: t.line, col: t.col });
    }
    if python {
        if line_has_code {
            out.push(marker(NormKind::Newline, last.0, last.1));
        }
        for _ in 1..stack.len() {
            out.push(marker(NormKind::Dedent, last.0, last.1));
        }
    }
    out
}

fn marker(kind: NormKind, line: u32, col: u32) -> NormToken<'static> {
    NormToken { kind, text: Cow::Borrowed(""), line, col }
}

/// Compares `a` and `b` token by token.
pub fn equivalent(a: &str, b: &str, language: Language) -> EquivalenceReport {
    compare(&normalize_stream(a, language), &normalize_stream(b, language))
}

/// As [`equivalent`] with comments compared verbatim.
pub fn equivalent_strict(a: &str, b: &str, language: Language) -> EquivalenceReport {
    compare(&normalize_with(a, language, true), &normalize_with(b, language, true))
}

fn compare(left: &[NormToken<'_>], right: &[NormToken<'_>]) -> EquivalenceReport {
    let common = left.iter().zip(right).take_while(|(l, r)| l.same(r)).count();
    if common == left.len() && common == right.len() {
        return EquivalenceReport { equivalent: true, first_divergence: None, compared_tokens: common };
    }
    let l = left.get(common);
    let r = right.get(common);
    EquivalenceReport {
        equivalent: false,
        first_divergence: Some(Divergence {
            index: common,
            left: l.map(|t| t.to_string()),
            right: r.map(|t| t.to_string()),
            left_pos: l.map(|t| (t.line, t.col)),
            right_pos: r.map(|t| (t.line, t.col)),
        }),
        compared_tokens: common,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexkit::Language::*;

    fn texts(src: &str, lang: Language) -> Vec<String> {
        normalize_stream(src, lang).iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(texts("a  +  b", Java), ["a", "+", "b"]);
        assert!(texts("", Python).is_empty());
        assert_eq!(
            texts("if a:\n    b\n", Python),
            ["if", "a", ":", "NEWLINE", "INDENT", "b", "NEWLINE", "DEDENT"]
        );
    }

    #[test]
    fn equivalent_examples() {
        let r = equivalent("a+b", "a-b", Java);
        assert!(!r.equivalent);
        let d = r.first_divergence.unwrap();
        assert_eq!((d.index, d.left.as_deref(), d.right.as_deref()), (1, Some("+"), Some("-")));
        assert!(equivalent("x=1\n", "x = 1\n", Python).equivalent);
    }

    #[test]
    fn merged_tokens_diverge() {
        let r = equivalent("static bool f", "staticbool f", CSharp);
        assert!(!r.equivalent);
        assert_eq!(r.first_divergence.unwrap().index, 0);
    }

    #[test]
    fn length_mismatch_reports_missing_side() {
        let r = equivalent("a;", "a", Java);
        let d = r.first_divergence.unwrap();
        assert_eq!((d.index, d.left.as_deref(), d.right), (1, Some(";"), None));
        assert_eq!(r.compared_tokens, 1);
    }

    #[test]
    fn comments_compare_by_interior() {
        assert!(equivalent("/* a\n   b */x", "/* a b */ x", Java).equivalent);
        assert!(!equivalent("/* a b */", "// a b", Java).equivalent);
        assert!(!equivalent_strict("/* a\n   b */x", "/* a b */ x", Java).equivalent);
        assert!(equivalent("x  # note  here\n", "x # note here\n", Python).equivalent);
    }

    #[test]
    fn python_indentation_matters() {
        assert!(!equivalent("if a:\n    b\nc\n", "if a:\n    b\n    c\n", Python).equivalent);
        assert!(equivalent("if a:\n  b\nc\n", "if a:\n    b\nc\n", Python).equivalent);
        assert!(!equivalent("a\nb\n", "a b\n", Python).equivalent);
    }

    #[test]
    fn python_joined_lines_have_no_markers() {
        assert_eq!(texts("x = (1,\n  2)\n", Python), ["x", "=", "(", "1", ",", "2", ")", "NEWLINE"]);
        assert_eq!(texts("x = 1 + \\\n  2\n", Python), ["x", "=", "1", "+", "2", "NEWLINE"]);
        assert_eq!(texts("# c\nx\n", Python), ["c", "x", "NEWLINE"]);
    }

    #[test]
    fn python_final_dedents_without_newline() {
        assert_eq!(texts("if a:\n  b", Python), ["if", "a", ":", "NEWLINE", "INDENT", "b", "NEWLINE", "DEDENT"]);
    }

    #[test]
    fn relation_properties_on_samples() {
        let samples = ["a+b", "a + b", "a+ b", "a-b", "int x;", "int  x ;"];
        for a in samples {
            assert!(equivalent(a, a, Java).equivalent);
            for b in samples {
                assert_eq!(equivalent(a, b, Java).equivalent, equivalent(b, a, Java).equivalent);
            }
        }
    }
}
