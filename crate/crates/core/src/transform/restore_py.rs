//! Python layout: indentation levels are re-derived from the indentation
//! stack and each physical line is re-spaced; line structure is kept.

use alloc::string::String;
use alloc::vec::Vec;

use crate::lexkit::{indent_width, relex, Language, LexToken, TokenKind};

use super::StyleProfile;

const KEYWORDS: &[&str] = &[
    "and", "as", "assert", "async", "await", "break", "class", "continue", "def", "del", "elif", "else", "except",
    "finally", "for", "from", "global", "if", "import", "in", "is", "lambda", "nonlocal", "not", "or", "pass",
    "raise", "return", "try", "while", "with", "yield",
];

fn is_keyword(t: &LexToken<'_>) -> bool {
    t.kind == TokenKind::Word && KEYWORDS.contains(&t.text)
}

fn is_opener(t: &LexToken<'_>) -> bool {
    t.kind == TokenKind::Punct && matches!(t.text, "(" | "[" | "{")
}

fn is_closer(t: &LexToken<'_>) -> bool {
    t.kind == TokenKind::Punct && matches!(t.text, ")" | "]" | "}")
}

fn ends_operand(t: &LexToken<'_>) -> bool {
    match t.kind {
        TokenKind::Word => !is_keyword(t),
        TokenKind::Number | TokenKind::String => true,
        TokenKind::Punct => is_closer(t),
        TokenKind::Operator => t.text == "...",
        _ => false,
    }
}

struct Bracket {
    open: char,
    /// A parameter annotation was seen in the current argument.
    annotated: bool,
}

pub(crate) fn restore_python(tokens: &[LexToken<'_>], style: &StyleProfile) -> String {
    let width = style.indent_width;
    let mut out = String::with_capacity(tokens.last().map_or(0, |t| t.end()) * 5 / 4);
    let mut scratch = String::new();
    let mut stack: Vec<usize> = Vec::from([0]);
    let mut brackets: Vec<Bracket> = Vec::new();
    let mut explicit = false;
    let mut base_level = 0usize;
    let mut blanks = 0usize;

    let mut start = 0;
    while start < tokens.len() {
        let mut end = start;
        while end < tokens.len() && tokens[end].kind != TokenKind::Newline {
            end += 1;
        }
        let line = &tokens[start..end];
        let has_break = end < tokens.len();
        start = end + has_break as usize;

        let lead = match line.first() {
            Some(t) if t.kind == TokenKind::Indent => indent_width(t.text),
            _ => 0,
        };
        let content: Vec<LexToken<'_>> = line.iter().filter(|t| !t.kind.is_trivia()).copied().collect();
        if content.is_empty() {
            if !out.is_empty() {
                blanks += 1;
            }
            continue;
        }

        let continuation = !brackets.is_empty() || explicit;
        let level = if continuation {
            let depth = brackets.len();
            if is_closer(&content[0]) {
                base_level + depth.saturating_sub(1)
            } else {
                base_level + depth.max(1)
            }
        } else if content.iter().all(|t| t.kind.is_comment()) {
            let top = stack.len() - 1;
            let inside = stack.iter().skip(1).filter(|&&w| w <= lead).count();
            if lead > stack[top] {
                top + 1
            } else {
                inside
            }
        } else {
            while stack.len() > 1 && *stack.last().unwrap() > lead {
                stack.pop();
            }
            if lead > *stack.last().unwrap() {
                stack.push(lead);
            }
            base_level = stack.len() - 1;
            base_level
        };

        for _ in 0..blanks.min(style.max_blank_lines) {
            out.push('\n');
        }
        blanks = 0;
        for _ in 0..level * width {
            out.push(' ');
        }

        let mut prev: Option<LexToken<'_>> = None;
        let mut touching: Option<LexToken<'_>> = None;
        let mut prev_operand = false;
        let mut space_next = false;
        for (k, &t) in content.iter().enumerate() {
            let next = content.get(k + 1);
            let mut touches = false;
            if let Some(p) = prev {
                let space = space_next || space_before(&p, &t, prev_operand, &brackets, style);
                if t.kind == TokenKind::LineComment {
                    out.push_str("  ");
                } else if space || relex::merges_between(&mut scratch, touching.as_ref(), &p, &t, None, Language::Python) {
                    out.push(' ');
                } else {
                    touches = true;
                }
            }
            touching = if touches { prev } else { None };
            out.push_str(t.text);

            space_next = false;
            let mut operand = ends_operand(&t);
            match (t.kind, t.text) {
                (TokenKind::Punct, "(" | "[" | "{") => brackets.push(Bracket {
                    open: t.text.chars().next().unwrap(),
                    annotated: false,
                }),
                (TokenKind::Punct, ")" | "]" | "}") => {
                    brackets.pop();
                }
                (TokenKind::Punct, ",") => {
                    if let Some(b) = brackets.last_mut() {
                        b.annotated = false;
                    }
                    space_next = style.space_after_comma && !next.is_some_and(is_closer);
                }
                (TokenKind::Punct, ";") => space_next = true,
                (TokenKind::Operator, ":") => {
                    let slice = brackets.last().is_some_and(|b| b.open == '[');
                    if let Some(b) = brackets.last_mut() {
                        if b.open == '(' {
                            b.annotated = true;
                        }
                    }
                    space_next = !slice && !next.is_some_and(|n| is_closer(n) || n.is_punct(","));
                }
                (TokenKind::Operator, "...") => {}
                (TokenKind::Operator, ".") => {}
                (TokenKind::Operator, "@") if prev.is_none() => {}
                (TokenKind::Operator, op) => {
                    let bare = next.is_some_and(|n| is_closer(n) || n.is_punct(","));
                    if binary(op, prev_operand, &brackets) && !bare {
                        space_next = style.space_around_binary_ops;
                    }
                    operand = false;
                }
                (TokenKind::Word, _) if is_keyword(&t) => {
                    space_next = !next.is_some_and(|n| {
                        is_closer(n) || n.is_punct(",") || n.is_punct(";") || (n.kind == TokenKind::Operator && n.text == ":")
                    });
                }
                _ => {}
            }
            prev_operand = operand;
            prev = Some(t);
        }
        explicit = content.last().is_some_and(|t| t.is_punct("\\"));
        if has_break {
            out.push('\n');
        }
    }
    out
}

/// Whether `op` is used as a binary operator here.
fn binary(op: &str, prev_operand: bool, brackets: &[Bracket]) -> bool {
    match op {
        "=" => !brackets.last().is_some_and(|b| b.open == '(' && !b.annotated),
        "->" | ":=" => true,
        "-" | "+" | "~" | "*" | "**" | "@" => prev_operand,
        _ => true,
    }
}

fn space_before(p: &LexToken<'_>, t: &LexToken<'_>, prev_operand: bool, brackets: &[Bracket], style: &StyleProfile) -> bool {
    if t.kind.is_comment() {
        return true;
    }
    if t.is_punct("\\") {
        return true;
    }
    if is_opener(p) {
        return false;
    }
    match t.kind {
        TokenKind::Punct => match t.text {
            "(" | "[" | "{" => !prev_operand && is_keyword(p),
            _ => false,
        },
        TokenKind::Operator => match t.text {
            ":" | "." => t.text == "." && is_keyword(p),
            "..." => !prev_operand && !is_opener(p) && p.kind != TokenKind::Operator,
            op => {
                if p.kind == TokenKind::Operator && p.text == "." {
                    false
                } else if binary(op, prev_operand, brackets) {
                    style.space_around_binary_ops
                } else {
                    op != "=" && is_keyword(p)
                }
            }
        },
        TokenKind::Word | TokenKind::Number | TokenKind::String | TokenKind::Char => {
            if p.kind == TokenKind::Operator && p.text == "." {
                return is_keyword(t);
            }
            ends_operand(p) || is_keyword(p)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use crate::lexkit::Language::Python;
    use crate::transform::{restore, StyleProfile};

    fn fmt(src: &str) -> alloc::string::String {
        restore(src, Python, StyleProfile::python()).unwrap().output
    }

    #[test]
    fn spacing() {
        assert_eq!(fmt("x=1+2\n"), "x = 1 + 2\n");
        assert_eq!(fmt("f(a,b=-1,*c,**d)\n"), "f(a, b=-1, *c, **d)\n");
        assert_eq!(fmt("y=x[1:2]+{'a':1}\n"), "y = x[1:2] + {'a': 1}\n");
        assert_eq!(fmt("def f(a:int=3,/,*,b)->int:return-a\n"), "def f(a: int = 3, /, *, b) -> int: return -a\n");
        assert_eq!(fmt("from.import x\n"), "from . import x\n");
        assert_eq!(fmt("x=1# c\n"), "x = 1  # c\n");
        assert_eq!(fmt("if not(a)and b:pass\n"), "if not (a) and b: pass\n");
    }

    #[test]
    fn indentation_is_renormalized() {
        assert_eq!(fmt("if a:\n  b\n  if c:\n        d\ne\n"), "if a:\n    b\n    if c:\n        d\ne\n");
        assert_eq!(fmt("if a:\n\tb\n"), "if a:\n    b\n");
    }

    #[test]
    fn comment_lines_follow_their_level() {
        assert_eq!(fmt("if a:\n  b\n  # c\n# d\ne\n"), "if a:\n    b\n    # c\n# d\ne\n");
    }

    #[test]
    fn continuation_lines() {
        assert_eq!(fmt("x = f(1,\n      2)\n"), "x = f(1,\n    2)\n");
        assert_eq!(fmt("x = [\n1,\n]\n"), "x = [\n    1,\n]\n");
        assert_eq!(fmt("x = 1 + \\\n  2\n"), "x = 1 + \\\n    2\n");
    }

    #[test]
    fn blank_lines_are_capped() {
        assert_eq!(fmt("a\n\n\n\n\nb\n"), "a\n\n\nb\n");
        assert_eq!(fmt("\n\na\n"), "a\n");
    }

    #[test]
    fn empty_input() {
        assert_eq!(fmt(""), "");
    }
}
