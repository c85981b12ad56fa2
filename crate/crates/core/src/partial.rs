//! Truncated code: split off the unfinished tail, repair bracket balance of
//! the body, transform both parts and join them again.

use alloc::string::String;
use alloc::vec::Vec;

use crate::lexkit::{lex, relex, Language, LexToken, TokenKind};
use crate::transform::{
    emit_stream, restore, strip_with, FormatConfig, GapPolicy, LexFlag, StyleProfile, TransformResult,
};
use crate::Error;

/// `source` cut in two: `body` ends at a statement boundary, `tail` holds the
/// unfinished rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SplitCode<'a> {
    pub body: &'a str,
    pub tail: &'a str,
    pub split_offset: usize,
}

/// Brackets added by [`balance_brackets`], in text order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepairLedger {
    pub prepended_openers: Vec<char>,
    pub appended_closers: Vec<char>,
}

impl RepairLedger {
    pub fn is_empty(&self) -> bool {
        self.prepended_openers.is_empty() && self.appended_closers.is_empty()
    }
}

/// A closer that met an opener of another kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mismatch {
    pub line: u32,
    pub col: u32,
    pub expected: char,
    pub found: char,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Balanced {
    pub text: String,
    pub ledger: RepairLedger,
    pub mismatches: Vec<Mismatch>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Strip,
    Restore,
}

/// What [`transform_partial`] should do with the body.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialMode {
    Strip(FormatConfig),
    Restore(StyleProfile),
}

impl PartialMode {
    pub fn direction(&self) -> Direction {
        match self {
            PartialMode::Strip(_) => Direction::Strip,
            PartialMode::Restore(_) => Direction::Restore,
        }
    }
}

fn closer_for(open: char) -> char {
    match open {
        '(' => ')',
        '[' => ']',
        _ => '}',
    }
}

fn opener_for(close: char) -> char {
    match close {
        ')' => '(',
        ']' => '[',
        _ => '{',
    }
}

fn bracket(t: &LexToken<'_>) -> Option<char> {
    if t.kind != TokenKind::Punct {
        return None;
    }
    match t.text {
        "(" | ")" | "[" | "]" | "{" | "}" => t.text.chars().next(),
        _ => None,
    }
}

/// A directive or line comment that a trailing `\` continues past the end
/// of the text.
fn spliced_at_end(t: &LexToken<'_>, len: usize) -> bool {
    let text = t.text.trim_end_matches(['\n', '\r']);
    matches!(t.kind, TokenKind::Preprocessor | TokenKind::LineComment)
        && t.end() == len
        && text.ends_with('\\')
        && t.text.len() - text.len() <= 2
}

/// Splits after the last statement boundary. The body also takes the rest of
/// that line when only trivia follows, up to and including the line break.
pub fn split_unfinished(source: &str, language: Language) -> SplitCode<'_> {
    let tokens = lex(source, language);
    let mut depth: usize = 0;
    let mut cut: Option<usize> = None;
    let mut continued = false;
    let mut last_code: Option<usize> = None;
    for (i, t) in tokens.iter().enumerate() {
        if t.unterminated || (language.is_c_family() && spliced_at_end(t, source.len())) {
            break;
        }
        if language == Language::Python {
            match t.kind {
                TokenKind::Newline => {
                    if depth == 0 && !continued && last_code.is_some() {
                        cut = Some(i);
                    }
                    continued = false;
                    last_code = None;
                }
                TokenKind::Whitespace | TokenKind::Indent => {}
                _ => {
                    continued = t.is_punct("\\");
                    last_code = Some(i);
                }
            }
        } else if depth == 0
            && (t.kind == TokenKind::Preprocessor || (t.kind == TokenKind::Punct && matches!(t.text, ";" | "{" | "}")))
        {
            cut = Some(i);
        }
        match bracket(t) {
            Some('(' | '[') => depth += 1,
            Some(')' | ']') => depth = depth.saturating_sub(1),
            _ => {}
        }
    }
    let Some(i) = cut else {
        return SplitCode { body: "", tail: source, split_offset: 0 };
    };
    let mut offset = tokens[i].end();
    if tokens[i].kind != TokenKind::Newline {
        for t in &tokens[i + 1..] {
            match t.kind {
                TokenKind::Whitespace | TokenKind::Indent => {}
                TokenKind::Newline => {
                    offset = t.end();
                    break;
                }
                _ => break,
            }
        }
    }
    SplitCode { body: &source[..offset], tail: &source[offset..], split_offset: offset }
}

/// Closes unmatched openers at the end and opens unmatched closers at the
/// start. Brackets in strings and comments do not count.
pub fn balance_brackets(body: &str, language: Language) -> Balanced {
    let tokens = lex(body, language);
    let mut stack: Vec<char> = Vec::new();
    let mut unmatched_closers: Vec<char> = Vec::new();
    let mut mismatches = Vec::new();
    let mut last_sig: Option<&LexToken<'_>> = None;
    for t in &tokens {
        if !t.kind.is_trivia() {
            last_sig = Some(t);
        }
        let Some(c) = bracket(t) else { continue };
        match c {
            '(' | '[' | '{' => stack.push(c),
            _ => match stack.last() {
                Some(&open) if closer_for(open) == c => {
                    stack.pop();
                }
                Some(&open) => {
                    mismatches.push(Mismatch { line: t.line, col: t.col, expected: closer_for(open), found: c });
                    unmatched_closers.push(c);
                }
                None => unmatched_closers.push(c),
            },
        }
    }
    let prepended_openers: Vec<char> = unmatched_closers.iter().rev().map(|&c| opener_for(c)).collect();
    let appended_closers: Vec<char> = stack.iter().rev().map(|&c| closer_for(c)).collect();

    let mut text = String::with_capacity(body.len() + prepended_openers.len() + appended_closers.len() + 2);
    if !prepended_openers.is_empty() {
        text.extend(prepended_openers.iter());
        text.push('\n');
    }
    text.push_str(body);
    if !appended_closers.is_empty() {
        // A comment to end of line or a directive would swallow the closers.
        let open_line = last_sig.filter(|t| {
            matches!(t.kind, TokenKind::LineComment | TokenKind::Preprocessor) && t.end() == body.len()
        });
        if open_line.is_some() || (language == Language::Python && !body.is_empty() && !body.ends_with('\n')) {
            text.push('\n');
        }
        // After a trailing `\` the first break only splices the next line on.
        if open_line.is_some_and(|t| t.text.ends_with('\\')) {
            text.push('\n');
        }
        text.extend(appended_closers.iter());
    }
    Balanced {
        text,
        ledger: RepairLedger { prepended_openers, appended_closers },
        mismatches,
    }
}

/// Removes the synthetic brackets and the layout placed around them.
pub fn remove_ledger(text: &str, language: Language, ledger: &RepairLedger) -> Result<String, Error> {
    if ledger.is_empty() {
        return Ok(String::from(text));
    }
    let tokens = lex(text, language);
    let sig: Vec<usize> = (0..tokens.len()).filter(|&i| !tokens[i].kind.is_trivia()).collect();

    let mut start = 0;
    for (k, &expected) in ledger.prepended_openers.iter().enumerate() {
        let i = *sig.get(k).ok_or(Error::LedgerMismatch { expected, found: String::new() })?;
        check(&tokens[i], expected)?;
        start = i + 1;
    }
    // The rest of the synthetic openers' line goes with them.
    if !ledger.prepended_openers.is_empty() {
        while start < tokens.len() && tokens[start].kind.is_trivia() {
            start += 1;
            if tokens[start - 1].kind == TokenKind::Newline {
                break;
            }
        }
    }

    let n = ledger.appended_closers.len();
    let mut end = tokens.len();
    if n > 0 {
        if sig.len() < n + ledger.prepended_openers.len() {
            return Err(Error::LedgerMismatch { expected: ledger.appended_closers[0], found: String::new() });
        }
        let first = sig.len() - n;
        for (k, &expected) in ledger.appended_closers.iter().enumerate() {
            check(&tokens[sig[first + k]], expected)?;
        }
        end = sig[first];
        while end > start && tokens[end - 1].kind.is_trivia() {
            end -= 1;
        }
    }
    let from = tokens.get(start).map_or(text.len(), |t| t.offset);
    let to = if end == tokens.len() { text.len() } else { tokens[end].offset };
    Ok(String::from(&text[from..to.max(from)]))
}

fn check(t: &LexToken<'_>, expected: char) -> Result<(), Error> {
    if bracket(t) == Some(expected) {
        Ok(())
    } else {
        Err(Error::LedgerMismatch { expected, found: String::from(t.text) })
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

fn is_operator_char(c: char) -> bool {
    "+-*/%<>=!&|^~?:.#@".contains(c)
}

/// Character-class rule for tails, used on top of the re-lex oracle: keeps a
/// space between identifier characters, between operator characters, before
/// a quote that follows an identifier and around a number's decimal point.
fn needs_space(left: &str, right: &str) -> bool {
    let (Some(a), Some(b)) = (left.chars().next_back(), right.chars().next()) else {
        return false;
    };
    (is_ident_char(a) && is_ident_char(b))
        || (is_operator_char(a) && is_operator_char(b))
        || (is_ident_char(a) && (b == '"' || b == '\''))
        || (a.is_ascii_digit() && b == '.')
        || (a == '.' && b.is_ascii_digit())
}

/// Whitespace-only rewriting of an unfinished tail. Strings and comments,
/// including unterminated ones, are copied as they are.
pub fn tail_rewrite(tail: &str, language: Language, direction: Direction) -> String {
    let tokens = lex(tail, language);
    let mut out = String::with_capacity(tail.len());
    match direction {
        Direction::Strip => {
            let policy = GapPolicy {
                remove_indentation: language.is_c_family(),
                remove_whitespace: true,
                remove_newlines: language.is_c_family(),
                drop_blank_lines: false,
            };
            let mut scratch = String::new();
            emit_stream(
                &tokens,
                policy,
                |before, a, b, after| {
                    needs_space(a.text, b.text) || relex::merges_between(&mut scratch, before, a, b, after, language)
                },
                &mut out,
            );
        }
        Direction::Restore => {
            for (i, t) in tokens.iter().enumerate() {
                match t.kind {
                    TokenKind::Whitespace => out.push(' '),
                    TokenKind::Newline => out.push('\n'),
                    TokenKind::Indent => out.push_str(t.text),
                    _ => {
                        let touching = i > 0 && !tokens[i - 1].kind.is_trivia();
                        if touching && (tokens[i - 1].is_punct(",") || flanked_eq(&tokens, i) || flanked_eq(&tokens, i - 1)) {
                            out.push(' ');
                        }
                        out.push_str(t.text);
                    }
                }
            }
        }
    }
    out
}

/// A lone `=` with identifier characters on both sides.
fn flanked_eq(tokens: &[LexToken<'_>], i: usize) -> bool {
    let t = &tokens[i];
    t.kind == TokenKind::Operator
        && t.text == "="
        && ends_ident(tokens[..i].iter().rev().find(|t| !t.kind.is_trivia()))
        && tokens[i + 1..].iter().find(|t| !t.kind.is_trivia()).is_some_and(starts_ident)
}

fn ends_ident(t: Option<&LexToken<'_>>) -> bool {
    t.and_then(|t| t.text.chars().next_back()).is_some_and(is_ident_char)
}

fn starts_ident(t: &LexToken<'_>) -> bool {
    t.text.chars().next().is_some_and(is_ident_char)
}

fn last_significant<'a>(tokens: &[LexToken<'a>]) -> Option<LexToken<'a>> {
    tokens.iter().rev().find(|t| !t.kind.is_trivia()).copied()
}

fn first_significant<'a>(tokens: &[LexToken<'a>]) -> Option<LexToken<'a>> {
    tokens.iter().find(|t| !t.kind.is_trivia()).copied()
}

/// Removes the common leading indentation of all non-blank lines. Lines
/// inside multi-line strings and comments are left alone.
fn dedent(text: &str, language: Language) -> String {
    let tokens = lex(text, language);
    // Leading indentation of each line that starts outside any token:
    // (offset of the indent, its length).
    let mut lines: Vec<(usize, usize)> = Vec::new();
    let mut at_start = true;
    for (i, t) in tokens.iter().enumerate() {
        if t.kind == TokenKind::Newline {
            at_start = true;
            continue;
        }
        if !at_start {
            continue;
        }
        at_start = false;
        let (len, rest) = if matches!(t.kind, TokenKind::Indent | TokenKind::Whitespace) {
            (t.text.len() - t.text.trim_start_matches(' ').len(), tokens.get(i + 1))
        } else {
            (0, Some(t))
        };
        if rest.is_some_and(|r| r.kind != TokenKind::Newline) {
            lines.push((t.offset, len));
        }
    }
    let common = lines.iter().map(|&(_, len)| len).min().unwrap_or(0);
    if common == 0 {
        return String::from(text);
    }
    let mut out = String::with_capacity(text.len());
    let mut pos = 0;
    for (offset, _) in lines {
        out.push_str(&text[pos..offset]);
        pos = offset + common;
    }
    out.push_str(&text[pos..]);
    out
}

/// The whole pipeline for possibly incomplete code.
pub fn transform_partial(source: &str, language: Language, mode: PartialMode) -> Result<TransformResult, Error> {
    let all_tokens = lex(source, language);
    let flags = LexFlag::collect(&all_tokens);
    let split = split_unfinished(source, language);
    let balanced = balance_brackets(split.body, language);
    let direction = mode.direction();
    let tail = tail_rewrite(split.tail, language, direction);

    let (output, clamped) = match mode {
        PartialMode::Strip(config) => {
            let (effective, clamped) = config.clamp(language);
            let stripped = strip_with(&lex(&balanced.text, language), language, effective);
            let body = remove_ledger(&stripped, language, &balanced.ledger)?;
            (join_stripped(body, &tail, language), clamped)
        }
        PartialMode::Restore(style) => {
            let style = style.normalized();
            let restored = match restore(&balanced.text, language, style) {
                Ok(r) => remove_ledger(&r.output, language, &balanced.ledger)?,
                Err(_) => tail_rewrite(split.body, language, Direction::Restore),
            };
            let body = if balanced.ledger.prepended_openers.is_empty() { restored } else { dedent(&restored, language) };
            let depth = balanced.ledger.appended_closers.iter().filter(|&&c| c == '}').count();
            (join_restored(body, &tail, language, depth * style.indent_width), Vec::new())
        }
    };
    Ok(TransformResult::new(source, output, clamped, flags))
}

fn join_stripped(mut body: String, tail: &str, language: Language) -> String {
    let body_tokens = lex(&body, language);
    let tail_tokens = lex(tail, language);
    if let (Some(a), Some(b)) = (last_significant(&body_tokens), first_significant(&tail_tokens)) {
        let ends_line = body.ends_with('\n') || tail.starts_with('\n');
        if matches!(a.kind, TokenKind::LineComment | TokenKind::Preprocessor) || b.kind == TokenKind::Preprocessor {
            if !ends_line {
                body.push('\n');
            }
        } else if !ends_line && seam_merges(&body, tail, &body_tokens, &tail_tokens, language) {
            body.push(' ');
        }
    }
    body.push_str(tail);
    body
}

/// Whether writing `tail` right after `body` changes the token stream.
fn seam_merges(body: &str, tail: &str, body_tokens: &[LexToken<'_>], tail_tokens: &[LexToken<'_>], language: Language) -> bool {
    let mut joined = String::with_capacity(body.len() + tail.len());
    joined.push_str(body);
    joined.push_str(tail);
    let whole = lex(&joined, language);
    let sig = |t: &&LexToken<'_>| !t.kind.is_trivia();
    let parts = body_tokens.iter().chain(tail_tokens).filter(sig);
    !parts.map(|t| (t.kind, t.text)).eq(whole.iter().filter(sig).map(|t| (t.kind, t.text)))
}

fn join_restored(body: String, tail: &str, language: Language, indent: usize) -> String {
    if tail.trim().is_empty() {
        let mut out = body;
        if !tail.is_empty() && !out.is_empty() && !out.ends_with('\n') {
            out.push('\n');
        }
        return out;
    }
    if body.trim().is_empty() {
        return String::from(tail);
    }
    let mut out = String::from(body.trim_end());
    out.push('\n');
    if language == Language::Python {
        out.push_str(tail.trim_start_matches('\n'));
    } else {
        for _ in 0..indent {
            out.push(' ');
        }
        out.push_str(tail.trim_start());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexkit::Language::*;

    fn strip_partial(src: &str, lang: Language) -> String {
        transform_partial(src, lang, PartialMode::Strip(FormatConfig::all())).unwrap().output
    }

    #[test]
    fn split_examples() {
        let s = split_unfinished("int a=1;\nint b = foo(", Java);
        assert_eq!((s.body, s.tail, s.split_offset), ("int a=1;\n", "int b = foo(", 9));
        let s = split_unfinished("", Java);
        assert_eq!((s.body, s.tail), ("", ""));
        let s = split_unfinished("x = [1,\n", Python);
        assert_eq!((s.body, s.tail), ("", "x = [1,\n"));
    }

    #[test]
    fn split_ignores_semicolons_in_parens() {
        let s = split_unfinished("a();\nfor (i = 0; i < n", Java);
        assert_eq!(s.body, "a();\n");
    }

    #[test]
    fn split_python_lines() {
        let s = split_unfinished("a = 1\nb = (2,\n3)\nc = f(", Python);
        assert_eq!(s.body, "a = 1\nb = (2,\n3)\n");
        assert_eq!(s.tail, "c = f(");
        let s = split_unfinished("a = 1 \\\n+ 2\nb", Python);
        assert_eq!(s.body, "a = 1 \\\n+ 2\n");
    }

    #[test]
    fn split_stops_at_unterminated() {
        let s = split_unfinished("a();\nb(\"x;", Java);
        assert_eq!(s.body, "a();\n");
        let s = split_unfinished("a(); /* b; c; ", Java);
        assert_eq!(s.body, "a();");
        let s = split_unfinished("a();\n#define A \\\n", Cpp);
        assert_eq!(s.body, "a();\n");
    }

    #[test]
    fn balance_examples() {
        let b = balance_brackets("void f(){ if(x){", Java);
        assert_eq!(b.text, "void f(){ if(x){}}");
        assert_eq!(b.ledger.appended_closers, ['}', '}']);
        let b = balance_brackets("int a=1;", Java);
        assert_eq!(b.text, "int a=1;");
        assert!(b.ledger.is_empty());
        let b = balance_brackets("} foo();", CSharp);
        assert!(b.text.starts_with('{'));
        assert_eq!(b.ledger.prepended_openers, ['{']);
    }

    #[test]
    fn balance_order_and_strings() {
        let b = balance_brackets(") ] x; f(\"(\", [", Java);
        assert_eq!(b.ledger.prepended_openers, ['[', '(']);
        assert_eq!(b.ledger.appended_closers, [']', ')']);
        let b = balance_brackets("x; // {\n", Java);
        assert!(b.ledger.is_empty());
        let b = balance_brackets("{ x; // c", Java);
        assert_eq!(b.text, "{ x; // c\n}");
        let b = balance_brackets("{\n#define A \\", Cpp);
        assert_eq!(b.text, "{\n#define A \\\n\n}");
    }

    #[test]
    fn balance_reports_mismatch() {
        let b = balance_brackets("f(}", Java);
        assert_eq!(b.mismatches.len(), 1);
        assert_eq!((b.mismatches[0].expected, b.mismatches[0].found), (')', '}'));
    }

    #[test]
    fn remove_ledger_examples() {
        let ledger = RepairLedger { prepended_openers: Vec::new(), appended_closers: alloc::vec!['}', '}'] };
        assert_eq!(remove_ledger("void f(){if(x){}}", Java, &ledger).unwrap(), "void f(){if(x){");
        assert_eq!(remove_ledger("a b", Java, &RepairLedger::default()).unwrap(), "a b");
        let ledger = RepairLedger { prepended_openers: alloc::vec!['{'], appended_closers: Vec::new() };
        assert_eq!(remove_ledger("{\n  foo();\n}\n", Java, &ledger).unwrap(), "  foo();\n}\n");
    }

    #[test]
    fn remove_ledger_detects_mismatch() {
        let ledger = RepairLedger { prepended_openers: Vec::new(), appended_closers: alloc::vec![')'] };
        assert_eq!(
            remove_ledger("f(x;", Java, &ledger),
            Err(Error::LedgerMismatch { expected: ')', found: String::from(";") })
        );
    }

    #[test]
    fn tail_examples() {
        assert_eq!(tail_rewrite("int b =  foo(", Java, Direction::Strip), "int b=foo(");
        assert_eq!(tail_rewrite("", Java, Direction::Strip), "");
        assert_eq!(tail_rewrite("x  =  [1,", Python, Direction::Strip), "x=[1,");
    }

    #[test]
    fn tail_keeps_verbatim_regions() {
        assert_eq!(tail_rewrite("f( \"a  b", Java, Direction::Strip), "f(\"a  b");
        assert_eq!(tail_rewrite("x = 1  # a  b", Python, Direction::Strip), "x=1# a  b");
        assert_eq!(tail_rewrite("a - -b", Java, Direction::Strip), "a- -b");
    }

    #[test]
    fn tail_restore_direction() {
        assert_eq!(tail_rewrite("f(a,b", Java, Direction::Restore), "f(a, b");
        assert_eq!(tail_rewrite("x=y", Python, Direction::Restore), "x = y");
        assert_eq!(tail_rewrite("x==y", Java, Direction::Restore), "x==y");
    }

    #[test]
    fn partial_examples() {
        assert_eq!(strip_partial("int a = 1;\nint b = foo(", Java), "int a=1;int b=foo(");
        assert_eq!(strip_partial("", Java), "");
        assert_eq!(strip_partial("void f(){ if(x){\n  y(", Java), "void f(){if(x){y(");
    }

    #[test]
    fn partial_restore_indents_tail() {
        let r = transform_partial("void f(){if(x){y();\nz(", Java, PartialMode::Restore(StyleProfile::c_family()))
            .unwrap()
            .output;
        assert_eq!(r, "void f() {\n  if (x) {\n    y();\n    z(");
    }

    #[test]
    fn dedent_leaves_string_interiors() {
        assert_eq!(dedent("    x = 1\n    s = '''\n    a'''\n", Python), "x = 1\ns = '''\n    a'''\n");
        assert_eq!(dedent("  a;\n\n    b;", Java), "a;\n\n  b;");
    }

    #[test]
    fn tail_keeps_literal_suffixes_apart() {
        assert_eq!(tail_rewrite("\"s\" B", Cpp, Direction::Strip), "\"s\" B");
    }

    #[test]
    fn partial_seam_keeps_words_apart() {
        assert_eq!(strip_partial("#include <a>\nint x", Cpp), "#include <a>\nint x");
        assert_eq!(strip_partial("x; // c\ny(", Java), "x;// c\ny(");
    }
}
