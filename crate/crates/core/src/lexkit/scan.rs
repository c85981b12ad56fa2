//! Single-token scanner. Every call consumes at least one byte, so lexing
//! always terminates and never fails.

use super::{Language, TokenKind};

#[derive(Debug, Clone, Copy)]
pub(crate) struct LineState {
    /// Nothing but the line break has been consumed on this line.
    pub at_line_start: bool,
    /// A non-trivia token already appeared on this line.
    pub line_has_code: bool,
}

const JAVA_OPS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "&=", "|=", "^=", "%=", "<<", ">>",
];

// Digraphs are included so that `<` `:` keeps its separator.
const CPP_OPS: &[&str] = &[
    "%:%:", "<=>", "->*", "<<=", ">>=", "...", "::", "->", ".*", "++", "--", "<<", ">>", "<=", ">=",
    "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "##", "<:", ":>", "<%",
    "%>", "%:",
];

const CSHARP_OPS: &[&str] = &[
    ">>>=", "??=", "<<=", ">>=", ">>>", "=>", "??", "?.", "::", "->", "++", "--", "&&", "||", "==",
    "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "..",
];

const PYTHON_OPS: &[&str] = &[
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==", "!=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=",
];

fn operators(lang: Language) -> &'static [&'static str] {
    match lang {
        Language::Java => JAVA_OPS,
        Language::Cpp => CPP_OPS,
        Language::CSharp => CSHARP_OPS,
        Language::Python => PYTHON_OPS,
    }
}

#[inline]
fn at(b: &[u8], i: usize) -> u8 {
    b.get(i).copied().unwrap_or(0)
}

fn is_ident_start(lang: Language, c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || (c == b'$' && matches!(lang, Language::Java | Language::Cpp))
}

fn is_ident_continue(lang: Language, c: u8) -> bool {
    is_ident_start(lang, c) || c.is_ascii_digit()
}

/// Length of the char starting at `i` if it is a non-ASCII identifier char.
fn unicode_ident_len(src: &str, i: usize, continue_: bool) -> Option<usize> {
    let c = src[i..].chars().next()?;
    if c.is_ascii() {
        return None;
    }
    let ok = if continue_ { c.is_alphanumeric() } else { c.is_alphabetic() };
    ok.then(|| c.len_utf8())
}

fn scan_ident(src: &str, mut i: usize, lang: Language) -> usize {
    let b = src.as_bytes();
    while i < b.len() {
        if is_ident_continue(lang, b[i]) {
            i += 1;
        } else if let Some(n) = unicode_ident_len(src, i, true) {
            i += n;
        } else {
            break;
        }
    }
    i
}

fn line_end(b: &[u8], mut i: usize) -> usize {
    while i < b.len() && b[i] != b'\n' && b[i] != b'\r' {
        i += 1;
    }
    i
}

/// Index just past a line break starting at `i`, if there is one.
fn skip_newline(b: &[u8], i: usize) -> Option<usize> {
    match at(b, i) {
        b'\n' => Some(i + 1),
        b'\r' if at(b, i + 1) == b'\n' => Some(i + 2),
        b'\r' => Some(i + 1),
        _ => None,
    }
}

pub(crate) fn scan(src: &str, pos: usize, lang: Language, state: LineState) -> (TokenKind, usize, bool) {
    let b = src.as_bytes();
    let c = b[pos];
    match c {
        b'\n' | b'\r' => return (TokenKind::Newline, skip_newline(b, pos).unwrap_or(pos + 1), false),
        // Form feed and vertical tab count as blanks, as in CPython and C.
        b' ' | b'\t' | b'\x0c' | b'\x0b' => {
            let mut i = pos;
            while matches!(at(b, i), b' ' | b'\t' | b'\x0c' | b'\x0b') {
                i += 1;
            }
            let kind = if state.at_line_start { TokenKind::Indent } else { TokenKind::Whitespace };
            return (kind, i, false);
        }
        _ => {}
    }

    if c == b'#' {
        if lang == Language::Python {
            return (TokenKind::LineComment, line_end(b, pos), false);
        }
        if lang.has_preprocessor() && !state.line_has_code {
            let (end, open) = scan_directive(b, pos, lang);
            return (TokenKind::Preprocessor, end, open);
        }
    }

    if lang.is_c_family() && c == b'/' {
        match at(b, pos + 1) {
            b'/' => return (TokenKind::LineComment, scan_line_comment(b, pos, lang), false),
            b'*' => {
                let (end, open) = scan_block_comment(b, pos);
                return (TokenKind::BlockComment, end, open);
            }
            _ => {}
        }
    }

    if c.is_ascii_digit() || (c == b'.' && at(b, pos + 1).is_ascii_digit()) {
        return (TokenKind::Number, scan_number(b, pos, lang), false);
    }

    match lang {
        Language::Python => {
            if c == b'"' || c == b'\'' {
                let (end, open) = scan_python_string(b, pos);
                return (TokenKind::String, end, open);
            }
        }
        Language::Java => {
            if c == b'"' {
                let (end, open) = if b[pos..].starts_with(b"\"\"\"") {
                    scan_delimited(b, pos + 3, b"\"\"\"", true)
                } else {
                    scan_quoted(b, pos + 1, b'"', false)
                };
                return (TokenKind::String, end, open);
            }
            if c == b'\'' {
                let (end, open) = scan_quoted(b, pos + 1, b'\'', false);
                return (TokenKind::Char, end, open);
            }
        }
        Language::Cpp => {
            if c == b'"' {
                let (end, open) = scan_quoted(b, pos + 1, b'"', false);
                return (TokenKind::String, cpp_ud_suffix(src, end, open), open);
            }
            if c == b'\'' {
                let (end, open) = scan_quoted(b, pos + 1, b'\'', false);
                return (TokenKind::Char, cpp_ud_suffix(src, end, open), open);
            }
        }
        Language::CSharp => {
            if let Some((kind, end, open)) = scan_csharp_literal(src, pos) {
                return (kind, end, open);
            }
        }
    }

    if is_ident_start(lang, c) || unicode_ident_len(src, pos, false).is_some() {
        let end = scan_ident(src, pos, lang);
        if let Some(result) = string_after_prefix(src, pos, end, lang) {
            return result;
        }
        return (TokenKind::Word, end, false);
    }

    if matches!(c, b'(' | b')' | b'[' | b']' | b'{' | b'}' | b';' | b',' | b'\\') {
        return (TokenKind::Punct, pos + 1, false);
    }

    for op in operators(lang) {
        if b[pos..].starts_with(op.as_bytes()) {
            return (TokenKind::Operator, pos + op.len(), false);
        }
    }
    let width = src[pos..].chars().next().map_or(1, char::len_utf8);
    (TokenKind::Operator, pos + width, false)
}

/// Directive line starting at `#`, following backslash continuations and
/// block comments that span lines.
fn scan_directive(b: &[u8], pos: usize, lang: Language) -> (usize, bool) {
    let mut i = pos + 1;
    while i < b.len() {
        match b[i] {
            b'\n' | b'\r' => break,
            b'\\' => {
                if let Some(next) = skip_newline(b, i + 1) {
                    i = next;
                } else {
                    i += 1;
                }
            }
            b'/' if lang == Language::Cpp && at(b, i + 1) == b'*' => {
                let (end, open) = scan_block_comment(b, i);
                if open {
                    return (end, true);
                }
                i = end;
            }
            b'/' if at(b, i + 1) == b'/' => {
                i = scan_line_comment(b, i, lang);
            }
            q @ (b'"' | b'\'') => {
                // Unclosed quotes in directives (`#error don't`) are not errors.
                let (end, _) = scan_quoted(b, i + 1, q, false);
                i = end;
            }
            _ => i += 1,
        }
    }
    (i, false)
}

fn scan_line_comment(b: &[u8], pos: usize, lang: Language) -> usize {
    let mut i = pos;
    loop {
        i = line_end(b, i);
        // C++ splices a line ending in a backslash before stripping comments.
        if lang == Language::Cpp && i > pos && b[i - 1] == b'\\' {
            if let Some(next) = skip_newline(b, i) {
                i = next;
                continue;
            }
        }
        return i;
    }
}

fn scan_block_comment(b: &[u8], pos: usize) -> (usize, bool) {
    let mut i = pos + 2;
    while i + 1 < b.len() {
        if b[i] == b'*' && b[i + 1] == b'/' {
            return (i + 2, false);
        }
        i += 1;
    }
    (b.len(), true)
}

/// Scans to the closing `quote`. Single-line: an unescaped line break ends
/// the token unterminated, just before the break.
fn scan_quoted(b: &[u8], mut i: usize, quote: u8, multiline: bool) -> (usize, bool) {
    while i < b.len() {
        match b[i] {
            c if c == quote => return (i + 1, false),
            b'\\' => {
                i += 1;
                match skip_newline(b, i) {
                    Some(next) => i = next,
                    None if i < b.len() => i += utf8_width(b[i]),
                    None => {}
                }
            }
            b'\n' | b'\r' if !multiline => return (i, true),
            _ => i += 1,
        }
    }
    (b.len(), true)
}

fn utf8_width(lead: u8) -> usize {
    match lead {
        0x00..=0x7f => 1,
        0xc0..=0xdf => 2,
        0xe0..=0xef => 3,
        _ => 4,
    }
}

/// Scans to `close`; backslash escapes apply when `escapes` is set.
fn scan_delimited(b: &[u8], mut i: usize, close: &[u8], escapes: bool) -> (usize, bool) {
    while i < b.len() {
        if escapes && b[i] == b'\\' {
            i += 1;
            if i < b.len() {
                i += utf8_width(b[i]);
            }
            continue;
        }
        if b[i..].starts_with(close) {
            return (i + close.len(), false);
        }
        i += 1;
    }
    (b.len(), true)
}

fn scan_python_string(b: &[u8], pos: usize) -> (usize, bool) {
    let q = b[pos];
    let triple = [q, q, q];
    if b[pos..].starts_with(&triple) {
        scan_delimited(b, pos + 3, &triple, true)
    } else {
        scan_quoted(b, pos + 1, q, false)
    }
}

fn is_python_prefix(p: &str) -> bool {
    matches!(
        p.to_ascii_lowercase().as_str(),
        "r" | "u" | "b" | "f" | "br" | "rb" | "fr" | "rf"
    )
}

fn cpp_ud_suffix(src: &str, end: usize, open: bool) -> usize {
    let b = src.as_bytes();
    if !open && end < b.len() && (b[end].is_ascii_alphabetic() || b[end] == b'_') {
        scan_ident(src, end, Language::Cpp)
    } else {
        end
    }
}

/// String or char literals introduced by an identifier-like prefix
/// (`rb"..."`, `u8"..."`, `R"(...)"`).
fn string_after_prefix(src: &str, start: usize, end: usize, lang: Language) -> Option<(TokenKind, usize, bool)> {
    let b = src.as_bytes();
    let prefix = &src[start..end];
    let next = at(b, end);
    match lang {
        Language::Python if (next == b'"' || next == b'\'') && is_python_prefix(prefix) => {
            let (e, open) = scan_python_string(b, end);
            Some((TokenKind::String, e, open))
        }
        Language::Cpp => {
            let raw = matches!(prefix, "R" | "u8R" | "uR" | "UR" | "LR");
            if raw && next == b'"' {
                return Some(scan_cpp_raw(src, end));
            }
            if matches!(prefix, "u8" | "u" | "U" | "L") && (next == b'"' || next == b'\'') {
                let (e, open) = scan_quoted(b, end + 1, next, false);
                let kind = if next == b'"' { TokenKind::String } else { TokenKind::Char };
                return Some((kind, cpp_ud_suffix(src, e, open), open));
            }
            None
        }
        _ => None,
    }
}

fn scan_cpp_raw(src: &str, quote: usize) -> (TokenKind, usize, bool) {
    let b = src.as_bytes();
    let mut i = quote + 1;
    while i < b.len() && i - quote <= 17 && !matches!(b[i], b'(' | b')' | b'\\' | b' ' | b'\n' | b'\r' | b'"') {
        i += 1;
    }
    if at(b, i) != b'(' {
        // Not a well-formed raw string; fall back to an ordinary literal.
        let (e, open) = scan_quoted(b, quote + 1, b'"', false);
        return (TokenKind::String, e, open);
    }
    let delim = &b[quote + 1..i];
    let mut j = i + 1;
    while j < b.len() {
        if b[j] == b')' && b[j + 1..].starts_with(delim) && at(b, j + 1 + delim.len()) == b'"' {
            let end = j + delim.len() + 2;
            return (TokenKind::String, cpp_ud_suffix(src, end, false), false);
        }
        j += 1;
    }
    (TokenKind::String, b.len(), true)
}

/// C# string and char literals in all their forms, or `@identifier`.
fn scan_csharp_literal(src: &str, pos: usize) -> Option<(TokenKind, usize, bool)> {
    let b = src.as_bytes();
    let mut i = pos;
    let mut dollars = 0;
    let mut verbatim = false;
    loop {
        match at(b, i) {
            b'$' => dollars += 1,
            b'@' if !verbatim => verbatim = true,
            _ => break,
        }
        i += 1;
    }
    let c = at(b, i);
    if c == b'\'' && i == pos {
        let (e, open) = scan_quoted(b, pos + 1, b'\'', false);
        return Some((TokenKind::Char, e, open));
    }
    if c != b'"' {
        if i == pos + 1 && verbatim && (is_ident_start(Language::CSharp, c) || unicode_ident_len(src, i, false).is_some()) {
            return Some((TokenKind::Word, scan_ident(src, i, Language::CSharp), false));
        }
        return None;
    }
    if dollars > 1 && !b[i..].starts_with(b"\"\"\"") {
        return None;
    }
    // Raw literal: three or more quotes, closed by the same count.
    if !verbatim && b[i..].starts_with(b"\"\"\"") {
        let mut n = 0;
        while at(b, i + n) == b'"' {
            n += 1;
        }
        let mut j = i + n;
        while j < b.len() {
            if b[j] == b'"' {
                let mut m = 0;
                while at(b, j + m) == b'"' {
                    m += 1;
                }
                if m >= n {
                    return Some((TokenKind::String, j + m, false));
                }
                j += m;
            } else {
                j += 1;
            }
        }
        return Some((TokenKind::String, b.len(), true));
    }
    let (end, open) = if dollars > 0 {
        scan_interpolated(b, i + 1, verbatim)
    } else if verbatim {
        scan_verbatim(b, i + 1)
    } else {
        scan_quoted(b, i + 1, b'"', false)
    };
    Some((TokenKind::String, end, open))
}

fn scan_verbatim(b: &[u8], mut i: usize) -> (usize, bool) {
    while i < b.len() {
        if b[i] == b'"' {
            if at(b, i + 1) == b'"' {
                i += 2;
                continue;
            }
            return (i + 1, false);
        }
        i += 1;
    }
    (b.len(), true)
}

/// Body of `$"..."` / `$@"..."`, starting after the opening quote. Holes
/// (`{expr}`) may contain nested literals and braces.
fn scan_interpolated(b: &[u8], mut i: usize, verbatim: bool) -> (usize, bool) {
    while i < b.len() {
        match b[i] {
            b'\\' if !verbatim => i += 2,
            b'"' if verbatim && at(b, i + 1) == b'"' => i += 2,
            b'"' => return (i + 1, false),
            b'{' if at(b, i + 1) == b'{' => i += 2,
            b'{' => match scan_hole(b, i + 1) {
                Some(next) => i = next,
                None => return (b.len(), true),
            },
            b'\n' | b'\r' if !verbatim => return (i, true),
            _ => i += 1,
        }
    }
    (b.len().min(i), true)
}

/// Returns the index after the `}` closing an interpolation hole.
fn scan_hole(b: &[u8], mut i: usize) -> Option<usize> {
    let mut depth = 1;
    while i < b.len() {
        match b[i] {
            b'{' => {
                depth += 1;
                i += 1;
            }
            b'}' => {
                depth -= 1;
                i += 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            b'\'' => i = scan_quoted(b, i + 1, b'\'', false).0,
            b'"' => i = scan_quoted(b, i + 1, b'"', false).0,
            b'@' if at(b, i + 1) == b'"' => i = scan_verbatim(b, i + 2).0,
            b'$' if at(b, i + 1) == b'"' => i = scan_interpolated(b, i + 2, false).0,
            b'$' if at(b, i + 1) == b'@' && at(b, i + 2) == b'"' => i = scan_interpolated(b, i + 3, true).0,
            _ => i += 1,
        }
    }
    None
}

fn scan_number(b: &[u8], pos: usize, lang: Language) -> usize {
    if lang == Language::Cpp {
        return scan_pp_number(b, pos);
    }
    let mut i = pos;
    let digits = |i: &mut usize, hex: bool| {
        while *i < b.len() && (b[*i] == b'_' || if hex { b[*i].is_ascii_hexdigit() } else { b[*i].is_ascii_digit() }) {
            *i += 1;
        }
    };
    if b[i] == b'0' && matches!(at(b, i + 1), b'x' | b'X') {
        i += 2;
        digits(&mut i, true);
        if lang == Language::Java && at(b, i) == b'.' {
            i += 1;
            digits(&mut i, true);
        }
        if lang == Language::Java && matches!(at(b, i), b'p' | b'P') {
            i += 1;
            if matches!(at(b, i), b'+' | b'-') {
                i += 1;
            }
            digits(&mut i, false);
        }
    } else {
        digits(&mut i, false);
        let dot_ok = at(b, i) == b'.'
            && if lang == Language::CSharp {
                at(b, i + 1).is_ascii_digit()
            } else {
                at(b, i + 1) != b'.'
            };
        if dot_ok {
            i += 1;
            digits(&mut i, false);
        }
        if matches!(at(b, i), b'e' | b'E') {
            let sign = matches!(at(b, i + 1), b'+' | b'-') as usize;
            if at(b, i + 1 + sign).is_ascii_digit() {
                i += 1 + sign;
                digits(&mut i, false);
            }
        }
    }
    // Type suffixes and anything glued on (`L`, `f`, `UL`, `j`, `m`).
    while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
        i += 1;
    }
    i
}

/// Preprocessing number: everything the C++ preprocessor would glue together.
fn scan_pp_number(b: &[u8], pos: usize) -> usize {
    let mut i = pos + 1;
    while i < b.len() {
        let c = b[i];
        let exponent_sign = matches!(c, b'+' | b'-') && matches!(b[i - 1], b'e' | b'E' | b'p' | b'P');
        if c.is_ascii_alphanumeric() || c == b'_' || c == b'.' || exponent_sign {
            i += 1;
        } else if c == b'\'' && (at(b, i + 1).is_ascii_alphanumeric() || at(b, i + 1) == b'_') {
            i += 2;
        } else {
            break;
        }
    }
    i
}
