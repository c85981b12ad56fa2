//! Token-driven layout for Java, C++ and C#.
//!
//! Only the significant tokens and the number of blank lines between them
//! are read from the input, so restoring twice gives the same text.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::lexkit::{relex, Language, LexToken, TokenKind};
use crate::Error;

use super::StyleProfile;

const CONTROL_KEYWORDS: &[&str] = &[
    "if", "for", "while", "switch", "catch", "foreach", "using", "lock", "fixed", "synchronized", "when",
];

/// Keywords that introduce an expression; what follows is an operand.
const EXPRESSION_KEYWORDS: &[&str] = &[
    "return", "throw", "case", "else", "do", "in", "is", "as", "await", "yield", "goto", "not", "and", "or",
    "co_return", "co_yield", "co_await", "delete", "assert",
];

const SPACED_BINARY: &[&str] = &[
    "=", "+", "-", "*", "/", "%", "<", ">", "<=", ">=", "==", "!=", "&&", "||", "+=", "-=", "*=", "/=", "%=",
    "&=", "|=", "^=", "<<=", ">>=", ">>>=", "??=", "&", "|", "^", "<<", ">>", ">>>", "??", "=>", "<=>",
];

/// Modifiers that may precede a generic parameter list (`public <T> void`).
const GENERIC_LEADERS: &[&str] = &[
    "public", "private", "protected", "static", "final", "abstract", "synchronized", "native", "default", "template",
];

/// Words allowed in a C# accessor list such as `{ get; private set; }`.
const ACCESSOR_WORDS: &[&str] = &["get", "set", "init", "private", "protected", "internal", "public"];

const MEMBER_ACCESS: &[&str] = &[".", "::", "?.", ".*", "->*"];

fn is_control(t: &LexToken<'_>) -> bool {
    t.kind == TokenKind::Word && CONTROL_KEYWORDS.contains(&t.text)
}

fn is_expr_keyword(t: &LexToken<'_>) -> bool {
    t.kind == TokenKind::Word && EXPRESSION_KEYWORDS.contains(&t.text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cond {
    Open,
    Else,
    Close,
}

/// `#if`-family directives, which may hold alternative brace openings.
fn conditional(t: &LexToken<'_>) -> Option<Cond> {
    if t.kind != TokenKind::Preprocessor {
        return None;
    }
    let body = t.text[1..].trim_start();
    let word: &str = body
        .split(|c: char| !c.is_ascii_alphanumeric() && c != '_')
        .next()
        .unwrap_or("");
    match word {
        "if" | "ifdef" | "ifndef" => Some(Cond::Open),
        "elif" | "else" | "elifdef" | "elifndef" => Some(Cond::Else),
        "endif" => Some(Cond::Close),
        _ => None,
    }
}

/// Pairs braces, honouring conditional branches: each `#else` branch starts
/// from the brace state at its `#if`.
fn match_braces(sig: &[LexToken<'_>]) -> Result<Vec<Option<usize>>, Error> {
    let mut matches = vec![None; sig.len()];
    let mut stack: Vec<usize> = Vec::new();
    let mut snapshots: Vec<Vec<usize>> = Vec::new();
    for (i, t) in sig.iter().enumerate() {
        match conditional(t) {
            Some(Cond::Open) => snapshots.push(stack.clone()),
            Some(Cond::Else) => {
                if let Some(snap) = snapshots.last() {
                    stack.clone_from(snap);
                }
            }
            Some(Cond::Close) => {
                snapshots.pop();
            }
            None => {}
        }
        if t.is_punct("{") {
            stack.push(i);
        } else if t.is_punct("}") {
            match stack.pop() {
                Some(open) => {
                    matches[open] = Some(i);
                    matches[i] = Some(open);
                }
                None => return Err(Error::UnbalancedBraces { line: t.line, col: t.col }),
            }
        }
    }
    if let Some(&open) = stack.first() {
        let t = &sig[open];
        return Err(Error::UnbalancedBraces { line: t.line, col: t.col });
    }
    Ok(matches)
}

/// A brace pair stays on one line when nothing inside needs a line break.
fn inline_braces(sig: &[LexToken<'_>], matches: &[Option<usize>]) -> Vec<bool> {
    let mut blockers = Vec::with_capacity(sig.len() + 1);
    blockers.push(0usize);
    for t in sig {
        let blocks = t.is_punct(";")
            || matches!(t.kind, TokenKind::LineComment | TokenKind::Preprocessor)
            || (t.kind == TokenKind::BlockComment && t.text.contains('\n'));
        blockers.push(blockers.last().unwrap() + blocks as usize);
    }
    sig.iter()
        .enumerate()
        .map(|(i, t)| {
            if !t.is_punct("{") {
                return false;
            }
            match matches[i] {
                Some(close) if close > i => blockers[close] == blockers[i + 1],
                _ => false,
            }
        })
        .collect()
}

/// Marks C# accessor lists, which stay on one line.
fn accessor_lists(sig: &[LexToken<'_>], matches: &[Option<usize>], lang: Language) -> Vec<bool> {
    let mut marks = vec![false; sig.len()];
    if lang != Language::CSharp {
        return marks;
    }
    for (i, t) in sig.iter().enumerate() {
        if !t.is_punct("{") {
            continue;
        }
        let Some(close) = matches[i].filter(|&c| c > i + 1) else { continue };
        let inner = &sig[i + 1..close];
        marks[i] = inner.last().is_some_and(|t| t.is_punct(";"))
            && inner.iter().all(|t| t.is_punct(";") || (t.kind == TokenKind::Word && ACCESSOR_WORDS.contains(&t.text)));
    }
    marks
}

/// Marks `<`/`>` tokens that delimit type arguments.
fn mark_generics(sig: &[LexToken<'_>]) -> Vec<bool> {
    let mut generic = vec![false; sig.len()];
    for i in 1..sig.len() {
        if !(sig[i].kind == TokenKind::Operator && sig[i].text == "<") {
            continue;
        }
        let before = &sig[i - 1];
        if !(before.kind == TokenKind::Word || (before.kind == TokenKind::Operator && before.text == ".")) {
            continue;
        }
        if before.is_word("operator") {
            continue;
        }
        let mut depth: i32 = 1;
        let mut parens = 0i32;
        let mut j = i + 1;
        while j < sig.len() && j - i <= 64 {
            let t = &sig[j];
            let ok = match t.kind {
                TokenKind::Word | TokenKind::Number => true,
                TokenKind::Punct => match t.text {
                    "," | "[" | "]" => true,
                    "(" => {
                        parens += 1;
                        true
                    }
                    ")" => {
                        parens -= 1;
                        parens >= 0
                    }
                    _ => false,
                },
                TokenKind::Operator => match t.text {
                    "<" => {
                        depth += 1;
                        true
                    }
                    ">" => {
                        depth -= 1;
                        true
                    }
                    ">>" => {
                        depth -= 2;
                        true
                    }
                    ">>>" => {
                        depth -= 3;
                        true
                    }
                    "." | "::" | "?" | "*" | "&" | "..." => true,
                    _ => false,
                },
                _ => false,
            };
            if !ok || depth < 0 {
                break;
            }
            if depth == 0 {
                if parens == 0 {
                    for (k, tok) in sig.iter().enumerate().take(j + 1).skip(i) {
                        if tok.kind == TokenKind::Operator && matches!(tok.text, "<" | ">" | ">>" | ">>>") {
                            generic[k] = true;
                        }
                    }
                }
                break;
            }
            j += 1;
        }
    }
    generic
}

/// Whether a `?` at `i` opens a conditional expression: a matching `:`
/// follows before the statement or argument ends.
fn opens_ternary(sig: &[LexToken<'_>], i: usize) -> bool {
    let mut need = 1;
    let mut depth = 0i32;
    for t in &sig[i + 1..] {
        match (t.kind, t.text) {
            (TokenKind::Punct, "(" | "[" | "{") => depth += 1,
            (TokenKind::Punct, ")" | "]" | "}") => {
                depth -= 1;
                if depth < 0 {
                    return false;
                }
            }
            (TokenKind::Punct, ";") => return false,
            (TokenKind::Punct, ",") if depth == 0 => return false,
            (TokenKind::Operator, "?") if depth == 0 => need += 1,
            (TokenKind::Operator, ":") if depth == 0 => {
                need -= 1;
                if need == 0 {
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

#[derive(Debug, Clone)]
struct Frame {
    block: bool,
    paren: usize,
    for_paren: Option<usize>,
    ternary: usize,
    case_body: bool,
    after_do: bool,
    /// Accessor list, written `{ get; set; }`.
    padded: bool,
    /// An inline pair that is a statement or member body, not an
    /// initializer; what follows it starts a new line.
    body: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Break {
    None,
    /// Line break that a trailing comment may still precede.
    Soft,
    /// Required: after line comments and directives.
    Hard,
    /// After a closing block brace; `else`, `catch` and friends stay on the
    /// same line.
    AfterBlock { was_do: bool },
}

#[derive(Debug, Clone)]
struct Snapshot {
    frames: Vec<Frame>,
    paren: usize,
    for_paren: Option<usize>,
    ternary: usize,
}

struct Layout<'s, 'a> {
    sig: &'s [LexToken<'a>],
    lang: Language,
    style: &'s StyleProfile,
    out: String,
    frames: Vec<Frame>,
    paren: usize,
    for_paren: Option<usize>,
    ternary: usize,
    ternary_marks: Vec<bool>,
    line_open: bool,
    /// Index of the first token on the current line.
    line_first: Option<usize>,
    prev: Option<LexToken<'a>>,
    /// The token touching `prev` on its left, if any.
    touching: Option<LexToken<'a>>,
    prev_operand: bool,
    prev_generic: bool,
    space_next: bool,
    brk: Break,
    snapshots: Vec<Snapshot>,
    pending_close: Option<Frame>,
    accessors: Vec<bool>,
    square: usize,
    /// Bracket depth at which a C# attribute section started.
    attribute: Option<usize>,
    /// Paren depth at which a Java annotation started.
    annotation: Option<usize>,
    scratch: String,
}

pub(crate) fn restore_c_family(tokens: &[LexToken<'_>], lang: Language, style: &StyleProfile) -> Result<String, Error> {
    let mut sig = Vec::with_capacity(tokens.len());
    let mut blank_before = Vec::with_capacity(tokens.len());
    let mut newlines = 0usize;
    let mut broke_before = Vec::with_capacity(tokens.len());
    for t in tokens {
        match t.kind {
            TokenKind::Newline => newlines += 1,
            TokenKind::Whitespace | TokenKind::Indent => {}
            _ => {
                sig.push(*t);
                blank_before.push(newlines.saturating_sub(1));
                broke_before.push(newlines > 0);
                newlines = 0;
            }
        }
    }
    if sig.is_empty() {
        return Ok(String::new());
    }
    let matches = match_braces(&sig)?;
    let accessors = accessor_lists(&sig, &matches, lang);
    let inline: Vec<bool> = inline_braces(&sig, &matches).iter().zip(&accessors).map(|(a, b)| *a || *b).collect();
    let generic = mark_generics(&sig);

    let mut layout = Layout {
        sig: &sig,
        lang,
        style,
        out: String::with_capacity(tokens.last().map_or(0, |t| t.end()) * 5 / 4),
        frames: Vec::new(),
        paren: 0,
        for_paren: None,
        ternary: 0,
        ternary_marks: vec![false; sig.len()],
        line_open: false,
        line_first: None,
        prev: None,
        touching: None,
        prev_operand: false,
        prev_generic: false,
        space_next: false,
        brk: Break::None,
        snapshots: Vec::new(),
        pending_close: None,
        accessors,
        square: 0,
        attribute: None,
        annotation: None,
        scratch: String::new(),
    };
    for i in 0..sig.len() {
        layout.token(i, inline[i], generic[i], blank_before[i], broke_before[i]);
    }
    let mut out = layout.out;
    // A line break after a trailing `\` would splice onto the last token.
    if !out.is_empty() && !out.ends_with('\n') && !out.ends_with('\\') {
        out.push('\n');
    }
    Ok(out)
}

impl<'s, 'a> Layout<'s, 'a> {
    fn block_depth(&self) -> usize {
        self.frames.iter().map(|f| if f.block { 1 + f.case_body as usize } else { 0 }).sum()
    }

    fn innermost_block(&mut self) -> Option<&mut Frame> {
        self.frames.iter_mut().rev().find(|f| f.block)
    }

    fn newline(&mut self, blanks: usize, indent: usize) {
        if !self.out.is_empty() {
            self.out.push('\n');
            for _ in 0..blanks.min(self.style.max_blank_lines) {
                self.out.push('\n');
            }
        }
        for _ in 0..indent * self.style.indent_width {
            self.out.push(' ');
        }
        self.line_open = false;
        self.line_first = None;
    }

    fn is_case_label(&self, i: usize) -> bool {
        let t = &self.sig[i];
        (t.is_word("case") || t.is_word("default")) && self.sig.get(i + 1).is_none_or(|n| !n.is_punct("("))
    }

    fn is_access_label(&self, i: usize) -> bool {
        self.lang == Language::Cpp
            && matches!(self.sig[i].text, "public" | "private" | "protected")
            && self.sig.get(i + 1).is_some_and(|n| n.kind == TokenKind::Operator && n.text == ":")
    }

    fn token(&mut self, i: usize, inline: bool, generic: bool, blanks: usize, broke_before: bool) {
        let t = self.sig[i];
        let next = self.sig.get(i + 1).copied();

        if let Some(cond) = conditional(&t) {
            match cond {
                Cond::Open => self.snapshots.push(Snapshot {
                    frames: self.frames.clone(),
                    paren: self.paren,
                    for_paren: self.for_paren,
                    ternary: self.ternary,
                }),
                Cond::Else => {
                    if let Some(s) = self.snapshots.last().cloned() {
                        self.frames = s.frames;
                        self.paren = s.paren;
                        self.for_paren = s.for_paren;
                        self.ternary = s.ternary;
                    }
                }
                Cond::Close => {
                    self.snapshots.pop();
                }
            }
        }

        let close_brace = t.is_punct("}");
        let closing_block = close_brace && self.frames.last().is_some_and(|f| f.block);

        // Line break before the token?
        let mut newline = false;
        let mut space = false;
        match self.brk {
            Break::None => {}
            Break::Soft | Break::Hard => newline = true,
            Break::AfterBlock { was_do } => {
                let continues = t.is_word("else")
                    || t.is_word("catch")
                    || t.is_word("finally")
                    || (was_do && t.is_word("while"));
                if continues {
                    space = true;
                } else if !(t.kind == TokenKind::Punct && matches!(t.text, ";" | "," | ")" | "]"))
                    && !(t.kind == TokenKind::Operator && matches!(t.text, "." | "?." | "->"))
                {
                    newline = true;
                }
            }
        }
        if self.line_open && (t.kind == TokenKind::Preprocessor || closing_block) {
            newline = true;
        }
        let trailing_comment = t.kind.is_comment() && !broke_before && self.prev.is_some() && self.line_open;
        if trailing_comment && self.brk != Break::Hard {
            newline = false;
            space = true;
        }
        if self.prev.is_none() {
            newline = true;
        }

        if close_brace {
            if let Some(frame) = self.frames.pop() {
                self.paren = frame.paren;
                self.for_paren = frame.for_paren;
                self.ternary = frame.ternary;
                self.pending_close = Some(frame);
            }
        }

        let mut touches = false;
        if newline {
            let mut indent = self.block_depth();
            if t.kind == TokenKind::Preprocessor {
                indent = 0;
            } else if (self.is_case_label(i) && self.frames.iter().rev().find(|f| f.block).is_some_and(|f| f.case_body))
                || self.is_access_label(i)
            {
                indent = indent.saturating_sub(1);
            }
            self.newline(blanks, indent);
        } else if self.line_open {
            let need = space
                || self.space_next
                || self.space_before(&t, i, inline, generic)
                || self.merges(&t);
            if need {
                self.out.push(' ');
            }
            touches = !need;
            // Two spaces before a C++ line comment, however it got onto the line.
            if t.kind == TokenKind::LineComment && self.lang == Language::Cpp {
                if !need {
                    self.out.push(' ');
                }
                self.out.push(' ');
                touches = false;
            }
        }
        if !self.line_open {
            self.line_first = Some(i);
        }
        self.touching = if touches { self.prev } else { None };
        self.out.push_str(t.text);
        self.line_open = true;
        self.after(t, i, next, inline, generic);
    }

    fn merges(&mut self, t: &LexToken<'a>) -> bool {
        match &self.prev {
            Some(p) => relex::merges_between(&mut self.scratch, self.touching.as_ref(), p, t, None, self.lang),
            None => false,
        }
    }

    fn space_before(&self, t: &LexToken<'a>, i: usize, inline: bool, generic: bool) -> bool {
        let Some(p) = self.prev else { return false };
        let p_open = p.kind == TokenKind::Punct && matches!(p.text, "(" | "[");
        if p_open {
            return false;
        }
        if t.kind == TokenKind::Punct {
            return match t.text {
                "{" => {
                    if inline {
                        !(p.is_punct("{") && self.frames.last().is_some_and(|f| !f.block))
                    } else {
                        self.style.attached_braces
                    }
                }
                "(" | "[" => {
                    (is_control(&p) && self.style.space_after_control_keyword) || is_expr_keyword(&p)
                }
                _ => false,
            };
        }
        if t.kind.is_comment() {
            return true;
        }
        if is_control(&p) || is_expr_keyword(&p) {
            return !(t.kind == TokenKind::Operator && matches!(t.text, "." | "::" | ":" | "?."));
        }
        let wordish = matches!(t.kind, TokenKind::Word | TokenKind::Number | TokenKind::String | TokenKind::Char);
        if wordish {
            let p_end = matches!(p.kind, TokenKind::Word | TokenKind::Number | TokenKind::String | TokenKind::Char)
                || p.is_punct(")")
                || p.is_punct("]")
                || self.prev_generic
                || (p.kind == TokenKind::Operator && matches!(p.text, "..." | "?"));
            return p_end;
        }
        if t.kind != TokenKind::Operator {
            return false;
        }
        if MEMBER_ACCESS.contains(&t.text) || (t.text == "->" && self.lang != Language::Java) {
            return false;
        }
        if generic {
            return t.text == "<" && GENERIC_LEADERS.contains(&p.text);
        }
        match t.text {
            "?" => self.opens_ternary_at(i),
            ":" => self.colon_spaced(),
            "->" => true,
            "&" | "&&" | "*" if self.type_suffix(i).is_some() => false,
            "++" | "--" | "..." => false,
            op if SPACED_BINARY.contains(&op) => self.style.space_around_binary_ops && self.binary_context(op),
            _ => false,
        }
    }

    fn binary_context(&self, op: &str) -> bool {
        if op == "=" && self.prev.is_some_and(|p| p.kind == TokenKind::Operator) {
            return self.prev_operand;
        }
        self.prev_operand || op == "=" || op == "=>"
    }

    fn colon_spaced(&self) -> bool {
        if self.ternary > 0 {
            return true;
        }
        if self.colon_is_label() {
            return false;
        }
        !(self.paren > 0 && self.for_paren.is_none())
    }

    fn colon_is_label(&self) -> bool {
        let Some(first) = self.line_first else { return false };
        if self.paren > 0 {
            return false;
        }
        self.is_case_label(first) || (self.is_access_label(first) && self.prev.is_some_and(|p| p.offset == self.sig[first].offset))
    }

    fn after(&mut self, t: LexToken<'a>, i: usize, next: Option<LexToken<'a>>, inline: bool, generic: bool) {
        let was_operand = self.prev_operand;
        let closed = self.pending_close.take();
        self.space_next = false;
        let prev_generic = self.prev_generic;
        let pending = core::mem::replace(&mut self.brk, Break::None);
        let mut operand = false;
        match t.kind {
            TokenKind::Word => {
                operand = !(is_control(&t) || is_expr_keyword(&t));
                if self.annotation.is_some() && self.prev.is_some_and(|p| p.text == "@" || p.text == ".") {
                    let continues = next.is_some_and(|n| n.is_punct("(") || n.text == ".");
                    if !continues {
                        self.annotation = None;
                        self.brk = Break::Soft;
                    }
                }
            }
            TokenKind::Number | TokenKind::String | TokenKind::Char => operand = true,
            TokenKind::LineComment | TokenKind::Preprocessor => {
                operand = was_operand;
                self.brk = Break::Hard;
            }
            TokenKind::BlockComment => {
                operand = was_operand;
                let own_line = self.line_first == Some(i);
                if own_line && (t.text.contains('\n') || t.text.starts_with("/**") || t.text.starts_with("/*!")) {
                    self.brk = Break::Soft;
                } else if pending != Break::None {
                    // A trailing comment keeps the break that was due.
                    self.brk = pending;
                } else {
                    self.space_next = !next.is_some_and(|n| n.kind == TokenKind::Punct && matches!(n.text, "," | ";" | ")"));
                }
            }
            TokenKind::Punct => match t.text {
                "(" => {
                    if self.prev.is_some_and(|p| p.is_word("for") || p.is_word("foreach")) {
                        self.for_paren = Some(self.paren + 1);
                    }
                    self.paren += 1;
                }
                ")" => {
                    if self.for_paren == Some(self.paren) {
                        self.for_paren = None;
                    }
                    self.paren = self.paren.saturating_sub(1);
                    operand = true;
                    if self.annotation == Some(self.paren) {
                        self.annotation = None;
                        self.brk = Break::Soft;
                    }
                }
                "[" => {
                    if self.lang == Language::CSharp && self.line_first == Some(i) && self.paren == 0 {
                        self.attribute = Some(self.square);
                    }
                    self.square += 1;
                }
                "]" => {
                    operand = true;
                    self.square = self.square.saturating_sub(1);
                    if self.attribute == Some(self.square) {
                        self.attribute = None;
                        self.brk = Break::Soft;
                    }
                }
                "," => self.space_next = self.style.space_after_comma,
                ";" => {
                    if self.for_paren.is_some() {
                        self.space_next = !next.is_some_and(|n| n.is_punct(";") || n.is_punct(")"));
                    } else if self.frames.last().is_some_and(|f| f.padded) {
                        self.space_next = true;
                    } else if self.paren == 0 {
                        self.brk = Break::Soft;
                        self.ternary = 0;
                    } else {
                        self.space_next = true;
                    }
                }
                "{" => {
                    let after_do = self.prev.is_some_and(|p| p.is_word("do"));
                    let initializer = self.prev.is_some_and(|p| {
                        matches!(p.kind, TokenKind::Operator) && !prev_generic
                            || (p.kind == TokenKind::Punct && matches!(p.text, "," | "(" | "[" | "{" | "]"))
                            || p.is_word("return")
                            || p.is_word("new")
                    });
                    self.frames.push(Frame {
                        block: !inline,
                        paren: self.paren,
                        for_paren: self.for_paren,
                        ternary: self.ternary,
                        case_body: false,
                        after_do,
                        padded: self.accessors[i],
                        body: inline && !initializer && self.paren == 0,
                    });
                    self.paren = 0;
                    self.for_paren = None;
                    self.ternary = 0;
                    if !inline {
                        self.brk = Break::Soft;
                    } else if self.accessors[i] {
                        self.space_next = true;
                    }
                }
                "}" => {
                    operand = closed.as_ref().is_some_and(|f| !f.block);
                }
                _ => {}
            },
            TokenKind::Operator => match t.text {
                "++" | "--" => operand = was_operand,
                "?" if self.ternary_marks[i] || self.opens_ternary_at(i) => {
                    self.ternary_marks[i] = true;
                    self.ternary += 1;
                    self.space_next = true;
                }
                ":" => {
                    if self.ternary > 0 {
                        self.ternary -= 1;
                        self.space_next = true;
                    } else if self.colon_is_label() {
                        self.brk = Break::Soft;
                        if self.line_first.is_some_and(|f| self.is_case_label(f)) {
                            if let Some(frame) = self.innermost_block() {
                                frame.case_body = true;
                            }
                        }
                    } else {
                        self.space_next = true;
                    }
                }
                "..." => self.space_next = next.is_some_and(|n| n.kind == TokenKind::Word),
                "@" if self.lang == Language::Java
                    && self.line_first == Some(i)
                    && next.is_some_and(|n| n.kind == TokenKind::Word && n.text != "interface") =>
                {
                    self.annotation = Some(self.paren);
                }
                _ if generic => operand = t.text != "<",
                "->" if self.lang == Language::Java => self.space_next = true,
                "&" | "&&" | "*" if self.type_suffix(i).is_some() => {
                    self.space_next = self.type_suffix(i) == Some(true);
                    operand = true;
                }
                op if SPACED_BINARY.contains(&op) => {
                    if self.prev.is_some_and(|p| p.is_word("operator")) {
                        operand = true;
                    } else {
                        self.space_next = self.style.space_around_binary_ops && self.binary_context(op);
                    }
                }
                _ => {}
            },
            _ => {}
        }
        if closed.is_some() {
            self.brk = match closed {
                Some(ref f) if f.block || f.body => Break::AfterBlock { was_do: f.after_do },
                _ => Break::None,
            };
        }
        if t.unterminated {
            // It ran to the end of its line; the next token must not join it.
            self.brk = Break::Hard;
        }
        self.prev_operand = operand;
        self.prev_generic = generic && t.text != "<";
        self.prev = Some(t);
    }

    /// For `&`, `&&` and `*` written after a type: `Some(space_after)`.
    /// Either the type is a template instance or nothing but a closing
    /// delimiter follows.
    fn type_suffix(&self, i: usize) -> Option<bool> {
        if self.lang == Language::Java {
            return None;
        }
        let next = self.sig.get(i + 1)?;
        let closes = matches!((next.kind, next.text), (TokenKind::Punct, ")" | ",") | (TokenKind::Operator, ">" | ">>" | "..."));
        if closes && self.prev.is_some_and(|p| p.kind == TokenKind::Word) || closes && self.prev_generic {
            return Some(false);
        }
        if self.prev_generic && next.kind == TokenKind::Word {
            return Some(true);
        }
        None
    }

    fn opens_ternary_at(&self, i: usize) -> bool {
        self.prev_operand && opens_ternary(self.sig, i)
    }
}

#[cfg(test)]
mod tests {
    use crate::lexkit::Language::{self, *};
    use crate::transform::{restore, StyleProfile};
    use crate::Error;

    fn fmt(src: &str, lang: Language) -> alloc::string::String {
        restore(src, lang, StyleProfile::c_family()).unwrap().output
    }

    #[test]
    fn java_method() {
        assert_eq!(fmt("int add(int a,int b){return a+b;}", Java), "int add(int a, int b) {\n  return a + b;\n}\n");
    }

    #[test]
    fn control_flow() {
        assert_eq!(
            fmt("if(x){a();}else{b();}for(int i=0;i<n;i++){c(i);}", Java),
            "if (x) {\n  a();\n} else {\n  b();\n}\nfor (int i = 0; i < n; i++) {\n  c(i);\n}\n"
        );
        assert_eq!(fmt("do{x();}while(y);", Cpp), "do {\n  x();\n} while (y);\n");
        assert_eq!(fmt("try{a();}catch(E e){}finally{b();}", Java), "try {\n  a();\n} catch (E e) {} finally {\n  b();\n}\n");
        assert_eq!(fmt("for(;;){}", Cpp), "for (;;) {}\n");
    }

    #[test]
    fn switch_labels() {
        assert_eq!(
            fmt("switch(x){case 1:a();break;default:b();}", Java),
            "switch (x) {\n  case 1:\n    a();\n    break;\n  default:\n    b();\n}\n"
        );
    }

    #[test]
    fn unary_and_binary_operators() {
        assert_eq!(fmt("x=-a*b;y=!c&&d;z=a?b:c;i++;--j;", Java), "x = -a * b;\ny = !c && d;\nz = a ? b : c;\ni++;\n--j;\n");
        assert_eq!(fmt("return-1;", Cpp), "return -1;\n");
        assert_eq!(fmt("a=b- -c;", Java), "a = b - -c;\n");
    }

    #[test]
    fn generics_and_declarators() {
        assert_eq!(fmt("List<Map<String,Integer>>x=new ArrayList<>();", Java), "List<Map<String, Integer>> x = new ArrayList<>();\n");
        assert_eq!(fmt("void f(const std::vector<int>&v,T*);", Cpp), "void f(const std::vector<int>& v, T*);\n");
        assert_eq!(fmt("if(a<b&&c>d)x();", Java), "if (a < b && c > d) x();\n");
        assert_eq!(fmt("int? x=y?1:2;", CSharp), "int? x = y ? 1 : 2;\n");
    }

    #[test]
    fn initializers_stay_inline() {
        assert_eq!(fmt("int[]a={1,2};", Java), "int[] a = {1, 2};\n");
        assert_eq!(fmt("class A{int X{get;set;}}", CSharp), "class A {\n  int X { get; set; }\n}\n");
    }

    #[test]
    fn comments_and_directives() {
        assert_eq!(fmt("#include <a>\nint x;// c\nint y;", Cpp), "#include <a>\nint x;  // c\nint y;\n");
        assert_eq!(fmt("void f(){\n#if A\nx();\n#endif\n}", Cpp), "void f() {\n#if A\n  x();\n#endif\n}\n");
        assert_eq!(fmt("/** doc */\nclass A{}", Java), "/** doc */\nclass A {}\n");
    }

    #[test]
    fn conditional_braces() {
        let src = "#if A\nvoid f(int a){\n#else\nvoid f(){\n#endif\nx();\n}\n";
        let out = fmt(src, Cpp);
        assert!(out.ends_with("  x();\n}\n"), "{out}");
    }

    #[test]
    fn annotations_and_attributes() {
        assert_eq!(fmt("@Override public void f(){}", Java), "@Override\npublic void f() {}\n");
        assert_eq!(fmt("@A(x=1) class B{}", Java), "@A(x = 1)\nclass B {}\n");
        assert_eq!(fmt("[Test] public void F(){}", CSharp), "[Test]\npublic void F() {}\n");
    }

    #[test]
    fn access_specifiers() {
        assert_eq!(fmt("class A{public:int x;};", Cpp), "class A {\npublic:\n  int x;\n};\n");
    }

    #[test]
    fn blank_lines_are_capped() {
        assert_eq!(fmt("a();\n\n\n\nb();", Java), "a();\n\nb();\n");
    }

    #[test]
    fn trailing_splice_gets_no_final_break() {
        assert_eq!(fmt("#define A \\\n  b \\", Cpp), "#define A \\\n  b \\");
    }

    #[test]
    fn cpp_comment_after_bodiless_if_is_stable() {
        let once = fmt("if (a)\n  // why\n  f();\nelse\n  // no\n  g();\n", Cpp);
        assert!(once.contains(")  // why"), "{once}");
        assert_eq!(fmt(&once, Cpp), once);
    }

    #[test]
    fn line_ended_literal_breaks() {
        assert_eq!(fmt("x = 'a\ny;", Cpp), "x = 'a\ny;\n");
    }

    #[test]
    fn unbalanced_braces_are_errors() {
        assert_eq!(
            restore("}", Java, StyleProfile::c_family()),
            Err(Error::UnbalancedBraces { line: 1, col: 1 })
        );
        assert_eq!(
            restore("void f() {\n{", Java, StyleProfile::c_family()),
            Err(Error::UnbalancedBraces { line: 1, col: 10 })
        );
    }

    #[test]
    fn empty_input() {
        assert_eq!(fmt("", Java), "");
    }
}
