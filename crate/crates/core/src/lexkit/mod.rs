//! Lossless lexical scanning.
//!
//! [`lex`] splits source text into [`LexToken`]s whose texts concatenate back
//! to the input byte for byte. Formatting trivia (whitespace, indentation and
//! line breaks) are tokens too, which lets the transforms decide per token
//! what to keep. Keywords are not told apart from identifiers: whether two
//! words may touch is answered by [`relex_pair`], not by a keyword table.

mod logical;
pub(crate) mod relex;
mod scan;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use logical::{indent_width, logical_lines, LogicalLine};
pub use relex::{relex_pair, relex_texts, MergeOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize), serde(rename_all = "lowercase"))]
pub enum Language {
    Java,
    Cpp,
    CSharp,
    Python,
}

impl Language {
    pub const ALL: [Language; 4] = [Language::Java, Language::Cpp, Language::CSharp, Language::Python];

    /// Java, C++ and C#: languages where layout carries no meaning outside
    /// preprocessor lines.
    pub fn is_c_family(self) -> bool {
        !matches!(self, Language::Python)
    }

    pub fn name(self) -> &'static str {
        match self {
            Language::Java => "java",
            Language::Cpp => "cpp",
            Language::CSharp => "csharp",
            Language::Python => "python",
        }
    }

    /// Maps a file extension (without the dot) to a language.
    pub fn from_extension(ext: &str) -> Option<Language> {
        match ext {
            "java" => Some(Language::Java),
            "cpp" | "cc" | "cxx" | "h" | "hpp" | "hh" | "hxx" => Some(Language::Cpp),
            "cs" => Some(Language::CSharp),
            "py" => Some(Language::Python),
            _ => None,
        }
    }

    pub(crate) fn has_preprocessor(self) -> bool {
        matches!(self, Language::Cpp | Language::CSharp)
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLanguage;

impl fmt::Display for UnknownLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown language (expected java, cpp, csharp or python)")
    }
}

impl FromStr for Language {
    type Err = UnknownLanguage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "java" => Ok(Language::Java),
            "cpp" | "c++" | "cxx" | "cc" => Ok(Language::Cpp),
            "csharp" | "c#" | "cs" => Ok(Language::CSharp),
            "python" | "py" | "python3" => Ok(Language::Python),
            _ => Err(UnknownLanguage),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    /// Identifier or keyword.
    Word,
    Number,
    String,
    /// C-family character literal.
    Char,
    Operator,
    /// Brackets, `;`, `,` and the line-continuation backslash.
    Punct,
    LineComment,
    BlockComment,
    /// A whole C++/C# directive line, continuations included.
    Preprocessor,
    /// Space/tab run that does not start a line.
    Whitespace,
    Newline,
    /// Space/tab run at the start of a line.
    Indent,
}

impl TokenKind {
    /// Removable formatting: whitespace, indentation and line breaks.
    pub fn is_trivia(self) -> bool {
        matches!(self, TokenKind::Whitespace | TokenKind::Newline | TokenKind::Indent)
    }

    pub fn is_comment(self) -> bool {
        matches!(self, TokenKind::LineComment | TokenKind::BlockComment)
    }

    /// Tokens whose interior bytes are never rewritten.
    pub fn is_verbatim(self) -> bool {
        matches!(
            self,
            TokenKind::String
                | TokenKind::Char
                | TokenKind::LineComment
                | TokenKind::BlockComment
                | TokenKind::Preprocessor
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LexToken<'a> {
    pub kind: TokenKind,
    pub text: &'a str,
    /// 1-based line.
    pub line: u32,
    /// 1-based column, in bytes.
    pub col: u32,
    /// Byte offset of `text` in the source.
    pub offset: usize,
    /// Set when a string, character literal or comment runs into the end of
    /// its line or of the input without being closed.
    pub unterminated: bool,
}

impl<'a> LexToken<'a> {
    pub fn end(&self) -> usize {
        self.offset + self.text.len()
    }

    pub fn is_punct(&self, text: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == text
    }

    pub fn is_word(&self, text: &str) -> bool {
        self.kind == TokenKind::Word && self.text == text
    }
}

/// Streaming lexer; [`lex`] collects it.
#[derive(Debug, Clone)]
pub struct Lexer<'a> {
    src: &'a str,
    lang: Language,
    pos: usize,
    line: u32,
    col: u32,
    at_line_start: bool,
    line_has_code: bool,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str, lang: Language) -> Self {
        Lexer {
            src,
            lang,
            pos: 0,
            line: 1,
            col: 1,
            at_line_start: true,
            line_has_code: false,
        }
    }
}

impl<'a> Iterator for Lexer<'a> {
    type Item = LexToken<'a>;

    fn next(&mut self) -> Option<LexToken<'a>> {
        if self.pos >= self.src.len() {
            return None;
        }
        let state = scan::LineState {
            at_line_start: self.at_line_start,
            line_has_code: self.line_has_code,
        };
        let (kind, end, unterminated) = scan::scan(self.src, self.pos, self.lang, state);
        let text = &self.src[self.pos..end];
        let token = LexToken {
            kind,
            text,
            line: self.line,
            col: self.col,
            offset: self.pos,
            unterminated,
        };
        self.pos = end;
        advance_position(text, &mut self.line, &mut self.col);
        match kind {
            TokenKind::Newline => {
                self.at_line_start = true;
                self.line_has_code = false;
            }
            TokenKind::Indent | TokenKind::Whitespace => self.at_line_start = false,
            _ => {
                self.at_line_start = false;
                self.line_has_code = true;
            }
        }
        Some(token)
    }
}

fn advance_position(text: &str, line: &mut u32, col: &mut u32) {
    let bytes = text.as_bytes();
    let mut last_break = None;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'\n' => {
                *line += 1;
                last_break = Some(i);
            }
            b'\r' => {
                if bytes.get(i + 1) == Some(&b'\n') {
                    i += 1;
                }
                *line += 1;
                last_break = Some(i);
            }
            _ => {}
        }
        i += 1;
    }
    match last_break {
        Some(at) => *col = (bytes.len() - at) as u32,
        None => *col += bytes.len() as u32,
    }
}

/// Splits `source` into a lossless token stream.
pub fn lex(source: &str, language: Language) -> Vec<LexToken<'_>> {
    Lexer::new(source, language).collect()
}

/// Drops whitespace, indentation and newlines; comments and directives stay.
pub fn significant<'a>(stream: &[LexToken<'a>]) -> Vec<LexToken<'a>> {
    stream.iter().filter(|t| !t.kind.is_trivia()).copied().collect()
}

/// Tokens that hit end of line or input before closing.
pub fn unterminated<'a>(stream: &[LexToken<'a>]) -> Vec<LexToken<'a>> {
    stream.iter().filter(|t| t.unterminated).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    fn kinds(src: &str, lang: Language) -> Vec<(TokenKind, &str)> {
        lex(src, lang).into_iter().map(|t| (t.kind, t.text)).collect()
    }

    fn concat(src: &str, lang: Language) -> String {
        lex(src, lang).iter().map(|t| t.text).collect()
    }

    use TokenKind::*;

    #[test]
    fn empty_input() {
        assert!(lex("", Language::Java).is_empty());
    }

    #[test]
    fn simple_expression() {
        assert_eq!(
            kinds("a+b", Language::Java),
            vec![(Word, "a"), (Operator, "+"), (Word, "b")]
        );
    }

    #[test]
    fn line_comment_and_newline() {
        assert_eq!(
            kinds("int x; // c\n", Language::Cpp),
            vec![
                (Word, "int"),
                (Whitespace, " "),
                (Word, "x"),
                (Punct, ";"),
                (Whitespace, " "),
                (LineComment, "// c"),
                (Newline, "\n"),
            ]
        );
    }

    #[test]
    fn indent_only_at_line_start() {
        assert_eq!(
            kinds("  a b\n\tc", Language::Java),
            vec![
                (Indent, "  "),
                (Word, "a"),
                (Whitespace, " "),
                (Word, "b"),
                (Newline, "\n"),
                (Indent, "\t"),
                (Word, "c"),
            ]
        );
    }

    #[test]
    fn crlf_is_one_newline() {
        assert_eq!(
            kinds("a\r\nb\rc", Language::CSharp),
            vec![(Word, "a"), (Newline, "\r\n"), (Word, "b"), (Newline, "\r"), (Word, "c")]
        );
    }

    #[test]
    fn maximal_munch_operators() {
        assert_eq!(
            kinds("a>>>=b", Language::Java),
            vec![(Word, "a"), (Operator, ">>>="), (Word, "b")]
        );
        assert_eq!(kinds("a<=>b", Language::Cpp)[1], (Operator, "<=>"));
        assert_eq!(kinds("a??=b", Language::CSharp)[1], (Operator, "??="));
        assert_eq!(kinds("a**=b", Language::Python)[1], (Operator, "**="));
        assert_eq!(kinds("x->y", Language::Cpp)[1], (Operator, "->"));
    }

    #[test]
    fn preprocessor_lines() {
        let src = "#define X(a) \\\n  (a + 1) // c\nint y;\n  #  include <x>\n";
        let toks = kinds(src, Language::Cpp);
        assert_eq!(toks[0], (Preprocessor, "#define X(a) \\\n  (a + 1) // c"));
        assert_eq!(toks[1], (Newline, "\n"));
        assert!(toks.contains(&(Preprocessor, "#  include <x>")));
        assert_eq!(kinds("#region Foo\n", Language::CSharp)[0], (Preprocessor, "#region Foo"));
        // Not at line start: plain operator.
        assert_eq!(kinds("a # b", Language::Cpp)[2], (Operator, "#"));
        // Java has no preprocessor.
        assert_eq!(kinds("#x", Language::Java)[0], (Operator, "#"));
    }

    #[test]
    fn preprocessor_with_block_comment_spanning_lines() {
        let src = "#define A /* x\n y */ 1\nint z;";
        assert_eq!(kinds(src, Language::Cpp)[0], (Preprocessor, "#define A /* x\n y */ 1"));
    }

    #[test]
    fn python_comments_and_strings() {
        assert_eq!(
            kinds("x = 'a' # c\n", Language::Python),
            vec![
                (Word, "x"),
                (Whitespace, " "),
                (Operator, "="),
                (Whitespace, " "),
                (String, "'a'"),
                (Whitespace, " "),
                (LineComment, "# c"),
                (Newline, "\n"),
            ]
        );
        let triple = "s = \"\"\"a\n  b \"\" c\"\"\"\n";
        assert_eq!(kinds(triple, Language::Python)[4], (String, "\"\"\"a\n  b \"\" c\"\"\""));
        assert_eq!(kinds("rb'\\x00'", Language::Python)[0], (String, "rb'\\x00'"));
        assert_eq!(kinds("f\"{a!r}\"", Language::Python)[0], (String, "f\"{a!r}\""));
        assert_eq!(kinds("if'a'", Language::Python), vec![(Word, "if"), (String, "'a'")]);
    }

    #[test]
    fn cpp_string_forms() {
        assert_eq!(kinds("R\"d(a)\" b)d\"", Language::Cpp)[0], (String, "R\"d(a)\" b)d\""));
        assert_eq!(kinds("u8\"x\"", Language::Cpp)[0], (String, "u8\"x\""));
        assert_eq!(kinds("L'x'", Language::Cpp)[0], (Char, "L'x'"));
        assert_eq!(kinds("\"a\"_s", Language::Cpp)[0], (String, "\"a\"_s"));
        assert_eq!(kinds("1'000'000", Language::Cpp)[0], (Number, "1'000'000"));
        assert_eq!(kinds("0x1e+2", Language::Cpp)[0], (Number, "0x1e+2"));
        assert_eq!(kinds("0x1e+2", Language::Java)[0], (Number, "0x1e"));
    }

    #[test]
    fn csharp_string_forms() {
        assert_eq!(kinds("@\"a\"\"b\\\"", Language::CSharp)[0], (String, "@\"a\"\"b\\\""));
        assert_eq!(
            kinds("$\"x{a[\"k\"]}y{{z}}\";", Language::CSharp),
            vec![(String, "$\"x{a[\"k\"]}y{{z}}\""), (Punct, ";")]
        );
        assert_eq!(kinds("$@\"{a}\n\"", Language::CSharp)[0], (String, "$@\"{a}\n\""));
        assert_eq!(kinds("\"\"\"a\"\"b\"\"\"", Language::CSharp)[0], (String, "\"\"\"a\"\"b\"\"\""));
        assert_eq!(kinds("@class", Language::CSharp)[0], (Word, "@class"));
        assert_eq!(kinds("1..2", Language::CSharp), vec![(Number, "1"), (Operator, ".."), (Number, "2")]);
    }

    #[test]
    fn java_text_block_and_numbers() {
        assert_eq!(kinds("\"\"\"\n a\"\n\"\"\"", Language::Java)[0], (String, "\"\"\"\n a\"\n\"\"\""));
        assert_eq!(kinds("1_000L", Language::Java)[0], (Number, "1_000L"));
        assert_eq!(kinds("1.5e-3f", Language::Java)[0], (Number, "1.5e-3f"));
        assert_eq!(kinds("0x1.8p1", Language::Java)[0], (Number, "0x1.8p1"));
        assert_eq!(kinds("1.", Language::Java)[0], (Number, "1."));
        assert_eq!(kinds(".5", Language::Java)[0], (Number, ".5"));
    }

    #[test]
    fn unterminated_constructs_are_flagged() {
        let toks = lex("a = \"abc", Language::Java);
        let last = toks.last().unwrap();
        assert_eq!(last.text, "\"abc");
        assert!(last.unterminated);
        let toks = lex("/* open", Language::CSharp);
        assert_eq!(toks[0].kind, BlockComment);
        assert!(toks[0].unterminated);
        let toks = lex("s = '''never", Language::Python);
        assert!(toks.last().unwrap().unterminated);
        // Single-line string stops at the line end.
        let toks = lex("\"abc\nx", Language::Java);
        assert_eq!(toks[0].text, "\"abc");
        assert!(toks[0].unterminated);
        assert_eq!(toks[2].text, "x");
    }

    #[test]
    fn unicode_handling() {
        let toks = kinds("π\u{a0}x", Language::Java);
        assert_eq!(toks, vec![(Word, "π"), (Operator, "\u{a0}"), (Word, "x")]);
    }

    #[test]
    fn positions() {
        let toks = lex("a\n  bc d", Language::Java);
        let d = toks.last().unwrap();
        assert_eq!((d.line, d.col, d.offset), (2, 6, 7));
        let toks = lex("/*\n*/x", Language::Java);
        assert_eq!((toks[1].line, toks[1].col), (2, 3));
    }

    #[test]
    fn significant_filter() {
        assert!(significant(&[]).is_empty());
        let toks = lex("a + b", Language::Java);
        let sig: Vec<&str> = significant(&toks).iter().map(|t| t.text).collect();
        assert_eq!(sig, vec!["a", "+", "b"]);
        let toks = lex("int x; // c\n", Language::Cpp);
        let sig: Vec<&str> = significant(&toks).iter().map(|t| t.text).collect();
        assert_eq!(sig, vec!["int", "x", ";", "// c"]);
    }

    #[test]
    fn lossless_on_odd_input() {
        for src in ["\\\n", "'", "\"", "R\"(", "$\"{", "@", "`~", "0x", "1e", "#", "/*/", "\r\r\n\n"] {
            for lang in Language::ALL {
                assert_eq!(concat(src, lang), src, "{src:?} {lang}");
            }
        }
    }

    #[test]
    fn language_parsing() {
        assert_eq!("C#".parse::<Language>(), Ok(Language::CSharp));
        assert_eq!("java".parse::<Language>(), Ok(Language::Java));
        assert!("rust".parse::<Language>().is_err());
        assert_eq!(Language::from_extension("hpp"), Some(Language::Cpp));
        assert_eq!(Language::from_extension("rs"), None);
    }
}
