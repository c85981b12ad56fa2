use alloc::string::String;

use crate::lexkit::{relex, Language, LexToken, TokenKind};

use super::FormatConfig;

/// What happens to the trivia between two significant tokens.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GapPolicy {
    pub remove_indentation: bool,
    pub remove_whitespace: bool,
    pub remove_newlines: bool,
    pub drop_blank_lines: bool,
}

impl From<FormatConfig> for GapPolicy {
    fn from(c: FormatConfig) -> Self {
        GapPolicy {
            remove_indentation: c.remove_indentation,
            remove_whitespace: c.remove_whitespace,
            remove_newlines: c.remove_newlines,
            drop_blank_lines: c.drop_python_blank_lines,
        }
    }
}

/// Strips an already lexed stream. `config` must already be clamped.
pub fn strip_with(tokens: &[LexToken<'_>], language: Language, config: FormatConfig) -> String {
    let mut out = String::with_capacity(tokens.last().map_or(0, |t| t.end()));
    let mut scratch = String::new();
    emit_stream(
        tokens,
        config.into(),
        |before, prev, next, after| relex::merges_between(&mut scratch, before, prev, next, after, language),
        &mut out,
    );
    out
}

/// Copies significant tokens verbatim and rewrites each trivia gap per
/// `policy`. Where a gap collapses to nothing, `needs_sep` decides whether
/// one space must stay; it also gets the tokens touching the pair on either
/// side, if any.
pub(crate) fn emit_stream<'a, F>(tokens: &[LexToken<'a>], policy: GapPolicy, mut needs_sep: F, out: &mut String)
where
    F: FnMut(Option<&LexToken<'a>>, &LexToken<'a>, &LexToken<'a>, Option<&LexToken<'a>>) -> bool,
{
    let mut prev: Option<&LexToken<'a>> = None;
    let mut before: Option<&LexToken<'a>> = None;
    let mut gap_start = 0;
    for (i, tok) in tokens.iter().enumerate() {
        if tok.kind.is_trivia() {
            continue;
        }
        let mark = out.len();
        let after = tokens.get(i + 1).filter(|t| !t.kind.is_trivia());
        let seam = Seam { before, prev, next: Some(tok), after };
        emit_gap(&tokens[gap_start..i], seam, policy, &mut needs_sep, out);
        before = if out.len() == mark { prev } else { None };
        out.push_str(tok.text);
        prev = Some(tok);
        gap_start = i + 1;
    }
    let seam = Seam { before, prev, next: None, after: None };
    emit_gap(&tokens[gap_start..], seam, policy, &mut needs_sep, out);
}

/// The significant tokens around a gap. `before` and `after` are set when
/// they touch `prev` and `next` respectively.
#[derive(Clone, Copy)]
struct Seam<'t, 'a> {
    before: Option<&'t LexToken<'a>>,
    prev: Option<&'t LexToken<'a>>,
    next: Option<&'t LexToken<'a>>,
    after: Option<&'t LexToken<'a>>,
}

fn emit_gap<'a, F>(
    gap: &[LexToken<'a>],
    seam: Seam<'_, 'a>,
    policy: GapPolicy,
    needs_sep: &mut F,
    out: &mut String,
) where
    F: FnMut(Option<&LexToken<'a>>, &LexToken<'a>, &LexToken<'a>, Option<&LexToken<'a>>) -> bool,
{
    if gap.is_empty() {
        return;
    }
    let Seam { before, prev, next, after } = seam;
    let has_newline = gap.iter().any(|t| t.kind == TokenKind::Newline);
    // Comments to end of line, directives and literals cut short by the
    // line end keep their line break.
    let must_break = has_newline
        && match (prev, next) {
            (Some(p), Some(n)) => {
                matches!(p.kind, TokenKind::LineComment | TokenKind::Preprocessor)
                    || p.unterminated
                    || n.kind == TokenKind::Preprocessor
            }
            _ => false,
        };

    let start = out.len();
    let mut broke = false;
    let mut newlines_kept = 0;
    for (j, t) in gap.iter().enumerate() {
        match t.kind {
            TokenKind::Newline => {
                if policy.remove_newlines {
                    if must_break && !broke {
                        out.push('\n');
                        broke = true;
                    }
                } else if policy.drop_blank_lines {
                    if prev.is_some() && newlines_kept == 0 {
                        out.push('\n');
                        newlines_kept += 1;
                    }
                } else {
                    out.push('\n');
                    newlines_kept += 1;
                }
            }
            TokenKind::Indent => {
                let blank_line = gap.get(j + 1).map_or(next.is_none(), |n| n.kind == TokenKind::Newline);
                let drop = policy.remove_indentation
                    || (blank_line && (policy.remove_newlines || policy.drop_blank_lines));
                if !drop {
                    out.push_str(t.text);
                }
            }
            _ => {
                if !policy.remove_whitespace {
                    out.push_str(t.text);
                }
            }
        }
    }
    if out.len() == start {
        if let (Some(p), Some(n)) = (prev, next) {
            if needs_sep(before, p, n, after) {
                out.push(' ');
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::lexkit::Language::{self, *};
    use crate::transform::{strip, FormatConfig};

    fn all(src: &str, lang: Language) -> alloc::string::String {
        strip(src, lang, FormatConfig::all()).output
    }

    #[test]
    fn java_method() {
        assert_eq!(
            all("int add(int a, int b) {\n    return a + b;\n}\n", Java),
            "int add(int a,int b){return a+b;}"
        );
    }

    #[test]
    fn python_keeps_lines() {
        let r = strip("x = 1 + 2\n", Python, FormatConfig::all());
        assert_eq!(r.output, "x=1+2\n");
        assert_eq!(r.clamped_options, ["remove_indentation", "remove_newlines"]);
        assert_eq!(all("def f(a, b):\n    return a  if b else 2\n", Python), "def f(a,b):\n    return a if b else 2\n");
    }

    #[test]
    fn empty() {
        assert_eq!(all("", Java), "");
        assert_eq!(all("  \n\n", Cpp), "");
    }

    #[test]
    fn csharp_signature_keeps_required_spaces() {
        assert_eq!(
            all("static bool HasCloseElements(List<double> numbers, double threshold)", CSharp),
            "static bool HasCloseElements(List<double>numbers,double threshold)"
        );
    }

    #[test]
    fn comments_and_directives_keep_line_breaks() {
        assert_eq!(all("int x; // c\nint y;\n", Cpp), "int x;// c\nint y;");
        assert_eq!(all("int x; // c\n", Cpp), "int x;// c");
        assert_eq!(
            all("#include <a>\n#include <b>\nint main() {\n  return 0;\n}\n", Cpp),
            "#include <a>\n#include <b>\nint main(){return 0;}"
        );
        assert_eq!(all("int a;\n  #define X 1\nint b;", Cpp), "int a;\n#define X 1\nint b;");
        assert_eq!(all("a /* x */ b", Java), "a/* x */b");
    }

    #[test]
    fn operators_that_would_merge_keep_space() {
        assert_eq!(all("a - -b;", Java), "a- -b;");
        assert_eq!(all("a + +b;", CSharp), "a+ +b;");
        assert_eq!(all("x = a / *p;", Cpp), "x=a/ *p;");
        assert_eq!(all("List<List<int> > x;", Cpp), "List<List<int> >x;");
        assert_eq!(all("return \"s\";", Java), "return\"s\";");
    }

    #[test]
    fn single_element_ablations() {
        let src = "class A {\n    int x = 1;\n\n    int y;\n}\n";
        assert_eq!(
            strip(src, Java, FormatConfig::only_indentation()).output,
            "class A {\nint x = 1;\n\nint y;\n}\n"
        );
        assert_eq!(
            strip(src, Java, FormatConfig::only_whitespace()).output,
            "class A{\n    int x=1;\n\n    int y;\n}\n"
        );
        assert_eq!(
            strip(src, Java, FormatConfig::only_newlines()).output,
            "class A {    int x = 1;    int y;}"
        );
    }

    #[test]
    fn newline_join_uses_oracle() {
        assert_eq!(strip("int\nx;", Java, FormatConfig::only_newlines()).output, "int x;");
        assert_eq!(strip("a;\nb;", Java, FormatConfig::only_newlines()).output, "a;b;");
    }

    #[test]
    fn python_blank_lines() {
        let src = "a = 1\n\n\nb = 2\n";
        assert_eq!(all(src, Python), "a=1\n\n\nb=2\n");
        let cfg = FormatConfig { drop_python_blank_lines: true, ..FormatConfig::all() };
        assert_eq!(strip(src, Python, cfg).output, "a=1\nb=2\n");
    }

    #[test]
    fn crlf_normalized() {
        assert_eq!(strip("a = 1\r\nb\r\n", Python, FormatConfig::all()).output, "a=1\nb\n");
    }

    #[test]
    fn unterminated_string_is_left_alone() {
        let r = strip("x = \"abc  def", Java, FormatConfig::all());
        assert_eq!(r.output, "x=\"abc  def");
        assert_eq!(r.lex_flags.len(), 1);
    }

    #[test]
    fn three_token_merges_keep_a_space() {
        assert_eq!(all("x = 1e+ 0;", CSharp), "x=1e+ 0;");
        assert_eq!(all("a. . .b", Java), "a.. .b");
        assert_eq!(all("x = 1e +0;", Java), "x=1e +0;");
    }

    #[test]
    fn line_ended_literal_keeps_its_break() {
        assert_eq!(all("x = 'a\nint y;", Cpp), "x='a\nint y;");
    }
}
