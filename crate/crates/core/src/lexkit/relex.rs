use alloc::string::String;

use super::{scan, Language, LexToken, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeOutcome {
    /// The two tokens re-lex unchanged when written back to back.
    Separate,
    /// Juxtaposing them changes the token stream; a separator is required.
    Merges,
}

/// Decides whether `left` and `right` can touch without a separator.
///
/// The concatenation of both texts is scanned; unless the first two tokens
/// come back with exactly the original lengths and kinds, the pair merges.
pub fn relex_pair(left: &LexToken<'_>, right: &LexToken<'_>, language: Language) -> MergeOutcome {
    relex_kinds(left.text, left.kind, right.text, right.kind, language)
}

/// [`relex_pair`] on bare texts, taking the kinds from a fresh scan.
pub fn relex_texts(left: &str, right: &str, language: Language) -> MergeOutcome {
    let kind_of = |text: &str| {
        let state = scan::LineState {
            at_line_start: false,
            line_has_code: !text.starts_with('#'),
        };
        if text.is_empty() {
            return None;
        }
        let (kind, end, _) = scan::scan(text, 0, language, state);
        (end == text.len()).then_some(kind)
    };
    match (kind_of(left), kind_of(right)) {
        (Some(lk), Some(rk)) => relex_kinds(left, lk, right, rk, language),
        _ => MergeOutcome::Merges,
    }
}

/// Whether `left` and `right` need a separator, reusing `scratch` for the
/// concatenation. `before` and `after` are the tokens already touching the
/// pair on either side; some merges span three tokens, as in `1e` `+` `2`.
pub(crate) fn merges_between(
    scratch: &mut String,
    before: Option<&LexToken<'_>>,
    left: &LexToken<'_>,
    right: &LexToken<'_>,
    after: Option<&LexToken<'_>>,
    language: Language,
) -> bool {
    // Brackets and separators never combine with a neighbour.
    let plain = |t: &LexToken<'_>| t.kind == TokenKind::Punct && t.text != "\\";
    if plain(left) && plain(right) {
        return false;
    }
    if rescan(scratch, &[part(left), part(right)], language) == MergeOutcome::Merges {
        return true;
    }
    let merges = |scratch: &mut String, a: &LexToken<'_>, b: &LexToken<'_>, c: &LexToken<'_>| {
        let spans = !(plain(a) && plain(b)) || !(plain(b) && plain(c));
        spans && rescan(scratch, &[part(a), part(b), part(c)], language) == MergeOutcome::Merges
    };
    before.is_some_and(|b| merges(scratch, b, left, right)) || after.is_some_and(|a| merges(scratch, left, right, a))
}

fn part<'s>(t: &LexToken<'s>) -> (&'s str, TokenKind) {
    (t.text, t.kind)
}

pub(crate) fn relex_kinds(left: &str, left_kind: TokenKind, right: &str, right_kind: TokenKind, language: Language) -> MergeOutcome {
    rescan(&mut String::new(), &[(left, left_kind), (right, right_kind)], language)
}

/// Scans the concatenation of `parts` and reports whether it comes back as
/// exactly those tokens.
fn rescan(joined: &mut String, parts: &[(&str, TokenKind)], language: Language) -> MergeOutcome {
    joined.clear();
    for (text, _) in parts {
        joined.push_str(text);
    }
    let joined = joined.as_str();
    let mut pos = 0;
    for (k, (text, kind)) in parts.iter().enumerate() {
        // A directive can only be scanned as one from the start of a line.
        let state = scan::LineState {
            at_line_start: false,
            line_has_code: k > 0 || *kind != TokenKind::Preprocessor,
        };
        let (got, end, _) = scan::scan(joined, pos, language, state);
        if end != pos + text.len() || got != *kind {
            return MergeOutcome::Merges;
        }
        pos = end;
    }
    MergeOutcome::Separate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexkit::lex;
    use alloc::vec::Vec;
    use MergeOutcome::*;

    fn pair(l: &str, r: &str, lang: Language) -> MergeOutcome {
        relex_texts(l, r, lang)
    }

    #[test]
    fn keywords_need_separators() {
        assert_eq!(pair("static", "bool", Language::CSharp), Merges);
        assert_eq!(pair("double", "threshold", Language::CSharp), Merges);
    }

    #[test]
    fn brackets_separate() {
        assert_eq!(pair(")", "{", Language::Java), Separate);
        assert_eq!(pair("a", "(", Language::Python), Separate);
    }

    #[test]
    fn munching_operators_merge() {
        assert_eq!(pair(">", ">", Language::Cpp), Merges);
        assert_eq!(pair("-", "-", Language::Java), Merges);
        assert_eq!(pair("+", "+", Language::CSharp), Merges);
        assert_eq!(pair("/", "/", Language::Java), Merges);
        assert_eq!(pair("/", "*", Language::Cpp), Merges);
        assert_eq!(pair("<", ":", Language::Cpp), Merges);
        assert_eq!(pair("=", "=", Language::Python), Merges);
        assert_eq!(pair("=", "-", Language::Python), Separate);
    }

    #[test]
    fn literal_prefixes_merge() {
        assert_eq!(pair("u8", "\"x\"", Language::Cpp), Merges);
        assert_eq!(pair("\"x\"", "PRId64", Language::Cpp), Merges);
        assert_eq!(pair("f", "'x'", Language::Python), Merges);
        assert_eq!(pair("return", "\"x\"", Language::Java), Separate);
        assert_eq!(pair("1", "if", Language::Python), Merges);
        assert_eq!(pair("0x1e", "+", Language::Cpp), Merges);
        assert_eq!(pair("0x1e", "+", Language::Java), Separate);
        assert_eq!(pair("1", ".x", Language::Java), Merges);
        assert_eq!(pair("?", ".5", Language::CSharp), Merges);
    }

    #[test]
    fn comments_swallow_what_follows() {
        assert_eq!(pair("// c", "x", Language::Java), Merges);
        assert_eq!(pair("# c", "x", Language::Python), Merges);
        assert_eq!(pair("/* c */", "x", Language::Java), Separate);
        assert_eq!(pair("#define X", "y", Language::Cpp), Merges);
    }

    #[test]
    fn three_token_merges() {
        let toks: Vec<_> = lex("1e + 0", Language::CSharp).into_iter().filter(|t| !t.kind.is_trivia()).collect();
        let mut scratch = String::new();
        assert!(!merges_between(&mut scratch, None, &toks[1], &toks[2], None, Language::CSharp));
        assert!(merges_between(&mut scratch, Some(&toks[0]), &toks[1], &toks[2], None, Language::CSharp));
        let dots: Vec<_> = lex(". . .", Language::Java).into_iter().filter(|t| !t.kind.is_trivia()).collect();
        assert!(merges_between(&mut scratch, Some(&dots[0]), &dots[1], &dots[2], None, Language::Java));
        assert!(merges_between(&mut scratch, None, &toks[0], &toks[1], Some(&toks[2]), Language::CSharp));
    }

    #[test]
    fn token_based_entry_point() {
        let toks = lex("static bool", Language::CSharp);
        assert_eq!(relex_pair(&toks[0], &toks[2], Language::CSharp), Merges);
    }
}
