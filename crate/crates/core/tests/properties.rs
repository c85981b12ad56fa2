use std::fs;
use std::path::Path;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::select;

use unfmt_core::lexkit::{logical_lines, significant};
use unfmt_core::metering::{Bpe, Tokenizer};
use unfmt_core::partial::{balance_brackets, remove_ledger, split_unfinished, transform_partial, PartialMode};
use unfmt_core::verify::{equivalent, equivalent_strict};
use unfmt_core::{canonical_minimal, lex, restore, strip, FormatConfig, Language, StyleProfile, TokenKind};

const CASES: u32 = 1000;

fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() }
}

fn corpus() -> &'static [(String, Language)] {
    static FILES: OnceLock<Vec<(String, Language)>> = OnceLock::new();
    FILES.get_or_init(|| {
        let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
        let mut files = Vec::new();
        for dir in ["java", "cpp", "csharp", "python"] {
            let mut paths: Vec<_> = fs::read_dir(root.join(dir)).unwrap().map(|e| e.unwrap().path()).collect();
            paths.sort();
            for path in paths {
                let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
                if let Some(lang) = Language::from_extension(ext) {
                    files.push((fs::read_to_string(&path).unwrap(), lang));
                }
            }
        }
        files
    })
}

fn language() -> impl Strategy<Value = Language> {
    select(Language::ALL.to_vec())
}

fn c_family() -> impl Strategy<Value = Language> {
    select(vec![Language::Java, Language::Cpp, Language::CSharp])
}

fn gap() -> impl Strategy<Value = &'static str> {
    select(vec!["", "", "", " ", "  ", "\t", "\n", "\n    ", "\n\n", " \n  "])
}

/// Token texts that exercise merging: keywords, literals with prefixes and
/// exponents, every operator family, comments.
fn atom() -> impl Strategy<Value = &'static str> {
    select(vec![
        "int", "static", "bool", "x", "y1", "_z", "return", "new", "u8", "L", "R", "b", "f", "0", "1", "0x1e", "1.5",
        "1e", "10", ".5", "\"s t\"", "'c'", "+", "-", "*", "/", "%", "<", ">", "=", "!", "&", "|", "^", "~", "?",
        ":", ".", "::", "->", "=>", "++", "--", "<<", ">>", "&&", "||", "==", "!=", "<=", ">=", "+=", "...", "@",
        "$", "#", ",", ";", "(", ")", "[", "]", "/* c */", "// c\n", "\\",
    ])
}

fn soup() -> impl Strategy<Value = String> {
    prop::collection::vec((atom(), gap()), 0..40).prop_map(|parts| {
        let mut s = String::new();
        for (a, g) in parts {
            s.push_str(a);
            s.push_str(g);
        }
        s
    })
}

/// Expression-ish text without braces, `;` or line comments, safe inside a
/// statement.
fn expr() -> impl Strategy<Value = String> {
    let piece = select(vec![
        "x", "y", "a1", "f(x)", "g(a, b)", "1", "0x1e", "2.5", "\"s\"", "'c'", "-x", "!y", "a[i]", "p->q", "p.q",
        "(x + y)", "a ? b : c", "List<Integer>", "x<<2", "n--", "++m", "- -z", "a / *p",
    ]);
    let op = select(vec!["+", "-", "*", "/", "<", ">", "==", "&&", "||", "&", "|", "=", "+=", ">>", "%"]);
    (piece.clone(), prop::collection::vec((gap(), op, gap(), piece), 0..4)).prop_map(|(first, rest)| {
        let mut s = String::from(first);
        for (g1, o, g2, p) in rest {
            let g1 = if g1.contains('\n') { " " } else { g1 };
            s.push_str(g1);
            s.push_str(o);
            s.push_str(g2);
            s.push_str(p);
        }
        s
    })
}

/// Brace-balanced C-family statements.
fn statements() -> impl Strategy<Value = String> {
    let simple = prop_oneof![
        (expr(), gap()).prop_map(|(e, g)| format!("{e}{g};")),
        (select(vec!["int", "static bool", "var", "const char*", "List<String>"]), expr())
            .prop_map(|(t, e)| format!("{t} v = {e};")),
        expr().prop_map(|e| format!("return {e};")),
        Just(String::from("// note\n")),
        Just(String::from("/* block\n   comment */")),
        Just(String::from("x = 1; // trailing\n")),
    ];
    let leaf = prop::collection::vec((simple, gap()), 1..4).prop_map(|v| v.into_iter().map(|(s, g)| s + g).collect::<String>());
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (expr(), inner.clone()).prop_map(|(c, b)| format!("if ({c}) {{\n{b}\n}}")),
            (expr(), inner.clone(), inner.clone()).prop_map(|(c, a, b)| format!("if({c}){{{a}}}else{{{b}}}")),
            (expr(), inner.clone()).prop_map(|(c, b)| format!("for (int i = 0; i < {c}; i++) {{ {b} }}")),
            (expr(), inner.clone()).prop_map(|(c, b)| format!("while ({c}) {{{b}}}")),
            (inner.clone(), expr()).prop_map(|(b, c)| format!("do {{ {b} }} while ({c});")),
            (expr(), inner.clone()).prop_map(|(c, b)| format!("switch ({c}) {{ case 1: {b} break; default: {b} }}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a}\n\n\n{b}")),
            inner.prop_map(|b| format!("void f(int a, int b) {{\n  {b}\n}}\nint arr[] = {{1, 2}};")),
        ]
    })
}

/// Python programs: simple statements, bracket continuations, backslash
/// joins, comments and nested blocks with a random indent unit.
fn python_program() -> impl Strategy<Value = String> {
    let simple = select(vec![
        "x = 1",
        "y=x+2",
        "z = f(a, b = 3)",
        "s = 'a  b' + \"c\"",
        "t = (1,\n     2,\n  3)",
        "u = [\n    1,\n]",
        "v = 1 + \\\n    2",
        "w = {'k': x[1:2]}",
        "pass",
        "return -x",
        "print(*a, **k)",
        "# comment",
        "q = x if y else z  # why",
        "r = lambda a: a*2",
        "s = \"\"\"doc\n  string\"\"\"",
        "x, y = y, x",
        "a @= b",
        "",
    ]);
    let header = select(vec!["if x:", "for i in y:", "def f(a, b=1):", "while not  done :", "class C(B):", "with open(p) as f:"]);
    let block = prop::collection::vec(simple.clone(), 1..4).prop_map(|v| v.into_iter().map(|s| vec![(0usize, s.to_string())]).collect::<Vec<_>>().concat());
    let nested = block.prop_recursive(3, 20, 4, move |inner| {
        (header.clone(), inner.clone(), prop::collection::vec(simple.clone(), 0..3)).prop_map(|(h, body, after)| {
            let mut lines = vec![(0usize, h.to_string())];
            lines.extend(body.into_iter().map(|(d, l)| (d + 1, l)));
            lines.extend(after.into_iter().map(|s| (0, s.to_string())));
            lines
        })
    });
    (nested, select(vec!["    ", "  ", "\t"]), select(vec!["\n", "\r\n"])).prop_map(|(lines, unit, nl)| {
        let mut out = String::new();
        for (depth, line) in lines {
            if line.is_empty() {
                out.push_str(nl);
                continue;
            }
            for (k, physical) in line.split('\n').enumerate() {
                if k == 0 {
                    out.push_str(&unit.repeat(depth));
                } else {
                    out.push_str(nl);
                }
                out.push_str(physical);
            }
            out.push_str(nl);
        }
        out
    })
}

/// A corpus file, or a random slice of one.
fn corpus_sample() -> impl Strategy<Value = (String, Language)> {
    (0..corpus().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(i, a, b)| {
        let (text, lang) = &corpus()[i];
        let (mut lo, mut hi) = (a.index(text.len() + 1), b.index(text.len() + 1));
        if lo > hi {
            std::mem::swap(&mut lo, &mut hi);
        }
        while !text.is_char_boundary(lo) {
            lo -= 1;
        }
        while !text.is_char_boundary(hi) {
            hi -= 1;
        }
        (text[lo..hi].to_string(), *lang)
    })
}

fn concat(src: &str, lang: Language) -> String {
    lex(src, lang).iter().map(|t| t.text).collect()
}

fn sig_texts(src: &str, lang: Language) -> Vec<String> {
    significant(&lex(src, lang)).iter().map(|t| t.text.to_string()).collect()
}

/// Generated pieces can combine into unterminated literals, as in C++
/// `0x1e+'c'` where `'` continues the number; restore needs well-formed
/// input.
fn well_formed(src: &str, lang: Language) -> bool {
    lex(src, lang).iter().all(|t| !t.unterminated)
}

fn assert_equiv(a: &str, b: &str, lang: Language) -> Result<(), TestCaseError> {
    let r = equivalent(a, b, lang);
    prop_assert!(r.equivalent, "{lang}: {:?}\n--- a ---\n{a}\n--- b ---\n{b}", r.first_divergence);
    Ok(())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn lex_is_lossless_on_random_bytes(bytes in prop::collection::vec(any::<u8>(), 0..400), lang in language()) {
        let text = String::from_utf8_lossy(&bytes);
        prop_assert_eq!(concat(&text, lang), text.as_ref());
    }

    #[test]
    fn lex_is_lossless_on_random_text(text in "\\PC{0,200}", lang in language()) {
        prop_assert_eq!(concat(&text, lang), text);
    }

    #[test]
    fn lex_is_lossless_on_corpus_slices((text, lang) in corpus_sample()) {
        prop_assert_eq!(concat(&text, lang), text);
    }

    #[test]
    fn strip_is_idempotent(src in soup(), lang in language(), which in 0usize..4) {
        let config = FormatConfig::ABLATIONS[which];
        let once = strip(&src, lang, config).output;
        let twice = strip(&once, lang, config).output;
        prop_assert_eq!(&twice, &once);
    }

    #[test]
    fn strip_preserves_tokens(src in soup(), lang in language(), which in 0usize..4) {
        let out = strip(&src, lang, FormatConfig::ABLATIONS[which]).output;
        prop_assert_eq!(sig_texts(&out, lang), sig_texts(&src, lang));
    }

    #[test]
    fn strip_never_grows(src in soup(), lang in language(), which in 0usize..4) {
        prop_assert!(strip(&src, lang, FormatConfig::ABLATIONS[which]).output.len() <= src.len());
    }

    #[test]
    fn strip_never_grows_on_corpus_slices((text, lang) in corpus_sample()) {
        prop_assert!(canonical_minimal(&text, lang).len() <= text.len());
    }

    #[test]
    fn restore_is_idempotent(src in statements(), lang in c_family()) {
        prop_assume!(well_formed(&src, lang));
        let style = StyleProfile::c_family();
        let once = restore(&src, lang, style).unwrap().output;
        let twice = restore(&once, lang, style).unwrap().output;
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn python_restore_is_idempotent(src in python_program()) {
        let style = StyleProfile::python();
        let once = restore(&src, Language::Python, style).unwrap().output;
        let twice = restore(&once, Language::Python, style).unwrap().output;
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn restore_of_strip_is_equivalent(src in statements(), lang in c_family()) {
        prop_assume!(well_formed(&src, lang));
        let back = restore(&canonical_minimal(&src, lang), lang, StyleProfile::c_family()).unwrap().output;
        assert_equiv(&src, &back, lang)?;
        prop_assert_eq!(canonical_minimal(&back, lang), canonical_minimal(&src, lang));
    }

    #[test]
    fn python_restore_of_strip_is_equivalent(src in python_program()) {
        let back = restore(&canonical_minimal(&src, Language::Python), Language::Python, StyleProfile::python())
            .unwrap()
            .output;
        assert_equiv(&src, &back, Language::Python)?;
    }

    #[test]
    fn separators_are_minimal(src in statements(), lang in c_family()) {
        check_minimal(&src, lang)?;
    }

    #[test]
    fn python_separators_are_minimal(src in python_program()) {
        check_minimal(&src, Language::Python)?;
    }

    #[test]
    fn python_logical_lines_survive_strip(src in python_program()) {
        let out = canonical_minimal(&src, Language::Python);
        let shape = |s: &str| -> Vec<Vec<String>> {
            logical_lines(s)
                .into_iter()
                .filter(|l| !l.is_blank())
                .map(|l| l.tokens.iter().map(|t| t.text.to_string()).collect())
                .collect()
        };
        prop_assert_eq!(shape(&out), shape(&src));
        let indents = |s: &str| -> Vec<usize> {
            logical_lines(s).into_iter().filter(|l| !l.is_blank()).map(|l| l.indent_width).collect()
        };
        prop_assert_eq!(indents(&out), indents(&src));
    }

    #[test]
    fn verify_is_reflexive_and_symmetric(a in soup(), b in soup(), lang in language()) {
        prop_assert!(equivalent(&a, &a, lang).equivalent);
        let ab = equivalent(&a, &b, lang);
        let ba = equivalent(&b, &a, lang);
        prop_assert_eq!(ab.equivalent, ba.equivalent);
        prop_assert_eq!(ab.compared_tokens, ba.compared_tokens);
        let d = ab.first_divergence.map(|d| (d.index, d.left, d.right));
        let e = ba.first_divergence.map(|d| (d.index, d.right, d.left));
        prop_assert_eq!(d, e);
    }

    #[test]
    fn verify_ignores_layout((text, lang) in corpus_sample()) {
        prop_assert!(equivalent(&text, &canonical_minimal(&text, lang), lang).equivalent);
    }

    #[test]
    fn split_reassembles((text, lang) in corpus_sample()) {
        let split = split_unfinished(&text, lang);
        prop_assert_eq!(split.split_offset, split.body.len());
        prop_assert_eq!(format!("{}{}", split.body, split.tail), text);
    }

    #[test]
    fn ledger_round_trips((text, lang) in corpus_sample()) {
        let body = split_unfinished(&text, lang).body;
        let balanced = balance_brackets(body, lang);
        let back = remove_ledger(&balanced.text, lang, &balanced.ledger).unwrap();
        // Closers take the trailing layout before them along.
        let expected = if balanced.ledger.appended_closers.is_empty() {
            body
        } else {
            let end = lex(body, lang).iter().rev().find(|t| !t.kind.is_trivia()).map_or(0, |t| t.end());
            &body[..end]
        };
        prop_assert_eq!(back, expected);
        if balanced.mismatches.is_empty() {
            prop_assert!(balance_brackets(&balanced.text, lang).ledger.is_empty());
        }
    }

    #[test]
    fn partial_strip_keeps_tokens((text, lang) in corpus_sample()) {
        let out = transform_partial(&text, lang, PartialMode::Strip(FormatConfig::all())).unwrap().output;
        prop_assert_eq!(sig_texts(&out, lang), sig_texts(&text, lang));
        prop_assert!(out.len() <= text.len());
    }

    #[test]
    fn partial_restore_keeps_tokens((text, lang) in corpus_sample()) {
        let style = if lang == Language::Python { StyleProfile::python() } else { StyleProfile::c_family() };
        let out = transform_partial(&text, lang, PartialMode::Restore(style)).unwrap().output;
        prop_assert_eq!(sig_texts(&out, lang), sig_texts(&text, lang));
    }

    #[test]
    fn builtin_counts_are_zero_only_when_empty(text in "\\PC{0,40}|[ \t\n]{0,5}") {
        for t in [Tokenizer::Bytes, Tokenizer::Words] {
            prop_assert_eq!(t.count(&text) == 0, text.is_empty());
            prop_assert_eq!(t.count(&text), t.count(&text));
        }
    }

    #[test]
    fn bpe_segmentation_is_stable(
        merges in prop::collection::vec((select(vec!["a", "b", "c", "ab", "bc", "\u{120}"]), select(vec!["a", "b", "c", "ab", "ca", "\u{120}a"])), 0..12),
        text in "[abc ]{0,40}",
    ) {
        let mut vocab: Vec<String> = ["a", "b", "c", "ab", "bc", "ca", "\u{120}", "\u{120}a"].iter().map(|s| s.to_string()).collect();
        for (l, r) in &merges {
            let joined = format!("{l}{r}");
            if !vocab.contains(&joined) {
                vocab.push(joined);
            }
        }
        let vocab: Vec<(String, u32)> = vocab.into_iter().enumerate().map(|(i, t)| (t, i as u32)).collect();
        let merges: Vec<(String, String)> = merges.into_iter().map(|(l, r)| (l.to_string(), r.to_string())).collect();
        let bpe = Bpe::new(vocab, merges).unwrap();
        let first = bpe.segments(&text);
        prop_assert_eq!(bpe.segments(&text), first.clone());
        prop_assert_eq!(bpe.count(&text), first.len());
        prop_assert_eq!(first.concat(), text.replace(' ', "\u{120}"));
    }
}

/// Deleting any one separator space from the stripped text changes the
/// token stream.
fn check_minimal(src: &str, lang: Language) -> Result<(), TestCaseError> {
    let out = canonical_minimal(src, lang);
    for t in lex(&out, lang) {
        if t.kind != TokenKind::Whitespace {
            continue;
        }
        let mut shorter = String::with_capacity(out.len());
        shorter.push_str(&out[..t.offset]);
        shorter.push_str(&out[t.end()..]);
        prop_assert!(
            !equivalent_strict(&out, &shorter, lang).equivalent,
            "removable space at {} in {:?}",
            t.offset,
            out
        );
    }
    Ok(())
}

#[test]
fn corpus_files_are_lossless_and_minimal() {
    for (text, lang) in corpus() {
        assert_eq!(&concat(text, *lang), text);
        if text.len() <= 2048 {
            check_minimal(text, *lang).unwrap();
        }
    }
}
