//! Code regions inside prompt and completion text.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unfmt_core::Language;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionMode {
    /// Interiors of triple-backtick fences.
    Fenced,
    /// The whole text is code.
    WholeBody,
}

impl FromStr for RegionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fenced" => Ok(RegionMode::Fenced),
            "whole_body" | "whole-body" => Ok(RegionMode::WholeBody),
            _ => Err(format!("unknown region mode `{s}` (expected fenced or whole_body)")),
        }
    }
}

impl fmt::Display for RegionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegionMode::Fenced => "fenced",
            RegionMode::WholeBody => "whole_body",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeRegion {
    /// Byte range in the host text.
    pub span: Range<usize>,
    pub language: Language,
    pub original: String,
}

/// Finds the code regions of `text`, in order and non-overlapping.
///
/// A fence is a line starting with exactly three backticks. The info string
/// picks the language; an empty one means `default_language`, and any other
/// unrecognized one leaves the block alone. A fence that is never closed runs
/// to the end of the text.
pub fn extract_code_regions(text: &str, mode: RegionMode, default_language: Language) -> Vec<CodeRegion> {
    if mode == RegionMode::WholeBody {
        return vec![CodeRegion { span: 0..text.len(), language: default_language, original: text.to_string() }];
    }
    let mut regions = Vec::new();
    let mut open: Option<(usize, Option<Language>)> = None;
    let mut pos = 0;
    while pos < text.len() {
        let end = text[pos..].find('\n').map_or(text.len(), |i| pos + i + 1);
        let line = &text[pos..end];
        if let Some(info) = fence_info(line) {
            match open {
                None => open = Some((end, info_language(info, default_language))),
                Some((start, lang)) if info.is_empty() => {
                    if let Some(language) = lang {
                        push(&mut regions, text, start..pos, language);
                    }
                    open = None;
                }
                Some(_) => {}
            }
        }
        pos = end;
    }
    if let Some((start, Some(language))) = open {
        push(&mut regions, text, start..text.len(), language);
    }
    regions
}

fn push(regions: &mut Vec<CodeRegion>, text: &str, span: Range<usize>, language: Language) {
    if !span.is_empty() {
        regions.push(CodeRegion { original: text[span.clone()].to_string(), span, language });
    }
}

/// The info string of a fence line, trimmed.
fn fence_info(line: &str) -> Option<&str> {
    let rest = line.strip_prefix("```")?;
    if rest.starts_with('`') {
        return None;
    }
    Some(rest.trim())
}

fn info_language(info: &str, default_language: Language) -> Option<Language> {
    match info.split_whitespace().next() {
        None => Some(default_language),
        Some(word) => word.parse().ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interiors(text: &str) -> Vec<(&str, Language)> {
        extract_code_regions(text, RegionMode::Fenced, Language::Python)
            .into_iter()
            .map(|r| (&text[r.span], r.language))
            .collect()
    }

    #[test]
    fn fenced_interior() {
        let text = "x\n```java\na + b;\n```\ny";
        let regions = extract_code_regions(text, RegionMode::Fenced, Language::Python);
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].original, "a + b;\n");
        assert_eq!(regions[0].language, Language::Java);
        assert_eq!(&text[regions[0].span.clone()], "a + b;\n");
    }

    #[test]
    fn no_fences() {
        assert!(interiors("no code here").is_empty());
    }

    #[test]
    fn whole_body() {
        let regions = extract_code_regions("a + b;", RegionMode::WholeBody, Language::Java);
        assert_eq!(regions, [CodeRegion { span: 0..6, language: Language::Java, original: "a + b;".into() }]);
    }

    #[test]
    fn unknown_info_string_is_left_alone() {
        let text = "```rust\nfn main() {}\n```\n```cs\nint x;\n```\n";
        assert_eq!(interiors(text), [("int x;\n", Language::CSharp)]);
    }

    #[test]
    fn empty_info_uses_default() {
        assert_eq!(interiors("```\nx = 1\n```"), [("x = 1\n", Language::Python)]);
    }

    #[test]
    fn unterminated_fence_runs_to_end() {
        assert_eq!(interiors("see\n```cpp\nint f() {\n  return"), [("int f() {\n  return", Language::Cpp)]);
    }

    #[test]
    fn fences_must_start_the_line() {
        assert!(interiors("a ```java\nb;\n```").is_empty());
        assert!(interiors("````java\nb;\n````").is_empty());
    }

    #[test]
    fn info_on_a_closing_line_does_not_close() {
        assert_eq!(interiors("```java\na;\n```java\nb;\n```\n"), [("a;\n```java\nb;\n", Language::Java)]);
    }

    #[test]
    fn crlf_fences() {
        assert_eq!(interiors("```py\r\nx = 1\r\n```\r\n"), [("x = 1\r\n", Language::Python)]);
    }
}
