//! Strip and restore engines.
//!
//! [`strip`] removes the formatting elements selected by a [`FormatConfig`]
//! and keeps a single space wherever two tokens would otherwise merge.
//! [`restore`] lays code out again from its significant tokens according to
//! a [`StyleProfile`]. Both leave the significant token stream untouched.

mod restore;
mod restore_py;
mod strip;

use alloc::string::String;
use alloc::vec::Vec;

use crate::lexkit::{lex, Language, LexToken, TokenKind};
use crate::Error;

pub use strip::strip_with;
pub(crate) use strip::{emit_stream, GapPolicy};

/// Which formatting elements to remove.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormatConfig {
    pub remove_indentation: bool,
    pub remove_whitespace: bool,
    pub remove_newlines: bool,
    /// Python only: also drop blank lines. Off unless asked for.
    pub drop_python_blank_lines: bool,
}

impl FormatConfig {
    /// Everything removable goes.
    pub const fn all() -> Self {
        FormatConfig {
            remove_indentation: true,
            remove_whitespace: true,
            remove_newlines: true,
            drop_python_blank_lines: false,
        }
    }

    pub const fn none() -> Self {
        FormatConfig {
            remove_indentation: false,
            remove_whitespace: false,
            remove_newlines: false,
            drop_python_blank_lines: false,
        }
    }

    pub const fn only_indentation() -> Self {
        FormatConfig { remove_indentation: true, ..Self::none() }
    }

    pub const fn only_whitespace() -> Self {
        FormatConfig { remove_whitespace: true, ..Self::none() }
    }

    pub const fn only_newlines() -> Self {
        FormatConfig { remove_newlines: true, ..Self::none() }
    }

    /// The all-elements configuration followed by the three single-element
    /// ablations.
    pub const ABLATIONS: [FormatConfig; 4] = [
        FormatConfig::all(),
        FormatConfig::only_indentation(),
        FormatConfig::only_whitespace(),
        FormatConfig::only_newlines(),
    ];

    /// Python needs its line breaks and indentation; those flags are forced
    /// off and their names reported.
    pub fn clamp(self, language: Language) -> (FormatConfig, Vec<&'static str>) {
        let mut clamped = Vec::new();
        if language != Language::Python {
            return (self, clamped);
        }
        let mut effective = self;
        if self.remove_indentation {
            effective.remove_indentation = false;
            clamped.push("remove_indentation");
        }
        if self.remove_newlines {
            effective.remove_newlines = false;
            clamped.push("remove_newlines");
        }
        (effective, clamped)
    }

    /// Short names as used on the command line: `indent`, `space`, `newline`.
    pub fn element_names(&self) -> Vec<&'static str> {
        let mut names = Vec::new();
        if self.remove_indentation {
            names.push("indent");
        }
        if self.remove_whitespace {
            names.push("space");
        }
        if self.remove_newlines {
            names.push("newline");
        }
        names
    }
}

impl Default for FormatConfig {
    fn default() -> Self {
        FormatConfig::all()
    }
}

/// Layout rules for [`restore`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StyleProfile {
    pub indent_width: usize,
    /// Opening braces stay on the line of their statement. The only brace
    /// style implemented.
    pub attached_braces: bool,
    pub space_after_control_keyword: bool,
    pub space_around_binary_ops: bool,
    pub space_after_comma: bool,
    pub max_blank_lines: usize,
}

impl StyleProfile {
    /// Two-space indentation, attached braces.
    pub const fn c_family() -> Self {
        StyleProfile {
            indent_width: 2,
            attached_braces: true,
            space_after_control_keyword: true,
            space_around_binary_ops: true,
            space_after_comma: true,
            max_blank_lines: 1,
        }
    }

    /// Four-space indentation; two blank lines allowed between top-level
    /// definitions.
    pub const fn python() -> Self {
        StyleProfile {
            indent_width: 4,
            max_blank_lines: 2,
            ..Self::c_family()
        }
    }

    pub fn for_language(language: Language) -> Self {
        if language.is_c_family() {
            Self::c_family()
        } else {
            Self::python()
        }
    }

    /// Width 0 is bumped to 1.
    pub fn normalized(mut self) -> Self {
        self.indent_width = self.indent_width.max(1);
        self
    }
}

/// An unterminated string, character literal or comment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexFlag {
    pub line: u32,
    pub col: u32,
    pub kind: TokenKind,
}

impl LexFlag {
    pub(crate) fn collect(tokens: &[LexToken<'_>]) -> Vec<LexFlag> {
        tokens
            .iter()
            .filter(|t| t.unterminated)
            .map(|t| LexFlag { line: t.line, col: t.col, kind: t.kind })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformResult {
    pub output: String,
    pub bytes_before: usize,
    pub bytes_after: usize,
    /// Options forced off for the language.
    pub clamped_options: Vec<&'static str>,
    /// Warnings for unterminated constructs; output is still produced.
    pub lex_flags: Vec<LexFlag>,
}

impl TransformResult {
    pub(crate) fn new(input: &str, output: String, clamped_options: Vec<&'static str>, lex_flags: Vec<LexFlag>) -> Self {
        TransformResult {
            bytes_before: input.len(),
            bytes_after: output.len(),
            output,
            clamped_options,
            lex_flags,
        }
    }
}

/// Removes the formatting elements selected in `config`.
pub fn strip(source: &str, language: Language, config: FormatConfig) -> TransformResult {
    let tokens = lex(source, language);
    let (effective, clamped) = config.clamp(language);
    let output = strip_with(&tokens, language, effective);
    TransformResult::new(source, output, clamped, LexFlag::collect(&tokens))
}

/// Lays `source` out according to `style`.
pub fn restore(source: &str, language: Language, style: StyleProfile) -> Result<TransformResult, Error> {
    let tokens = lex(source, language);
    let style = style.normalized();
    let output = if language.is_c_family() {
        restore::restore_c_family(&tokens, language, &style)?
    } else {
        restore_py::restore_python(&tokens, &style)
    };
    Ok(TransformResult::new(source, output, Vec::new(), LexFlag::collect(&tokens)))
}

/// The most compact form: [`strip`] with every element removed.
pub fn canonical_minimal(source: &str, language: Language) -> String {
    strip(source, language, FormatConfig::all()).output
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn python_clamp_reports_forced_options() {
        let (eff, clamped) = FormatConfig::all().clamp(Language::Python);
        assert!(!eff.remove_indentation && !eff.remove_newlines && eff.remove_whitespace);
        assert_eq!(clamped, ["remove_indentation", "remove_newlines"]);
        let (eff, clamped) = FormatConfig::all().clamp(Language::Java);
        assert_eq!(eff, FormatConfig::all());
        assert!(clamped.is_empty());
        let (_, clamped) = FormatConfig::only_whitespace().clamp(Language::Python);
        assert!(clamped.is_empty());
    }

    #[test]
    fn canonical_minimal_examples() {
        assert_eq!(canonical_minimal("a ;\n", Language::Java), "a;");
        assert_eq!(canonical_minimal("", Language::Python), "");
        assert_eq!(canonical_minimal("int  x ;", Language::Cpp), "int x;");
    }

    #[test]
    fn style_defaults() {
        assert_eq!(StyleProfile::for_language(Language::Java).indent_width, 2);
        assert_eq!(StyleProfile::for_language(Language::Python).indent_width, 4);
        let s = StyleProfile { indent_width: 0, ..StyleProfile::c_family() }.normalized();
        assert_eq!(s.indent_width, 1);
    }

    #[test]
    fn result_byte_counts() {
        let r = strip("a  +  b", Language::Java, FormatConfig::all());
        assert_eq!((r.bytes_before, r.bytes_after), (7, 3));
    }
}
