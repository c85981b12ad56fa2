//! Style profile files: a JSON object whose fields override the per-language
//! defaults.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use unfmt_core::{Language, StyleProfile};

/// Every field is optional; unset fields keep the language default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StyleFile {
    pub indent_width: Option<usize>,
    pub attached_braces: Option<bool>,
    pub space_after_control_keyword: Option<bool>,
    pub space_around_binary_ops: Option<bool>,
    pub space_after_comma: Option<bool>,
    pub max_blank_lines: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum StyleError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: invalid style profile: {source}", path.display())]
    Malformed { path: PathBuf, source: serde_json::Error },
}

impl StyleFile {
    pub fn load(path: &Path) -> Result<StyleFile, StyleError> {
        let text = fs::read_to_string(path).map_err(|source| StyleError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| StyleError::Malformed { path: path.into(), source })
    }

    pub fn profile(&self, language: Language) -> StyleProfile {
        let d = StyleProfile::for_language(language);
        StyleProfile {
            indent_width: self.indent_width.unwrap_or(d.indent_width),
            attached_braces: self.attached_braces.unwrap_or(d.attached_braces),
            space_after_control_keyword: self.space_after_control_keyword.unwrap_or(d.space_after_control_keyword),
            space_around_binary_ops: self.space_around_binary_ops.unwrap_or(d.space_around_binary_ops),
            space_after_comma: self.space_after_comma.unwrap_or(d.space_after_comma),
            max_blank_lines: self.max_blank_lines.unwrap_or(d.max_blank_lines),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_apply_per_language() {
        let style: StyleFile = serde_json::from_str(r#"{"indent_width": 8}"#).unwrap();
        assert_eq!(style.profile(Language::Java).indent_width, 8);
        assert_eq!(style.profile(Language::Python).max_blank_lines, 2);
        assert_eq!(StyleFile::default().profile(Language::Cpp), StyleProfile::c_family());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<StyleFile>(r#"{"tabs": true}"#).is_err());
    }
}
