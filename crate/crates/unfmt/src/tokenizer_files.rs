//! Tokenizer selection and loading of BPE vocabulary and merges files.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use unfmt_core::metering::{parse_merges, Bpe, BpeError, Tokenizer};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenizerSpec {
    BuiltinBytes,
    BuiltinWords,
    Bpe { vocab_path: PathBuf, merges_path: PathBuf },
}

impl TokenizerSpec {
    pub fn name(&self) -> String {
        match self {
            TokenizerSpec::BuiltinBytes => "builtin_bytes".into(),
            TokenizerSpec::BuiltinWords => "builtin_words".into(),
            TokenizerSpec::Bpe { vocab_path, merges_path } => {
                format!("bpe:{},{}", vocab_path.display(), merges_path.display())
            }
        }
    }
}

impl fmt::Display for TokenizerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected bytes, words or bpe:<vocab>,<merges>")]
pub struct BadTokenizerSpec;

/// Parses the command-line form: `bytes`, `words` or `bpe:<vocab>,<merges>`.
impl FromStr for TokenizerSpec {
    type Err = BadTokenizerSpec;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bytes" | "builtin_bytes" => return Ok(TokenizerSpec::BuiltinBytes),
            "words" | "builtin_words" => return Ok(TokenizerSpec::BuiltinWords),
            _ => {}
        }
        let files = s.strip_prefix("bpe:").ok_or(BadTokenizerSpec)?;
        let (vocab, merges) = files.split_once(',').ok_or(BadTokenizerSpec)?;
        if vocab.is_empty() || merges.is_empty() {
            return Err(BadTokenizerSpec);
        }
        Ok(TokenizerSpec::Bpe { vocab_path: vocab.into(), merges_path: merges.into() })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{}: file not found", .0.display())]
    MissingFile(PathBuf),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("malformed vocabulary: {0}")]
    MalformedVocab(String),
    #[error("malformed merges: line {line}: {reason}")]
    MalformedMerges { line: usize, reason: String },
}

impl From<BpeError> for LoadError {
    fn from(e: BpeError) -> Self {
        match e {
            BpeError::MalformedVocab(msg) => LoadError::MalformedVocab(msg),
            BpeError::MalformedMerges { line, reason } => LoadError::MalformedMerges { line, reason },
        }
    }
}

pub fn load_tokenizer(spec: &TokenizerSpec) -> Result<Tokenizer, LoadError> {
    match spec {
        TokenizerSpec::BuiltinBytes => Ok(Tokenizer::Bytes),
        TokenizerSpec::BuiltinWords => Ok(Tokenizer::Words),
        TokenizerSpec::Bpe { vocab_path, merges_path } => {
            let vocab = parse_vocab(&read(vocab_path)?)?;
            let merges = parse_merges(&read(merges_path)?)?;
            Ok(Tokenizer::Bpe(Box::new(Bpe::new(vocab, merges)?)))
        }
    }
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| match source.kind() {
        io::ErrorKind::NotFound => LoadError::MissingFile(path.to_path_buf()),
        _ => LoadError::Io { path: path.to_path_buf(), source },
    })
}

/// Reads a vocabulary JSON object (`token -> id`) keeping every entry, so
/// duplicate keys are reported instead of silently overwritten.
pub fn parse_vocab(text: &str) -> Result<Vec<(String, u32)>, LoadError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let entries = de.deserialize_map(EntriesVisitor).map_err(|e| LoadError::MalformedVocab(e.to_string()))?;
    de.end().map_err(|e| LoadError::MalformedVocab(e.to_string()))?;
    let mut seen = std::collections::HashSet::with_capacity(entries.len());
    for (token, _) in &entries {
        if !seen.insert(token.as_str()) {
            return Err(LoadError::MalformedVocab(format!("duplicate entry {token:?}")));
        }
    }
    Ok(entries)
}

struct EntriesVisitor;

impl<'de> Visitor<'de> for EntriesVisitor {
    type Value = Vec<(String, u32)>;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an object mapping token strings to integer ids")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
        let mut entries = Vec::with_capacity(map.size_hint().unwrap_or(0));
        while let Some((token, id)) = map.next_entry::<String, u64>()? {
            let id = u32::try_from(id).map_err(|_| de::Error::custom(format!("id {id} out of range")))?;
            entries.push((token, id));
        }
        Ok(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    fn bpe_spec(vocab: &Path, merges: &Path) -> TokenizerSpec {
        TokenizerSpec::Bpe { vocab_path: vocab.to_path_buf(), merges_path: merges.to_path_buf() }
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("bytes".parse(), Ok(TokenizerSpec::BuiltinBytes));
        assert_eq!("words".parse(), Ok(TokenizerSpec::BuiltinWords));
        assert_eq!(
            "bpe:v.json,m.txt".parse(),
            Ok(TokenizerSpec::Bpe { vocab_path: "v.json".into(), merges_path: "m.txt".into() })
        );
        assert_eq!("bpe:v.json".parse::<TokenizerSpec>(), Err(BadTokenizerSpec));
        assert_eq!("gpt".parse::<TokenizerSpec>(), Err(BadTokenizerSpec));
    }

    #[test]
    fn builtins_need_no_files() {
        assert_eq!(load_tokenizer(&TokenizerSpec::BuiltinBytes).unwrap().count("abc"), 3);
        assert_eq!(load_tokenizer(&TokenizerSpec::BuiltinWords).unwrap().count("int x;"), 3);
    }

    #[test]
    fn bpe_from_files() {
        let vocab = file(r#"{"a": 0, "b": 1, "ab": 2}"#);
        let merges = file("#version: 0.2\na b\n");
        let t = load_tokenizer(&bpe_spec(vocab.path(), merges.path())).unwrap();
        assert_eq!(t.count("abab"), 2);
        assert_eq!(t.count(""), 0);
    }

    #[test]
    fn missing_file() {
        let merges = file("a b\n");
        let err = load_tokenizer(&bpe_spec(Path::new("/nonexistent/vocab.json"), merges.path())).unwrap_err();
        assert!(matches!(err, LoadError::MissingFile(p) if p.ends_with("vocab.json")));
    }

    #[test]
    fn malformed_vocab() {
        let merges = file("");
        for bad in [r#"{"a": 0, "a": 1}"#, r#"{"a": 0, "b": 2}"#, r#"{"a": 0, "b": 0}"#, "[1]", r#"{"a": -1}"#] {
            let vocab = file(bad);
            let err = load_tokenizer(&bpe_spec(vocab.path(), merges.path())).unwrap_err();
            assert!(matches!(err, LoadError::MalformedVocab(_)), "{bad}: {err:?}");
        }
    }

    #[test]
    fn malformed_merges() {
        let vocab = file(r#"{"a": 0, "b": 1}"#);
        for bad in ["a c\n", "a\n", "a b c\n"] {
            let merges = file(bad);
            let err = load_tokenizer(&bpe_spec(vocab.path(), merges.path())).unwrap_err();
            assert!(matches!(err, LoadError::MalformedMerges { line: 1, .. }), "{bad}: {err:?}");
        }
    }
}
