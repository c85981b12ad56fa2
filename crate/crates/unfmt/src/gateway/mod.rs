//! LLM gateway: strips code in prompts before they reach the model and
//! restores code layout in what comes back.

pub mod json;
mod regions;
mod server;

use std::net::SocketAddr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use unfmt_core::metering::Tokenizer;
use unfmt_core::partial::{transform_partial, PartialMode};
use unfmt_core::{FormatConfig, Language};

pub use regions::{extract_code_regions, CodeRegion, RegionMode};
pub use server::{router, serve, serve_on, Stats, TELEMETRY_HEADER};

use crate::style::StyleFile;
use json::{escape, splice, JsonString};

#[derive(Debug, Clone)]
pub struct GatewayConfig {
    pub listen_address: SocketAddr,
    /// Base URL; the request path is appended when forwarding.
    pub upstream_url: String,
    pub code_region_mode: RegionMode,
    pub language_default: Language,
    pub config: FormatConfig,
    pub style: StyleFile,
    pub request_timeout: Duration,
    /// Counts the per-region telemetry.
    pub tokenizer: Tokenizer,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("upstream URL is empty")]
    EmptyUpstream,
    #[error("upstream URL `{0}` is not an http:// URL (TLS upstreams are not supported)")]
    BadUpstream(String),
    #[error("request timeout must be positive")]
    ZeroTimeout,
}

impl GatewayConfig {
    pub fn new(listen_address: SocketAddr, upstream_url: impl Into<String>) -> Self {
        GatewayConfig {
            listen_address,
            upstream_url: upstream_url.into(),
            code_region_mode: RegionMode::Fenced,
            language_default: Language::Python,
            config: FormatConfig::all(),
            style: StyleFile::default(),
            request_timeout: Duration::from_secs(60),
            tokenizer: Tokenizer::Words,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let url = self.upstream_url.trim();
        if url.is_empty() {
            return Err(ConfigError::EmptyUpstream);
        }
        match reqwest::Url::parse(url) {
            Ok(u) if u.scheme() == "http" => {}
            _ => return Err(ConfigError::BadUpstream(url.to_string())),
        }
        if self.request_timeout.is_zero() {
            return Err(ConfigError::ZeroTimeout);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed request: {0}")]
pub struct MalformedRequest(pub String);

/// One rewritten code region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    /// JSON field the region sits in, such as `messages[1].content`.
    pub field: String,
    pub language: Language,
    pub bytes_before: usize,
    pub bytes_after: usize,
    pub tokens_before: usize,
    pub tokens_after: usize,
    /// The transform failed and the region was passed through unchanged.
    pub failed: bool,
}

/// What happened to one request and its response.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RequestContext {
    pub stripped: Vec<RegionRecord>,
    pub restored: Vec<RegionRecord>,
}

/// Strips every code region in the request's `prompt` or `messages[].content`
/// strings. All other bytes of the document are kept.
pub fn rewrite_request(doc: &str, cfg: &GatewayConfig) -> Result<(String, RequestContext), MalformedRequest> {
    let fields = json::request_fields(doc).map_err(MalformedRequest)?;
    let mut ctx = RequestContext::default();
    let out = rewrite_fields(doc, &fields, cfg, &mut ctx.stripped, |region, lang| {
        transform_partial(region, lang, PartialMode::Strip(cfg.config))
    });
    Ok((out, ctx))
}

/// Restores every code region in `choices[].text` and
/// `choices[].message.content`. A body that is not a completion response is
/// returned as is.
pub fn rewrite_response(doc: &str, ctx: &mut RequestContext, cfg: &GatewayConfig) -> String {
    let Ok(fields) = json::response_fields(doc) else {
        return doc.to_string();
    };
    rewrite_fields(doc, &fields, cfg, &mut ctx.restored, |region, lang| {
        transform_partial(region, lang, PartialMode::Restore(cfg.style.profile(lang)))
    })
}

fn rewrite_fields(
    doc: &str,
    fields: &[(String, JsonString)],
    cfg: &GatewayConfig,
    records: &mut Vec<RegionRecord>,
    mut transform: impl FnMut(&str, Language) -> Result<unfmt_core::TransformResult, unfmt_core::Error>,
) -> String {
    let mut edits = Vec::new();
    for (label, field) in fields {
        for region in extract_code_regions(&field.value, cfg.code_region_mode, cfg.language_default) {
            let (output, failed) = match transform(&region.original, region.language) {
                Ok(r) => (match_line_end(&region.original, r.output), false),
                Err(e) => {
                    tracing::warn!(field = %label, language = %region.language, "region left as is: {e}");
                    (region.original.clone(), true)
                }
            };
            records.push(RegionRecord {
                field: label.clone(),
                language: region.language,
                bytes_before: region.original.len(),
                bytes_after: output.len(),
                tokens_before: cfg.tokenizer.count(&region.original),
                tokens_after: cfg.tokenizer.count(&output),
                failed,
            });
            if output != region.original {
                edits.push((field.raw_range(region.span), escape(&output)));
            }
        }
    }
    splice(doc, &edits)
}

/// Gives `output` the same final line break as `original`, so a closing
/// fence after the region stays at the start of its line.
fn match_line_end(original: &str, mut output: String) -> String {
    let ending = if original.ends_with("\r\n") {
        "\r\n"
    } else if original.ends_with('\n') {
        "\n"
    } else {
        ""
    };
    while output.ends_with('\n') {
        output.pop();
        if output.ends_with('\r') {
            output.pop();
        }
    }
    if output.ends_with('\\') && !ending.is_empty() {
        // A line splice needs the blank line after it that the pipeline added.
        output.push('\n');
    }
    output.push_str(ending);
    output
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> GatewayConfig {
        GatewayConfig::new(([127, 0, 0, 1], 0).into(), "http://127.0.0.1:1")
    }

    fn prompt_of(doc: &str) -> String {
        serde_json::from_str::<serde_json::Value>(doc).unwrap()["prompt"].as_str().unwrap().to_string()
    }

    #[test]
    fn strips_fenced_prompt() {
        let doc = serde_json::json!({"model": "m", "prompt": "```java\nint a = 1;\n```"}).to_string();
        let (out, ctx) = rewrite_request(&doc, &cfg()).unwrap();
        assert_eq!(prompt_of(&out), "```java\nint a=1;\n```");
        assert_eq!(ctx.stripped.len(), 1);
        assert_eq!((ctx.stripped[0].bytes_before, ctx.stripped[0].bytes_after), (11, 9));
    }

    #[test]
    fn prompt_without_code_is_unchanged() {
        let doc = r#"{"prompt": "just  prose\n", "max_tokens": 5}"#;
        let (out, ctx) = rewrite_request(doc, &cfg()).unwrap();
        assert_eq!(out, doc);
        assert!(ctx.stripped.is_empty());
    }

    #[test]
    fn strips_every_message_block() {
        let doc = serde_json::json!({"messages": [
            {"role": "system", "content": "Be brief."},
            {"role": "user", "content": "Fix:\n```cpp\nint f() {\n  return 1;\n}\n```\nand\n```python\nx = [1,  2]\n```\n"},
        ]})
        .to_string();
        let (out, ctx) = rewrite_request(&doc, &cfg()).unwrap();
        assert_eq!(ctx.stripped.len(), 2);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(
            v["messages"][1]["content"],
            "Fix:\n```cpp\nint f(){return 1;}\n```\nand\n```python\nx=[1,2]\n```\n"
        );
    }

    #[test]
    fn missing_fields_are_malformed() {
        assert!(rewrite_request(r#"{"model": "m"}"#, &cfg()).is_err());
    }

    #[test]
    fn restores_response() {
        let doc = r#"{"id":"x","choices":[{"index":0,"text":"```java\nint a=1;\n```"}]}"#;
        let mut ctx = RequestContext::default();
        let out = rewrite_response(doc, &mut ctx, &cfg());
        assert_eq!(out, r#"{"id":"x","choices":[{"index":0,"text":"```java\nint a = 1;\n```"}]}"#);
        assert_eq!(ctx.restored.len(), 1);
    }

    #[test]
    fn response_without_fences_is_unchanged() {
        let doc = r#"{"choices":[{"text":"no  code"}]}"#;
        assert_eq!(rewrite_response(doc, &mut RequestContext::default(), &cfg()), doc);
        assert_eq!(rewrite_response("not json", &mut RequestContext::default(), &cfg()), "not json");
    }

    #[test]
    fn truncated_response_block_gets_no_synthetic_brackets() {
        let text = "```java\nclass A {\nvoid f() {\nint x=g(1,";
        let doc = serde_json::json!({"choices": [{"text": text}]}).to_string();
        let out = rewrite_response(&doc, &mut RequestContext::default(), &cfg());
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let restored = v["choices"][0]["text"].as_str().unwrap();
        for c in ['{', '}', '(', ')'] {
            assert_eq!(restored.matches(c).count(), text.matches(c).count(), "{restored}");
        }
    }

    #[test]
    fn config_validation() {
        let mut c = cfg();
        assert_eq!(c.validate(), Ok(()));
        c.upstream_url = " ".into();
        assert_eq!(c.validate(), Err(ConfigError::EmptyUpstream));
        c.upstream_url = "https://x".into();
        assert!(matches!(c.validate(), Err(ConfigError::BadUpstream(_))));
        c.upstream_url = "ftp://x".into();
        assert!(matches!(c.validate(), Err(ConfigError::BadUpstream(_))));
        c.upstream_url = "http://x".into();
        c.request_timeout = Duration::ZERO;
        assert_eq!(c.validate(), Err(ConfigError::ZeroTimeout));
    }
}
