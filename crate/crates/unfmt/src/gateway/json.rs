//! Locating string fields in a JSON document and splicing new content into
//! them without touching any other byte.

use std::ops::Range;

use serde::Deserialize;
use serde_json::value::RawValue;

/// A string literal inside a document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonString {
    /// Byte range of the literal in the document, quotes included.
    pub raw: Range<usize>,
    pub value: String,
    /// For each decoded byte offset (and one past the end), the document
    /// offset of the escape sequence or character that produced it.
    offsets: Vec<usize>,
}

impl JsonString {
    /// Document byte range that encodes `value[range]`. Both ends must be
    /// character boundaries of `value`.
    pub fn raw_range(&self, range: Range<usize>) -> Range<usize> {
        self.offsets[range.start]..self.offsets[range.end]
    }
}

/// Decodes the string literal `raw`, which must be a slice of `doc`.
pub fn locate(doc: &str, raw: &RawValue) -> Option<JsonString> {
    let lit = raw.get();
    if !lit.starts_with('"') {
        return None;
    }
    let base = lit.as_ptr() as usize - doc.as_ptr() as usize;
    let (value, mut offsets) = decode(&lit[1..lit.len() - 1]);
    for o in &mut offsets {
        *o += base + 1;
    }
    Some(JsonString { raw: base..base + lit.len(), value, offsets })
}

fn decode(body: &str) -> (String, Vec<usize>) {
    let mut value = String::with_capacity(body.len());
    let mut offsets = Vec::with_capacity(body.len() + 1);
    let bytes = body.as_bytes();
    let mut i = 0;
    let mut emit = |value: &mut String, c: char, at: usize| {
        value.push(c);
        offsets.extend(std::iter::repeat_n(at, c.len_utf8()));
    };
    while i < bytes.len() {
        let at = i;
        if bytes[i] != b'\\' {
            let c = body[i..].chars().next().expect("in bounds");
            i += c.len_utf8();
            emit(&mut value, c, at);
            continue;
        }
        let c = match bytes[i + 1] {
            b'n' => '\n',
            b't' => '\t',
            b'r' => '\r',
            b'b' => '\u{8}',
            b'f' => '\u{c}',
            b'u' => {
                let hi = hex4(&body[i + 2..i + 6]);
                i += 6;
                let is_pair = (0xD800..0xDC00).contains(&hi) && body[i..].starts_with("\\u");
                let lo = if is_pair { hex4(&body[i + 2..i + 6]) } else { 0 };
                if is_pair && (0xDC00..0xE000).contains(&lo) {
                    i += 6;
                    let c = 0x10000 + ((hi - 0xD800) << 10) + (lo - 0xDC00);
                    emit(&mut value, char::from_u32(c).unwrap_or('\u{fffd}'), at);
                } else {
                    emit(&mut value, char::from_u32(hi).unwrap_or('\u{fffd}'), at);
                }
                continue;
            }
            other => other as char,
        };
        i += 2;
        emit(&mut value, c, at);
    }
    offsets.push(bytes.len());
    (value, offsets)
}

fn hex4(s: &str) -> u32 {
    u32::from_str_radix(s, 16).unwrap_or(0xFFFD)
}

/// `value` as the interior of a JSON string literal.
pub fn escape(value: &str) -> String {
    let quoted = serde_json::to_string(value).expect("strings serialize");
    quoted[1..quoted.len() - 1].to_string()
}

/// Replaces non-overlapping `edits`, given in document order.
pub fn splice(doc: &str, edits: &[(Range<usize>, String)]) -> String {
    let mut out = String::with_capacity(doc.len());
    let mut pos = 0;
    for (range, text) in edits {
        out.push_str(&doc[pos..range.start]);
        out.push_str(text);
        pos = range.end;
    }
    out.push_str(&doc[pos..]);
    out
}

/// The text-bearing string fields of a completion request, with a label
/// naming where each came from.
pub fn request_fields(doc: &str) -> Result<Vec<(String, JsonString)>, String> {
    #[derive(Deserialize)]
    struct Request<'a> {
        #[serde(borrow, default)]
        prompt: Option<&'a RawValue>,
        #[serde(borrow, default)]
        messages: Option<Vec<Message<'a>>>,
    }
    #[derive(Deserialize)]
    struct Message<'a> {
        #[serde(borrow, default)]
        content: Option<&'a RawValue>,
    }

    if !doc.trim_start().starts_with('{') {
        return Err("request body must be a JSON object".into());
    }
    let req: Request<'_> = serde_json::from_str(doc).map_err(|e| e.to_string())?;
    let mut fields = Vec::new();
    match (req.prompt, req.messages) {
        (None, None) => return Err("request has neither `prompt` nor `messages`".into()),
        (prompt, messages) => {
            if let Some(raw) = prompt {
                if let Some(s) = locate(doc, raw) {
                    fields.push(("prompt".to_string(), s));
                } else if raw.get().starts_with('[') {
                    let items: Vec<&RawValue> = serde_json::from_str(raw.get()).map_err(|e| e.to_string())?;
                    for (i, item) in items.into_iter().enumerate() {
                        if let Some(s) = locate(doc, item) {
                            fields.push((format!("prompt[{i}]"), s));
                        }
                    }
                }
            }
            for (i, m) in messages.into_iter().flatten().enumerate() {
                if let Some(s) = m.content.and_then(|raw| locate(doc, raw)) {
                    fields.push((format!("messages[{i}].content"), s));
                }
            }
        }
    }
    Ok(fields)
}

/// The generated-text fields of a completion response:
/// `choices[].text` and `choices[].message.content`.
pub fn response_fields(doc: &str) -> Result<Vec<(String, JsonString)>, String> {
    #[derive(Deserialize)]
    struct Response<'a> {
        #[serde(borrow, default)]
        choices: Vec<Choice<'a>>,
    }
    #[derive(Deserialize)]
    struct Choice<'a> {
        #[serde(borrow, default)]
        text: Option<&'a RawValue>,
        #[serde(borrow, default)]
        message: Option<Message<'a>>,
    }
    #[derive(Deserialize)]
    struct Message<'a> {
        #[serde(borrow, default)]
        content: Option<&'a RawValue>,
    }

    if !doc.trim_start().starts_with('{') {
        return Err("response body must be a JSON object".into());
    }
    let resp: Response<'_> = serde_json::from_str(doc).map_err(|e| e.to_string())?;
    let mut fields = Vec::new();
    for (i, choice) in resp.choices.into_iter().enumerate() {
        if let Some(s) = choice.text.and_then(|raw| locate(doc, raw)) {
            fields.push((format!("choices[{i}].text"), s));
        }
        if let Some(s) = choice.message.and_then(|m| m.content).and_then(|raw| locate(doc, raw)) {
            fields.push((format!("choices[{i}].message.content"), s));
        }
    }
    Ok(fields)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(doc: &str) -> JsonString {
        request_fields(doc).unwrap().remove(0).1
    }

    #[test]
    fn decodes_escapes_with_offsets() {
        let doc = r#"{"prompt": "a\né😀b\"/"}"#;
        let s = field(doc);
        assert_eq!(s.value, "a\né😀b\"/");
        assert_eq!(&doc[s.raw.clone()], r#""a\né😀b\"/""#);
        let b = s.value.find('b').unwrap();
        assert_eq!(&doc[s.raw_range(b..b + 1)], "b");
        assert_eq!(&doc[s.raw_range(1..2)], r"\n");
        assert_eq!(&doc[s.raw_range(2..b)], r"é😀");
        assert_eq!(&doc[s.raw_range(0..s.value.len())], &doc[s.raw.start + 1..s.raw.end - 1]);
    }

    #[test]
    fn raw_unicode_is_mapped_per_byte() {
        let doc = r#"{"prompt":"é x"}"#;
        let s = field(doc);
        assert_eq!(&doc[s.raw_range(2..4)], " x");
    }

    #[test]
    fn splice_keeps_other_bytes() {
        let doc = "{ \"prompt\" : \"a  b\" , \"n\":1 }";
        let s = field(doc);
        let out = splice(doc, &[(s.raw_range(0..4), escape("a b\n"))]);
        assert_eq!(out, "{ \"prompt\" : \"a b\\n\" , \"n\":1 }");
    }

    #[test]
    fn messages_and_prompt_lists() {
        let doc = r#"{"messages":[{"role":"user","content":"hi"},{"content":[1]},{"content":"yo"}]}"#;
        let labels: Vec<String> = request_fields(doc).unwrap().into_iter().map(|(l, _)| l).collect();
        assert_eq!(labels, ["messages[0].content", "messages[2].content"]);
        let doc = r#"{"prompt":["a","b"]}"#;
        assert_eq!(request_fields(doc).unwrap().len(), 2);
    }

    #[test]
    fn malformed_requests() {
        for doc in [r#"{"model":"m"}"#, "[1]", "{", r#"{"messages":"x"}"#, ""] {
            assert!(request_fields(doc).is_err(), "{doc}");
        }
    }

    #[test]
    fn response_choices() {
        let doc = r#"{"choices":[{"text":"a"},{"message":{"role":"assistant","content":"b"}}],"usage":{}}"#;
        let fields = response_fields(doc).unwrap();
        assert_eq!(fields.len(), 2);
        assert_eq!(fields[1].0, "choices[1].message.content");
        assert_eq!(fields[1].1.value, "b");
    }
}
