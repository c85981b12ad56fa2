//! Mock upstream, gateway launcher and byte-level request checks shared by
//! the gateway and acceptance tests.
#![allow(dead_code)]

use std::future::pending;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::Router;
use tokio::net::TcpListener;
use unfmt_std::gateway::{serve_on, GatewayConfig};

#[derive(Default)]
pub struct Mock {
    pub hits: AtomicUsize,
    /// Every request as received: headers and body.
    pub seen: Mutex<Vec<(HeaderMap, String)>>,
    /// Every reply body sent, keyed by the request `id` field.
    pub sent: Mutex<Vec<(String, String)>>,
}

pub const REPLY_PREFIX: &str = r#"{"object":"text_completion","choices":[{"index":0,"#;
pub const REPLY_SUFFIX: &str = r#","finish_reason":"stop"}],"usage":{"total_tokens":1}}"#;

/// Replies with the request's `mock_reply` string if present, otherwise
/// echoes the prompt (or the last message). Completions answer in
/// `choices[0].text`, chat in `choices[0].message.content`. An
/// `x-mock-status` header makes it fail with that status.
async fn mock_completion(State(mock): State<Arc<Mock>>, headers: HeaderMap, body: Bytes) -> Response {
    mock.hits.fetch_add(1, Ordering::SeqCst);
    let text = String::from_utf8(body.to_vec()).unwrap();
    mock.seen.lock().unwrap().push((headers.clone(), text.clone()));
    if let Some(status) = headers.get("x-mock-status") {
        let status = StatusCode::from_bytes(status.as_bytes()).unwrap();
        return (status, [("x-mock", "1")], r#"{"error": {"message": "mock  failure"}}"#).into_response();
    }
    let req: serde_json::Value = serde_json::from_str(&text).unwrap();
    let chat = req.get("messages").is_some();
    let reply = match req.get("mock_reply").and_then(|r| r.as_str()) {
        Some(r) => r.to_string(),
        None if chat => req["messages"].as_array().unwrap().last().unwrap()["content"].as_str().unwrap().to_string(),
        None => req["prompt"].as_str().unwrap().to_string(),
    };
    let field = if chat {
        format!(r#""message":{{"role":"assistant","content":{}}}"#, serde_json::to_string(&reply).unwrap())
    } else {
        format!(r#""text":{}"#, serde_json::to_string(&reply).unwrap())
    };
    let body = format!("{REPLY_PREFIX}{field}{REPLY_SUFFIX}");
    let id = req.get("id").and_then(|i| i.as_str()).unwrap_or("").to_string();
    mock.sent.lock().unwrap().push((id, body.clone()));
    ([("content-type", "application/json"), ("x-mock", "1")], body).into_response()
}

pub async fn start_mock() -> (SocketAddr, Arc<Mock>) {
    let mock = Arc::new(Mock::default());
    let app = Router::new()
        .route("/v1/completions", post(mock_completion))
        .route("/v1/chat/completions", post(mock_completion))
        .with_state(mock.clone());
    let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    (addr, mock)
}

/// Starts a gateway in front of `upstream` and returns its address.
pub async fn start_gateway(upstream: &str, tweak: impl FnOnce(&mut GatewayConfig)) -> SocketAddr {
    let listener = TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let mut cfg = GatewayConfig::new(addr, upstream);
    tweak(&mut cfg);
    tokio::spawn(async move { serve_on(listener, cfg, pending()).await.unwrap() });
    addr
}

/// A piece of a JSON document: literal bytes that must survive unchanged, or
/// a code region the gateway may rewrite.
#[derive(Debug, Clone)]
pub enum Seg {
    Raw(String),
    Code(String),
}

/// Builds the document, JSON-escaping the code regions.
pub fn assemble(segs: &[Seg]) -> String {
    segs.iter()
        .map(|s| match s {
            Seg::Raw(r) => r.clone(),
            Seg::Code(c) => {
                let q = serde_json::to_string(c).unwrap();
                q[1..q.len() - 1].to_string()
            }
        })
        .collect()
}

/// Checks that `doc` has every raw segment of `segs` byte for byte, in order,
/// and returns the decoded text found in place of each code segment.
///
/// A code region ends where the following raw segment begins when that
/// segment starts with a closing fence, and otherwise at the first unescaped
/// quote.
pub fn match_segments(doc: &str, segs: &[Seg]) -> Result<Vec<String>, String> {
    let mut pos = 0;
    let mut codes = Vec::new();
    for (i, seg) in segs.iter().enumerate() {
        match seg {
            Seg::Raw(raw) => {
                if !doc[pos..].starts_with(raw.as_str()) {
                    return Err(format!("raw segment {i} differs at byte {pos}: expected {raw:?}, found {:?}", &doc[pos..]));
                }
                pos += raw.len();
            }
            Seg::Code(_) => {
                let end = match segs.get(i + 1) {
                    Some(Seg::Raw(next)) if next.starts_with("```") => {
                        pos + doc[pos..].find("```").ok_or("closing fence missing")?
                    }
                    _ => pos + unescaped_quote(&doc[pos..]).ok_or("string never ends")?,
                };
                let decoded: String = serde_json::from_str(&format!("\"{}\"", &doc[pos..end])).map_err(|e| e.to_string())?;
                codes.push(decoded);
                pos = end;
            }
        }
    }
    if pos != doc.len() {
        return Err(format!("trailing bytes {:?}", &doc[pos..]));
    }
    Ok(codes)
}

fn unescaped_quote(s: &str) -> Option<usize> {
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        match b[i] {
            b'\\' => i += 2,
            b'"' => return Some(i),
            _ => i += 1,
        }
    }
    None
}

pub fn bracket_counts(s: &str) -> [usize; 6] {
    let mut n = [0; 6];
    for c in s.chars() {
        if let Some(k) = "(){}[]".find(c) {
            n[k] += 1;
        }
    }
    n
}

/// The mock's reply split the same way: fixed prefix, the field head, then
/// the reply text segments, then the fixed suffix.
pub fn reply_segments(chat: bool, text: &[Seg]) -> Vec<Seg> {
    let head = if chat { r#""message":{"role":"assistant","content":""# } else { r#""text":""# };
    let tail = if chat { "\"}" } else { "\"" };
    let mut segs = vec![Seg::Raw(format!("{REPLY_PREFIX}{head}"))];
    for s in text {
        segs.push(match s {
            Seg::Raw(r) => {
                let q = serde_json::to_string(r).unwrap();
                Seg::Raw(q[1..q.len() - 1].to_string())
            }
            Seg::Code(c) => Seg::Code(c.clone()),
        });
    }
    segs.push(Seg::Raw(format!("{tail}{REPLY_SUFFIX}")));
    segs
}
