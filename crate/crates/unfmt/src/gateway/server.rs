//! HTTP front end of the gateway.

use std::future::Future;
use std::io;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, OriginalUri, State};
use axum::http::{header, HeaderMap, HeaderName, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;

use super::{rewrite_request, rewrite_response, ConfigError, GatewayConfig, RequestContext};

/// Response header carrying the per-request telemetry as JSON.
pub const TELEMETRY_HEADER: &str = "x-unfmt-telemetry";

const BODY_LIMIT: usize = 64 << 20;

/// Telemetry counters. Each forwarded request reports its own `Stats` in the
/// telemetry header and adds them once to the gateway totals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub requests: u64,
    pub malformed_requests: u64,
    pub upstream_errors: u64,
    pub regions_stripped: u64,
    pub regions_restored: u64,
    pub failed_regions: u64,
    pub request_bytes_before: u64,
    pub request_bytes_after: u64,
    pub request_tokens_before: u64,
    pub request_tokens_after: u64,
    pub response_bytes_before: u64,
    pub response_bytes_after: u64,
    pub response_tokens_before: u64,
    pub response_tokens_after: u64,
    pub upstream_latency_us: u64,
}

impl Stats {
    /// Telemetry of a single request.
    pub fn of_request(ctx: &RequestContext, upstream_latency_us: u64, upstream_error: bool) -> Stats {
        let sum = |f: fn(&super::RegionRecord) -> usize, recs: &[super::RegionRecord]| recs.iter().map(f).sum::<usize>() as u64;
        Stats {
            requests: 1,
            malformed_requests: 0,
            upstream_errors: upstream_error as u64,
            regions_stripped: ctx.stripped.len() as u64,
            regions_restored: ctx.restored.len() as u64,
            failed_regions: ctx.stripped.iter().chain(&ctx.restored).filter(|r| r.failed).count() as u64,
            request_bytes_before: sum(|r| r.bytes_before, &ctx.stripped),
            request_bytes_after: sum(|r| r.bytes_after, &ctx.stripped),
            request_tokens_before: sum(|r| r.tokens_before, &ctx.stripped),
            request_tokens_after: sum(|r| r.tokens_after, &ctx.stripped),
            response_bytes_before: sum(|r| r.bytes_before, &ctx.restored),
            response_bytes_after: sum(|r| r.bytes_after, &ctx.restored),
            response_tokens_before: sum(|r| r.tokens_before, &ctx.restored),
            response_tokens_after: sum(|r| r.tokens_after, &ctx.restored),
            upstream_latency_us,
        }
    }

    pub fn add(&mut self, o: &Stats) {
        self.requests += o.requests;
        self.malformed_requests += o.malformed_requests;
        self.upstream_errors += o.upstream_errors;
        self.regions_stripped += o.regions_stripped;
        self.regions_restored += o.regions_restored;
        self.failed_regions += o.failed_regions;
        self.request_bytes_before += o.request_bytes_before;
        self.request_bytes_after += o.request_bytes_after;
        self.request_tokens_before += o.request_tokens_before;
        self.request_tokens_after += o.request_tokens_after;
        self.response_bytes_before += o.response_bytes_before;
        self.response_bytes_after += o.response_bytes_after;
        self.response_tokens_before += o.response_tokens_before;
        self.response_tokens_after += o.response_tokens_after;
        self.upstream_latency_us += o.upstream_latency_us;
    }
}

struct Gateway {
    cfg: GatewayConfig,
    client: reqwest::Client,
    stats: Mutex<Stats>,
}

impl Gateway {
    fn record(&self, s: &Stats) {
        self.stats.lock().unwrap_or_else(|e| e.into_inner()).add(s);
    }
}

pub fn router(cfg: GatewayConfig) -> Result<Router, ConfigError> {
    cfg.validate()?;
    let client = reqwest::Client::builder()
        .timeout(cfg.request_timeout)
        .build()
        .expect("HTTP client builds");
    let gw = Arc::new(Gateway { cfg, client, stats: Mutex::default() });
    Ok(Router::new()
        .route("/v1/completions", post(completion))
        .route("/v1/chat/completions", post(completion))
        .route("/healthz", get(|| async { "ok" }))
        .route("/stats", get(stats))
        .layer(DefaultBodyLimit::max(BODY_LIMIT))
        .with_state(gw))
}

/// Binds `cfg.listen_address` and serves until Ctrl-C.
pub async fn serve(cfg: GatewayConfig) -> io::Result<()> {
    let listener = TcpListener::bind(cfg.listen_address).await?;
    tracing::info!("listening on {}, upstream {}", listener.local_addr()?, cfg.upstream_url);
    serve_on(listener, cfg, async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await
}

/// Serves on an already bound listener until `shutdown` resolves.
pub async fn serve_on(
    listener: TcpListener,
    cfg: GatewayConfig,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> io::Result<()> {
    let app = router(cfg).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    axum::serve(listener, app).with_graceful_shutdown(shutdown).await
}

async fn stats(State(gw): State<Arc<Gateway>>) -> Json<Stats> {
    Json(gw.stats.lock().unwrap_or_else(|e| e.into_inner()).clone())
}

fn error_json(status: StatusCode, kind: &str, message: String) -> Response {
    let body = serde_json::json!({"error": {"type": kind, "message": message}});
    (status, Json(body)).into_response()
}

async fn completion(
    State(gw): State<Arc<Gateway>>,
    OriginalUri(uri): OriginalUri,
    headers: HeaderMap,
    body: Bytes,
) -> Response {
    let rewritten = std::str::from_utf8(&body)
        .map_err(|e| format!("body is not UTF-8: {e}"))
        .and_then(|doc| rewrite_request(doc, &gw.cfg).map_err(|e| e.0));
    let (doc, mut ctx) = match rewritten {
        Ok(r) => r,
        Err(message) => {
            gw.record(&Stats { malformed_requests: 1, ..Stats::default() });
            return error_json(StatusCode::BAD_REQUEST, "malformed_request", message);
        }
    };

    let path = uri.path_and_query().map_or(uri.path(), |p| p.as_str());
    let url = format!("{}{}", gw.cfg.upstream_url.trim().trim_end_matches('/'), path);
    let mut out_headers = forwardable(&headers);
    out_headers.remove(header::ACCEPT_ENCODING);
    let start = Instant::now();
    let sent = gw.client.post(&url).headers(out_headers).body(doc).send().await;
    let upstream = match sent {
        Ok(resp) => {
            let parts = (resp.status(), resp.headers().clone());
            resp.bytes().await.map(|b| (parts, b))
        }
        Err(e) => Err(e),
    };
    let latency_us = start.elapsed().as_micros() as u64;

    let (status, up_headers, up_body) = match upstream {
        Ok(((status, h), b)) => (status, h, b),
        Err(e) => {
            let s = Stats::of_request(&ctx, latency_us, true);
            gw.record(&s);
            tracing::warn!(%url, "upstream unavailable: {e}");
            let mut resp = error_json(StatusCode::BAD_GATEWAY, "upstream_unavailable", e.to_string());
            attach(&mut resp, &s);
            return resp;
        }
    };

    let failed = !status.is_success();
    let body = match std::str::from_utf8(&up_body) {
        Ok(text) if !failed => Bytes::from(rewrite_response(text, &mut ctx, &gw.cfg)),
        _ => up_body,
    };
    let s = Stats::of_request(&ctx, latency_us, failed);
    gw.record(&s);
    tracing::info!(
        status = status.as_u16(),
        stripped = s.regions_stripped,
        restored = s.regions_restored,
        tokens_saved = s.request_tokens_before as i64 - s.request_tokens_after as i64,
        upstream_ms = latency_us / 1000,
        "completion"
    );
    let mut resp = (status, body).into_response();
    *resp.headers_mut() = forwardable(&up_headers);
    attach(&mut resp, &s);
    resp
}

fn attach(resp: &mut Response, s: &Stats) {
    let json = serde_json::to_string(s).expect("stats serialize");
    if let Ok(v) = HeaderValue::from_str(&json) {
        resp.headers_mut().insert(HeaderName::from_static(TELEMETRY_HEADER), v);
    }
}

const HOP_BY_HOP: [&str; 8] = [
    "connection",
    "keep-alive",
    "proxy-authenticate",
    "proxy-authorization",
    "te",
    "trailer",
    "transfer-encoding",
    "upgrade",
];

/// `headers` without hop-by-hop headers (including any the `Connection`
/// header names), `Host` and `Content-Length`.
fn forwardable(headers: &HeaderMap) -> HeaderMap {
    let named: Vec<String> = headers
        .get_all(header::CONNECTION)
        .iter()
        .filter_map(|v| v.to_str().ok())
        .flat_map(|v| v.split(','))
        .map(|s| s.trim().to_ascii_lowercase())
        .collect();
    let mut out = HeaderMap::with_capacity(headers.len());
    for (name, value) in headers {
        let n = name.as_str();
        if HOP_BY_HOP.contains(&n) || n == "host" || n == "content-length" || named.iter().any(|x| x == n) {
            continue;
        }
        out.append(name.clone(), value.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hop_by_hop_headers_are_dropped() {
        let mut h = HeaderMap::new();
        h.insert("connection", HeaderValue::from_static("keep-alive, x-secret"));
        h.insert("keep-alive", HeaderValue::from_static("timeout=5"));
        h.insert("x-secret", HeaderValue::from_static("1"));
        h.insert("transfer-encoding", HeaderValue::from_static("chunked"));
        h.insert("authorization", HeaderValue::from_static("Bearer k"));
        h.insert("content-type", HeaderValue::from_static("application/json"));
        h.insert("content-length", HeaderValue::from_static("12"));
        let out = forwardable(&h);
        let mut names: Vec<&str> = out.keys().map(|k| k.as_str()).collect();
        names.sort();
        assert_eq!(names, ["authorization", "content-type"]);
    }

    #[test]
    fn stats_add_up() {
        let mut total = Stats::default();
        let one = Stats { requests: 1, request_bytes_before: 10, request_bytes_after: 7, ..Stats::default() };
        total.add(&one);
        total.add(&one);
        assert_eq!((total.requests, total.request_bytes_before, total.request_bytes_after), (2, 20, 14));
    }
}
