mod common;

use std::sync::atomic::Ordering;

use common::{assemble, match_segments, reply_segments, start_gateway, start_mock, Seg};
use unfmt_std::gateway::{RegionMode, Stats, TELEMETRY_HEADER};
use unfmt_core::verify::equivalent;
use unfmt_core::Language;

async fn post(url: String, body: String, headers: &[(&str, &str)]) -> reqwest::Response {
    let mut req = reqwest::Client::new().post(url).header("content-type", "application/json").body(body);
    for (k, v) in headers {
        req = req.header(*k, *v);
    }
    req.send().await.unwrap()
}

async fn stats(gw: std::net::SocketAddr) -> Stats {
    let body = reqwest::get(format!("http://{gw}/stats")).await.unwrap().text().await.unwrap();
    serde_json::from_str(&body).unwrap()
}

#[tokio::test(flavor = "multi_thread")]
async fn healthz_and_empty_stats() {
    let gw = start_gateway("http://127.0.0.1:9", |_| {}).await;
    let resp = reqwest::get(format!("http://{gw}/healthz")).await.unwrap();
    assert_eq!(resp.status(), 200);
    assert_eq!(resp.text().await.unwrap(), "ok");
    assert_eq!(stats(gw).await, Stats::default());
}

#[tokio::test(flavor = "multi_thread")]
async fn malformed_requests_never_reach_upstream() {
    let (up, mock) = start_mock().await;
    let gw = start_gateway(&format!("http://{up}"), |_| {}).await;
    for body in [r#"{"model": "m"}"#, "not json", r#"{"prompt": "x""#] {
        let resp = post(format!("http://{gw}/v1/completions"), body.into(), &[]).await;
        assert_eq!(resp.status(), 400);
        let v: serde_json::Value = serde_json::from_str(&resp.text().await.unwrap()).unwrap();
        assert_eq!(v["error"]["type"], "malformed_request");
    }
    assert_eq!(mock.hits.load(Ordering::SeqCst), 0);
    assert_eq!(stats(gw).await.malformed_requests, 3);
}

#[tokio::test(flavor = "multi_thread")]
async fn unreachable_upstream_is_502() {
    let closed = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap();
    let gw = start_gateway(&format!("http://{closed}"), |_| {}).await;
    let resp = post(format!("http://{gw}/v1/completions"), r#"{"prompt": "```java\nint  a;\n```"}"#.into(), &[]).await;
    assert_eq!(resp.status(), 502);
    assert!(resp.headers().contains_key(TELEMETRY_HEADER));
    let v: serde_json::Value = serde_json::from_str(&resp.text().await.unwrap()).unwrap();
    assert_eq!(v["error"]["type"], "upstream_unavailable");
    let s = stats(gw).await;
    assert_eq!((s.requests, s.upstream_errors, s.regions_stripped), (1, 1, 1));
}

#[tokio::test(flavor = "multi_thread")]
async fn upstream_errors_pass_through() {
    let (up, _mock) = start_mock().await;
    let gw = start_gateway(&format!("http://{up}"), |_| {}).await;
    let resp = post(format!("http://{gw}/v1/completions"), r#"{"prompt": "hi"}"#.into(), &[("x-mock-status", "429")]).await;
    assert_eq!(resp.status(), 429);
    assert_eq!(resp.headers()["x-mock"], "1");
    assert_eq!(resp.text().await.unwrap(), r#"{"error": {"message": "mock  failure"}}"#);
    assert_eq!(stats(gw).await.upstream_errors, 1);
}

#[tokio::test(flavor = "multi_thread")]
async fn headers_are_forwarded_without_hop_by_hop() {
    let (up, mock) = start_mock().await;
    let gw = start_gateway(&format!("http://{up}/"), |_| {}).await;
    let headers = [("authorization", "Bearer k"), ("x-trace", "t1"), ("connection", "x-drop-me"), ("x-drop-me", "1")];
    let resp = post(format!("http://{gw}/v1/completions?beta=1"), r#"{"prompt": "hi"}"#.into(), &headers).await;
    assert_eq!(resp.status(), 200);
    let seen = mock.seen.lock().unwrap();
    let (h, body) = &seen[0];
    assert_eq!(h["authorization"], "Bearer k");
    assert_eq!(h["x-trace"], "t1");
    assert!(!h.contains_key("x-drop-me"));
    assert_eq!(body, r#"{"prompt": "hi"}"#);
}

const JAVA: &str = "public class Greeter {\n    private final String name;\n\n    public Greeter(String name) {\n        this.name = name;\n    }\n\n    public String greet() {\n        return \"Hello, \" + name + \"!\";\n    }\n}\n";

#[tokio::test(flavor = "multi_thread")]
async fn prompt_round_trip_preserves_prose_bytes() {
    let (up, mock) = start_mock().await;
    let gw = start_gateway(&format!("http://{up}"), |_| {}).await;
    let prose_before = r#"Review this, caf\u00e9 \/ \"please\":\n```java\n"#;
    let prose_after = r"```\nThanks \ud83d\ude00 😀";
    let text = [Seg::Raw(prose_before.into()), Seg::Code(JAVA.into()), Seg::Raw(prose_after.into())];
    let mut segs = vec![Seg::Raw(r#"{ "model" : "m",  "prompt": ""#.into())];
    segs.extend(text.iter().cloned());
    segs.push(Seg::Raw(r#"", "max_tokens": 5 }"#.into()));
    let resp = post(format!("http://{gw}/v1/completions"), assemble(&segs), &[]).await;
    assert_eq!(resp.status(), 200);
    let telemetry: Stats = serde_json::from_str(resp.headers()[TELEMETRY_HEADER].to_str().unwrap()).unwrap();
    let body = resp.text().await.unwrap();

    let upstream_body = mock.seen.lock().unwrap()[0].1.clone();
    let stripped = match_segments(&upstream_body, &segs).unwrap().remove(0);
    assert!(equivalent(JAVA, &stripped, Language::Java).equivalent);
    assert!(stripped.len() < JAVA.len());
    assert!(!stripped.contains("\n    "), "{stripped}");

    let decode = |raw: &str| serde_json::from_str::<String>(&format!("\"{raw}\"")).unwrap();
    let reply = reply_segments(false, &[Seg::Raw(decode(prose_before)), Seg::Code(stripped.clone()), Seg::Raw(decode(prose_after))]);
    let restored = match_segments(&body, &reply).unwrap().remove(0);
    assert!(equivalent(&stripped, &restored, Language::Java).equivalent);
    assert!(equivalent(JAVA, &restored, Language::Java).equivalent);
    assert!(restored.contains("\n  "), "{restored}");

    assert_eq!((telemetry.regions_stripped, telemetry.regions_restored), (1, 1));
    assert_eq!(telemetry.request_bytes_before as usize, JAVA.len());
    assert_eq!(telemetry.request_bytes_after as usize, stripped.len());
    assert_eq!(stats(gw).await, telemetry);
}

#[tokio::test(flavor = "multi_thread")]
async fn chat_messages_with_two_blocks() {
    let (up, mock) = start_mock().await;
    let gw = start_gateway(&format!("http://{up}"), |_| {}).await;
    let cpp = "int add(int a, int b) {\n    return a + b;\n}\n";
    let py = "def add(a, b):\n    return a  +  b\n";
    let segs = [
        Seg::Raw(r#"{"messages":[{"role":"system","content":"Answer  with code."},{"role":"user","content":"Two:\n```cpp\n"#.into()),
        Seg::Code(cpp.into()),
        Seg::Raw(r"```\nand\n```python\n".into()),
        Seg::Code(py.into()),
        Seg::Raw(r#"```\n"}]}"#.into()),
    ];
    let resp = post(format!("http://{gw}/v1/chat/completions"), assemble(&segs), &[]).await;
    assert_eq!(resp.status(), 200);
    let upstream_body = mock.seen.lock().unwrap()[0].1.clone();
    let codes = match_segments(&upstream_body, &segs).unwrap();
    assert_eq!(codes, ["int add(int a,int b){return a+b;}\n", "def add(a,b):\n    return a+b\n"]);
    let v: serde_json::Value = serde_json::from_str(&resp.text().await.unwrap()).unwrap();
    let content = v["choices"][0]["message"]["content"].as_str().unwrap();
    assert_eq!(content, "Two:\n```cpp\nint add(int a, int b) {\n  return a + b;\n}\n```\nand\n```python\ndef add(a, b):\n    return a + b\n```\n");
}

#[tokio::test(flavor = "multi_thread")]
async fn whole_body_mode() {
    let (up, mock) = start_mock().await;
    let gw = start_gateway(&format!("http://{up}"), |c| {
        c.code_region_mode = RegionMode::WholeBody;
        c.language_default = Language::CSharp;
    })
    .await;
    let body = serde_json::json!({"prompt": "class A {\n    int X { get; set; }\n}\n"}).to_string();
    let resp = post(format!("http://{gw}/v1/completions"), body, &[]).await;
    assert_eq!(resp.status(), 200);
    let seen: serde_json::Value = serde_json::from_str(&mock.seen.lock().unwrap()[0].1).unwrap();
    assert_eq!(seen["prompt"], "class A{int X{get;set;}}\n");
    let v: serde_json::Value = serde_json::from_str(&resp.text().await.unwrap()).unwrap();
    assert_eq!(v["choices"][0]["text"], "class A {\n  int X { get; set; }\n}\n");
}

#[tokio::test(flavor = "multi_thread")]
async fn truncated_reply_leaks_no_brackets() {
    let (up, _mock) = start_mock().await;
    let gw = start_gateway(&format!("http://{up}"), |_| {}).await;
    let reply = "Sure:\n```java\nclass A{void f(){if(x){g(1,";
    let body = serde_json::json!({"prompt": "go", "mock_reply": reply}).to_string();
    let resp = post(format!("http://{gw}/v1/completions"), body, &[]).await;
    let v: serde_json::Value = serde_json::from_str(&resp.text().await.unwrap()).unwrap();
    let text = v["choices"][0]["text"].as_str().unwrap();
    assert!(text.starts_with("Sure:\n```java\n"));
    assert_eq!(common::bracket_counts(text), common::bracket_counts(reply), "{text}");
    assert!(equivalent(&text[14..], &reply[14..], Language::Java).equivalent, "{text}");
}
