use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn unfmt(args: &[&str], stdin: &str) -> Output {
    unfmt_in(Path::new("."), args, stdin)
}

fn unfmt_in(dir: &Path, args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_unfmt"))
        .args(args)
        .current_dir(dir)
        .env_remove("UNFMT_UPSTREAM_URL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> &str {
    std::str::from_utf8(&o.stdout).unwrap()
}

#[test]
fn strip_from_stdin() {
    let o = unfmt(&["strip", "--lang", "java", "-"], "a + b;");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a+b;");
}

#[test]
fn strip_without_language_is_a_usage_error() {
    let o = unfmt(&["strip"], "a + b;");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--lang"));
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("notes.txt"), "a + b;").unwrap();
    assert_eq!(unfmt_in(dir.path(), &["strip", "notes.txt"], "").status.code(), Some(2));
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(unfmt(&["strip", "--lang", "cobol", "-"], "").status.code(), Some(2));
    assert_eq!(unfmt(&["strip", "--remove", "tabs", "--lang", "java"], "").status.code(), Some(2));
    assert_eq!(unfmt(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(unfmt(&["--help"], "").status.code(), Some(0));
}

#[test]
fn language_from_extension_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("A.cs"), "class A {\n    int x = 1;\n}\n").unwrap();
    let o = unfmt_in(dir.path(), &["strip", "A.cs", "--out", "min.cs"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
    assert_eq!(std::fs::read_to_string(dir.path().join("min.cs")).unwrap(), "class A{int x=1;}");
}

#[test]
fn restore_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let min = "class A{void f(){if(x){g(1,2);}}}";
    std::fs::write(dir.path().join("min.java"), min).unwrap();
    let o = unfmt_in(dir.path(), &["restore", "min.java", "--out", "pretty.java"], "");
    assert_eq!(o.status.code(), Some(0));
    let pretty = std::fs::read_to_string(dir.path().join("pretty.java")).unwrap();
    assert!(pretty.lines().count() > 3, "{pretty}");
    let o = unfmt_in(dir.path(), &["verify", "min.java", "pretty.java"], "");
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("equivalent"));
}

#[test]
fn verify_reports_divergence() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.java"), "int x = 1;").unwrap();
    std::fs::write(dir.path().join("b.java"), "int x = 2;").unwrap();
    let o = unfmt_in(dir.path(), &["verify", "a.java", "b.java"], "");
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("token 3") && out.contains("a.java:1:9") && out.contains("\"2\""), "{out}");

    let o = unfmt_in(dir.path(), &["verify", "--json", "a.java", "-"], "int  x=1 ;");
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(v["equivalent"], true);
    assert_eq!(v["compared_tokens"], 5);

    assert_eq!(unfmt_in(dir.path(), &["verify", "a.java"], "").status.code(), Some(2));
}

#[test]
fn missing_input_is_an_io_error() {
    assert_eq!(unfmt(&["strip", "--lang", "java", "/nonexistent/x.java"], "").status.code(), Some(3));
}

#[test]
fn invalid_utf8_is_a_transform_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.py"), b"x = '\xff'\n").unwrap();
    assert_eq!(unfmt_in(dir.path(), &["strip", "bad.py"], "").status.code(), Some(4));
}

#[test]
fn unbalanced_restore_is_a_transform_error_unless_partial() {
    let o = unfmt(&["restore", "--lang", "java", "-"], "class A{void f(){");
    assert_eq!(o.status.code(), Some(4));
    let o = unfmt(&["restore", "--lang", "java", "--partial", "-"], "class A{void f(){");
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.matches('{').count(), 2);
    assert_eq!(out.matches('}').count(), 0, "{out}");
}

#[test]
fn ablations_and_json_records() {
    let src = "class A {\n    int x = 1;\n}\n";
    let o = unfmt(&["strip", "--lang", "java", "--remove", "newline", "-"], src);
    assert_eq!(stdout(&o), "class A {    int x = 1;}");
    let o = unfmt(&["strip", "--lang", "java", "--remove", "indent,space", "-"], src);
    assert_eq!(stdout(&o), "class A{\nint x=1;\n}\n");

    let o = unfmt(&["strip", "--lang", "cpp", "--json", "--tokenizer", "bytes", "-"], "int  x ;");
    let v: serde_json::Value = serde_json::from_str(stdout(&o)).unwrap();
    assert_eq!(v["output"], "int x;");
    assert_eq!((v["tokens_before"].as_u64(), v["tokens_after"].as_u64()), (Some(8), Some(6)));
}

#[test]
fn python_clamps_are_reported() {
    let o = unfmt(&["strip", "--lang", "python", "-"], "if x :\n    y = 1\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "if x:\n    y=1\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("remove_indentation"));
}

#[test]
fn style_profile_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("style.json"), r#"{"indent_width": 4}"#).unwrap();
    let o = unfmt_in(dir.path(), &["restore", "--lang", "java", "--style", "style.json", "-"], "class A{int x;}");
    assert_eq!(stdout(&o), "class A {\n    int x;\n}\n");
    std::fs::write(dir.path().join("bad.json"), r#"{"indent": 4}"#).unwrap();
    let o = unfmt_in(dir.path(), &["restore", "--lang", "java", "--style", "bad.json", "-"], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let src = "public class A {\n  public static void main(String[] args) {\n    System.out.println(1 + 2);\n  }\n}\n";
    let a = unfmt(&["strip", "--lang", "java", "--json", "-"], src);
    let b = unfmt(&["strip", "--lang", "java", "--json", "-"], src);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn serve_without_upstream_is_a_usage_error() {
    assert_eq!(unfmt(&["serve", "--listen", "127.0.0.1:0"], "").status.code(), Some(2));
    assert_eq!(unfmt(&["serve", "--upstream", "http://x", "--timeout", "0"], "").status.code(), Some(2));
}
