//! Cross-checks Python transforms against CPython's own parser. Skipped when
//! no `python3` is on the path.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::{Command, Stdio};

use unfmt_core::{canonical_minimal, restore, strip, FormatConfig, Language, StyleProfile};

const COMPARE: &str = r#"
import ast, json, sys
cases = json.load(sys.stdin)
bad = []
for name, a, b in cases:
    try:
        same = ast.dump(ast.parse(a)) == ast.dump(ast.parse(b))
    except SyntaxError as e:
        same = False
    if not same:
        bad.append(name)
print("\n".join(bad))
"#;

fn python3() -> Option<Command> {
    let ok = Command::new("python3").arg("--version").output().is_ok_and(|o| o.status.success());
    ok.then(|| Command::new("python3"))
}

#[test]
fn python_transforms_keep_the_ast() {
    let Some(mut cmd) = python3() else {
        eprintln!("python3 not found; skipping");
        return;
    };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/python");
    let mut cases = Vec::new();
    let mut paths: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    paths.sort();
    for path in paths {
        let src = fs::read_to_string(&path).unwrap();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let stripped = strip(&src, Language::Python, FormatConfig::all()).output;
        let restored = restore(&src, Language::Python, StyleProfile::python()).unwrap().output;
        let round = restore(&canonical_minimal(&src, Language::Python), Language::Python, StyleProfile::python())
            .unwrap()
            .output;
        for (tag, out) in [("strip", stripped), ("restore", restored), ("round", round)] {
            cases.push((format!("{name} {tag}"), src.clone(), out));
        }
    }
    let payload = serde_json::to_string(&cases).unwrap();
    let mut child = cmd
        .arg("-c")
        .arg(COMPARE)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(payload.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let bad = String::from_utf8(out.stdout).unwrap();
    assert!(bad.trim().is_empty(), "AST differs for:\n{bad}");
}
