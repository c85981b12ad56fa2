use std::fs;
use std::path::{Path, PathBuf};

use unfmt_core::verify::equivalent;
use unfmt_core::{canonical_minimal, restore, strip, FormatConfig, Language, StyleProfile};

fn corpus_files() -> Vec<(PathBuf, Language)> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut files = Vec::new();
    for dir in ["java", "cpp", "csharp", "python"] {
        for entry in fs::read_dir(root.join(dir)).unwrap() {
            let path = entry.unwrap().path();
            let lang = path.extension().and_then(|e| e.to_str()).and_then(Language::from_extension);
            if let Some(lang) = lang {
                files.push((path, lang));
            }
        }
    }
    files.sort();
    files
}

fn check(failures: &mut Vec<String>, path: &Path, what: &str, a: &str, b: &str, lang: Language) {
    let r = equivalent(a, b, lang);
    if !r.equivalent {
        let d = r.first_divergence.unwrap();
        failures.push(format!(
            "{} [{what}] at {}: {:?} {:?} vs {:?} {:?}",
            path.display(),
            d.index,
            d.left,
            d.left_pos,
            d.right,
            d.right_pos
        ));
    }
}

#[test]
fn strip_and_restore_preserve_tokens_on_corpus() {
    let mut failures = Vec::new();
    let files = corpus_files();
    assert!(files.len() >= 200);
    for (path, lang) in &files {
        let src = fs::read_to_string(path).unwrap();
        for config in FormatConfig::ABLATIONS {
            let out = strip(&src, *lang, config).output;
            check(&mut failures, path, &format!("strip {:?}", config.element_names()), &src, &out, *lang);
        }
        match restore(&src, *lang, StyleProfile::for_language(*lang)) {
            Ok(r) => check(&mut failures, path, "restore", &src, &r.output, *lang),
            Err(e) => failures.push(format!("{} [restore] {e}", path.display())),
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}

#[test]
fn round_trips_on_corpus() {
    let mut failures = Vec::new();
    for (path, lang) in corpus_files() {
        let src = fs::read_to_string(&path).unwrap();
        let style = StyleProfile::for_language(lang);
        let min = canonical_minimal(&src, lang);
        let Ok(back) = restore(&min, lang, style) else {
            failures.push(format!("{} restore of minimal failed", path.display()));
            continue;
        };
        check(&mut failures, &path, "restore(strip)", &src, &back.output, lang);
        let again = restore(&back.output, lang, style).unwrap().output;
        if again != back.output {
            failures.push(format!("{} restore not idempotent", path.display()));
        }
        if lang.is_c_family() && canonical_minimal(&back.output, lang) != min {
            failures.push(format!("{} strip(restore(s)) != strip(s)", path.display()));
        }
        if canonical_minimal(&min, lang) != min {
            failures.push(format!("{} strip not idempotent", path.display()));
        }
    }
    assert!(failures.is_empty(), "{} failures:\n{}", failures.len(), failures.join("\n"));
}
