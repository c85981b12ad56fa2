use std::fs;
use std::path::Path;

use unfmt_std::corpus::{measure_corpus, CorpusError, CorpusReport, MeasureOptions};
use unfmt_std::style::StyleFile;
use unfmt_core::metering::Tokenizer;
use unfmt_core::{FormatConfig, Language};

fn measure(root: &Path, languages: &[Language], tokenizer: &Tokenizer) -> Result<CorpusReport, CorpusError> {
    let opts = MeasureOptions {
        languages,
        config: FormatConfig::all(),
        style: StyleFile::default(),
        tokenizer,
        tokenizer_name: tokenizer.name(),
    };
    measure_corpus(root, &opts)
}

#[test]
fn single_cpp_file_in_bytes() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.cpp"), "int  x ;\n").unwrap();
    let report = measure(dir.path(), &[], &Tokenizer::Bytes).unwrap();
    assert_eq!(report.files.len(), 1);
    let row = &report.files[0];
    assert_eq!((row.path.as_str(), row.language.as_str()), ("a.cpp", "cpp"));
    assert_eq!((row.tokens_before, row.tokens_after), (9, 6));
    assert!((row.reduction_pct - 100.0 / 3.0).abs() < 1e-9);
    assert!(row.verified);
    assert_eq!(report.aggregates["cpp"].files, 1);
}

#[test]
fn empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("README.md"), "no code").unwrap();
    assert!(matches!(measure(dir.path(), &[], &Tokenizer::Words), Err(CorpusError::EmptyCorpus(_))));
}

#[test]
fn missing_root_is_an_io_error() {
    assert!(matches!(
        measure(Path::new("/nonexistent/corpus"), &[], &Tokenizer::Words),
        Err(CorpusError::Io { .. })
    ));
}

#[test]
fn unreadable_files_are_recorded_not_fatal() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("ok.py"), "x = 1\n").unwrap();
    fs::write(dir.path().join("bad.py"), b"x = '\xff'\n").unwrap();
    let report = measure(dir.path(), &[], &Tokenizer::Words).unwrap();
    let paths: Vec<&str> = report.files.iter().map(|r| r.path.as_str()).collect();
    assert_eq!(paths, ["bad.py", "ok.py"]);
    assert!(!report.files[0].verified && report.files[0].error.is_some());
    let agg = &report.aggregates["python"];
    assert_eq!((agg.files, agg.failures), (2, 1));
    assert_eq!(agg.mean_reduction_pct, report.files[1].reduction_pct);
}

#[test]
fn language_filter_and_nested_paths() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir_all(dir.path().join("src/b")).unwrap();
    fs::write(dir.path().join("src/b/Z.java"), "class Z { }\n").unwrap();
    fs::write(dir.path().join("src/A.java"), "class A { }\n").unwrap();
    fs::write(dir.path().join("src/m.cc"), "int  main ( ) { }\n").unwrap();
    let report = measure(dir.path(), &[Language::Java], &Tokenizer::Words).unwrap();
    let paths: Vec<&str> = report.files.iter().map(|r| r.path.as_str()).collect();
    assert_eq!(paths, ["src/A.java", "src/b/Z.java"]);
    assert_eq!(report.config.languages, ["java"]);
    assert_eq!(report.aggregates.keys().collect::<Vec<_>>(), ["java"]);
}

/// Means and medians recomputed from the emitted JSON rows.
#[test]
fn aggregates_match_rows_on_the_bundled_corpus() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let report = measure(&root, &[], &Tokenizer::Words).unwrap();
    let json: serde_json::Value = serde_json::from_str(&report.to_json().unwrap()).unwrap();
    let rows = json["files"].as_array().unwrap();
    let mut paths: Vec<&str> = rows.iter().map(|r| r["path"].as_str().unwrap()).collect();
    let sorted = {
        let mut p = paths.clone();
        p.sort();
        p
    };
    assert_eq!(paths, sorted);
    paths.dedup();
    assert_eq!(paths.len(), rows.len());

    for (lang, agg) in json["aggregates"].as_object().unwrap() {
        let mine: Vec<&serde_json::Value> = rows.iter().filter(|r| r["language"] == *lang).collect();
        let ok: Vec<f64> = mine
            .iter()
            .filter(|r| r["verified"] == true)
            .map(|r| r["reduction_pct"].as_f64().unwrap())
            .collect();
        let mut sorted = ok.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = sorted.len();
        let median = if n % 2 == 1 { sorted[n / 2] } else { (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0 };
        let mean = ok.iter().sum::<f64>() / n as f64;
        assert!((agg["mean_reduction_pct"].as_f64().unwrap() - mean).abs() < 1e-9, "{lang}");
        assert!((agg["median_reduction_pct"].as_f64().unwrap() - median).abs() < 1e-9, "{lang}");
        assert_eq!(agg["files"].as_u64().unwrap() as usize, mine.len());
        assert_eq!(agg["failures"].as_u64().unwrap() as usize, mine.len() - n);
    }
}

#[test]
fn reports_do_not_depend_on_scheduling() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let strip_latency = |mut r: CorpusReport| {
        for row in &mut r.files {
            row.latency_ms = 0.0;
        }
        r.aggregates = unfmt_std::corpus::aggregate(&r.files);
        r.to_json().unwrap()
    };
    let a = strip_latency(measure(&root, &[Language::CSharp], &Tokenizer::Words).unwrap());
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| strip_latency(measure(&root, &[Language::CSharp], &Tokenizer::Words).unwrap()));
    assert_eq!(a, b);
}

#[test]
fn measure_command_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("a.cpp"), "int  x ;\n").unwrap();
    let root = dir.path().to_str().unwrap();
    let mut out = Vec::new();
    let code = unfmt_std::run(["unfmt", "measure", "--tokenizer", "bytes", "--json", root], &mut &b""[..], &mut out, &mut Vec::new());
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
    for key in ["config", "tokenizer", "files", "aggregates"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let row = &v["files"][0];
    for key in ["path", "language", "tokens_before", "tokens_after", "reduction_pct", "latency_ms", "verified"] {
        assert!(row.get(key).is_some(), "{key}");
    }
    for key in ["mean_reduction_pct", "median_reduction_pct", "mean_latency_ms", "files", "failures"] {
        assert!(v["aggregates"]["cpp"].get(key).is_some(), "{key}");
    }
    assert_eq!(v["tokenizer"], "builtin_bytes");

    let mut text = Vec::new();
    let code = unfmt_std::run(["unfmt", "measure", "--tokenizer", "bytes", root], &mut &b""[..], &mut text, &mut Vec::new());
    assert_eq!(code, 0);
    let text = String::from_utf8(text).unwrap();
    assert!(text.contains("a.cpp") && text.contains("33.33"), "{text}");

    let empty = tempfile::tempdir().unwrap();
    let code = unfmt_std::run(["unfmt", "measure", empty.path().to_str().unwrap()], &mut &b""[..], &mut Vec::new(), &mut Vec::new());
    assert_eq!(code, 3);
}
