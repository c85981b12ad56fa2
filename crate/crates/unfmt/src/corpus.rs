//! Corpus measurement: strip, verify and restore every source file under a
//! directory and report token reduction and transform latency.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use unfmt_core::metering::{reduction, Tokenizer};
use unfmt_core::verify::equivalent;
use unfmt_core::{decode, restore, strip, FormatConfig, Language};
use walkdir::WalkDir;

use crate::style::StyleFile;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{}: no source files found", .0.display())]
    EmptyCorpus(PathBuf),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("aggregates for {0} do not match the per-file rows")]
    InconsistentAggregates(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub remove_indentation: bool,
    pub remove_whitespace: bool,
    pub remove_newlines: bool,
    pub languages: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileRow {
    /// Relative to the corpus root, `/`-separated.
    pub path: String,
    pub language: String,
    pub lines: usize,
    pub tokens_before: usize,
    pub tokens_after: usize,
    pub reduction_pct: f64,
    /// Strip plus restore wall time.
    pub latency_ms: f64,
    pub verified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub mean_reduction_pct: f64,
    pub median_reduction_pct: f64,
    pub mean_latency_ms: f64,
    pub files: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub config: ConfigEcho,
    pub tokenizer: String,
    pub files: Vec<FileRow>,
    pub aggregates: BTreeMap<String, Aggregate>,
}

pub struct MeasureOptions<'a> {
    /// Empty means every language.
    pub languages: &'a [Language],
    pub config: FormatConfig,
    /// Style for the restore half of the latency measurement.
    pub style: StyleFile,
    pub tokenizer: &'a Tokenizer,
    pub tokenizer_name: &'a str,
}

pub fn measure_corpus(root: &Path, opts: &MeasureOptions<'_>) -> Result<CorpusReport, CorpusError> {
    let files = collect_files(root, opts.languages)?;
    if files.is_empty() {
        return Err(CorpusError::EmptyCorpus(root.to_path_buf()));
    }
    let files: Vec<FileRow> = files
        .par_iter()
        .map(|(path, lang)| measure_file(root, path, *lang, opts))
        .collect();
    let mut languages: Vec<Language> = if opts.languages.is_empty() {
        Language::ALL.to_vec()
    } else {
        opts.languages.to_vec()
    };
    languages.sort();
    languages.dedup();
    let report = CorpusReport {
        config: ConfigEcho {
            remove_indentation: opts.config.remove_indentation,
            remove_whitespace: opts.config.remove_whitespace,
            remove_newlines: opts.config.remove_newlines,
            languages: languages.iter().map(|l| l.name().to_string()).collect(),
        },
        tokenizer: opts.tokenizer_name.to_string(),
        aggregates: aggregate(&files),
        files,
    };
    Ok(report)
}

/// Source files under `root` in path order, with their languages.
fn collect_files(root: &Path, languages: &[Language]) -> Result<Vec<(PathBuf, Language)>, CorpusError> {
    fs::read_dir(root).map_err(|source| CorpusError::Io { path: root.to_path_buf(), source })?;
    let mut files = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = match entry {
            Ok(e) => e,
            Err(e) => {
                tracing::warn!("skipping unreadable entry: {e}");
                continue;
            }
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let lang = entry.path().extension().and_then(|e| e.to_str()).and_then(Language::from_extension);
        if let Some(lang) = lang.filter(|l| languages.is_empty() || languages.contains(l)) {
            files.push((entry.into_path(), lang));
        }
    }
    files.sort();
    Ok(files)
}

fn relative(root: &Path, path: &Path) -> String {
    let rel = path.strip_prefix(root).unwrap_or(path);
    rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/")
}

fn measure_file(root: &Path, path: &Path, lang: Language, opts: &MeasureOptions<'_>) -> FileRow {
    let mut row = FileRow {
        path: relative(root, path),
        language: lang.name().to_string(),
        lines: 0,
        tokens_before: 0,
        tokens_after: 0,
        reduction_pct: 0.0,
        latency_ms: 0.0,
        verified: false,
        error: None,
    };
    let bytes = match fs::read(path) {
        Ok(b) => b,
        Err(e) => {
            row.error = Some(format!("io: {e}"));
            return row;
        }
    };
    let text = match decode(&bytes) {
        Ok(t) => t,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    row.lines = text.lines().count();
    let style = opts.style.profile(lang);

    let start = Instant::now();
    let stripped = strip(text, lang, opts.config).output;
    let strip_time = start.elapsed();
    let start = Instant::now();
    let restored = restore(&stripped, lang, style);
    let restore_time = start.elapsed();
    row.latency_ms = (strip_time + restore_time).as_secs_f64() * 1e3;

    let stats = reduction(text, &stripped, opts.tokenizer);
    row.tokens_before = stats.tokens_before;
    row.tokens_after = stats.tokens_after;
    row.reduction_pct = stats.reduction_pct;

    let strip_report = equivalent(text, &stripped, lang);
    row.error = match restored {
        Err(e) => Some(format!("restore: {e}")),
        Ok(_) if !strip_report.equivalent => Some(divergence("strip", &strip_report)),
        Ok(r) => {
            let back = equivalent(text, &r.output, lang);
            (!back.equivalent).then(|| divergence("restore", &back))
        }
    };
    row.verified = row.error.is_none();
    row
}

fn divergence(stage: &str, report: &unfmt_core::verify::EquivalenceReport) -> String {
    match &report.first_divergence {
        Some(d) => format!("{stage}: diverges at token {}: {:?} vs {:?}", d.index, d.left, d.right),
        None => format!("{stage}: not equivalent"),
    }
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    match v.len() {
        0 => 0.0,
        n if n % 2 == 1 => v[n / 2],
        n => (v[n / 2 - 1] + v[n / 2]) / 2.0,
    }
}

/// Per-language summary of the rows. Rows that failed verification count as
/// failures and are left out of the means and medians.
pub fn aggregate(rows: &[FileRow]) -> BTreeMap<String, Aggregate> {
    let mut groups: BTreeMap<&str, Vec<&FileRow>> = BTreeMap::new();
    for row in rows {
        groups.entry(&row.language).or_default().push(row);
    }
    groups
        .into_iter()
        .map(|(lang, rows)| {
            let ok: Vec<&FileRow> = rows.iter().copied().filter(|r| r.verified).collect();
            let pct: Vec<f64> = ok.iter().map(|r| r.reduction_pct).collect();
            let lat: Vec<f64> = ok.iter().map(|r| r.latency_ms).collect();
            let agg = Aggregate {
                mean_reduction_pct: mean(&pct),
                median_reduction_pct: median(&pct),
                mean_latency_ms: mean(&lat),
                files: rows.len(),
                failures: rows.len() - ok.len(),
            };
            (lang.to_string(), agg)
        })
        .collect()
}

impl CorpusReport {
    /// Fails if the aggregates differ from a recomputation over the rows.
    pub fn check(&self) -> Result<(), CorpusError> {
        let fresh = aggregate(&self.files);
        for (lang, agg) in &self.aggregates {
            if fresh.get(lang) != Some(agg) {
                return Err(CorpusError::InconsistentAggregates(lang.clone()));
            }
        }
        if let Some(lang) = fresh.keys().find(|l| !self.aggregates.contains_key(*l)) {
            return Err(CorpusError::InconsistentAggregates(lang.clone()));
        }
        Ok(())
    }

    pub fn failures(&self) -> usize {
        self.files.iter().filter(|r| !r.verified).count()
    }

    pub fn to_json(&self) -> Result<String, CorpusError> {
        self.check()?;
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        Ok(out)
    }

    /// Aligned columns: one row per file, then one per language.
    pub fn to_text(&self) -> Result<String, CorpusError> {
        self.check()?;
        let width = self.files.iter().map(|r| r.path.len()).max().unwrap_or(4).max(4);
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "tokenizer: {}  remove: indent={} space={} newline={}",
            self.tokenizer, c.remove_indentation, c.remove_whitespace, c.remove_newlines
        );
        let _ = writeln!(
            out,
            "{:<width$}  {:<6}  {:>7}  {:>8}  {:>8}  {:>10}  verified",
            "path", "lang", "before", "after", "reduce%", "latency_ms"
        );
        for r in &self.files {
            let _ = writeln!(
                out,
                "{:<width$}  {:<6}  {:>7}  {:>8}  {:>8.2}  {:>10.3}  {}",
                r.path,
                r.language,
                r.tokens_before,
                r.tokens_after,
                r.reduction_pct,
                r.latency_ms,
                if r.verified { "yes" } else { "NO" }
            );
            if let Some(e) = &r.error {
                let _ = writeln!(out, "{:<width$}  error: {e}", "");
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<6}  {:>5}  {:>8}  {:>7}  {:>7}  {:>15}",
            "lang", "files", "failures", "mean%", "median%", "mean_latency_ms"
        );
        for (lang, a) in &self.aggregates {
            let _ = writeln!(
                out,
                "{:<6}  {:>5}  {:>8}  {:>7.2}  {:>7.2}  {:>15.3}",
                lang, a.files, a.failures, a.mean_reduction_pct, a.median_reduction_pct, a.mean_latency_ms
            );
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(lang: &str, pct: f64, latency: f64, verified: bool) -> FileRow {
        FileRow {
            path: String::new(),
            language: lang.into(),
            lines: 1,
            tokens_before: 0,
            tokens_after: 0,
            reduction_pct: pct,
            latency_ms: latency,
            verified,
            error: None,
        }
    }

    #[test]
    fn aggregates_skip_failures() {
        let rows = [row("java", 10.0, 1.0, true), row("java", 30.0, 3.0, true), row("java", 99.0, 9.0, false)];
        let agg = &aggregate(&rows)["java"];
        assert_eq!(agg.mean_reduction_pct, 20.0);
        assert_eq!(agg.median_reduction_pct, 20.0);
        assert_eq!(agg.mean_latency_ms, 2.0);
        assert_eq!((agg.files, agg.failures), (3, 1));
    }

    #[test]
    fn median_of_odd_count() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[]), 0.0);
    }

    #[test]
    fn tampered_aggregates_are_rejected() {
        let mut report = CorpusReport {
            config: ConfigEcho {
                remove_indentation: true,
                remove_whitespace: true,
                remove_newlines: true,
                languages: vec!["java".into()],
            },
            tokenizer: "builtin_bytes".into(),
            files: vec![row("java", 10.0, 1.0, true)],
            aggregates: BTreeMap::new(),
        };
        assert!(report.to_json().is_err());
        report.aggregates = aggregate(&report.files);
        assert!(report.to_json().is_ok());
        report.aggregates.get_mut("java").unwrap().files = 2;
        assert!(matches!(report.check(), Err(CorpusError::InconsistentAggregates(l)) if l == "java"));
    }
}
