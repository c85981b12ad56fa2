//! Command-line front end.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use unfmt_core::metering::{reduction, Tokenizer};
use unfmt_core::partial::{transform_partial, PartialMode};
use unfmt_core::verify::equivalent;
use unfmt_core::{decode, restore, strip, FormatConfig, Language, TransformResult};

use crate::corpus::{measure_corpus, CorpusError, MeasureOptions};
use crate::gateway::{self, GatewayConfig, RegionMode};
use crate::style::{StyleError, StyleFile};
use crate::tokenizer_files::{load_tokenizer, LoadError, TokenizerSpec};

/// Environment variable that overrides the gateway's upstream URL.
pub const UPSTREAM_ENV: &str = "UNFMT_UPSTREAM_URL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_TRANSFORM: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "unfmt", version, about = "Strip and restore code formatting without changing its tokens")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Remove indentation, interior whitespace and newlines.
    Strip(Options),
    /// Lay code out again according to a style profile.
    Restore(Options),
    /// Compare the token streams of two inputs.
    Verify(Options),
    /// Strip, verify and restore every source file under a directory and
    /// report token reduction and latency.
    Measure(Options),
    /// Run the HTTP gateway.
    Serve(ServeOptions),
}

#[derive(Args, Debug)]
struct Options {
    /// java, cpp, csharp or python. Inferred from file extensions if absent.
    #[arg(long, value_parser = parse_language)]
    lang: Option<Language>,
    /// Comma-separated formatting elements to remove.
    #[arg(long, default_value = "indent,space,newline", value_parser = parse_remove)]
    remove: FormatConfig,
    /// JSON style profile overriding the per-language defaults.
    #[arg(long)]
    style: Option<PathBuf>,
    /// Treat input as possibly incomplete code.
    #[arg(long)]
    partial: bool,
    /// bytes, words or bpe:<vocab.json>,<merges.txt>
    #[arg(long, default_value = "words")]
    tokenizer: TokenizerSpec,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Input files; `-` or nothing reads standard input.
    paths: Vec<String>,
}

#[derive(Args, Debug)]
struct ServeOptions {
    #[command(flatten)]
    common: Options,
    #[arg(long, default_value = "127.0.0.1:8080")]
    listen: SocketAddr,
    /// Upstream base URL; the request path is appended. UNFMT_UPSTREAM_URL
    /// takes precedence.
    #[arg(long)]
    upstream: Option<String>,
    /// fenced or whole_body.
    #[arg(long, default_value = "fenced")]
    mode: RegionMode,
    /// Upstream request timeout in seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
}

fn parse_language(s: &str) -> Result<Language, String> {
    s.parse().map_err(|e: unfmt_core::lexkit::UnknownLanguage| e.to_string())
}

fn parse_remove(s: &str) -> Result<FormatConfig, String> {
    let mut config = FormatConfig::none();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        match item {
            "indent" | "indentation" => config.remove_indentation = true,
            "space" | "whitespace" => config.remove_whitespace = true,
            "newline" | "newlines" => config.remove_newlines = true,
            "all" => config = FormatConfig::all(),
            other => return Err(format!("unknown element `{other}` (expected indent, space, newline)")),
        }
    }
    Ok(config)
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Transform(String),
    NotEquivalent,
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
            Failure::Transform(_) => EXIT_TRANSFORM,
            Failure::NotEquivalent => EXIT_NOT_EQUIVALENT,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::MissingFile(_) | LoadError::Io { .. } => Failure::Io(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<StyleError> for Failure {
    fn from(e: StyleError) -> Self {
        match e {
            StyleError::Io { .. } => Failure::Io(e.to_string()),
            StyleError::Malformed { .. } => Failure::Usage(e.to_string()),
        }
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Strip(o) => transform_cmd(&o, Direction::Strip, stdin, stdout, stderr),
        Command::Restore(o) => transform_cmd(&o, Direction::Restore, stdin, stdout, stderr),
        Command::Verify(o) => verify_cmd(&o, stdin, stdout),
        Command::Measure(o) => measure_cmd(&o, stdout),
        Command::Serve(o) => serve_cmd(o),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            match &f {
                Failure::Usage(m) => {
                    let _ = writeln!(stderr, "error: {m}\n\nUsage: unfmt <strip|restore|verify|measure|serve> [OPTIONS] [PATHS...|-]");
                }
                Failure::Io(m) | Failure::Transform(m) => {
                    let _ = writeln!(stderr, "error: {m}");
                }
                Failure::NotEquivalent => {}
            }
            f.code()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Strip,
    Restore,
}

struct Input {
    name: String,
    bytes: Vec<u8>,
    language: Language,
}

fn inputs(paths: &[String], lang: Option<Language>, stdin: &mut dyn Read) -> Result<Vec<Input>, Failure> {
    let paths: Vec<&str> = if paths.is_empty() { vec!["-"] } else { paths.iter().map(String::as_str).collect() };
    if paths.iter().filter(|p| **p == "-").count() > 1 {
        return Err(Failure::Usage("standard input can be read only once".into()));
    }
    let mut out = Vec::with_capacity(paths.len());
    for path in paths {
        let language = match lang {
            Some(l) => l,
            None => language_of(path).ok_or_else(|| {
                Failure::Usage(format!("cannot tell the language of `{path}`; pass --lang java|cpp|csharp|python"))
            })?,
        };
        let bytes = if path == "-" {
            let mut buf = Vec::new();
            stdin.read_to_end(&mut buf).map_err(|e| Failure::Io(format!("standard input: {e}")))?;
            buf
        } else {
            fs::read(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?
        };
        out.push(Input { name: path.to_string(), bytes, language });
    }
    Ok(out)
}

fn language_of(path: &str) -> Option<Language> {
    if path == "-" {
        return None;
    }
    Path::new(path).extension().and_then(|e| e.to_str()).and_then(Language::from_extension)
}

fn text_of(input: &Input) -> Result<&str, Failure> {
    decode(&input.bytes).map_err(|e| Failure::Transform(format!("{}: {e}", input.name)))
}

fn emit(o: &Options, stdout: &mut dyn Write, data: &[u8]) -> Result<(), Failure> {
    match &o.out {
        Some(path) => fs::write(path, data).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => stdout.write_all(data).and_then(|_| stdout.flush()).map_err(|e| Failure::Io(format!("standard output: {e}"))),
    }
}

#[derive(Serialize)]
struct TransformRecord<'a> {
    path: &'a str,
    language: &'static str,
    output: &'a str,
    bytes_before: usize,
    bytes_after: usize,
    tokenizer: String,
    tokens_before: usize,
    tokens_after: usize,
    reduction_pct: f64,
    clamped_options: &'a [&'static str],
    lex_flags: Vec<LexFlagRecord>,
}

#[derive(Serialize)]
struct LexFlagRecord {
    line: u32,
    col: u32,
    kind: String,
}

fn transform_cmd(
    o: &Options,
    dir: Direction,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), Failure> {
    let style = o.style.as_deref().map(StyleFile::load).transpose()?.unwrap_or_default();
    let tokenizer = if o.json { Some(load_tokenizer(&o.tokenizer)?) } else { None };
    let mut out = Vec::new();
    for input in inputs(&o.paths, o.lang, stdin)? {
        let text = text_of(&input)?;
        let lang = input.language;
        let result = match (dir, o.partial) {
            (Direction::Strip, false) => Ok(strip(text, lang, o.remove)),
            (Direction::Strip, true) => transform_partial(text, lang, PartialMode::Strip(o.remove)),
            (Direction::Restore, false) => restore(text, lang, style.profile(lang)),
            (Direction::Restore, true) => transform_partial(text, lang, PartialMode::Restore(style.profile(lang))),
        }
        .map_err(|e| Failure::Transform(format!("{}: {e}", input.name)))?;
        for flag in &result.lex_flags {
            let _ = writeln!(stderr, "warning: {}:{}:{}: unterminated {:?}", input.name, flag.line, flag.col, flag.kind);
        }
        for option in &result.clamped_options {
            let _ = writeln!(stderr, "note: {}: {option} does not apply to {lang}", input.name);
        }
        match &tokenizer {
            Some(t) => {
                out.extend(record_json(&input, text, &result, t).into_bytes());
                out.push(b'\n');
            }
            None => out.extend(result.output.as_bytes()),
        }
    }
    emit(o, stdout, &out)
}

fn record_json(input: &Input, text: &str, result: &TransformResult, tokenizer: &Tokenizer) -> String {
    let stats = reduction(text, &result.output, tokenizer);
    let record = TransformRecord {
        path: &input.name,
        language: input.language.name(),
        output: &result.output,
        bytes_before: result.bytes_before,
        bytes_after: result.bytes_after,
        tokenizer: tokenizer.name().to_string(),
        tokens_before: stats.tokens_before,
        tokens_after: stats.tokens_after,
        reduction_pct: stats.reduction_pct,
        clamped_options: &result.clamped_options,
        lex_flags: result
            .lex_flags
            .iter()
            .map(|f| LexFlagRecord { line: f.line, col: f.col, kind: format!("{:?}", f.kind) })
            .collect(),
    };
    serde_json::to_string(&record).expect("record serializes")
}

fn verify_cmd(o: &Options, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<(), Failure> {
    if o.paths.len() != 2 {
        return Err(Failure::Usage("verify takes exactly two inputs".into()));
    }
    let lang = o
        .lang
        .or_else(|| o.paths.iter().find_map(|p| language_of(p)))
        .ok_or_else(|| Failure::Usage("cannot tell the language; pass --lang java|cpp|csharp|python".into()))?;
    let inputs = inputs(&o.paths, Some(lang), stdin)?;
    let (a, b) = (text_of(&inputs[0])?, text_of(&inputs[1])?);
    let report = equivalent(a, b, lang);
    let text = if o.json {
        let d = report.first_divergence.as_ref();
        let value = serde_json::json!({
            "equivalent": report.equivalent,
            "compared_tokens": report.compared_tokens,
            "first_divergence": d.map(|d| serde_json::json!({
                "index": d.index,
                "left": d.left,
                "right": d.right,
                "left_pos": d.left_pos,
                "right_pos": d.right_pos,
            })),
        });
        format!("{value}\n")
    } else if report.equivalent {
        format!("equivalent ({} tokens)\n", report.compared_tokens)
    } else {
        let d = report.first_divergence.as_ref().expect("inequivalent reports carry a divergence");
        let side = |name: &str, tok: &Option<String>, pos: Option<(u32, u32)>| match (tok, pos) {
            (Some(t), Some((line, col))) => format!("{name}:{line}:{col}: {t:?}"),
            _ => format!("{name}: <end of input>"),
        };
        format!(
            "not equivalent at token {}\n  {}\n  {}\n",
            d.index,
            side(&inputs[0].name, &d.left, d.left_pos),
            side(&inputs[1].name, &d.right, d.right_pos)
        )
    };
    emit(o, stdout, text.as_bytes())?;
    if report.equivalent {
        Ok(())
    } else {
        Err(Failure::NotEquivalent)
    }
}

fn measure_cmd(o: &Options, stdout: &mut dyn Write) -> Result<(), Failure> {
    let root = match o.paths.as_slice() {
        [] => ".",
        [one] if one != "-" => one.as_str(),
        _ => return Err(Failure::Usage("measure takes one corpus directory".into())),
    };
    let style = o.style.as_deref().map(StyleFile::load).transpose()?.unwrap_or_default();
    let tokenizer = load_tokenizer(&o.tokenizer)?;
    let languages: Vec<Language> = o.lang.into_iter().collect();
    let opts = MeasureOptions {
        languages: &languages,
        config: o.remove,
        style,
        tokenizer: &tokenizer,
        tokenizer_name: &o.tokenizer.name(),
    };
    let report = measure_corpus(Path::new(root), &opts).map_err(|e| match e {
        CorpusError::EmptyCorpus(_) | CorpusError::Io { .. } => Failure::Io(e.to_string()),
        CorpusError::InconsistentAggregates(_) => Failure::Transform(e.to_string()),
    })?;
    let text = if o.json { report.to_json() } else { report.to_text() }.map_err(|e| Failure::Transform(e.to_string()))?;
    emit(o, stdout, text.as_bytes())
}

fn serve_cmd(o: ServeOptions) -> Result<(), Failure> {
    let upstream = std::env::var(UPSTREAM_ENV)
        .ok()
        .filter(|u| !u.trim().is_empty())
        .or(o.upstream)
        .ok_or_else(|| Failure::Usage(format!("no upstream; pass --upstream or set {UPSTREAM_ENV}")))?;
    if !(o.timeout.is_finite() && o.timeout > 0.0) {
        return Err(Failure::Usage("--timeout must be a positive number of seconds".into()));
    }
    let c = &o.common;
    let mut cfg = GatewayConfig::new(o.listen, upstream);
    cfg.code_region_mode = o.mode;
    if let Some(lang) = c.lang {
        cfg.language_default = lang;
    }
    cfg.config = c.remove;
    cfg.style = c.style.as_deref().map(StyleFile::load).transpose()?.unwrap_or_default();
    cfg.request_timeout = Duration::from_secs_f64(o.timeout);
    cfg.tokenizer = load_tokenizer(&c.tokenizer)?;
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
    runtime.block_on(gateway::serve(cfg)).map_err(|e| Failure::Io(format!("{}: {e}", o.listen)))
}

/// Process entry point: real standard streams, real exit code.
pub fn main_with_std() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remove_lists() {
        assert_eq!(parse_remove("indent,space,newline"), Ok(FormatConfig::all()));
        assert_eq!(parse_remove("space"), Ok(FormatConfig::only_whitespace()));
        assert_eq!(parse_remove(""), Ok(FormatConfig::none()));
        assert!(parse_remove("tabs").is_err());
    }

    #[test]
    fn extension_languages() {
        assert_eq!(language_of("a/B.java"), Some(Language::Java));
        assert_eq!(language_of("x.hpp"), Some(Language::Cpp));
        assert_eq!(language_of("-"), None);
        assert_eq!(language_of("README"), None);
    }
}
