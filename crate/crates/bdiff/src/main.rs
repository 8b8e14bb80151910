use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bdiff::config::parse_config_text;
use bdiff::line::dominant_terminator;
use bdiff::mutate;
use bdiff::render::html::render_html;
use bdiff::render::text::render_text;
use bdiff::script::render_json;
use bdiff::Config;

#[derive(Parser)]
#[command(name = "bdiff", version, about = "Block-aware text differencing", disable_version_flag = false)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the edit script between two text files
    Diff(DiffArgs),
    /// Run the mutation-based evaluation over a corpus directory
    Eval(EvalArgs),
    /// Print the version
    Version,
}

#[derive(Args)]
struct DiffArgs {
    /// Left (original) file
    left: PathBuf,
    /// Right (modified) file
    right: PathBuf,
    /// Base diff algorithm: myers or histogram
    #[arg(long)]
    algorithm: Option<String>,
    /// Columns per tab stop
    #[arg(long)]
    tab_size: Option<u32>,
    /// Context window radius in lines
    #[arg(long)]
    ctx_len: Option<u32>,
    /// Content-similarity weight in the combined line score
    #[arg(long)]
    line_weight: Option<f64>,
    /// Combined-similarity threshold for line updates
    #[arg(long)]
    sim_threshold: Option<f64>,
    /// Per-line similarity threshold inside blocks
    #[arg(long)]
    block_line_sim: Option<f64>,
    /// Maximum non-blank lines per split or merge
    #[arg(long)]
    max_split: Option<u32>,
    /// Minimum effective block-move length
    #[arg(long)]
    min_bm: Option<u32>,
    /// Minimum effective block-copy length
    #[arg(long)]
    min_bc: Option<u32>,
    /// Comma-separated stop words
    #[arg(long)]
    stop_words: Option<String>,
    /// Comma-separated action kinds to disable (e.g. BM,BC)
    #[arg(long)]
    disable: Option<String>,
    /// Output format
    #[arg(long, value_parser = ["json", "text", "html"], default_value = "text")]
    format: String,
    /// Write output to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with status 1 when the files differ (git convention)
    #[arg(long)]
    exit_code: bool,
}

#[derive(Args)]
struct EvalArgs {
    /// Directory of input files to mutate
    #[arg(long)]
    corpus: PathBuf,
    /// Number of mutation cases to run
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Random seed
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Directory receiving {left, right, truth.json} triples and report.json
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated action kinds to disable during mutation and diffing
    #[arg(long)]
    disable: Option<String>,
}

struct Failure {
    message: String,
}

impl Failure {
    fn new(message: impl Into<String>) -> Self {
        Failure {
            message: message.into(),
        }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure {
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Diff(args) => run_diff(args),
        Command::Eval(args) => run_eval(args),
        Command::Version => {
            println!("bdiff {}", env!("CARGO_PKG_VERSION"));
            Ok(0)
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("bdiff: {}", failure.message);
            ExitCode::from(2)
        }
    }
}

/// Base configuration: defaults, overridden by the file named in
/// BDIFF_CONFIG when set, overridden in turn by command-line flags.
fn base_config() -> Result<Config, Failure> {
    let mut cfg = Config::default();
    if let Ok(path) = std::env::var("BDIFF_CONFIG") {
        if !path.is_empty() {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::new(format!("cannot read BDIFF_CONFIG {path}: {e}")))?;
            parse_config_text(&text, &mut cfg)
                .map_err(|e| Failure::new(format!("BDIFF_CONFIG {path}: {e}")))?;
        }
    }
    Ok(cfg)
}

fn read_text_file(path: &Path) -> Result<String, Failure> {
    let bytes =
        fs::read(path).map_err(|e| Failure::new(format!("cannot read {}: {e}", path.display())))?;
    // same heuristic as git: a NUL byte near the front means binary
    if bytes.iter().take(8000).any(|&b| b == 0) {
        return Err(Failure::new(format!(
            "{} looks like a binary file (NUL byte found)",
            path.display()
        )));
    }
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn run_diff(args: DiffArgs) -> Result<u8, Failure> {
    let mut cfg = base_config()?;
    let flag_overrides: [(&str, Option<String>); 11] = [
        ("algorithm", args.algorithm.clone()),
        ("tab-size", args.tab_size.map(|v| v.to_string())),
        ("ctx-len", args.ctx_len.map(|v| v.to_string())),
        ("line-weight", args.line_weight.map(|v| v.to_string())),
        ("sim-threshold", args.sim_threshold.map(|v| v.to_string())),
        ("block-line-sim", args.block_line_sim.map(|v| v.to_string())),
        ("max-split", args.max_split.map(|v| v.to_string())),
        ("min-bm", args.min_bm.map(|v| v.to_string())),
        ("min-bc", args.min_bc.map(|v| v.to_string())),
        ("stop-words", args.stop_words.clone()),
        ("disable", args.disable.clone()),
    ];
    for (key, value) in flag_overrides {
        if let Some(v) = value {
            cfg.apply_kv(key, &v)?;
        }
    }
    cfg.validate()?;

    let left_text = read_text_file(&args.left)?;
    let right_text = read_text_file(&args.right)?;
    let result = bdiff::diff_lines(&left_text, &right_text, &cfg)
        .map_err(|e| Failure::new(format!("internal consistency failure: {e}")))?;
    let left_raws: Vec<String> = result.left.iter().map(|l| l.raw.clone()).collect();
    let right_raws: Vec<String> = result.right.iter().map(|l| l.raw.clone()).collect();
    let rendered = match args.format.as_str() {
        "json" => render_json(&result.script),
        "html" => render_html(&result.script, &left_raws, &right_raws),
        _ => render_text(&result.script, &left_raws, &right_raws),
    };
    match &args.out {
        Some(path) => fs::write(path, rendered.as_bytes())
            .map_err(|e| Failure::new(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    if args.exit_code && !result.script.actions.is_empty() {
        return Ok(1);
    }
    Ok(0)
}

fn run_eval(args: EvalArgs) -> Result<u8, Failure> {
    let mut cfg = base_config()?;
    if let Some(disable) = &args.disable {
        cfg.apply_kv("disable", disable)?;
    }
    cfg.validate()?;
    let mut entries: Vec<PathBuf> = fs::read_dir(&args.corpus)
        .map_err(|e| Failure::new(format!("cannot read corpus {}: {e}", args.corpus.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_file())
        .collect();
    entries.sort();
    let mut corpus = Vec::new();
    for path in entries {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().to_string())
            .unwrap_or_default();
        if name.starts_with('.') {
            continue;
        }
        if let Ok(text) = read_text_file(&path) {
            corpus.push((name, text));
        }
    }
    if corpus.is_empty() {
        return Err(Failure::new(format!(
            "corpus {} holds no readable text files",
            args.corpus.display()
        )));
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)
            .map_err(|e| Failure::new(format!("cannot create {}: {e}", dir.display())))?;
    }
    let out_dir = args.out.clone();
    let mut write_failure: Option<Failure> = None;
    let terminators: BTreeMap<String, &'static str> = corpus
        .iter()
        .map(|(name, text)| (name.clone(), dominant_terminator(text).as_str()))
        .collect();
    let report = mutate::run_eval(&corpus, args.cases, args.seed, &cfg, |case| {
        let Some(dir) = &out_dir else { return };
        if write_failure.is_some() {
            return;
        }
        // mixed terminators are normalized to the left version's dominant one
        let eol = terminators.get(&case.file_name).copied().unwrap_or("\n");
        let stem = dir.join(format!("case_{:05}", case.seed.wrapping_sub(args.seed)));
        let render = |lines: &[String]| -> String {
            lines.iter().map(|l| format!("{l}{eol}")).collect()
        };
        let left_text = render(&case.left);
        let right_text = render(&case.truth.right_version);
        let truth_json = render_json(&case.truth.es);
        for (suffix, body) in [
            ("left", left_text.as_str()),
            ("right", right_text.as_str()),
            ("truth.json", truth_json.as_str()),
        ] {
            let path = stem.with_extension(suffix);
            if let Err(e) = fs::write(&path, body.as_bytes()) {
                write_failure = Some(Failure::new(format!(
                    "cannot write {}: {e}",
                    path.display()
                )));
                return;
            }
        }
    });
    if let Some(failure) = write_failure {
        return Err(failure);
    }
    if let Some(dir) = &args.out {
        let path = dir.join("report.json");
        let body = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(&path, body)
            .map_err(|e| Failure::new(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{}", report.to_table());
    Ok(0)
}
