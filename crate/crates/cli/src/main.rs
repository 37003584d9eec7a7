//! `termgraph`: candidate extraction, concept scoring and evaluation over a
//! JSONL paper corpus.
//!
//! Exit codes: 0 success, 1 failure, 2 usage error, 3 unlabeled phrases in an
//! evaluation sample (the phrases are listed on stderr).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use termgraph::eval::EvalError;
use termgraph::scoring::{Method, ScoringError};

#[derive(Parser, Debug)]
#[command(name = "termgraph", version, about = "Concept extraction from scientific corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extract candidate phrases from paper titles.
    Candidates(CandidatesArgs),
    /// Score and rank candidate phrases.
    Score(ScoreArgs),
    /// Evaluate rankings against annotations.
    #[command(subcommand)]
    Eval(EvalCommand),
    /// Generate a synthetic corpus with ground-truth labels.
    Synth(SynthArgs),
    /// Validate a corpus file (and optionally a tagged interchange file).
    IngestCheck(IngestCheckArgs),
}

#[derive(Args, Debug, Clone)]
struct CorpusArgs {
    /// Corpus JSONL file.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Pre-tagged interchange JSONL used instead of the built-in tagger.
    #[arg(long)]
    tagged: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Copy)]
struct YearRange {
    /// First title year used for candidates.
    #[arg(long, default_value_t = 1999)]
    from_year: i32,
    /// Last title year used for candidates.
    #[arg(long, default_value_t = 2018)]
    to_year: i32,
}

#[derive(Args, Debug)]
struct CandidatesArgs {
    #[command(flatten)]
    input: CorpusArgs,
    #[command(flatten)]
    years: YearRange,
    /// Output file, one phrase per line. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScoreArgs {
    #[command(flatten)]
    input: CorpusArgs,
    #[command(flatten)]
    years: YearRange,
    /// Candidate file from `candidates`; extracted from the corpus when absent.
    #[arg(long)]
    candidates: Option<PathBuf>,
    /// Scoring method: forecite, cnlc or loor.
    #[arg(long, default_value = "forecite")]
    method: Method,
    /// Future term papers that must cite a paper before it is scored.
    #[arg(long, default_value_t = 3)]
    min_citations: usize,
    /// Future term papers sampled for the citation ratio.
    #[arg(long, default_value_t = 500)]
    sample_size: usize,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    /// Keep only the first N ranked phrases.
    #[arg(long)]
    top_n: Option<usize>,
    /// Ranked TSV output. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the built index to this file.
    #[arg(long)]
    save_index: Option<PathBuf>,
    /// Load a previously saved index instead of reading the corpus.
    #[arg(long, conflicts_with_all = ["corpus", "tagged", "save_index"])]
    load_index: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct AnnotationArgs {
    /// Annotation CSV (`phrase,label,annotator`).
    #[arg(long)]
    annotations: PathBuf,
    /// Annotator to use when the file holds several.
    #[arg(long)]
    annotator: Option<String>,
}

#[derive(Subcommand, Debug)]
enum EvalCommand {
    /// Sampled precision at one or more cutoffs.
    PAtK(PAtKArgs),
    /// Precision-yield curves and area over the curve.
    PyCurve(PyCurveArgs),
    /// Agreement between two annotators.
    Kappa(KappaArgs),
}

#[derive(Args, Debug)]
struct PAtKArgs {
    /// Ranked TSV; repeat to compare rankings (Fisher tests against the first).
    #[arg(long, required = true)]
    ranked: Vec<PathBuf>,
    #[command(flatten)]
    labels: AnnotationArgs,
    /// Cutoffs, comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1000, 10000])]
    k: Vec<usize>,
    /// Labeled sample size per cutoff; capped at k.
    #[arg(long, default_value_t = 100)]
    sample_size: usize,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    /// Metrics JSON output. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PyCurveArgs {
    /// Ranked TSV; repeat to compare rankings (area reductions against the first).
    #[arg(long, required = true)]
    ranked: Vec<PathBuf>,
    #[command(flatten)]
    labels: AnnotationArgs,
    /// Depth of each ranking covered by the curve.
    #[arg(long, default_value_t = 15000)]
    top_n: usize,
    /// Labeled sample size; equal to top-n for a census.
    #[arg(long, default_value_t = 300)]
    sample_size: usize,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    /// Directory receiving one `<ranked stem>.csv` curve per ranking.
    #[arg(long)]
    curves: Option<PathBuf>,
    /// SVG plot of all curves.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Metrics JSON output. Defaults to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct KappaArgs {
    #[arg(long)]
    annotations: PathBuf,
    /// The two annotators to compare.
    #[arg(long, num_args = 2, required = true)]
    annotator: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long, default_value_t = 20)]
    concepts: usize,
    #[arg(long, default_value_t = 20)]
    dense: usize,
    #[arg(long, default_value_t = 200)]
    background: usize,
    #[arg(long, default_value_t = 2000)]
    papers: usize,
    #[command(flatten)]
    years: YearRange,
    #[arg(long, default_value_t = 13)]
    seed: u64,
    /// Corpus JSONL output.
    #[arg(long)]
    out: PathBuf,
    /// Ground-truth annotation CSV output.
    #[arg(long)]
    truth: Option<PathBuf>,
    /// TSV of planted phrases with their role and central paper.
    #[arg(long)]
    planted: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct IngestCheckArgs {
    #[command(flatten)]
    input: CorpusArgs,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Exit with status 1 when anything was rejected or warned about.
    #[arg(long)]
    strict: bool,
}

/// A problem with how the command was invoked; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        match cause.downcast_ref::<EvalError>() {
            Some(EvalError::MissingLabels(_)) => return 3,
            Some(EvalError::InvalidArgument(_) | EvalError::Infeasible(_)) => return 2,
            _ => {}
        }
        if let Some(ScoringError::InvalidParams(_)) = cause.downcast_ref::<ScoringError>() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Candidates(args) => commands::candidates(args),
        Command::Score(args) => commands::score(args),
        Command::Eval(EvalCommand::PAtK(args)) => commands::p_at_k(args),
        Command::Eval(EvalCommand::PyCurve(args)) => commands::py_curve(args),
        Command::Eval(EvalCommand::Kappa(args)) => commands::kappa(args),
        Command::Synth(args) => commands::synth(args),
        Command::IngestCheck(args) => commands::ingest_check(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            if let Some(EvalError::MissingLabels(phrases)) = err.chain().find_map(|c| c.downcast_ref::<EvalError>()) {
                eprintln!("phrases to annotate:");
                for p in phrases {
                    eprintln!("{p}");
                }
            }
            ExitCode::from(exit_code(&err))
        }
    }
}
