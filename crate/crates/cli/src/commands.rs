use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use serde::Serialize;
use termgraph::corpus::{load_corpus, Corpus, IngestReport};
use termgraph::eval::{
    area_over_curve, cohens_kappa, fisher_exact, generate_synthetic_corpus, precision_at_k,
    precision_yield_curve, read_annotations, render_svg, write_annotations, write_curve_csv, Agreement,
    AnnotationSet, CurvePoint, EvalError, FisherResult, PrecisionAtK, SynthSpec,
};
use termgraph::index::{snapshot, Index};
use termgraph::scoring::{rank_concepts, read_ranked_tsv, write_ranked_tsv, ForeCiteParams};
use termgraph::textnorm::{
    extract_title_candidates_with, InterchangeTagger, PhraseKey, RuleTagger,
};
use termgraph::textnorm::interchange::TaggedIngestReport;

use crate::{
    AnnotationArgs, CandidatesArgs, CorpusArgs, IngestCheckArgs, KappaArgs, PAtKArgs, PyCurveArgs, ScoreArgs,
    SynthArgs, UsageError, YearRange,
};

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Buffered writer to a file, or stdout when no path is given.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut out = output(path)?;
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn check_years(years: YearRange) -> Result<()> {
    if years.from_year > years.to_year {
        return Err(usage(format!(
            "--from-year {} is after --to-year {}",
            years.from_year, years.to_year
        )));
    }
    Ok(())
}

struct Inputs {
    corpus: Corpus,
    report: IngestReport,
    tagged: Option<(InterchangeTagger, TaggedIngestReport)>,
}

fn load_inputs(args: &CorpusArgs) -> Result<Inputs> {
    let path = args.corpus.as_ref().ok_or_else(|| usage("--corpus is required"))?;
    let (corpus, report) = load_corpus(path).with_context(|| format!("reading corpus {}", path.display()))?;
    for r in &report.rejected {
        eprintln!("warning: {}:{}: {}", path.display(), r.line, r.reason);
    }
    let tagged = match &args.tagged {
        Some(t) => {
            let (tagger, treport) =
                InterchangeTagger::load(t).with_context(|| format!("reading tagged file {}", t.display()))?;
            for w in &treport.warnings {
                eprintln!("warning: {}:{}: {}", t.display(), w.line, w.message);
            }
            Some((tagger, treport))
        }
        None => None,
    };
    Ok(Inputs { corpus, report, tagged })
}

fn candidates_from(inputs: &Inputs, years: YearRange) -> BTreeSet<PhraseKey> {
    match &inputs.tagged {
        Some((tagger, _)) => extract_title_candidates_with(tagger, &inputs.corpus, years.from_year, years.to_year),
        None => extract_title_candidates_with(&RuleTagger, &inputs.corpus, years.from_year, years.to_year),
    }
}

pub fn candidates(args: CandidatesArgs) -> Result<ExitCode> {
    check_years(args.years)?;
    let inputs = load_inputs(&args.input)?;
    let found = candidates_from(&inputs, args.years);
    let mut out = output(args.out.as_deref())?;
    for key in &found {
        writeln!(out, "{key}")?;
    }
    out.flush()?;
    let summary = format!("{} candidates", found.len());
    if args.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(ExitCode::SUCCESS)
}

fn read_candidates(path: &Path) -> Result<Vec<PhraseKey>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading candidates {}", path.display()))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            PhraseKey::parse(l.trim()).with_context(|| format!("{}:{}: invalid phrase {l:?}", path.display(), i + 1))
        })
        .collect()
}

pub fn score(args: ScoreArgs) -> Result<ExitCode> {
    check_years(args.years)?;
    if args.sample_size == 0 {
        return Err(usage("--sample-size must be at least 1"));
    }
    let (index, extracted) = match &args.load_index {
        Some(path) => {
            let index = snapshot::load(path).with_context(|| format!("loading index {}", path.display()))?;
            (index, None)
        }
        None => {
            let inputs = load_inputs(&args.input)?;
            let cands: Vec<PhraseKey> = match &args.candidates {
                Some(p) => read_candidates(p)?,
                None => candidates_from(&inputs, args.years).into_iter().collect(),
            };
            let index = match &inputs.tagged {
                Some((tagger, _)) => Index::build_with(tagger, &inputs.corpus, &cands),
                None => Index::build_with(&RuleTagger, &inputs.corpus, &cands),
            };
            (index, Some(cands))
        }
    };
    if let Some(path) = &args.save_index {
        snapshot::save(&index, path).with_context(|| format!("saving index {}", path.display()))?;
    }
    let cands = match (extracted, &args.candidates) {
        (Some(c), _) => c,
        (None, Some(p)) => read_candidates(p)?,
        (None, None) => index.postings().iter().map(|(_, k, _)| k.clone()).collect(),
    };
    let params = ForeCiteParams {
        min_citations: args.min_citations,
        sample_size: args.sample_size,
        seed: args.seed,
    };
    let mut ranked = rank_concepts(args.method, &cands, &index, &params)?;
    if let Some(n) = args.top_n {
        ranked.truncate(n);
    }
    let mut out = output(args.out.as_deref())?;
    write_ranked_tsv(&ranked, &mut out)?;
    out.flush()?;
    eprintln!(
        "ranked {} of {} candidates with {}",
        ranked.len(),
        cands.len(),
        args.method
    );
    Ok(ExitCode::SUCCESS)
}

fn load_labels(args: &AnnotationArgs) -> Result<AnnotationSet> {
    let file = File::open(&args.annotations).with_context(|| format!("opening {}", args.annotations.display()))?;
    let mut sets = read_annotations(BufReader::new(file))
        .with_context(|| format!("reading annotations {}", args.annotations.display()))?;
    match &args.annotator {
        Some(name) => sets
            .remove(name)
            .ok_or_else(|| usage(format!("annotator {name:?} not found in {}", args.annotations.display()))),
        None if sets.len() <= 1 => Ok(sets.into_values().next().unwrap_or_default()),
        None => Err(usage(format!(
            "{} holds several annotators ({}); choose one with --annotator",
            args.annotations.display(),
            sets.keys().map(|k| format!("{k:?}")).collect::<Vec<_>>().join(", ")
        ))),
    }
}

fn read_ranking(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let rows = read_ranked_tsv(BufReader::new(file)).with_context(|| format!("reading ranking {}", path.display()))?;
    Ok(rows.into_iter().map(|r| r.phrase).collect())
}

/// Runs `f` for every item, collecting unlabeled phrases across all of them
/// so a single run reports everything that still needs annotating.
fn collect_missing<T, R>(items: impl IntoIterator<Item = T>, mut f: impl FnMut(T) -> Result<R, EvalError>) -> Result<Vec<R>> {
    let mut missing = BTreeSet::new();
    let mut out = Vec::new();
    for item in items {
        match f(item) {
            Ok(r) => out.push(r),
            Err(EvalError::MissingLabels(m)) => missing.extend(m),
            Err(e) => return Err(e.into()),
        }
    }
    if !missing.is_empty() {
        return Err(EvalError::MissingLabels(missing.into_iter().collect()).into());
    }
    Ok(out)
}

#[derive(Serialize)]
struct RankingPrecision {
    ranked: String,
    p_at_k: Vec<PrecisionAtK>,
}

#[derive(Serialize)]
struct FisherComparison {
    k: usize,
    baseline: String,
    other: String,
    #[serde(flatten)]
    result: FisherResult,
}

#[derive(Serialize)]
struct PAtKReport {
    rankings: Vec<RankingPrecision>,
    fisher: Vec<FisherComparison>,
}

pub fn p_at_k(args: PAtKArgs) -> Result<ExitCode> {
    if args.sample_size == 0 {
        return Err(usage("--sample-size must be at least 1"));
    }
    let labels = load_labels(&args.labels)?;
    let rankings: Vec<(String, Vec<String>)> = args
        .ranked
        .iter()
        .map(|p| Ok((p.display().to_string(), read_ranking(p)?)))
        .collect::<Result<_>>()?;
    // a cutoff deeper than a ranking is skipped for that ranking only
    let jobs: Vec<(usize, usize)> = (0..rankings.len())
        .flat_map(|r| args.k.iter().map(move |&k| (r, k)))
        .filter(|&(r, k)| {
            let (name, ranked) = &rankings[r];
            let fits = k > 0 && k <= ranked.len();
            if !fits {
                eprintln!("warning: skipping k = {k} for {name}, which has {} phrases", ranked.len());
            }
            fits
        })
        .collect();
    let results = collect_missing(jobs.iter().copied(), |(r, k)| {
        precision_at_k(&rankings[r].1, &labels, k, args.sample_size.min(k), args.seed)
    })?;

    let mut per_ranking: Vec<RankingPrecision> = rankings
        .iter()
        .map(|(name, _)| RankingPrecision {
            ranked: name.clone(),
            p_at_k: Vec::new(),
        })
        .collect();
    for (&(r, _), p) in jobs.iter().zip(results) {
        per_ranking[r].p_at_k.push(p);
    }
    let mut fisher = Vec::new();
    if let Some((base, rest)) = per_ranking.split_first() {
        for other in rest {
            for a in &base.p_at_k {
                let Some(b) = other.p_at_k.iter().find(|b| b.k == a.k) else { continue };
                let result = fisher_exact(
                    a.positives as u64,
                    (a.labeled - a.positives) as u64,
                    b.positives as u64,
                    (b.labeled - b.positives) as u64,
                )?;
                fisher.push(FisherComparison {
                    k: a.k,
                    baseline: base.ranked.clone(),
                    other: other.ranked.clone(),
                    result,
                });
            }
        }
    }
    write_json(
        &PAtKReport {
            rankings: per_ranking,
            fisher,
        },
        args.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CurveSummary {
    ranked: String,
    points: usize,
    final_yield: f64,
    aoc: f64,
}

#[derive(Serialize)]
struct AocReduction {
    baseline: String,
    other: String,
    /// Percent by which the first ranking's area is smaller than the other's.
    reduction_percent: f64,
}

#[derive(Serialize)]
struct PyCurveReport {
    top_n: usize,
    sample_size: usize,
    max_yield: f64,
    curves: Vec<CurveSummary>,
    reductions: Vec<AocReduction>,
}

fn curve_file(dir: &Path, ranked: &Path, used: &mut BTreeSet<PathBuf>) -> PathBuf {
    let stem = ranked
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "curve".into());
    let mut path = dir.join(format!("{stem}.csv"));
    let mut n = 2;
    while !used.insert(path.clone()) {
        path = dir.join(format!("{stem}-{n}.csv"));
        n += 1;
    }
    path
}

pub fn py_curve(args: PyCurveArgs) -> Result<ExitCode> {
    let labels = load_labels(&args.labels)?;
    let rankings: Vec<Vec<String>> = args.ranked.iter().map(|p| read_ranking(p)).collect::<Result<_>>()?;
    if args.sample_size == 0 || args.top_n == 0 {
        return Err(usage("--top-n and --sample-size must be at least 1"));
    }
    // a ranking shorter than --top-n is covered to its full depth
    let curves: Vec<Vec<CurvePoint>> = collect_missing(&rankings, |r| {
        let top_n = args.top_n.min(r.len());
        precision_yield_curve(r, &labels, top_n, args.sample_size.min(top_n), args.seed)
    })?;
    for (path, c) in args.ranked.iter().zip(&curves) {
        if c.is_empty() {
            return Err(EvalError::EmptyCurve).with_context(|| format!("{} has no labeled positives", path.display()));
        }
    }
    let max_yield = curves
        .iter()
        .filter_map(|c| c.last())
        .map(|p| p.yield_)
        .fold(0.0, f64::max);
    let summaries: Vec<CurveSummary> = args
        .ranked
        .iter()
        .zip(&curves)
        .map(|(path, c)| {
            Ok(CurveSummary {
                ranked: path.display().to_string(),
                points: c.len(),
                final_yield: c.last().map_or(0.0, |p| p.yield_),
                aoc: area_over_curve(c, max_yield)?,
            })
        })
        .collect::<Result<_, EvalError>>()?;

    let mut reductions = Vec::new();
    if let Some((base, rest)) = summaries.split_first() {
        for other in rest {
            let reduction_percent = if other.aoc > 0.0 {
                100.0 * (other.aoc - base.aoc) / other.aoc
            } else {
                0.0
            };
            println!(
                "area over curve: {} is {:.1}% lower than {}",
                base.ranked, reduction_percent, other.ranked
            );
            reductions.push(AocReduction {
                baseline: base.ranked.clone(),
                other: other.ranked.clone(),
                reduction_percent,
            });
        }
    }

    if let Some(dir) = &args.curves {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut used = BTreeSet::new();
        for (path, c) in args.ranked.iter().zip(&curves) {
            let target = curve_file(dir, path, &mut used);
            let file = File::create(&target).with_context(|| format!("cannot create {}", target.display()))?;
            let mut w = BufWriter::new(file);
            write_curve_csv(c, &mut w)?;
            w.flush()?;
        }
    }
    if let Some(svg) = &args.svg {
        let names: Vec<String> = args
            .ranked
            .iter()
            .map(|p| p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned()))
            .collect();
        let series: Vec<(&str, &[CurvePoint])> = names.iter().map(String::as_str).zip(curves.iter().map(Vec::as_slice)).collect();
        fs::write(svg, render_svg(&series)).with_context(|| format!("writing {}", svg.display()))?;
    }
    write_json(
        &PyCurveReport {
            top_n: args.top_n,
            sample_size: args.sample_size,
            max_yield,
            curves: summaries,
            reductions,
        },
        args.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct KappaReport<'a> {
    annotators: &'a [String],
    #[serde(flatten)]
    agreement: Agreement,
}

pub fn kappa(args: KappaArgs) -> Result<ExitCode> {
    let file = File::open(&args.annotations).with_context(|| format!("opening {}", args.annotations.display()))?;
    let mut sets: BTreeMap<String, AnnotationSet> = read_annotations(BufReader::new(file))?;
    let mut pick = |name: &str| {
        sets.remove(name)
            .ok_or_else(|| usage(format!("annotator {name:?} not found")))
    };
    let a = pick(&args.annotator[0])?;
    let b = pick(&args.annotator[1])?;
    let agreement = cohens_kappa(&a, &b)?;
    write_json(
        &KappaReport {
            annotators: &args.annotator,
            agreement,
        },
        args.out.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}

pub fn synth(args: SynthArgs) -> Result<ExitCode> {
    let spec = SynthSpec {
        concepts: args.concepts,
        dense: args.dense,
        background: args.background,
        papers: args.papers,
        from_year: args.years.from_year,
        to_year: args.years.to_year,
        seed: args.seed,
        ..SynthSpec::default()
    };
    let synth = generate_synthetic_corpus(&spec)?;
    let mut out = output(Some(&args.out))?;
    synth.corpus.write_jsonl(&mut out)?;
    out.flush()?;
    if let Some(path) = &args.truth {
        let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        write_annotations(&synth.truth, BufWriter::new(file))?;
    }
    if let Some(path) = &args.planted {
        let mut w = output(Some(path))?;
        writeln!(w, "phrase\trole\tcentral_paper")?;
        for c in &synth.concepts {
            writeln!(w, "{}\tconcept\t{}", c.phrase, c.central)?;
        }
        for d in &synth.dense {
            writeln!(w, "{d}\tdense\t-")?;
        }
        for b in &synth.background {
            writeln!(w, "{b}\tbackground\t-")?;
        }
        w.flush()?;
    }
    println!(
        "{} papers, {} concepts, {} dense, {} background",
        synth.corpus.len(),
        synth.concepts.len(),
        synth.dense.len(),
        synth.background.len()
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TaggedCheck<'a> {
    #[serde(flatten)]
    report: &'a TaggedIngestReport,
    missing_papers: Vec<String>,
    unknown_ids: Vec<String>,
}

#[derive(Serialize)]
struct IngestCheckReport<'a> {
    corpus: &'a IngestReport,
    tagged: Option<TaggedCheck<'a>>,
}

pub fn ingest_check(args: IngestCheckArgs) -> Result<ExitCode> {
    let inputs = load_inputs(&args.input)?;
    let tagged = inputs.tagged.as_ref().map(|(tagger, report)| {
        let (missing_papers, unknown_ids) = tagger.coverage(&inputs.corpus);
        TaggedCheck {
            report,
            missing_papers,
            unknown_ids,
        }
    });
    let warnings = inputs.report.warning_count()
        + tagged
            .as_ref()
            .map_or(0, |t| t.report.warnings.len() + t.missing_papers.len() + t.unknown_ids.len());
    if args.json {
        write_json(
            &IngestCheckReport {
                corpus: &inputs.report,
                tagged,
            },
            None,
        )?;
    } else {
        println!("{}", inputs.report);
        if let Some(t) = &tagged {
            println!("tagged lines:          {}", t.report.lines);
            println!("tagged accepted:       {}", t.report.accepted);
            println!("tagged warnings:       {}", t.report.warnings.len());
            println!("papers not tagged:     {}", t.missing_papers.len());
            println!("tagged ids not in corpus: {}", t.unknown_ids.len());
        }
        println!("total warnings:        {warnings}");
    }
    if args.strict && warnings > 0 {
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}
