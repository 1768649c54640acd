//! The `eda` command-line tool: corpus augmentation, lexicon building from
//! raw WordNet files, corpus statistics, and the sizing / ablation / n_aug
//! experiment drivers.
//!
//! Every subcommand is deterministic given its flags and inputs, validates
//! flags before doing any work, and writes output files atomically (temp
//! file plus rename), so failed runs never leave partial output behind.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use eda_core::corpus::{augment_corpus, load_corpus, Corpus};
use eda_core::experiment::{
    run_ablation_sweep, run_naug_sweep, run_sizing_experiment, write_results_csv,
    ExperimentConfig, RunMode, RunResult, SweepResult,
};
use eda_core::lexicon::{build_from_wordnet, SynonymLexicon, WordNetSource};
use eda_core::text::StopWordList;
use eda_core::{AugmentOpKind, AugmentParams, OpPolicy};

#[derive(Parser)]
#[command(
    name = "eda",
    version,
    about = "Seeded EDA text augmentation and desk-scale experiment harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Augment a labeled corpus file with n_aug variants per example.
    Augment(AugmentArgs),
    /// Synonym lexicon utilities.
    Lexicon {
        #[command(subcommand)]
        command: LexiconCommand,
    },
    /// Print summary statistics for a corpus file.
    Stats {
        /// Corpus file (`<label>\t<text>` per line).
        #[arg(long)]
        input: PathBuf,
    },
    /// Run the training-set sizing experiment and write a results CSV.
    Experiment(ExperimentArgs),
    /// Run parameter sweeps and write a results CSV.
    Sweep {
        #[command(subcommand)]
        command: SweepCommand,
    },
}

#[derive(Subcommand)]
enum LexiconCommand {
    /// Compile a synonym lexicon TSV from raw WordNet 3.x database files.
    Build {
        /// Directory holding index.{noun,verb,adj,adv} and data.{...}.
        #[arg(long)]
        wordnet_dir: PathBuf,
        /// Output TSV path.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct AugmentArgs {
    /// Input corpus (`<label>\t<text>` per line).
    #[arg(long)]
    input: PathBuf,
    /// Output corpus path.
    #[arg(long)]
    output: PathBuf,
    /// Synonym lexicon TSV.
    #[arg(long)]
    lexicon: PathBuf,
    /// Edit fraction per operation (also the deletion probability).
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    /// Augmented variants per example.
    #[arg(long = "n-aug", default_value_t = 4)]
    n_aug: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Operation selection: uniform, sr, ri, rs, or rd.
    #[arg(long, default_value = "uniform")]
    op: String,
    /// Stop-word file overriding the embedded English list.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Worker threads (0 = automatic).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct CommonExperimentArgs {
    /// Training corpus.
    #[arg(long)]
    train: PathBuf,
    /// Held-out test corpus (never subsampled or augmented).
    #[arg(long)]
    test: PathBuf,
    /// Synonym lexicon TSV.
    #[arg(long)]
    lexicon: PathBuf,
    /// Results CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Dataset id echoed into the CSV (default: train file stem).
    #[arg(long)]
    dataset: Option<String>,
    /// Training subset sizes: counts or `all` (default: all).
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<String>>,
    /// Training subset sizes as percents of the full set (1-100).
    #[arg(long, value_delimiter = ',', conflicts_with = "sizes")]
    percents: Option<Vec<u32>>,
    /// One run per seed; seeds drive subsampling and augmentation.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3,4")]
    seeds: Vec<u64>,
    /// Stratify subsamples by class.
    #[arg(long)]
    stratified: bool,
    /// Stop-word file overriding the embedded English list.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Worker threads (0 = automatic).
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    common: CommonExperimentArgs,
    /// baseline, eda, or both.
    #[arg(long, default_value = "both")]
    mode: String,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[arg(long = "n-aug", default_value_t = 4)]
    n_aug: usize,
    /// Use the per-size recommended presets instead of --alpha/--n-aug.
    #[arg(long)]
    recommended: bool,
}

#[derive(Subcommand)]
enum SweepCommand {
    /// Isolate one operation and sweep its alpha grid.
    Op(SweepOpArgs),
    /// Sweep the number of augmented sentences per original.
    Naug(SweepNaugArgs),
}

#[derive(Args)]
struct SweepOpArgs {
    /// Operation to isolate: sr, ri, rs, or rd.
    #[arg(value_name = "OP")]
    op: String,
    #[arg(long, value_delimiter = ',', default_value = "0.05,0.1,0.2,0.3,0.4,0.5")]
    alphas: Vec<f64>,
    #[arg(long = "n-aug", default_value_t = 4)]
    n_aug: usize,
    #[command(flatten)]
    common: CommonExperimentArgs,
}

#[derive(Args)]
struct SweepNaugArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2,4,8,16,32")]
    values: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    alpha: f64,
    #[command(flatten)]
    common: CommonExperimentArgs,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Augment(args) => cmd_augment(args),
        Command::Lexicon {
            command: LexiconCommand::Build { wordnet_dir, out },
        } => cmd_lexicon_build(&wordnet_dir, &out),
        Command::Stats { input } => cmd_stats(&input),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Sweep { command } => match command {
            SweepCommand::Op(args) => cmd_sweep_op(args),
            SweepCommand::Naug(args) => cmd_sweep_naug(args),
        },
    }
}

fn parse_policy(op: &str) -> Result<OpPolicy> {
    if op == "uniform" {
        return Ok(OpPolicy::UniformOne);
    }
    match AugmentOpKind::parse(op) {
        Some(kind) => Ok(OpPolicy::FixedOp(kind)),
        None => bail!("unknown operation '{op}' (expected uniform, sr, ri, rs, or rd)"),
    }
}

fn parse_op(op: &str) -> Result<AugmentOpKind> {
    AugmentOpKind::parse(op)
        .with_context(|| format!("unknown operation '{op}' (expected sr, ri, rs, or rd)"))
}

fn check_fraction(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || value.is_nan() {
        bail!("--{name} {value} is outside [0, 1]");
    }
    Ok(())
}

fn configure_threads(threads: usize) -> Result<()> {
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("failed to configure worker threads")?;
    }
    Ok(())
}

fn load_stopwords(path: &Option<PathBuf>) -> Result<StopWordList> {
    match path {
        Some(p) => StopWordList::from_path(p)
            .with_context(|| format!("failed to read stop-word file {}", p.display())),
        None => Ok(StopWordList::default_english()),
    }
}

/// Writes through a temp file in the target directory and renames on
/// success, so no partial output survives an error.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("failed to create temp file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())
        .context("failed to write output")?;
    tmp.persist(path)
        .with_context(|| format!("failed to move output into place at {}", path.display()))?;
    Ok(())
}

fn cmd_augment(args: AugmentArgs) -> Result<()> {
    check_fraction("alpha", args.alpha)?;
    let policy = parse_policy(&args.op)?;
    configure_threads(args.threads)?;
    let stops = load_stopwords(&args.stopwords)?;
    let lexicon = SynonymLexicon::load_tsv(&args.lexicon)?;
    let corpus = load_corpus(&args.input)?;

    let mut params = AugmentParams::with_alpha(args.alpha, args.n_aug, args.seed);
    params.policy = policy;
    let augmented = augment_corpus(&corpus, &params, &lexicon, &stops)?;
    write_atomic(&args.output, &augmented.to_file_string())?;
    println!("read {}, wrote {}", corpus.len(), augmented.len());
    Ok(())
}

fn cmd_lexicon_build(wordnet_dir: &Path, out: &Path) -> Result<()> {
    let src = WordNetSource::new(wordnet_dir)?;
    let lexicon = build_from_wordnet(&src)?;
    write_atomic(out, &lexicon.to_tsv())?;
    println!("wrote {} entries to {}", lexicon.len(), out.display());
    Ok(())
}

fn cmd_stats(input: &Path) -> Result<()> {
    let corpus = load_corpus(input)?;
    let stats = corpus.stats();
    println!("examples        {}", stats.num_examples);
    println!("classes         {}", stats.num_classes);
    println!("mean length     {:.2}", stats.mean_sentence_len);
    println!("vocabulary      {}", stats.vocab_size);
    Ok(())
}

struct LoadedData {
    train: Corpus,
    test: Corpus,
    lexicon: SynonymLexicon,
    stops: StopWordList,
    dataset: String,
    sizes: Vec<usize>,
}

fn load_experiment_data(common: &CommonExperimentArgs) -> Result<LoadedData> {
    configure_threads(common.threads)?;
    let stops = load_stopwords(&common.stopwords)?;
    let lexicon = SynonymLexicon::load_tsv(&common.lexicon)?;
    let train = load_corpus(&common.train)?;
    let test = load_corpus(&common.test)?;

    let dataset = match &common.dataset {
        Some(name) => name.clone(),
        None => common
            .train
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".to_string()),
    };
    if dataset.is_empty() || dataset.contains(',') {
        bail!("dataset id '{dataset}' must be non-empty and comma-free");
    }

    let full = train.len();
    let sizes = resolve_sizes(common, full)?;
    Ok(LoadedData {
        train,
        test,
        lexicon,
        stops,
        dataset,
        sizes,
    })
}

fn resolve_sizes(common: &CommonExperimentArgs, full: usize) -> Result<Vec<usize>> {
    if let Some(percents) = &common.percents {
        let mut sizes = Vec::with_capacity(percents.len());
        for &p in percents {
            if !(1..=100).contains(&p) {
                bail!("--percents entries must be in 1..=100, got {p}");
            }
            sizes.push(((full * p as usize) / 100).max(1));
        }
        return Ok(sizes);
    }
    let tokens = common
        .sizes
        .clone()
        .unwrap_or_else(|| vec!["all".to_string()]);
    let mut sizes = Vec::with_capacity(tokens.len());
    for token in tokens {
        if token == "all" {
            sizes.push(full);
        } else {
            let size: usize = token
                .parse()
                .with_context(|| format!("bad subset size '{token}'"))?;
            sizes.push(size);
        }
    }
    Ok(sizes)
}

fn parse_modes(mode: &str) -> Result<Vec<RunMode>> {
    match mode {
        "baseline" => Ok(vec![RunMode::Baseline]),
        "eda" => Ok(vec![RunMode::Eda]),
        "both" => Ok(vec![RunMode::Baseline, RunMode::Eda]),
        other => bail!("unknown mode '{other}' (expected baseline, eda, or both)"),
    }
}

fn mean_and_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() < 2 {
        0.0
    } else {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    (mean, std)
}

fn print_accuracy_table(rows: &[RunResult]) {
    println!("{:<10} {:<10} {:>10} {:>10}", "size", "mode", "mean", "std");
    let mut groups: Vec<(usize, RunMode)> = rows.iter().map(|r| (r.subset_size, r.mode)).collect();
    groups.dedup();
    for (size, mode) in groups {
        let accs: Vec<f64> = rows
            .iter()
            .filter(|r| r.subset_size == size && r.mode == mode)
            .map(|r| r.accuracy)
            .collect();
        let (mean, std) = mean_and_std(&accs);
        let mode = mode.to_string();
        println!("{size:<10} {mode:<10} {mean:>10.6} {std:>10.6}");
    }
}

fn print_gain_table(label: &str, sweep: &SweepResult, key: impl Fn(&RunResult) -> String) {
    println!(
        "{:<10} {:<10} {:>10} {:>10} {:>11}",
        label, "size", "mean", "std", "mean_gain"
    );
    let gains = sweep.paired_gains();
    let mut groups: Vec<(String, usize)> = sweep
        .rows
        .iter()
        .map(|r| (key(r), r.subset_size))
        .collect();
    groups.dedup();
    for (value, size) in groups {
        let accs: Vec<f64> = sweep
            .rows
            .iter()
            .filter(|r| key(r) == value && r.subset_size == size)
            .map(|r| r.accuracy)
            .collect();
        let cell_gains: Vec<f64> = sweep
            .rows
            .iter()
            .zip(&gains)
            .filter(|(r, _)| key(r) == value && r.subset_size == size)
            .map(|(_, g)| g.gain)
            .collect();
        let (mean, std) = mean_and_std(&accs);
        let (mean_gain, _) = mean_and_std(&cell_gains);
        println!("{value:<10} {size:<10} {mean:>10.6} {std:>10.6} {mean_gain:>+11.6}");
    }
}

fn write_rows(out: &Path, rows: &[RunResult]) -> Result<()> {
    let mut buf = Vec::new();
    write_results_csv(&mut buf, rows)?;
    write_atomic(out, std::str::from_utf8(&buf).expect("CSV is UTF-8"))?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(())
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    check_fraction("alpha", args.alpha)?;
    let modes = parse_modes(&args.mode)?;
    let data = load_experiment_data(&args.common)?;

    let mut cfg = ExperimentConfig::new(data.dataset.clone());
    cfg.sizes = data.sizes.clone();
    cfg.seeds = args.common.seeds.clone();
    cfg.modes = modes;
    cfg.alpha = args.alpha;
    cfg.n_aug = args.n_aug;
    cfg.use_recommended = args.recommended;
    cfg.stratified = args.common.stratified;

    let rows = run_sizing_experiment(&data.train, &data.test, &cfg, &data.lexicon, &data.stops)?;
    print_accuracy_table(&rows);
    write_rows(&args.common.out, &rows)
}

fn cmd_sweep_op(args: SweepOpArgs) -> Result<()> {
    let op = parse_op(&args.op)?;
    for &alpha in &args.alphas {
        check_fraction("alphas", alpha)?;
    }
    let data = load_experiment_data(&args.common)?;

    let mut cfg = ExperimentConfig::new(data.dataset.clone());
    cfg.sizes = data.sizes.clone();
    cfg.seeds = args.common.seeds.clone();
    cfg.n_aug = args.n_aug;
    cfg.stratified = args.common.stratified;

    let sweep = run_ablation_sweep(
        &data.train,
        &data.test,
        op,
        &args.alphas,
        &cfg,
        &data.lexicon,
        &data.stops,
    )?;
    print_gain_table("alpha", &sweep, |r| format!("{}", r.alpha));
    write_rows(&args.common.out, &sweep.rows)
}

fn cmd_sweep_naug(args: SweepNaugArgs) -> Result<()> {
    check_fraction("alpha", args.alpha)?;
    let data = load_experiment_data(&args.common)?;

    let mut cfg = ExperimentConfig::new(data.dataset.clone());
    cfg.sizes = data.sizes.clone();
    cfg.seeds = args.common.seeds.clone();
    cfg.alpha = args.alpha;
    cfg.stratified = args.common.stratified;

    let sweep = run_naug_sweep(
        &data.train,
        &data.test,
        &args.values,
        &cfg,
        &data.lexicon,
        &data.stops,
    )?;
    print_gain_table("n_aug", &sweep, |r| r.n_aug.to_string());
    write_rows(&args.common.out, &sweep.rows)
}
