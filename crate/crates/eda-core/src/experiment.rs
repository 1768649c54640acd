//! Experiment drivers: training-set sizing, per-operation alpha ablation,
//! and `n_aug` sweeps, each producing one accuracy row per grid cell.
//!
//! Baseline and augmented runs of the same `(subset size, seed)` cell share
//! the seed, so the subsample is identical and gains are paired. Cells are
//! independent and run in parallel; results are sorted before emission so
//! output never depends on scheduling.

use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;
use thiserror::Error;

use crate::augment::{AugmentError, AugmentOpKind, AugmentParams, OpPolicy};
use crate::classifier::{evaluate, train, ClassifierError};
use crate::corpus::{augment_corpus, subsample, subsample_stratified, Corpus, CorpusError};
use crate::lexicon::SynonymLexicon;
use crate::text::StopWordList;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Augment(#[from] AugmentError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
}

/// Whether a cell trains on the plain subset or on its augmented version.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RunMode {
    Baseline,
    Eda,
}

impl fmt::Display for RunMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunMode::Baseline => "baseline",
            RunMode::Eda => "eda",
        })
    }
}

/// Operation column of a result row: nothing for baseline cells, the policy
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpLabel {
    None,
    Uniform,
    Fixed(AugmentOpKind),
}

impl fmt::Display for OpLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpLabel::None => f.write_str("none"),
            OpLabel::Uniform => f.write_str("uniform"),
            OpLabel::Fixed(kind) => f.write_str(kind.label()),
        }
    }
}

/// One experiment cell: the dataset id, what ran, and the accuracy it got.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub dataset: String,
    pub mode: RunMode,
    pub op: OpLabel,
    pub alpha: f64,
    pub n_aug: usize,
    pub subset_size: usize,
    pub seed: u64,
    pub accuracy: f64,
}

/// Shared experiment grid settings.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    /// Dataset id echoed into every row; must not contain commas.
    pub dataset: String,
    /// Training subset sizes (absolute counts).
    pub sizes: Vec<usize>,
    /// One cell per seed; the seed drives both subsampling and augmentation.
    pub seeds: Vec<u64>,
    /// Modes run by the sizing experiment.
    pub modes: Vec<RunMode>,
    pub alpha: f64,
    pub n_aug: usize,
    /// Use the per-size recommended presets instead of `alpha`/`n_aug`.
    pub use_recommended: bool,
    /// Stratify subsamples by class instead of sampling uniformly.
    pub stratified: bool,
}

impl ExperimentConfig {
    pub fn new(dataset: impl Into<String>) -> Self {
        ExperimentConfig {
            dataset: dataset.into(),
            sizes: Vec::new(),
            seeds: vec![0, 1, 2, 3, 4],
            modes: vec![RunMode::Baseline, RunMode::Eda],
            alpha: 0.1,
            n_aug: 4,
            use_recommended: false,
            stratified: false,
        }
    }

    fn validate(&self, train_size: usize) -> Result<(), ExperimentError> {
        let invalid = |msg: String| Err(ExperimentError::InvalidConfig(msg));
        if self.dataset.is_empty() || self.dataset.contains(',') {
            return invalid(format!("bad dataset id '{}'", self.dataset));
        }
        if self.sizes.is_empty() {
            return invalid("no subset sizes given".into());
        }
        for &size in &self.sizes {
            if size == 0 {
                return invalid("subset size 0".into());
            }
            if size > train_size {
                return Err(CorpusError::SizeTooLarge {
                    requested: size,
                    available: train_size,
                }
                .into());
            }
        }
        if self.seeds.is_empty() {
            return invalid("no seeds given".into());
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return invalid(format!("alpha {} outside [0, 1]", self.alpha));
        }
        Ok(())
    }
}

/// Recommended `(alpha, n_aug)` presets by training-set size: `(0.05, 16)`
/// below 2,000 examples, `(0.05, 8)` below 5,000, `(0.1, 4)` otherwise.
/// Policy is uniform operation selection; the caller sets the seed.
pub fn recommended_params(n_train: usize) -> AugmentParams {
    let (alpha, n_aug) = if n_train < 2_000 {
        (0.05, 16)
    } else if n_train < 5_000 {
        (0.05, 8)
    } else {
        (0.1, 4)
    };
    AugmentParams::with_alpha(alpha, n_aug, 0)
}

struct CellSpec {
    mode: RunMode,
    op: OpLabel,
    alpha: f64,
    n_aug: usize,
    size: usize,
    seed: u64,
}

fn run_cell(
    train_corpus: &Corpus,
    test_corpus: &Corpus,
    cfg: &ExperimentConfig,
    lex: &SynonymLexicon,
    stops: &StopWordList,
    cell: &CellSpec,
) -> Result<RunResult, ExperimentError> {
    let subset = if cfg.stratified {
        subsample_stratified(train_corpus, cell.size, cell.seed)?
    } else {
        subsample(train_corpus, cell.size, cell.seed)?
    };
    let train_set = match cell.mode {
        RunMode::Baseline => subset,
        RunMode::Eda => {
            let mut params = AugmentParams::with_alpha(cell.alpha, cell.n_aug, cell.seed);
            params.policy = match cell.op {
                OpLabel::Fixed(kind) => OpPolicy::FixedOp(kind),
                _ => OpPolicy::UniformOne,
            };
            augment_corpus(&subset, &params, lex, stops)?
        }
    };
    let model = train(&train_set)?;
    let accuracy = evaluate(&model, test_corpus)?;
    Ok(RunResult {
        dataset: cfg.dataset.clone(),
        mode: cell.mode,
        op: cell.op,
        alpha: cell.alpha,
        n_aug: cell.n_aug,
        subset_size: cell.size,
        seed: cell.seed,
        accuracy,
    })
}

fn run_cells(
    train_corpus: &Corpus,
    test_corpus: &Corpus,
    cfg: &ExperimentConfig,
    lex: &SynonymLexicon,
    stops: &StopWordList,
    cells: Vec<CellSpec>,
) -> Result<Vec<RunResult>, ExperimentError> {
    cells
        .par_iter()
        .map(|cell| run_cell(train_corpus, test_corpus, cfg, lex, stops, cell))
        .collect()
}

fn eda_settings(cfg: &ExperimentConfig, size: usize) -> (f64, usize) {
    if cfg.use_recommended {
        let preset = recommended_params(size);
        (preset.alpha_sr, preset.n_aug)
    } else {
        (cfg.alpha, cfg.n_aug)
    }
}

/// Runs the training-set sizing grid: one cell per `(size, mode, seed)`.
/// Rows come back sorted by `(size, mode, seed)`.
pub fn run_sizing_experiment(
    train_corpus: &Corpus,
    test_corpus: &Corpus,
    cfg: &ExperimentConfig,
    lex: &SynonymLexicon,
    stops: &StopWordList,
) -> Result<Vec<RunResult>, ExperimentError> {
    cfg.validate(train_corpus.len())?;
    if cfg.modes.is_empty() {
        return Err(ExperimentError::InvalidConfig("no modes given".into()));
    }
    let mut cells = Vec::new();
    for &size in &cfg.sizes {
        for &mode in &cfg.modes {
            let (alpha, n_aug, op) = match mode {
                RunMode::Baseline => (0.0, 0, OpLabel::None),
                RunMode::Eda => {
                    let (alpha, n_aug) = eda_settings(cfg, size);
                    (alpha, n_aug, OpLabel::Uniform)
                }
            };
            for &seed in &cfg.seeds {
                cells.push(CellSpec {
                    mode,
                    op,
                    alpha,
                    n_aug,
                    size,
                    seed,
                });
            }
        }
    }
    let mut rows = run_cells(train_corpus, test_corpus, cfg, lex, stops, cells)?;
    rows.sort_by(|a, b| {
        (a.subset_size, a.mode, a.seed).cmp(&(b.subset_size, b.mode, b.seed))
    });
    Ok(rows)
}

/// Sweep output: the grid rows plus the paired baseline cells needed to
/// compute gains. Only `rows` belong in the results CSV.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub rows: Vec<RunResult>,
    pub baselines: Vec<RunResult>,
}

/// A sweep row's accuracy minus its `(size, seed)`-matched baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedGain {
    pub alpha: f64,
    pub n_aug: usize,
    pub subset_size: usize,
    pub seed: u64,
    pub gain: f64,
}

impl SweepResult {
    pub fn paired_gains(&self) -> Vec<PairedGain> {
        self.rows
            .iter()
            .map(|row| {
                let baseline = self
                    .baselines
                    .iter()
                    .find(|b| b.subset_size == row.subset_size && b.seed == row.seed)
                    .expect("every sweep cell has a matched baseline");
                PairedGain {
                    alpha: row.alpha,
                    n_aug: row.n_aug,
                    subset_size: row.subset_size,
                    seed: row.seed,
                    gain: row.accuracy - baseline.accuracy,
                }
            })
            .collect()
    }

    /// Mean gain over seeds for one grid point, selected by a predicate on
    /// the gains.
    pub fn mean_gain<F: Fn(&PairedGain) -> bool>(&self, select: F) -> f64 {
        let picked: Vec<f64> = self
            .paired_gains()
            .into_iter()
            .filter(|g| select(g))
            .map(|g| g.gain)
            .collect();
        debug_assert!(!picked.is_empty());
        picked.iter().sum::<f64>() / picked.len() as f64
    }
}

fn baseline_cells(cfg: &ExperimentConfig) -> Vec<CellSpec> {
    let mut cells = Vec::new();
    for &size in &cfg.sizes {
        for &seed in &cfg.seeds {
            cells.push(CellSpec {
                mode: RunMode::Baseline,
                op: OpLabel::None,
                alpha: 0.0,
                n_aug: 0,
                size,
                seed,
            });
        }
    }
    cells
}

/// Runs the per-operation alpha ablation: `FixedOp(op)` cells for every
/// `(alpha, size, seed)`, plus the matched baselines. Rows are sorted by
/// `(alpha, size, seed)`.
pub fn run_ablation_sweep(
    train_corpus: &Corpus,
    test_corpus: &Corpus,
    op: AugmentOpKind,
    alphas: &[f64],
    cfg: &ExperimentConfig,
    lex: &SynonymLexicon,
    stops: &StopWordList,
) -> Result<SweepResult, ExperimentError> {
    cfg.validate(train_corpus.len())?;
    if alphas.is_empty() {
        return Err(ExperimentError::InvalidConfig("no alpha values given".into()));
    }
    for &alpha in alphas {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(ExperimentError::InvalidConfig(format!(
                "alpha {alpha} outside [0, 1]"
            )));
        }
    }
    let mut cells = Vec::new();
    for &alpha in alphas {
        for &size in &cfg.sizes {
            for &seed in &cfg.seeds {
                cells.push(CellSpec {
                    mode: RunMode::Eda,
                    op: OpLabel::Fixed(op),
                    alpha,
                    n_aug: cfg.n_aug,
                    size,
                    seed,
                });
            }
        }
    }
    let mut rows = run_cells(train_corpus, test_corpus, cfg, lex, stops, cells)?;
    rows.sort_by(|a, b| {
        a.alpha
            .total_cmp(&b.alpha)
            .then((a.subset_size, a.seed).cmp(&(b.subset_size, b.seed)))
    });
    let mut baselines =
        run_cells(train_corpus, test_corpus, cfg, lex, stops, baseline_cells(cfg))?;
    baselines.sort_by_key(|r| (r.subset_size, r.seed));
    Ok(SweepResult { rows, baselines })
}

/// Runs the `n_aug` sweep with uniform operation selection: one cell per
/// `(n_aug value, size, seed)`, plus the matched baselines. Rows are sorted
/// by `(n_aug, size, seed)`.
pub fn run_naug_sweep(
    train_corpus: &Corpus,
    test_corpus: &Corpus,
    values: &[usize],
    cfg: &ExperimentConfig,
    lex: &SynonymLexicon,
    stops: &StopWordList,
) -> Result<SweepResult, ExperimentError> {
    cfg.validate(train_corpus.len())?;
    if values.is_empty() {
        return Err(ExperimentError::InvalidConfig("no n_aug values given".into()));
    }
    let mut cells = Vec::new();
    for &n_aug in values {
        for &size in &cfg.sizes {
            for &seed in &cfg.seeds {
                cells.push(CellSpec {
                    mode: RunMode::Eda,
                    op: OpLabel::Uniform,
                    alpha: cfg.alpha,
                    n_aug,
                    size,
                    seed,
                });
            }
        }
    }
    let mut rows = run_cells(train_corpus, test_corpus, cfg, lex, stops, cells)?;
    rows.sort_by_key(|r| (r.n_aug, r.subset_size, r.seed));
    let mut baselines =
        run_cells(train_corpus, test_corpus, cfg, lex, stops, baseline_cells(cfg))?;
    baselines.sort_by_key(|r| (r.subset_size, r.seed));
    Ok(SweepResult { rows, baselines })
}

pub const RESULTS_CSV_HEADER: &str = "dataset,mode,op,alpha,n_aug,subset_size,seed,accuracy";

/// Writes result rows as CSV: the documented header, one row per cell, LF
/// endings, accuracy with 6 decimal places.
pub fn write_results_csv<W: Write>(mut out: W, rows: &[RunResult]) -> io::Result<()> {
    writeln!(out, "{RESULTS_CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6}",
            row.dataset,
            row.mode,
            row.op,
            row.alpha,
            row.n_aug,
            row.subset_size,
            row.seed,
            row.accuracy
        )?;
    }
    Ok(())
}
