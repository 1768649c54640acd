//! Seeded, reproducible EDA text augmentation.
//!
//! The crate implements the four classic EDA edit operations — synonym
//! replacement, random insertion, random swap, and random deletion — on
//! lowercase word-token sentences, together with:
//!
//! * a synonym lexicon compiled from raw WordNet 3.x database files and
//!   stored as a portable TSV ([`lexicon`]),
//! * deterministic per-sentence random streams so corpus-level augmentation
//!   is byte-identical regardless of parallelism ([`rng`]),
//! * a labeled-corpus model with subsampling and corpus-level augmentation
//!   ([`corpus`]),
//! * a multinomial naive-Bayes bag-of-words classifier ([`classifier`]), and
//! * experiment drivers for training-set sizing, per-operation alpha
//!   ablations, and `n_aug` sweeps, emitting CSV rows ([`experiment`]).

pub mod augment;
pub mod classifier;
pub mod corpus;
pub mod experiment;
pub mod lexicon;
pub mod rng;
pub mod synth;
pub mod text;

pub use augment::{
    augment_sentence, compute_n, random_deletion, random_insertion, random_swap,
    synonym_replacement, AugmentError, AugmentOpKind, AugmentParams, OpPolicy,
};
pub use classifier::{evaluate, train, BowModel, ClassifierError};
pub use corpus::{
    augment_corpus, load_corpus, subsample, subsample_stratified, Corpus, CorpusError,
    CorpusStats, LabeledExample,
};
pub use experiment::{
    recommended_params, run_ablation_sweep, run_naug_sweep, run_sizing_experiment,
    write_results_csv, ExperimentConfig, ExperimentError, OpLabel, RunMode, RunResult,
    SweepResult,
};
pub use lexicon::{build_from_wordnet, LexiconError, SynonymLexicon, WordNetSource};
pub use rng::RngStream;
pub use text::{tokenize, Sentence, StopWordList, Token};
