//! Harness-level behavior on deterministic synthetic data: grid shapes,
//! paired gains, and the qualitative directions the sweeps are built to
//! surface (augmentation helps most on small training sets; heavy deletion
//! helps less than light deletion).

use eda_core::corpus::augment_corpus;
use eda_core::experiment::{
    run_ablation_sweep, run_naug_sweep, run_sizing_experiment, ExperimentConfig, RunMode,
};
use eda_core::synth::{binary_corpus, SynthConfig, SynthData};
use eda_core::text::StopWordList;
use eda_core::{AugmentOpKind, AugmentParams, OpPolicy};

fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let v: Vec<f64> = values.into_iter().collect();
    v.iter().sum::<f64>() / v.len() as f64
}

fn default_data() -> SynthData {
    binary_corpus(&SynthConfig::default())
}

fn small_data() -> SynthData {
    binary_corpus(&SynthConfig {
        num_train: 400,
        num_test: 100,
        groups_per_class: 40,
        variants_per_group: 4,
        shared_words: 80,
        min_len: 6,
        max_len: 12,
        ..SynthConfig::default()
    })
}

#[test]
fn sizing_grid_matches_table_shape_and_direction() {
    let data = default_data();
    let stops = StopWordList::default_english();
    let full = data.train.len();
    let mut cfg = ExperimentConfig::new("synth");
    cfg.sizes = vec![500, 2_000, 5_000, full];
    cfg.seeds = vec![0, 1, 2, 3, 4];
    cfg.use_recommended = true;
    let rows =
        run_sizing_experiment(&data.train, &data.test, &cfg, &data.lexicon, &stops).unwrap();
    // 4 sizes x 2 modes x 5 seeds.
    assert_eq!(rows.len(), 40);

    let avg = |size: usize, mode: RunMode| {
        mean(
            rows.iter()
                .filter(|r| r.subset_size == size && r.mode == mode)
                .map(|r| r.accuracy),
        )
    };
    // Augmentation should not hurt at the small end; direction only.
    assert!(avg(500, RunMode::Eda) >= avg(500, RunMode::Baseline));
    // Learning curves rise with more data.
    assert!(avg(full, RunMode::Baseline) > avg(500, RunMode::Baseline));
}

#[test]
fn ablation_grid_emits_six_by_sizes_by_seeds_rows() {
    let data = small_data();
    let stops = StopWordList::default_english();
    let mut cfg = ExperimentConfig::new("synth");
    cfg.sizes = vec![80, 160, 240, 320];
    cfg.seeds = vec![0, 1, 2, 3, 4];
    cfg.n_aug = 2;
    let alphas = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5];
    let sweep = run_ablation_sweep(
        &data.train,
        &data.test,
        AugmentOpKind::Sr,
        &alphas,
        &cfg,
        &data.lexicon,
        &stops,
    )
    .unwrap();
    assert_eq!(sweep.rows.len(), 6 * 4 * 5);
    assert_eq!(sweep.baselines.len(), 4 * 5);
    assert!(sweep.rows.iter().all(|r| r.op.to_string() == "sr"));
}

#[test]
fn rd_ablation_heavy_deletion_gains_less_than_light() {
    let data = default_data();
    let stops = StopWordList::default_english();
    let mut cfg = ExperimentConfig::new("synth");
    cfg.sizes = vec![500];
    cfg.seeds = vec![0, 1, 2, 3, 4];
    cfg.n_aug = 4;
    let sweep = run_ablation_sweep(
        &data.train,
        &data.test,
        AugmentOpKind::Rd,
        &[0.1, 0.5],
        &cfg,
        &data.lexicon,
        &stops,
    )
    .unwrap();
    let light = sweep.mean_gain(|g| g.alpha == 0.1);
    let heavy = sweep.mean_gain(|g| g.alpha == 0.5);
    assert!(
        light > heavy,
        "expected milder deletion to gain more: alpha=0.1 {light:+.4} vs alpha=0.5 {heavy:+.4}"
    );
}

#[test]
fn rd_with_zero_probability_only_duplicates() {
    // p = 0 deletes nothing, so every variant equals its original. The
    // accuracy effect of plain duplication is checked at full size, where
    // smoothing differences are negligible.
    let data = default_data();
    let stops = StopWordList::default_english();

    let mut params = AugmentParams::with_alpha(0.0, 3, 9);
    params.policy = OpPolicy::FixedOp(AugmentOpKind::Rd);
    let augmented = augment_corpus(&data.test, &params, &data.lexicon, &stops).unwrap();
    let n = data.test.len();
    for (i, variant) in augmented.examples()[n..].iter().enumerate() {
        assert_eq!(variant, &data.test.examples()[i / 3]);
    }

    let full = data.train.len();
    let mut cfg = ExperimentConfig::new("synth");
    cfg.sizes = vec![full];
    cfg.seeds = vec![0, 1, 2, 3, 4];
    cfg.n_aug = 4;
    let sweep = run_ablation_sweep(
        &data.train,
        &data.test,
        AugmentOpKind::Rd,
        &[0.0],
        &cfg,
        &data.lexicon,
        &stops,
    )
    .unwrap();
    let gain = sweep.mean_gain(|g| g.alpha == 0.0);
    assert!(gain.abs() <= 0.005, "duplication-only gain {gain:+.4}");
}

#[test]
fn naug_grid_emits_six_by_sizes_by_seeds_rows() {
    let data = small_data();
    let stops = StopWordList::default_english();
    let mut cfg = ExperimentConfig::new("synth");
    cfg.sizes = vec![100, 300];
    cfg.seeds = vec![0, 1, 2, 3, 4];
    cfg.alpha = 0.05;
    let sweep = run_naug_sweep(
        &data.train,
        &data.test,
        &[1, 2, 4, 8, 16, 32],
        &cfg,
        &data.lexicon,
        &stops,
    )
    .unwrap();
    assert_eq!(sweep.rows.len(), 6 * 2 * 5);
    assert_eq!(sweep.baselines.len(), 2 * 5);
}

#[test]
fn naug_gain_is_larger_on_small_training_sets() {
    let data = default_data();
    let stops = StopWordList::default_english();
    let full = data.train.len();
    let mut cfg = ExperimentConfig::new("synth");
    cfg.sizes = vec![500, full];
    cfg.seeds = vec![0, 1, 2, 3, 4];
    cfg.alpha = 0.05;
    let sweep =
        run_naug_sweep(&data.train, &data.test, &[16], &cfg, &data.lexicon, &stops).unwrap();
    let small = sweep.mean_gain(|g| g.subset_size == 500);
    let large = sweep.mean_gain(|g| g.subset_size == full);
    assert!(
        small > large,
        "expected n_aug=16 to help more at 500 ({small:+.4}) than at {full} ({large:+.4})"
    );
}
