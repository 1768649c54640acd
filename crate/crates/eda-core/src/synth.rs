//! Deterministic synthetic binary corpora with a matching synonym lexicon.
//!
//! Test and benchmark support: two balanced classes whose signal words come
//! in synonym groups, mixed with shared filler and stop words. Because the
//! lexicon maps each signal word to same-class siblings, augmentation is
//! label-preserving by construction, which makes the generated data a fair
//! desk-scale probe for the experiment drivers.

use crate::corpus::{Corpus, LabeledExample};
use crate::lexicon::SynonymLexicon;
use crate::rng::RngStream;
use crate::text::tokenize;

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub num_train: usize,
    pub num_test: usize,
    /// Synonym groups per class; each group's words are mutual synonyms.
    pub groups_per_class: usize,
    /// Words per synonym group (at most 26).
    pub variants_per_group: usize,
    /// Class-neutral filler words with no synonyms.
    pub shared_words: usize,
    /// Probability that a signal word is drawn from the opposite class,
    /// keeping accuracy away from the ceiling.
    pub confusion: f64,
    pub min_len: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            num_train: 6_000,
            num_test: 1_000,
            groups_per_class: 150,
            variants_per_group: 6,
            shared_words: 300,
            confusion: 0.25,
            min_len: 12,
            max_len: 22,
            seed: 20,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SynthData {
    pub train: Corpus,
    pub test: Corpus,
    pub lexicon: SynonymLexicon,
}

const CLASSES: [&str; 2] = ["pro", "con"];
const STOP_FILLER: [&str; 8] = ["the", "a", "of", "in", "is", "and", "to", "it"];
const STOP_PROB: f64 = 0.15;
const CLASS_PROB: f64 = 0.45;

fn class_word(class: &str, group: usize, variant: usize) -> String {
    let letter = (b'a' + variant as u8) as char;
    format!("{class}{group:03}{letter}")
}

fn other_class(class: &str) -> &'static str {
    if class == CLASSES[0] {
        CLASSES[1]
    } else {
        CLASSES[0]
    }
}

fn make_sentence(cfg: &SynthConfig, class: &str, rng: &mut RngStream) -> String {
    let len = cfg.min_len + rng.pick_index(cfg.max_len - cfg.min_len + 1);
    let mut words = Vec::with_capacity(len);
    for _ in 0..len {
        if rng.bernoulli(STOP_PROB) {
            words.push(STOP_FILLER[rng.pick_index(STOP_FILLER.len())].to_string());
        } else if rng.bernoulli(CLASS_PROB / (1.0 - STOP_PROB)) {
            let signal_class = if rng.bernoulli(cfg.confusion) {
                other_class(class)
            } else {
                class
            };
            let group = rng.pick_index(cfg.groups_per_class);
            let variant = rng.pick_index(cfg.variants_per_group);
            words.push(class_word(signal_class, group, variant));
        } else {
            words.push(format!("itm{:03}", rng.pick_index(cfg.shared_words)));
        }
    }
    words.join(" ")
}

fn make_split(cfg: &SynthConfig, count: usize, split_marker: u64) -> Corpus {
    let examples = (0..count)
        .map(|i| {
            let mut rng = RngStream::for_variant(cfg.seed, i as u64, split_marker);
            let label = CLASSES[i % 2];
            LabeledExample {
                label: label.to_string(),
                sentence: tokenize(&make_sentence(cfg, label, &mut rng)),
            }
        })
        .collect();
    Corpus::new(examples)
}

/// Generates balanced train/test splits and the synonym lexicon covering
/// every signal-word group. Identical configs yield identical data.
pub fn binary_corpus(cfg: &SynthConfig) -> SynthData {
    assert!(cfg.variants_per_group >= 1 && cfg.variants_per_group <= 26);
    assert!(cfg.min_len >= 1 && cfg.min_len <= cfg.max_len);
    let mut entries = Vec::new();
    for class in CLASSES {
        for group in 0..cfg.groups_per_class {
            for variant in 0..cfg.variants_per_group {
                let word = class_word(class, group, variant);
                let siblings = (0..cfg.variants_per_group)
                    .filter(|&v| v != variant)
                    .map(|v| class_word(class, group, v))
                    .collect();
                entries.push((word, siblings));
            }
        }
    }
    SynthData {
        train: make_split(cfg, cfg.num_train, 0),
        test: make_split(cfg, cfg.num_test, 1),
        lexicon: SynonymLexicon::from_entries(entries),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let cfg = SynthConfig {
            num_train: 50,
            num_test: 10,
            ..SynthConfig::default()
        };
        let a = binary_corpus(&cfg);
        let b = binary_corpus(&cfg);
        assert_eq!(a.train, b.train);
        assert_eq!(a.test, b.test);
        assert_eq!(a.lexicon, b.lexicon);
    }

    #[test]
    fn splits_are_balanced_and_sized() {
        let cfg = SynthConfig {
            num_train: 100,
            num_test: 40,
            ..SynthConfig::default()
        };
        let data = binary_corpus(&cfg);
        assert_eq!(data.train.len(), 100);
        assert_eq!(data.test.len(), 40);
        let stats = data.train.stats();
        assert_eq!(stats.num_classes, 2);
        let pros = data
            .train
            .examples()
            .iter()
            .filter(|e| e.label == "pro")
            .count();
        assert_eq!(pros, 50);
    }

    #[test]
    fn lexicon_groups_are_mutual_and_class_pure() {
        let cfg = SynthConfig::default();
        let data = binary_corpus(&cfg);
        let word = class_word("pro", 3, 0);
        let syns = data.lexicon.synonyms(&word);
        assert_eq!(syns.len(), cfg.variants_per_group - 1);
        for syn in syns {
            assert!(syn.starts_with("pro003"));
            assert!(data.lexicon.synonyms(syn).contains(&word));
        }
    }

    #[test]
    fn mean_length_tracks_configured_range() {
        let cfg = SynthConfig {
            num_train: 2_000,
            num_test: 0,
            min_len: 12,
            max_len: 22,
            ..SynthConfig::default()
        };
        let data = binary_corpus(&cfg);
        let mean = data.train.stats().mean_sentence_len;
        assert!((mean - 17.0).abs() < 0.5, "mean length {mean}");
    }
}
