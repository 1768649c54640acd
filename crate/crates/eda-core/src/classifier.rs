//! Multinomial naive Bayes over unigram counts with add-one smoothing.
//!
//! Deliberately small and fully deterministic: training is pure counting,
//! likelihoods live in log space, and prediction breaks ties toward the
//! lexicographically first class label.

use std::collections::HashMap;

use thiserror::Error;

use crate::corpus::Corpus;
use crate::text::Sentence;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    #[error("training corpus must contain at least 2 classes")]
    SingleClassCorpus,
    #[error("evaluation corpus is empty")]
    EmptyTestCorpus,
}

/// Trained bag-of-words model: per-class log-priors plus per-class,
/// per-token smoothed log-likelihoods over the training vocabulary.
#[derive(Debug, Clone)]
pub struct BowModel {
    classes: Vec<String>,
    log_priors: Vec<f64>,
    vocab: HashMap<String, usize>,
    /// Indexed `[class][vocab index]`.
    log_likelihoods: Vec<Vec<f64>>,
    /// Smoothed log-likelihood for tokens unseen in training, per class.
    unseen_log_likelihood: Vec<f64>,
}

impl BowModel {
    /// Class labels in sorted order.
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab.len()
    }

    /// The smoothed probability of `token` given `class_index`, linear scale.
    pub fn token_probability(&self, class_index: usize, token: &str) -> f64 {
        match self.vocab.get(token) {
            Some(&v) => self.log_likelihoods[class_index][v].exp(),
            None => self.unseen_log_likelihood[class_index].exp(),
        }
    }

    /// Joint log-score of a sentence under a class.
    fn score(&self, class_index: usize, sentence: &Sentence) -> f64 {
        let mut total = self.log_priors[class_index];
        for tok in sentence {
            total += match self.vocab.get(tok.as_str()) {
                Some(&v) => self.log_likelihoods[class_index][v],
                None => self.unseen_log_likelihood[class_index],
            };
        }
        total
    }

    /// The argmax class label; ties go to the earlier (sorted) class.
    pub fn predict(&self, sentence: &Sentence) -> &str {
        let mut best = 0;
        let mut best_score = self.score(0, sentence);
        for class_index in 1..self.classes.len() {
            let score = self.score(class_index, sentence);
            if score > best_score {
                best = class_index;
                best_score = score;
            }
        }
        &self.classes[best]
    }
}

/// Trains the model by counting unigrams per class.
pub fn train(corpus: &Corpus) -> Result<BowModel, ClassifierError> {
    let mut classes: Vec<String> = corpus
        .examples()
        .iter()
        .map(|ex| ex.label.clone())
        .collect();
    classes.sort();
    classes.dedup();
    if classes.len() < 2 {
        return Err(ClassifierError::SingleClassCorpus);
    }
    let class_index: HashMap<&str, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, label)| (label.as_str(), i))
        .collect();

    let mut vocab: HashMap<String, usize> = HashMap::new();
    let mut counts: Vec<Vec<u64>> = vec![Vec::new(); classes.len()];
    let mut token_totals = vec![0u64; classes.len()];
    let mut example_totals = vec![0u64; classes.len()];
    for ex in corpus.examples() {
        let class = class_index[ex.label.as_str()];
        example_totals[class] += 1;
        for tok in &ex.sentence {
            let next_index = vocab.len();
            let v = *vocab.entry(tok.as_str().to_string()).or_insert(next_index);
            for class_counts in &mut counts {
                if class_counts.len() <= v {
                    class_counts.resize(v + 1, 0);
                }
            }
            counts[class][v] += 1;
            token_totals[class] += 1;
        }
    }
    for class_counts in &mut counts {
        class_counts.resize(vocab.len(), 0);
    }

    let total_examples = corpus.len() as f64;
    let vocab_size = vocab.len() as f64;
    let log_priors = example_totals
        .iter()
        .map(|&n| (n as f64 / total_examples).ln())
        .collect();
    let log_likelihoods = counts
        .iter()
        .zip(&token_totals)
        .map(|(class_counts, &total)| {
            let denominator = total as f64 + vocab_size;
            class_counts
                .iter()
                .map(|&count| ((count as f64 + 1.0) / denominator).ln())
                .collect()
        })
        .collect();
    let unseen_log_likelihood = token_totals
        .iter()
        .map(|&total| (1.0 / (total as f64 + vocab_size)).ln())
        .collect();

    Ok(BowModel {
        classes,
        log_priors,
        vocab,
        log_likelihoods,
        unseen_log_likelihood,
    })
}

/// Fraction of test examples whose predicted label matches the true one.
pub fn evaluate(model: &BowModel, test: &Corpus) -> Result<f64, ClassifierError> {
    if test.is_empty() {
        return Err(ClassifierError::EmptyTestCorpus);
    }
    let correct = test
        .examples()
        .iter()
        .filter(|ex| model.predict(&ex.sentence) == ex.label)
        .count();
    Ok(correct as f64 / test.len() as f64)
}
