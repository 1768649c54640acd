//! Labeled corpora: `<label>\t<text>` ingestion, summary statistics,
//! seeded subsampling, and corpus-level augmentation.

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::augment::{augment_sentence, AugmentError, AugmentParams};
use crate::lexicon::SynonymLexicon;
use crate::rng::RngStream;
use crate::text::{tokenize, Sentence, StopWordList};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{file}:{line}: malformed line: {reason}")]
    MalformedLine {
        file: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{file}: corpus contains no examples")]
    EmptyCorpus { file: PathBuf },
    #[error("subset size {requested} exceeds corpus size {available}")]
    SizeTooLarge { requested: usize, available: usize },
    #[error("subset size must be at least 1")]
    ZeroSubsetSize,
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// One classification example: a non-empty class label and a tokenized,
/// non-empty sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledExample {
    pub label: String,
    pub sentence: Sentence,
}

/// An ordered list of labeled examples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    examples: Vec<LabeledExample>,
}

/// Summary statistics: example count, class count, mean sentence length,
/// and vocabulary size.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    pub num_examples: usize,
    pub num_classes: usize,
    pub mean_sentence_len: f64,
    pub vocab_size: usize,
}

impl Corpus {
    pub fn new(examples: Vec<LabeledExample>) -> Self {
        Corpus { examples }
    }

    pub fn examples(&self) -> &[LabeledExample] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    /// Statistics are always recomputed from the current examples.
    pub fn stats(&self) -> CorpusStats {
        let mut labels = HashSet::new();
        let mut vocab = HashSet::new();
        let mut token_total = 0usize;
        for ex in &self.examples {
            labels.insert(ex.label.as_str());
            token_total += ex.sentence.len();
            for tok in &ex.sentence {
                vocab.insert(tok.as_str());
            }
        }
        CorpusStats {
            num_examples: self.examples.len(),
            num_classes: labels.len(),
            mean_sentence_len: if self.examples.is_empty() {
                0.0
            } else {
                token_total as f64 / self.examples.len() as f64
            },
            vocab_size: vocab.len(),
        }
    }

    /// Renders the corpus in its file form: one `label\ttext` line per
    /// example, LF endings.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for ex in &self.examples {
            out.push_str(&ex.label);
            out.push('\t');
            out.push_str(&ex.sentence.detokenize());
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<(), CorpusError> {
        fs::write(path, self.to_file_string()).map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Loads a corpus file: UTF-8, one `<label>\t<text>` example per non-empty
/// line. Lines without a tab, with an empty label, or whose text tokenizes
/// to nothing are rejected with their line number.
pub fn load_corpus(path: &Path) -> Result<Corpus, CorpusError> {
    let contents = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_corpus(&contents, path)
}

/// Parses corpus file content; `file` labels error messages.
pub fn parse_corpus(contents: &str, file: &Path) -> Result<Corpus, CorpusError> {
    let malformed = |line: usize, reason: &str| CorpusError::MalformedLine {
        file: file.to_path_buf(),
        line,
        reason: reason.to_string(),
    };
    let mut examples = Vec::new();
    for (idx, row) in contents.lines().enumerate() {
        let line = idx + 1;
        if row.is_empty() {
            continue;
        }
        let (label, text) = row
            .split_once('\t')
            .ok_or_else(|| malformed(line, "expected <label>\\t<text>"))?;
        if label.is_empty() {
            return Err(malformed(line, "empty label"));
        }
        let sentence = tokenize(text);
        if sentence.is_empty() {
            return Err(malformed(line, "text yields no tokens"));
        }
        examples.push(LabeledExample {
            label: label.to_string(),
            sentence,
        });
    }
    if examples.is_empty() {
        return Err(CorpusError::EmptyCorpus {
            file: file.to_path_buf(),
        });
    }
    Ok(Corpus::new(examples))
}

/// Draws indices `0..n` without replacement via a partial Fisher-Yates
/// shuffle, then restores ascending order.
fn sample_indices(n: usize, size: usize, rng: &mut RngStream) -> Vec<usize> {
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..size {
        let j = i + rng.pick_index(n - i);
        indices.swap(i, j);
    }
    indices.truncate(size);
    indices.sort_unstable();
    indices
}

/// Uniform random subset without replacement, preserving original relative
/// order. The same seed always yields the same subset.
pub fn subsample(corpus: &Corpus, size: usize, seed: u64) -> Result<Corpus, CorpusError> {
    if size == 0 {
        return Err(CorpusError::ZeroSubsetSize);
    }
    if size > corpus.len() {
        return Err(CorpusError::SizeTooLarge {
            requested: size,
            available: corpus.len(),
        });
    }
    let mut rng = RngStream::for_subsample(seed);
    let examples = sample_indices(corpus.len(), size, &mut rng)
        .into_iter()
        .map(|i| corpus.examples[i].clone())
        .collect();
    Ok(Corpus::new(examples))
}

/// Class-stratified variant of [`subsample`]: per-class quotas are allocated
/// proportionally (largest remainder), then sampled uniformly within each
/// class. Original relative order is preserved.
pub fn subsample_stratified(
    corpus: &Corpus,
    size: usize,
    seed: u64,
) -> Result<Corpus, CorpusError> {
    if size == 0 {
        return Err(CorpusError::ZeroSubsetSize);
    }
    if size > corpus.len() {
        return Err(CorpusError::SizeTooLarge {
            requested: size,
            available: corpus.len(),
        });
    }
    // Class order is sorted for determinism.
    let mut by_class: Vec<(&str, Vec<usize>)> = Vec::new();
    for (i, ex) in corpus.examples.iter().enumerate() {
        match by_class.iter_mut().find(|(label, _)| *label == ex.label) {
            Some((_, members)) => members.push(i),
            None => by_class.push((&ex.label, vec![i])),
        }
    }
    by_class.sort_by_key(|(label, _)| *label);

    let total = corpus.len();
    let mut quotas: Vec<usize> = Vec::with_capacity(by_class.len());
    let mut fractions: Vec<(usize, f64)> = Vec::new();
    let mut allocated = 0;
    for (class_idx, (_, members)) in by_class.iter().enumerate() {
        let exact = size as f64 * members.len() as f64 / total as f64;
        let quota = exact.floor() as usize;
        quotas.push(quota);
        allocated += quota;
        fractions.push((class_idx, exact - exact.floor()));
    }
    fractions.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut remainder = size - allocated;
    for &(class_idx, _) in fractions.iter().cycle() {
        if remainder == 0 {
            break;
        }
        if quotas[class_idx] < by_class[class_idx].1.len() {
            quotas[class_idx] += 1;
            remainder -= 1;
        }
    }

    let mut rng = RngStream::for_subsample(seed);
    let mut picked = Vec::with_capacity(size);
    for ((_, members), quota) in by_class.iter().zip(&quotas) {
        for local in sample_indices(members.len(), *quota, &mut rng) {
            picked.push(members[local]);
        }
    }
    picked.sort_unstable();
    Ok(Corpus::new(
        picked.into_iter().map(|i| corpus.examples[i].clone()).collect(),
    ))
}

/// Augments every example: the output holds all originals in order, followed
/// by each example's `n_aug` variants in `(example index, variant index)`
/// order, every variant carrying its source's label. Output size is
/// `len * (1 + n_aug)`. Examples are processed in parallel; derived streams
/// keep the result identical for any thread count.
pub fn augment_corpus(
    corpus: &Corpus,
    params: &AugmentParams,
    lex: &SynonymLexicon,
    stops: &StopWordList,
) -> Result<Corpus, AugmentError> {
    params.validate()?;
    let variants: Vec<Vec<LabeledExample>> = corpus
        .examples
        .par_iter()
        .enumerate()
        .map(|(index, ex)| {
            let sentences = augment_sentence(&ex.sentence, params, lex, stops, index as u64)?;
            Ok(sentences
                .into_iter()
                .map(|sentence| LabeledExample {
                    label: ex.label.clone(),
                    sentence,
                })
                .collect())
        })
        .collect::<Result<_, AugmentError>>()?;
    let mut examples = corpus.examples.clone();
    examples.extend(variants.into_iter().flatten());
    Ok(Corpus::new(examples))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus_of(lines: &[(&str, &str)]) -> Corpus {
        Corpus::new(
            lines
                .iter()
                .map(|(label, text)| LabeledExample {
                    label: label.to_string(),
                    sentence: tokenize(text),
                })
                .collect(),
        )
    }

    #[test]
    fn parse_two_line_file() {
        let c = parse_corpus("0\ta sad comedy\n1\tgreat fun\n", Path::new("c.tsv")).unwrap();
        let stats = c.stats();
        assert_eq!(stats.num_examples, 2);
        assert_eq!(stats.num_classes, 2);
    }

    #[test]
    fn parse_rejects_empty_text() {
        let err = parse_corpus("pro\t\n", Path::new("c.tsv"));
        assert!(matches!(err, Err(CorpusError::MalformedLine { line: 1, .. })));
    }

    #[test]
    fn parse_rejects_missing_tab() {
        let err = parse_corpus("just some words\n", Path::new("c.tsv"));
        assert!(matches!(err, Err(CorpusError::MalformedLine { line: 1, .. })));
    }

    #[test]
    fn parse_rejects_punctuation_only_text() {
        let err = parse_corpus("0\t?! .,\n", Path::new("c.tsv"));
        assert!(matches!(err, Err(CorpusError::MalformedLine { line: 1, .. })));
    }

    #[test]
    fn parse_skips_blank_lines_and_rejects_empty_files() {
        let c = parse_corpus("\n0\tok then\n\n", Path::new("c.tsv")).unwrap();
        assert_eq!(c.len(), 1);
        assert!(matches!(
            parse_corpus("\n\n", Path::new("c.tsv")),
            Err(CorpusError::EmptyCorpus { .. })
        ));
    }

    #[test]
    fn stats_are_recomputed_from_examples() {
        let c = corpus_of(&[("0", "a b c d"), ("1", "a b"), ("0", "e f g")]);
        let stats = c.stats();
        assert_eq!(stats.num_examples, 3);
        assert_eq!(stats.num_classes, 2);
        assert_eq!(stats.vocab_size, 7);
        assert!((stats.mean_sentence_len - 3.0).abs() < 1e-12);
    }

    #[test]
    fn subsample_full_size_is_identity() {
        let c = corpus_of(&[("0", "a"), ("1", "b"), ("0", "c")]);
        assert_eq!(subsample(&c, 3, 9).unwrap(), c);
    }

    #[test]
    fn subsample_is_deterministic_and_order_preserving() {
        let lines: Vec<(String, String)> = (0..100)
            .map(|i| ("0".to_string(), format!("word{i}")))
            .collect();
        let c = Corpus::new(
            lines
                .iter()
                .map(|(label, text)| LabeledExample {
                    label: label.clone(),
                    sentence: tokenize(text),
                })
                .collect(),
        );
        let a = subsample(&c, 30, 42).unwrap();
        let b = subsample(&c, 30, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 30);
        // Original relative order: positions of picked examples ascend.
        let positions: Vec<usize> = a
            .examples()
            .iter()
            .map(|ex| {
                c.examples()
                    .iter()
                    .position(|orig| orig == ex)
                    .unwrap()
            })
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert_ne!(a, subsample(&c, 30, 43).unwrap());
    }

    #[test]
    fn subsample_rejects_bad_sizes() {
        let c = corpus_of(&[("0", "a"), ("1", "b")]);
        assert!(matches!(
            subsample(&c, 3, 0),
            Err(CorpusError::SizeTooLarge { requested: 3, available: 2 })
        ));
        assert!(matches!(subsample(&c, 0, 0), Err(CorpusError::ZeroSubsetSize)));
    }

    #[test]
    fn stratified_subsample_keeps_class_proportions() {
        let mut lines = Vec::new();
        for i in 0..80 {
            lines.push(("pos".to_string(), format!("p{i}")));
        }
        for i in 0..20 {
            lines.push(("neg".to_string(), format!("n{i}")));
        }
        let c = Corpus::new(
            lines
                .iter()
                .map(|(label, text)| LabeledExample {
                    label: label.clone(),
                    sentence: tokenize(text),
                })
                .collect(),
        );
        let sub = subsample_stratified(&c, 10, 1).unwrap();
        let stats = sub.stats();
        assert_eq!(stats.num_examples, 10);
        let pos = sub.examples().iter().filter(|e| e.label == "pos").count();
        assert_eq!(pos, 8);
    }

    #[test]
    fn augment_corpus_size_law_and_labels() {
        let c = corpus_of(&[("0", "a sad comedy"), ("1", "the long road")]);
        let lex = SynonymLexicon::from_entries([("sad", vec!["sorry"])]);
        let stops = StopWordList::default_english();
        let params = AugmentParams::with_alpha(0.1, 4, 7);
        let out = augment_corpus(&c, &params, &lex, &stops).unwrap();
        assert_eq!(out.len(), 2 * (1 + 4));
        // Originals first, then variants grouped per example.
        assert_eq!(&out.examples()[..2], c.examples());
        for (i, ex) in out.examples()[2..].iter().enumerate() {
            let source = &c.examples()[i / 4];
            assert_eq!(ex.label, source.label);
        }
    }

    #[test]
    fn augment_corpus_with_zero_n_aug_is_identity() {
        let c = corpus_of(&[("0", "a sad comedy")]);
        let params = AugmentParams::with_alpha(0.1, 0, 7);
        let out = augment_corpus(
            &c,
            &params,
            &SynonymLexicon::default(),
            &StopWordList::default_english(),
        )
        .unwrap();
        assert_eq!(out, c);
    }
}
