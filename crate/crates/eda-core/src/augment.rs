//! The four EDA edit operations and the per-sentence augmentation driver.
//!
//! Each augmented variant of a sentence draws from its own
//! [`RngStream`] keyed by `(seed, sentence index, variant index)`, so a
//! corpus can be augmented in parallel with byte-identical results.
//!
//! The number of edits for SR, RI, and RS scales with sentence length `l`
//! as `n = max(1, floor(alpha * l))`; RD instead deletes each word
//! independently with probability `p`.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::lexicon::SynonymLexicon;
use crate::rng::RngStream;
use crate::text::{tokenize, Sentence, StopWordList, Token};

/// Random picks per insertion round before RI gives up on that round.
pub const RI_PICK_ATTEMPTS: usize = 10;

/// Redraws of the second swap position before RS skips the round.
pub const RS_EQUAL_REDRAWS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AugmentError {
    #[error("cannot augment an empty sentence")]
    EmptySentence,
    #[error("parameter {name} = {value} is outside [0, 1]")]
    InvalidFraction { name: &'static str, value: f64 },
}

/// The closed set of edit operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AugmentOpKind {
    /// Synonym replacement.
    Sr,
    /// Random insertion.
    Ri,
    /// Random swap.
    Rs,
    /// Random deletion.
    Rd,
}

impl AugmentOpKind {
    pub const ALL: [AugmentOpKind; 4] = [
        AugmentOpKind::Sr,
        AugmentOpKind::Ri,
        AugmentOpKind::Rs,
        AugmentOpKind::Rd,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AugmentOpKind::Sr => "sr",
            AugmentOpKind::Ri => "ri",
            AugmentOpKind::Rs => "rs",
            AugmentOpKind::Rd => "rd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sr" => Some(AugmentOpKind::Sr),
            "ri" => Some(AugmentOpKind::Ri),
            "rs" => Some(AugmentOpKind::Rs),
            "rd" => Some(AugmentOpKind::Rd),
            _ => None,
        }
    }
}

/// How the operation for each augmented variant is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpPolicy {
    /// One operation per variant, uniform over the four kinds.
    UniformOne,
    /// Always the same operation (used by the per-operation ablation).
    FixedOp(AugmentOpKind),
}

/// Augmentation parameters: per-operation edit fractions, the deletion
/// probability, the number of variants per sentence, the operation policy,
/// and the seed.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentParams {
    pub alpha_sr: f64,
    pub alpha_ri: f64,
    pub alpha_rs: f64,
    pub p_rd: f64,
    pub n_aug: usize,
    pub policy: OpPolicy,
    pub seed: u64,
}

impl AugmentParams {
    /// The usual single-alpha form: one `alpha` drives all three edit
    /// fractions and doubles as the deletion probability.
    pub fn with_alpha(alpha: f64, n_aug: usize, seed: u64) -> Self {
        AugmentParams {
            alpha_sr: alpha,
            alpha_ri: alpha,
            alpha_rs: alpha,
            p_rd: alpha,
            n_aug,
            policy: OpPolicy::UniformOne,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), AugmentError> {
        for (name, value) in [
            ("alpha_sr", self.alpha_sr),
            ("alpha_ri", self.alpha_ri),
            ("alpha_rs", self.alpha_rs),
            ("p_rd", self.p_rd),
        ] {
            if !(0.0..=1.0).contains(&value) || value.is_nan() {
                return Err(AugmentError::InvalidFraction { name, value });
            }
        }
        Ok(())
    }
}

/// Number of edits for a sentence of length `len`: `max(1, floor(alpha *
/// len))`. Callers handle `len == 0` (the operations are identities there).
pub fn compute_n(alpha: f64, len: usize) -> usize {
    ((alpha * len as f64).floor() as usize).max(1)
}

/// Replaces up to `n` distinct non-stop-word types that have at least one
/// synonym. Types are chosen uniformly without replacement; each chosen type
/// gets one uniformly chosen synonym substituted at every occurrence.
/// Multiword synonyms are re-tokenized in place.
pub fn synonym_replacement(
    s: &Sentence,
    n: usize,
    lex: &SynonymLexicon,
    stops: &StopWordList,
    rng: &mut RngStream,
) -> Sentence {
    if n == 0 || s.is_empty() {
        return s.clone();
    }
    let mut seen = HashSet::new();
    let mut eligible: Vec<&Token> = Vec::new();
    for tok in s {
        if seen.insert(tok.as_str()) && !stops.contains(tok) && lex.contains(tok.as_str()) {
            eligible.push(tok);
        }
    }
    if eligible.is_empty() {
        return s.clone();
    }
    let chosen = n.min(eligible.len());
    for i in 0..chosen {
        let j = i + rng.pick_index(eligible.len() - i);
        eligible.swap(i, j);
    }
    let mut replacements: HashMap<&str, Vec<Token>> = HashMap::new();
    for tok in &eligible[..chosen] {
        let synonyms = lex.synonyms(tok.as_str());
        let synonym = &synonyms[rng.pick_index(synonyms.len())];
        let expanded = tokenize(synonym);
        if !expanded.is_empty() {
            replacements.insert(tok.as_str(), expanded.tokens().to_vec());
        }
    }
    let mut out = Vec::with_capacity(s.len());
    for tok in s {
        match replacements.get(tok.as_str()) {
            Some(expansion) => out.extend(expansion.iter().cloned()),
            None => out.push(tok.clone()),
        }
    }
    Sentence::from_tokens(out)
}

/// Performs `n` insertion rounds. Each round picks a random token of the
/// current sentence until it finds a non-stop-word with synonyms (at most
/// [`RI_PICK_ATTEMPTS`] picks, then the round is skipped), chooses one of
/// its synonyms uniformly, and splices the synonym's tokens in at a uniform
/// position.
pub fn random_insertion(
    s: &Sentence,
    n: usize,
    lex: &SynonymLexicon,
    stops: &StopWordList,
    rng: &mut RngStream,
) -> Sentence {
    if s.is_empty() {
        return s.clone();
    }
    let mut tokens = s.tokens().to_vec();
    for _round in 0..n {
        for _attempt in 0..RI_PICK_ATTEMPTS {
            let candidate = &tokens[rng.pick_index(tokens.len())];
            if stops.contains(candidate) {
                continue;
            }
            let synonyms = lex.synonyms(candidate.as_str());
            if synonyms.is_empty() {
                continue;
            }
            let synonym = &synonyms[rng.pick_index(synonyms.len())];
            let expanded = tokenize(synonym);
            let position = rng.pick_index(tokens.len() + 1);
            tokens.splice(position..position, expanded.tokens().iter().cloned());
            break;
        }
    }
    Sentence::from_tokens(tokens)
}

/// Performs `n` swap rounds. Each round draws two positions; if they match,
/// the second is redrawn up to [`RS_EQUAL_REDRAWS`] times before the round
/// is skipped. Sentences shorter than two tokens are returned unchanged.
pub fn random_swap(s: &Sentence, n: usize, rng: &mut RngStream) -> Sentence {
    if s.len() < 2 {
        return s.clone();
    }
    let mut tokens = s.tokens().to_vec();
    for _round in 0..n {
        let first = rng.pick_index(tokens.len());
        let mut second = rng.pick_index(tokens.len());
        let mut redraws = 0;
        while second == first && redraws < RS_EQUAL_REDRAWS {
            second = rng.pick_index(tokens.len());
            redraws += 1;
        }
        if second != first {
            tokens.swap(first, second);
        }
    }
    Sentence::from_tokens(tokens)
}

/// Keeps each token independently with probability `1 - p`. If everything
/// is deleted, one uniformly chosen original token is returned instead, so
/// non-empty input never yields an empty sentence.
pub fn random_deletion(s: &Sentence, p: f64, rng: &mut RngStream) -> Sentence {
    if s.is_empty() {
        return s.clone();
    }
    let mut kept = Vec::with_capacity(s.len());
    for tok in s {
        if !rng.bernoulli(p) {
            kept.push(tok.clone());
        }
    }
    if kept.is_empty() {
        let survivor = s.tokens()[rng.pick_index(s.len())].clone();
        kept.push(survivor);
    }
    Sentence::from_tokens(kept)
}

/// Produces `params.n_aug` augmented variants of `s`.
///
/// Each variant derives its own stream from `(params.seed, sentence_index,
/// variant_index)`, selects an operation per `params.policy`, and applies it
/// with `n = compute_n(alpha, l)` (or probability `p_rd` for deletion).
pub fn augment_sentence(
    s: &Sentence,
    params: &AugmentParams,
    lex: &SynonymLexicon,
    stops: &StopWordList,
    sentence_index: u64,
) -> Result<Vec<Sentence>, AugmentError> {
    params.validate()?;
    if params.n_aug == 0 {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err(AugmentError::EmptySentence);
    }
    let mut variants = Vec::with_capacity(params.n_aug);
    for variant_index in 0..params.n_aug {
        let mut rng = RngStream::for_variant(params.seed, sentence_index, variant_index as u64);
        let kind = match params.policy {
            OpPolicy::UniformOne => AugmentOpKind::ALL[rng.pick_index(4)],
            OpPolicy::FixedOp(kind) => kind,
        };
        let variant = match kind {
            AugmentOpKind::Sr => {
                synonym_replacement(s, compute_n(params.alpha_sr, s.len()), lex, stops, &mut rng)
            }
            AugmentOpKind::Ri => {
                random_insertion(s, compute_n(params.alpha_ri, s.len()), lex, stops, &mut rng)
            }
            AugmentOpKind::Rs => random_swap(s, compute_n(params.alpha_rs, s.len()), &mut rng),
            AugmentOpKind::Rd => random_deletion(s, params.p_rd, &mut rng),
        };
        variants.push(variant);
    }
    Ok(variants)
}
