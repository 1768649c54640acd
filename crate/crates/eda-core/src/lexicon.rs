//! Synonym lexicon: built once from raw WordNet 3.x database files, stored
//! as a sorted TSV, and served as an immutable word → synonyms map.
//!
//! The build unions co-member lemmas over every synset a word belongs to,
//! across all four parts of speech, with no sense disambiguation. WordNet
//! underscores become spaces, everything is lowercased, and each entry is
//! deduplicated and sorted, so building twice from the same source files
//! yields byte-identical TSV output.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("missing WordNet database file: {path}")]
    MissingFile { path: PathBuf },
    #[error("{file}:{line}: malformed line: {reason}")]
    MalformedLine {
        file: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{file}: index entry '{lemma}' references offset {offset:08} absent from data file")]
    UnresolvedOffset {
        file: PathBuf,
        lemma: String,
        offset: u64,
    },
    #[error("{file}:{line}: duplicate headword '{headword}'")]
    DuplicateEntry {
        file: PathBuf,
        line: usize,
        headword: String,
    },
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Immutable map from a lowercase word to its sorted, deduplicated synonym
/// list. Entries never list the headword itself and never hold empty
/// strings; words with no synonyms are simply absent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SynonymLexicon {
    entries: BTreeMap<String, Vec<String>>,
}

static NO_SYNONYMS: &[String] = &[];

impl SynonymLexicon {
    /// Builds a lexicon from arbitrary `(word, synonyms)` pairs, enforcing
    /// the entry invariants: everything lowercased, self-references and
    /// duplicates removed, lists sorted, empty entries dropped.
    pub fn from_entries<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Vec<S>)>,
        S: Into<String>,
    {
        let mut entries: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for (word, synonyms) in pairs {
            let word = word.into().to_lowercase();
            if word.is_empty() {
                continue;
            }
            let set = entries.entry(word.clone()).or_default();
            for syn in synonyms {
                let syn = syn.into().to_lowercase();
                if !syn.is_empty() && syn != word {
                    set.insert(syn);
                }
            }
        }
        SynonymLexicon {
            entries: entries
                .into_iter()
                .filter(|(_, set)| !set.is_empty())
                .map(|(word, set)| (word, set.into_iter().collect()))
                .collect(),
        }
    }

    /// The synonym list for `word`, or an empty slice for unknown words.
    pub fn synonyms(&self, word: &str) -> &[String] {
        self.entries
            .get(word)
            .map(Vec::as_slice)
            .unwrap_or(NO_SYNONYMS)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.entries.contains_key(word)
    }

    /// Number of headwords.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.entries
            .iter()
            .map(|(word, syns)| (word.as_str(), syns.as_slice()))
    }

    /// Renders the lexicon in its canonical TSV form: one
    /// `headword\tsyn1,syn2,...` line per entry, sorted by headword, LF
    /// endings.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (word, syns) in &self.entries {
            out.push_str(word);
            out.push('\t');
            out.push_str(&syns.join(","));
            out.push('\n');
        }
        out
    }

    pub fn save_tsv(&self, path: &Path) -> Result<(), LexiconError> {
        fs::write(path, self.to_tsv()).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load_tsv(path: &Path) -> Result<Self, LexiconError> {
        let contents = fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_tsv(&contents, path)
    }

    /// Parses TSV content; `file` only labels error messages. Rows must obey
    /// the entry invariants exactly — the parser does not repair them.
    pub fn parse_tsv(contents: &str, file: &Path) -> Result<Self, LexiconError> {
        let malformed = |line: usize, reason: &str| LexiconError::MalformedLine {
            file: file.to_path_buf(),
            line,
            reason: reason.to_string(),
        };
        let mut entries = BTreeMap::new();
        for (idx, row) in contents.lines().enumerate() {
            let line = idx + 1;
            if row.is_empty() {
                continue;
            }
            let mut fields = row.split('\t');
            let headword = fields.next().unwrap_or_default();
            let syn_field = fields
                .next()
                .ok_or_else(|| malformed(line, "expected exactly 2 tab-separated fields"))?;
            if fields.next().is_some() {
                return Err(malformed(line, "expected exactly 2 tab-separated fields"));
            }
            if headword.is_empty() {
                return Err(malformed(line, "empty headword"));
            }
            if headword != headword.to_lowercase() {
                return Err(malformed(line, "headword is not lowercase"));
            }
            let mut synonyms = Vec::new();
            for syn in syn_field.split(',') {
                if syn.is_empty() {
                    return Err(malformed(line, "empty synonym"));
                }
                if syn != syn.to_lowercase() {
                    return Err(malformed(line, "synonym is not lowercase"));
                }
                if syn == headword {
                    return Err(malformed(line, "entry lists its own headword as a synonym"));
                }
                synonyms.push(syn.to_string());
            }
            let mut sorted = synonyms.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != synonyms.len() || sorted != synonyms {
                return Err(malformed(line, "synonyms must be sorted and free of duplicates"));
            }
            if entries.contains_key(headword) {
                return Err(LexiconError::DuplicateEntry {
                    file: file.to_path_buf(),
                    line,
                    headword: headword.to_string(),
                });
            }
            entries.insert(headword.to_string(), synonyms);
        }
        Ok(SynonymLexicon { entries })
    }
}

const POS_NAMES: [&str; 4] = ["noun", "verb", "adj", "adv"];

/// Locations of the eight WordNet 3.x database files
/// (`index.<pos>` / `data.<pos>` for noun, verb, adj, adv).
#[derive(Debug, Clone)]
pub struct WordNetSource {
    index_files: Vec<PathBuf>,
    data_files: Vec<PathBuf>,
}

impl WordNetSource {
    /// Points at a WordNet `dict` directory, verifying all eight files exist.
    pub fn new(dir: &Path) -> Result<Self, LexiconError> {
        let mut index_files = Vec::new();
        let mut data_files = Vec::new();
        for pos in POS_NAMES {
            for (prefix, bucket) in [("index", &mut index_files), ("data", &mut data_files)] {
                let path = dir.join(format!("{prefix}.{pos}"));
                if !path.is_file() {
                    return Err(LexiconError::MissingFile { path });
                }
                bucket.push(path);
            }
        }
        Ok(WordNetSource {
            index_files,
            data_files,
        })
    }
}

/// Normalizes a WNDB lemma: strip adjective syntactic markers like `(a)`,
/// replace underscores with spaces, lowercase.
fn clean_lemma(raw: &str) -> String {
    let stripped = match raw.find('(') {
        Some(idx) if raw.ends_with(')') => &raw[..idx],
        _ => raw,
    };
    stripped.replace('_', " ").to_lowercase()
}

/// WNDB files open with a license header of lines indented by a space.
fn is_header_or_blank(line: &str) -> bool {
    line.is_empty() || line.starts_with(' ')
}

fn read_lines(path: &Path) -> Result<Vec<String>, LexiconError> {
    let contents = fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(contents.lines().map(str::to_string).collect())
}

/// Parses one `data.<pos>` file into offset → cleaned member lemmas.
///
/// Line layout: `offset lex_filenum ss_type w_cnt (word lex_id){w_cnt} ...`
/// where `w_cnt` is two-digit hexadecimal; pointers and the gloss after the
/// word block are ignored.
fn parse_data_file(path: &Path) -> Result<HashMap<u64, Vec<String>>, LexiconError> {
    let malformed = |line: usize, reason: String| LexiconError::MalformedLine {
        file: path.to_path_buf(),
        line,
        reason,
    };
    let mut synsets = HashMap::new();
    for (idx, row) in read_lines(path)?.iter().enumerate() {
        let line = idx + 1;
        if is_header_or_blank(row) {
            continue;
        }
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(malformed(line, "fewer than 4 fields".into()));
        }
        let offset: u64 = fields[0]
            .parse()
            .map_err(|_| malformed(line, format!("bad synset offset '{}'", fields[0])))?;
        if !matches!(fields[2], "n" | "v" | "a" | "s" | "r") {
            return Err(malformed(line, format!("bad ss_type '{}'", fields[2])));
        }
        let w_cnt = usize::from_str_radix(fields[3], 16)
            .map_err(|_| malformed(line, format!("bad hex word count '{}'", fields[3])))?;
        if w_cnt == 0 {
            return Err(malformed(line, "zero word count".into()));
        }
        let words_end = 4 + 2 * w_cnt;
        if fields.len() < words_end {
            return Err(malformed(
                line,
                format!("word count {w_cnt} exceeds fields on line"),
            ));
        }
        let members = (0..w_cnt)
            .map(|i| clean_lemma(fields[4 + 2 * i]))
            .collect();
        synsets.insert(offset, members);
    }
    Ok(synsets)
}

/// Parses one `index.<pos>` file into `(lemma, synset offsets)` rows.
///
/// Line layout: `lemma pos synset_cnt p_cnt ptr_symbol... sense_cnt
/// tagsense_cnt offset{synset_cnt}`.
fn parse_index_file(path: &Path) -> Result<Vec<(String, Vec<u64>)>, LexiconError> {
    let malformed = |line: usize, reason: String| LexiconError::MalformedLine {
        file: path.to_path_buf(),
        line,
        reason,
    };
    let mut rows = Vec::new();
    for (idx, row) in read_lines(path)?.iter().enumerate() {
        let line = idx + 1;
        if is_header_or_blank(row) {
            continue;
        }
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() < 6 {
            return Err(malformed(line, "fewer than 6 fields".into()));
        }
        let lemma = clean_lemma(fields[0]);
        let synset_cnt: usize = fields[2]
            .parse()
            .map_err(|_| malformed(line, format!("bad synset count '{}'", fields[2])))?;
        let p_cnt: usize = fields[3]
            .parse()
            .map_err(|_| malformed(line, format!("bad pointer count '{}'", fields[3])))?;
        let offsets_start = 4 + p_cnt + 2;
        if fields.len() != offsets_start + synset_cnt {
            return Err(malformed(
                line,
                format!(
                    "expected {} fields for {synset_cnt} synsets and {p_cnt} pointers, found {}",
                    offsets_start + synset_cnt,
                    fields.len()
                ),
            ));
        }
        let mut offsets = Vec::with_capacity(synset_cnt);
        for field in &fields[offsets_start..] {
            offsets.push(
                field
                    .parse()
                    .map_err(|_| malformed(line, format!("bad synset offset '{field}'")))?,
            );
        }
        rows.push((lemma, offsets));
    }
    Ok(rows)
}

/// Compiles the synonym lexicon from raw WordNet database files.
///
/// For every index lemma, the synonyms are the union over all of its synsets
/// (all parts of speech) of the co-member lemmas, minus the lemma itself.
/// Lemmas whose synsets have no co-members get no entry.
pub fn build_from_wordnet(src: &WordNetSource) -> Result<SynonymLexicon, LexiconError> {
    let mut merged: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (index_path, data_path) in src.index_files.iter().zip(&src.data_files) {
        let synsets = parse_data_file(data_path)?;
        for (lemma, offsets) in parse_index_file(index_path)? {
            let set = merged.entry(lemma.clone()).or_default();
            for offset in offsets {
                let members =
                    synsets
                        .get(&offset)
                        .ok_or_else(|| LexiconError::UnresolvedOffset {
                            file: index_path.clone(),
                            lemma: lemma.clone(),
                            offset,
                        })?;
                set.extend(members.iter().filter(|m| **m != lemma).cloned());
            }
        }
    }
    Ok(SynonymLexicon {
        entries: merged
            .into_iter()
            .filter(|(_, set)| !set.is_empty())
            .map(|(word, set)| (word, set.into_iter().collect()))
            .collect(),
    })
}
