//! Lexicon construction from the WordNet-3.x-formatted fixture under
//! `tests/fixtures/wndb`.

use std::fs;
use std::path::{Path, PathBuf};

use eda_core::lexicon::{build_from_wordnet, LexiconError, SynonymLexicon, WordNetSource};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/wndb")
}

fn build_fixture_lexicon() -> SynonymLexicon {
    let src = WordNetSource::new(&fixture_dir()).unwrap();
    build_from_wordnet(&src).unwrap()
}

#[test]
fn table_membership_expectations_hold() {
    let lex = build_fixture_lexicon();
    assert!(lex.synonyms("sad").contains(&"lamentable".to_string()));
    assert!(lex.synonyms("back").contains(&"backward".to_string()));
    assert!(lex.synonyms("comedy").contains(&"funniness".to_string()));
}

#[test]
fn union_over_synsets_and_parts_of_speech() {
    let lex = build_fixture_lexicon();
    // "sad" sits in a singleton adjective synset (contributing nothing) and
    // in the six-member synset.
    assert_eq!(
        lex.synonyms("sad"),
        ["deplorable", "distressing", "lamentable", "pitiful", "sorry"]
    );
    // "funniness" unions two noun synsets.
    assert_eq!(lex.synonyms("funniness"), ["clowning", "comedy", "drollery", "fun"]);
    // "back" has a marker-stripped singleton adjective sense plus the
    // five-member adverb synset.
    assert_eq!(
        lex.synonyms("back"),
        ["backward", "backwards", "rearward", "rearwards"]
    );
}

#[test]
fn multiword_lemmas_use_spaces() {
    let lex = build_fixture_lexicon();
    assert_eq!(
        lex.synonyms("car"),
        [
            "auto",
            "automobile",
            "machine",
            "motorcar",
            "railcar",
            "railroad car",
            "railway car"
        ]
    );
    assert!(lex.synonyms("railway car").contains(&"railcar".to_string()));
}

#[test]
fn satellite_synsets_and_hyphenated_lemmas_parse() {
    let lex = build_fixture_lexicon();
    assert_eq!(lex.synonyms("superior"), ["higher-ranking", "ranking"]);
}

#[test]
fn co_membership_is_symmetric() {
    let lex = build_fixture_lexicon();
    for (word, synonyms) in lex.iter() {
        for syn in synonyms {
            assert!(
                lex.synonyms(syn).contains(&word.to_string()),
                "{syn} lists no {word}"
            );
        }
    }
}

#[test]
fn no_entry_lists_itself_or_empty_strings() {
    let lex = build_fixture_lexicon();
    assert!(!lex.is_empty());
    for (word, synonyms) in lex.iter() {
        assert!(!synonyms.iter().any(|s| s == word));
        assert!(!synonyms.iter().any(String::is_empty));
        let mut sorted = synonyms.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.as_slice(), synonyms);
    }
}

#[test]
fn building_twice_is_byte_identical() {
    let a = build_fixture_lexicon();
    let b = build_fixture_lexicon();
    assert_eq!(a.to_tsv(), b.to_tsv());
}

#[test]
fn built_lexicon_roundtrips_through_tsv() {
    let lex = build_fixture_lexicon();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lexicon.tsv");
    lex.save_tsv(&path).unwrap();
    let reloaded = SynonymLexicon::load_tsv(&path).unwrap();
    assert_eq!(lex, reloaded);
    assert_eq!(fs::read_to_string(&path).unwrap(), reloaded.to_tsv());
}

#[test]
fn missing_data_file_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let entry = entry.unwrap();
        if entry.file_name() != "data.verb" {
            fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
        }
    }
    match WordNetSource::new(dir.path()) {
        Err(LexiconError::MissingFile { path }) => assert!(path.ends_with("data.verb")),
        other => panic!("expected MissingFile, got {other:?}"),
    }
}

fn copy_fixture_with(dir: &Path, file: &str, mutate: impl Fn(&str) -> String) {
    for entry in fs::read_dir(fixture_dir()).unwrap() {
        let entry = entry.unwrap();
        let contents = fs::read_to_string(entry.path()).unwrap();
        let contents = if entry.file_name() == file {
            mutate(&contents)
        } else {
            contents
        };
        fs::write(dir.join(entry.file_name()), contents).unwrap();
    }
}

#[test]
fn malformed_data_line_is_reported_with_position() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture_with(dir.path(), "data.adv", |contents| {
        contents.replace("r 05 back", "r zz back")
    });
    let src = WordNetSource::new(dir.path()).unwrap();
    match build_from_wordnet(&src) {
        Err(LexiconError::MalformedLine { file, line, .. }) => {
            assert!(file.ends_with("data.adv"));
            assert_eq!(line, 4);
        }
        other => panic!("expected MalformedLine, got {other:?}"),
    }
}

#[test]
fn dangling_index_offset_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    copy_fixture_with(dir.path(), "index.adv", |contents| {
        contents.replace("backward r 1 1 ! 1 1 00302038", "backward r 1 1 ! 1 1 99999999")
    });
    let src = WordNetSource::new(dir.path()).unwrap();
    match build_from_wordnet(&src) {
        Err(LexiconError::UnresolvedOffset { lemma, offset, .. }) => {
            assert_eq!(lemma, "backward");
            assert_eq!(offset, 99_999_999);
        }
        other => panic!("expected UnresolvedOffset, got {other:?}"),
    }
}
