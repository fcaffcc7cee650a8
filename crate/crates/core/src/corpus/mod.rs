//! Labelled documents: ingestion, deduplication, regional partitioning and
//! balanced subcorpus sampling.
//!
//! Input is JSON Lines, one record per line:
//!
//! ```text
//! {"id":"1","text":"so happy today","emotion":"happy","timezone":"London","created_at":"2012-10-19T00:00:00Z"}
//! ```

mod region;
pub(crate) mod sample;
mod synthetic;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semspace::tokenize;

pub use region::{partition_region, RegionConfig, RegionSpec};
pub use sample::{
    build_subcorpus, control_stream, make_controls, modulus_indices, modulus_sample, SampleError,
    Subcorpus,
};
pub use synthetic::{generate_synthetic, pseudo_word, GeneratorSpec};

/// The twelve keywords, in the order used for every emotion-indexed table.
pub const DEFAULT_EMOTIONS: [&str; 12] = [
    "angry",
    "ashamed",
    "calm",
    "depressed",
    "excited",
    "happy",
    "interested",
    "sad",
    "scared",
    "sleepy",
    "stressed",
    "surprised",
];

/// Ordered, duplicate-free set of emotion keywords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct KeywordSet {
    words: Vec<String>,
}

impl KeywordSet {
    /// Each keyword must be a single token that survives tokenization
    /// unchanged (lowercase, alphanumeric).
    pub fn new<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for w in words {
            let w = w.as_ref().trim().to_lowercase();
            if tokenize(&w) != [w.as_str()] {
                return Err(Error::Config(format!(
                    "emotion keyword `{w}` is not a single token"
                )));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::Config(format!("duplicate emotion keyword `{w}`")));
            }
            out.push(w);
        }
        if out.is_empty() {
            return Err(Error::Config("emotion keyword set is empty".into()));
        }
        Ok(KeywordSet { words: out })
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, emotion: &str) -> Option<usize> {
        self.words.iter().position(|w| w == emotion)
    }

    pub fn contains(&self, emotion: &str) -> bool {
        self.index_of(emotion).is_some()
    }

    pub fn get(&self, index: usize) -> Option<&str> {
        self.words.get(index).map(String::as_str)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &str> + '_ {
        self.words.iter().map(String::as_str)
    }

    pub fn as_slice(&self) -> &[String] {
        &self.words
    }
}

impl Default for KeywordSet {
    fn default() -> Self {
        KeywordSet {
            words: DEFAULT_EMOTIONS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl TryFrom<Vec<String>> for KeywordSet {
    type Error = Error;

    fn try_from(words: Vec<String>) -> Result<Self> {
        KeywordSet::new(words)
    }
}

impl From<KeywordSet> for Vec<String> {
    fn from(k: KeywordSet) -> Self {
        k.words
    }
}

/// One labelled text item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    pub emotion: String,
    pub timezone: String,
    pub created_at: DateTime<Utc>,
}

/// A recoverable problem with a single input line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineError {
    /// 1-based.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Clone, Debug, Default)]
pub struct ParsedCorpus {
    /// Accepted documents, in input order.
    pub documents: Vec<Document>,
    /// Records whose label is outside the keyword set, counted per label.
    pub skipped_labels: BTreeMap<String, usize>,
    pub errors: Vec<LineError>,
}

impl ParsedCorpus {
    pub fn skipped(&self) -> usize {
        self.skipped_labels.values().sum()
    }

    /// Converts per-line errors into a single fatal error.
    pub fn strict(self) -> Result<Self> {
        if self.errors.is_empty() {
            Ok(self)
        } else {
            Err(Error::MalformedInput(self.errors))
        }
    }
}

/// Reads a JSON Lines document stream. Blank lines are ignored, malformed
/// lines are reported with their line number, and records labelled outside
/// `keywords` are counted and skipped. Only an I/O failure is fatal.
pub fn parse_corpus<R: BufRead>(reader: R, keywords: &KeywordSet) -> Result<ParsedCorpus> {
    let mut parsed = ParsedCorpus::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut doc: Document = match serde_json::from_str(&line) {
            Ok(d) => d,
            Err(e) => {
                parsed.errors.push(LineError {
                    line: i + 1,
                    message: e.to_string(),
                });
                continue;
            }
        };
        if doc.text.trim().is_empty() {
            parsed.errors.push(LineError {
                line: i + 1,
                message: "empty text".into(),
            });
            continue;
        }
        doc.emotion = doc.emotion.trim().to_lowercase();
        if !keywords.contains(&doc.emotion) {
            *parsed.skipped_labels.entry(doc.emotion).or_default() += 1;
            continue;
        }
        parsed.documents.push(doc);
    }
    Ok(parsed)
}

/// Writes documents as JSON Lines, the format [`parse_corpus`] reads.
pub fn write_corpus<W: Write>(docs: &[Document], mut out: W) -> Result<()> {
    for doc in docs {
        serde_json::to_writer(&mut out, doc)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Key under which two texts count as duplicates: case-folded with runs of
/// whitespace collapsed to one space.
pub fn normalized_text(text: &str) -> String {
    text.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Drops every document whose normalized text was already seen, keeping the
/// first occurrence.
pub fn dedupe(docs: Vec<Document>) -> Vec<Document> {
    let mut seen = HashSet::with_capacity(docs.len());
    docs.into_iter()
        .filter(|d| seen.insert(normalized_text(&d.text)))
        .collect()
}

/// Sorts into the stable corpus order: `created_at`, then `id`.
pub fn sort_stable(docs: &mut [Document]) {
    docs.sort_by(stable_order);
}

pub(crate) fn stable_order(a: &Document, b: &Document) -> std::cmp::Ordering {
    a.created_at
        .cmp(&b.created_at)
        .then_with(|| a.id.cmp(&b.id))
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;
    use chrono::TimeZone;

    pub fn doc(id: &str, text: &str, emotion: &str, tz: &str) -> Document {
        let secs: i64 = id.bytes().map(|b| b as i64).sum();
        Document {
            id: id.into(),
            text: text.into(),
            emotion: emotion.into(),
            timezone: tz.into(),
            created_at: Utc.timestamp_opt(1_350_000_000 + secs, 0).unwrap(),
        }
    }

    pub fn docs_at(emotion: &str, n: usize) -> Vec<Document> {
        (0..n)
            .map(|i| Document {
                id: format!("{emotion}-{i:06}"),
                text: format!("text {i}"),
                emotion: emotion.into(),
                timezone: "London".into(),
                created_at: Utc.timestamp_opt(1_350_000_000 + i as i64, 0).unwrap(),
            })
            .collect()
    }
}
