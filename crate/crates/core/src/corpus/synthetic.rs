use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use chrono::{DateTime, Duration, Utc};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Document, KeywordSet};
use crate::error::{Error, Result};

const SYLLABLES: [&str; 16] = [
    "ba", "ko", "ri", "mu", "te", "la", "zo", "ne", "pi", "su", "da", "ve", "fo", "gu", "hi", "ja",
];

/// Deterministic three-syllable pseudo-word for `index` (< 4096).
pub fn pseudo_word(index: usize) -> String {
    let mut word = String::with_capacity(6);
    for shift in [8, 4, 0] {
        word.push_str(SYLLABLES[(index >> shift) & 0xf]);
    }
    word
}

/// Recipe for a planted-structure corpus.
///
/// Every emotion owns a vocabulary profile. A document is a bag of tokens,
/// each drawn from the emotion's own profile or, with probability
/// `overlap`, from a pool shared by all emotions, plus the label keyword at
/// a random position. Documents are interleaved across emotions with one
/// second between consecutive timestamps, and the `i`-th document of every
/// emotion gets timezone `timezones[i % timezones.len()]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorSpec {
    pub emotions: KeywordSet,
    pub n_per_emotion: usize,
    /// Size of generated profiles and of the shared pool.
    pub profile_size: usize,
    /// Explicit vocabularies; emotions not listed get generated profiles.
    pub profiles: BTreeMap<String, Vec<String>>,
    pub overlap: f64,
    pub min_tokens: usize,
    pub max_tokens: usize,
    pub timezones: Vec<String>,
    pub start: DateTime<Utc>,
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            emotions: KeywordSet::default(),
            n_per_emotion: 100,
            profile_size: 50,
            profiles: BTreeMap::new(),
            overlap: 0.0,
            min_tokens: 6,
            max_tokens: 12,
            timezones: [
                "Tokyo",
                "London",
                "Eastern Time (US & Canada)",
                "Singapore",
                "Paris",
                "Pacific Time (US & Canada)",
            ]
            .map(String::from)
            .to_vec(),
            start: DateTime::parse_from_rfc3339("2012-10-19T00:00:00Z")
                .expect("valid timestamp")
                .with_timezone(&Utc),
        }
    }
}

impl GeneratorSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        let spec: GeneratorSpec = toml::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    /// The vocabulary each emotion draws from, in keyword order, and the
    /// shared pool.
    pub fn vocabularies(&self) -> (Vec<Vec<String>>, Vec<String>) {
        let n = self.emotions.len();
        let profiles = self
            .emotions
            .iter()
            .enumerate()
            .map(|(e, emotion)| {
                self.profiles.get(emotion).cloned().unwrap_or_else(|| {
                    (0..self.profile_size)
                        .map(|i| pseudo_word(e * self.profile_size + i))
                        .collect()
                })
            })
            .collect();
        let shared = (0..self.profile_size)
            .map(|i| pseudo_word(n * self.profile_size + i))
            .collect();
        (profiles, shared)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n_per_emotion == 0 {
            return bad("n_per_emotion must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.overlap) {
            return bad(format!("overlap {} is outside [0, 1]", self.overlap));
        }
        if self.min_tokens == 0 || self.min_tokens > self.max_tokens {
            return bad(format!(
                "token range {}..={} is empty",
                self.min_tokens, self.max_tokens
            ));
        }
        if self.timezones.is_empty() {
            return bad("no timezones".into());
        }
        for label in self.profiles.keys() {
            if !self.emotions.contains(label) {
                return bad(format!("profile for unknown emotion `{label}`"));
            }
        }
        if (self.emotions.len() + 1) * self.profile_size > 1 << 12 {
            return bad("too many generated profile words".into());
        }
        let (profiles, shared) = self.vocabularies();
        let keywords: HashSet<&str> = self.emotions.iter().collect();
        for (e, profile) in profiles.iter().enumerate() {
            let emotion = self.emotions.get(e).unwrap_or_default();
            if profile.is_empty() {
                return bad(format!("empty vocabulary profile for `{emotion}`"));
            }
            if let Some(w) = profile.iter().find(|w| keywords.contains(w.as_str())) {
                return bad(format!("profile for `{emotion}` contains keyword `{w}`"));
            }
        }
        if self.overlap > 0.0 && shared.is_empty() {
            return bad("overlap requested but the shared pool is empty".into());
        }
        Ok(())
    }
}

/// Generates the corpus described by `spec`; identical seeds give identical
/// corpora.
pub fn generate_synthetic(spec: &GeneratorSpec, seed: u64) -> Result<Vec<Document>> {
    spec.validate()?;
    let (profiles, shared) = spec.vocabularies();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_emotions = spec.emotions.len();
    let mut docs = Vec::with_capacity(spec.n_per_emotion * n_emotions);
    for i in 0..spec.n_per_emotion {
        for (e, emotion) in spec.emotions.iter().enumerate() {
            let serial = i * n_emotions + e;
            let len = rng.random_range(spec.min_tokens..=spec.max_tokens);
            let mut tokens: Vec<&str> = (0..len)
                .map(|_| {
                    let pool = if spec.overlap > 0.0 && rng.random_bool(spec.overlap) {
                        &shared
                    } else {
                        &profiles[e]
                    };
                    pool.choose(&mut rng).expect("non-empty pool").as_str()
                })
                .collect();
            let at = rng.random_range(0..=tokens.len());
            tokens.insert(at, emotion);
            docs.push(Document {
                id: format!("syn{serial:08}"),
                text: tokens.join(" "),
                emotion: emotion.to_string(),
                timezone: spec.timezones[i % spec.timezones.len()].clone(),
                created_at: spec.start + Duration::seconds(serial as i64),
            });
        }
    }
    Ok(docs)
}
