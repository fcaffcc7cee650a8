use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{stable_order, Document, KeywordSet};
use crate::error::{Error, Result};

/// A balanced set of documents: exactly `n_per_emotion` per keyword, each
/// list in stable corpus order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcorpus {
    pub name: String,
    pub keywords: KeywordSet,
    /// Indexed like `keywords`.
    pub per_emotion: Vec<Vec<Document>>,
    pub n_per_emotion: usize,
}

impl Subcorpus {
    pub fn get(&self, emotion: &str) -> Option<&[Document]> {
        self.keywords
            .index_of(emotion)
            .map(|i| self.per_emotion[i].as_slice())
    }

    pub fn len(&self) -> usize {
        self.per_emotion.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every document with its label index, grouped by emotion in keyword
    /// order.
    pub fn labelled(&self) -> impl Iterator<Item = (usize, &Document)> + '_ {
        self.per_emotion
            .iter()
            .enumerate()
            .flat_map(|(e, docs)| docs.iter().map(move |d| (e, d)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("{available} documents available, {required} required")]
    Insufficient { available: usize, required: usize },
    #[error("start {start} outside [0, {stride})")]
    StartOutOfRange { start: usize, stride: usize },
}

impl SampleError {
    fn named(self, subcorpus: &str, emotion: &str) -> Error {
        match self {
            SampleError::Insufficient {
                available,
                required,
            } => Error::InsufficientDocuments {
                subcorpus: subcorpus.to_string(),
                emotion: emotion.to_string(),
                available,
                required,
            },
            SampleError::StartOutOfRange { start, stride } => {
                Error::StartOutOfRange { start, stride }
            }
        }
    }
}

/// Indices `start, start + s, start + 2s, ...` (n of them) with stride
/// `s = len / n`.
pub fn modulus_indices(
    len: usize,
    n: usize,
    start: usize,
) -> std::result::Result<Vec<usize>, SampleError> {
    if n == 0 || len < n {
        return Err(SampleError::Insufficient {
            available: len,
            required: n.max(1),
        });
    }
    let stride = len / n;
    if start >= stride {
        return Err(SampleError::StartOutOfRange { start, stride });
    }
    Ok((0..n).map(|i| start + i * stride).collect())
}

/// Picks `n` items equally spaced through `items`, beginning at `start`.
pub fn modulus_sample<T: Clone>(
    items: &[T],
    n: usize,
    start: usize,
) -> std::result::Result<Vec<T>, SampleError> {
    Ok(modulus_indices(items.len(), n, start)?
        .into_iter()
        .map(|i| items[i].clone())
        .collect())
}

/// Splits documents by label (keyword order), each group in stable order.
/// Labels outside `keywords` are ignored.
pub(crate) fn group_by_emotion<'a, I>(docs: I, keywords: &KeywordSet) -> Vec<Vec<&'a Document>>
where
    I: IntoIterator<Item = &'a Document>,
{
    let mut groups = vec![Vec::new(); keywords.len()];
    for d in docs {
        if let Some(e) = keywords.index_of(&d.emotion) {
            groups[e].push(d);
        }
    }
    for g in &mut groups {
        g.sort_by(|a, b| stable_order(a, b));
    }
    groups
}

pub(crate) fn sample_groups(
    groups: &[Vec<&Document>],
    name: &str,
    keywords: &KeywordSet,
    n: usize,
    mut start_for: impl FnMut(usize) -> usize,
) -> Result<Subcorpus> {
    let mut per_emotion = Vec::with_capacity(groups.len());
    for (e, group) in groups.iter().enumerate() {
        let emotion = keywords.get(e).unwrap_or_default();
        let stride = group.len().checked_div(n).unwrap_or(0);
        if n == 0 || stride == 0 {
            return Err(SampleError::Insufficient {
                available: group.len(),
                required: n.max(1),
            }
            .named(name, emotion));
        }
        let picked = modulus_sample(group, n, start_for(stride))
            .map_err(|e| e.named(name, emotion))?;
        per_emotion.push(picked.into_iter().cloned().collect());
    }
    Ok(Subcorpus {
        name: name.to_string(),
        keywords: keywords.clone(),
        per_emotion,
        n_per_emotion: n,
    })
}

/// Samples `n_per_emotion` documents for every keyword, evenly spaced from
/// the first document of each emotion in stable order.
pub fn build_subcorpus(
    docs: &[Document],
    name: &str,
    keywords: &KeywordSet,
    n_per_emotion: usize,
) -> Result<Subcorpus> {
    let groups = group_by_emotion(docs, keywords);
    sample_groups(&groups, name, keywords, n_per_emotion, |_| 0)
}

/// Generator for control `index` (0-based): the seed's ChaCha stream number
/// `index`.
pub fn control_stream(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// `count` region-agnostic subcorpora named `control1..controlN`. Each
/// control draws one start per emotion, uniform in `[0, stride)`, from its
/// own stream of the seeded generator.
pub fn make_controls(
    docs: &[Document],
    keywords: &KeywordSet,
    n_per_emotion: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Subcorpus>> {
    let groups = group_by_emotion(docs, keywords);
    controls_from_groups(&groups, keywords, n_per_emotion, count, seed)
}

pub(crate) fn controls_from_groups(
    groups: &[Vec<&Document>],
    keywords: &KeywordSet,
    n_per_emotion: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Subcorpus>> {
    (0..count)
        .map(|c| {
            let mut rng = control_stream(seed, c);
            sample_groups(
                groups,
                &format!("control{}", c + 1),
                keywords,
                n_per_emotion,
                |stride| rng.random_range(0..stride),
            )
        })
        .collect()
}
