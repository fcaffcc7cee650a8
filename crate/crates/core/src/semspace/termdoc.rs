use std::collections::HashMap;

use super::sparse::SparseMatrix;
use super::TokenStream;
use crate::error::{Error, Result};

/// Raw term frequencies: rows are terms (in first-seen order), columns are
/// documents in input order.
#[derive(Clone, Debug, PartialEq)]
pub struct TermDocMatrix {
    pub vocab: Vec<String>,
    pub index: HashMap<String, usize>,
    pub counts: SparseMatrix,
}

impl TermDocMatrix {
    pub fn n_terms(&self) -> usize {
        self.vocab.len()
    }

    pub fn n_docs(&self) -> usize {
        self.counts.ncols()
    }

    /// Occurrences of `term` in document `doc`.
    pub fn tf(&self, term: &str, doc: usize) -> u32 {
        self.index
            .get(term)
            .map_or(0, |&i| self.counts.get(i, doc) as u32)
    }
}

/// Counts every token of every document. Fails only when no document has
/// a single token.
pub fn build_term_doc(streams: &[TokenStream]) -> Result<TermDocMatrix> {
    let mut vocab = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut columns = Vec::with_capacity(streams.len());
    for stream in streams {
        let mut column: Vec<(usize, f64)> = Vec::with_capacity(stream.len());
        for token in stream {
            let row = *index.entry(token.clone()).or_insert_with(|| {
                vocab.push(token.clone());
                vocab.len() - 1
            });
            column.push((row, 1.0));
        }
        columns.push(column);
    }
    if vocab.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(TermDocMatrix {
        counts: SparseMatrix::from_columns(vocab.len(), columns),
        vocab,
        index,
    })
}
