//! Nearest-neighbour relabelling of a subcorpus.
//!
//! Every document loses its own label keyword, one semantic space is built
//! over the whole subcorpus, and each document votes for the label of its
//! most similar other document. Row `e` of the resulting matrix counts where
//! the `e`-labelled documents landed.

use std::io::Write;

use rayon::prelude::*;

use crate::corpus::{KeywordSet, Subcorpus};
use crate::error::{Error, Result};
use crate::semspace::{tokenize_without, SemanticSpace, SpaceBuilder, TokenStream};

/// Emotion × emotion nearest-neighbour counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusteringMatrix {
    pub emotions: KeywordSet,
    counts: Vec<u64>,
}

impl ClusteringMatrix {
    pub fn zeros(emotions: KeywordSet) -> Self {
        let n = emotions.len();
        ClusteringMatrix {
            emotions,
            counts: vec![0; n * n],
        }
    }

    pub fn from_rows(emotions: KeywordSet, rows: &[Vec<u64>]) -> Result<Self> {
        let n = emotions.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Config(format!("clustering matrix must be {n}×{n}")));
        }
        Ok(ClusteringMatrix {
            emotions,
            counts: rows.concat(),
        })
    }

    pub fn size(&self) -> usize {
        self.emotions.len()
    }

    pub fn get(&self, from: usize, to: usize) -> u64 {
        self.counts[from * self.size() + to]
    }

    pub fn increment(&mut self, from: usize, to: usize) {
        let n = self.size();
        self.counts[from * n + to] += 1;
    }

    pub fn row(&self, from: usize) -> &[u64] {
        let n = self.size();
        &self.counts[from * n..(from + 1) * n]
    }

    pub fn row_sum(&self, from: usize) -> u64 {
        self.row(from).iter().sum()
    }

    /// Share of row `e` on its own emotion.
    pub fn diagonal_fraction(&self, e: usize) -> f64 {
        let total = self.row_sum(e);
        if total == 0 {
            0.0
        } else {
            self.get(e, e) as f64 / total as f64
        }
    }

    /// Header `emotion,<e1>,...,<en>`, then one row per source emotion.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["emotion".to_string()];
        header.extend(self.emotions.iter().map(String::from));
        w.write_record(&header)?;
        for (e, emotion) in self.emotions.iter().enumerate() {
            let mut record = vec![emotion.to_string()];
            record.extend(self.row(e).iter().map(u64::to_string));
            w.write_record(&record)?;
        }
        w.flush().map_err(Error::Stream)?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let header = r.headers()?.clone();
        let emotions = KeywordSet::new(header.iter().skip(1))?;
        let mut rows = Vec::new();
        for (i, record) in r.records().enumerate() {
            let record = record?;
            if record.get(0) != emotions.get(i) {
                return Err(Error::Config(format!(
                    "row {} is labelled `{}`, expected `{}`",
                    i + 1,
                    record.get(0).unwrap_or_default(),
                    emotions.get(i).unwrap_or_default()
                )));
            }
            let row = record
                .iter()
                .skip(1)
                .map(|c| c.parse::<u64>().map_err(|e| Error::Config(format!("count `{c}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::from_rows(emotions, &rows)
    }
}

/// Token streams of a subcorpus in emotion order, each with its own label
/// removed, and the label index of every stream.
pub fn stripped_streams(subcorpus: &Subcorpus) -> (Vec<TokenStream>, Vec<usize>) {
    subcorpus
        .labelled()
        .map(|(e, doc)| (tokenize_without(&doc.text, &doc.emotion), e))
        .unzip()
}

/// Tallies `label[query] → label[nearest(query)]` over every document.
/// Queries run in parallel; the result does not depend on scheduling.
pub fn tally_nearest(
    space: &SemanticSpace,
    labels: &[usize],
    emotions: &KeywordSet,
) -> ClusteringMatrix {
    assert_eq!(space.len(), labels.len());
    let nearest: Vec<usize> = (0..space.len())
        .into_par_iter()
        .map(|q| space.nearest(q))
        .collect();
    let mut matrix = ClusteringMatrix::zeros(emotions.clone());
    for (q, &nn) in nearest.iter().enumerate() {
        matrix.increment(labels[q], labels[nn]);
    }
    matrix
}

/// What happened while building a subcorpus's space.
#[derive(Clone, Debug, PartialEq)]
pub struct DelsarRun {
    pub matrix: ClusteringMatrix,
    pub space_dimension: usize,
    pub requested_dimension: usize,
    pub vocabulary: usize,
    /// Documents that were empty after label stripping.
    pub empty_documents: usize,
    pub zero_vectors: usize,
    pub singular_values: Vec<f64>,
    pub svd_steps: usize,
}

/// Runs the relabelling and returns the matrix with diagnostics.
pub fn run_delsar_detailed(subcorpus: &Subcorpus, builder: &SpaceBuilder) -> Result<DelsarRun> {
    if subcorpus.len() < 2 {
        return Err(Error::Config(format!(
            "subcorpus `{}` needs at least two documents",
            subcorpus.name
        )));
    }
    let (streams, labels) = stripped_streams(subcorpus);
    let space = builder.build(&streams)?;
    let matrix = tally_nearest(&space, &labels, &subcorpus.keywords);
    for e in 0..matrix.size() {
        assert_eq!(
            matrix.row_sum(e),
            subcorpus.per_emotion[e].len() as u64,
            "row sum invariant violated"
        );
    }
    Ok(DelsarRun {
        matrix,
        space_dimension: space.k(),
        requested_dimension: space.requested_k,
        vocabulary: space.vocab.len(),
        empty_documents: streams.iter().filter(|s| s.is_empty()).count(),
        zero_vectors: space.zero_vectors(),
        singular_values: space.singular_values.clone(),
        svd_steps: space.svd_steps,
    })
}

/// Emotion × emotion clustering matrix of `subcorpus`.
pub fn run_delsar(subcorpus: &Subcorpus, builder: &SpaceBuilder) -> Result<ClusteringMatrix> {
    run_delsar_detailed(subcorpus, builder).map(|run| run.matrix)
}
