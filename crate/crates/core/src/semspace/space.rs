use serde::{Deserialize, Serialize};

use super::svd::{truncated_svd, SvdOptions};
use super::termdoc::build_term_doc;
use super::weighting::log_entropy;
use super::TokenStream;
use crate::error::{Error, Result};

/// Document vectors in a reduced latent space, one row of `V Σ` per
/// document.
#[derive(Clone, Debug, PartialEq)]
pub struct SemanticSpace {
    k: usize,
    vectors: Vec<f64>,
    norms: Vec<f64>,
    pub singular_values: Vec<f64>,
    /// Global log-entropy weight per term, aligned with `vocab`.
    pub global_weights: Vec<f64>,
    pub vocab: Vec<String>,
    /// Dimension asked for, before clamping to the matrix rank bound.
    pub requested_k: usize,
    pub svd_steps: usize,
}

impl SemanticSpace {
    /// A space over given vectors, without any term statistics.
    pub fn from_vectors(vectors: &[Vec<f64>]) -> Result<Self> {
        let k = vectors.first().map_or(0, Vec::len);
        if k == 0 || vectors.iter().any(|v| v.len() != k) {
            return Err(Error::Config("vectors must share a non-zero length".into()));
        }
        if vectors.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Config("non-finite vector component".into()));
        }
        let flat: Vec<f64> = vectors.iter().flatten().copied().collect();
        Ok(Self::assemble(k, flat, Vec::new(), Vec::new(), Vec::new(), k, 0))
    }

    fn assemble(
        k: usize,
        vectors: Vec<f64>,
        singular_values: Vec<f64>,
        global_weights: Vec<f64>,
        vocab: Vec<String>,
        requested_k: usize,
        svd_steps: usize,
    ) -> Self {
        let norms = vectors.chunks_exact(k).map(norm).collect();
        SemanticSpace {
            k,
            vectors,
            norms,
            singular_values,
            global_weights,
            vocab,
            requested_k,
            svd_steps,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn vector(&self, doc: usize) -> &[f64] {
        &self.vectors[doc * self.k..(doc + 1) * self.k]
    }

    pub fn clamped(&self) -> bool {
        self.k < self.requested_k
    }

    /// Documents whose vector is entirely zero.
    pub fn zero_vectors(&self) -> usize {
        self.norms.iter().filter(|&&n| n == 0.0).count()
    }

    /// Cosine similarity of two documents, computed exactly as [`cosine`]
    /// but with cached norms.
    pub fn similarity(&self, a: usize, b: usize) -> f64 {
        cosine_with_norms(self.vector(a), self.vector(b), self.norms[a], self.norms[b])
    }

    /// Most similar other document; ties go to the lowest index.
    pub fn nearest(&self, query: usize) -> usize {
        let q = self.vector(query);
        let nq = self.norms[query];
        let mut best = usize::MAX;
        let mut best_sim = f64::NEG_INFINITY;
        for j in 0..self.len() {
            if j == query {
                continue;
            }
            let s = cosine_with_norms(q, self.vector(j), nq, self.norms[j]);
            if s > best_sim {
                best_sim = s;
                best = j;
            }
        }
        best
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn cosine_with_norms(u: &[f64], v: &[f64], nu: f64, nv: f64) -> f64 {
    if nu == 0.0 || nv == 0.0 {
        return 0.0;
    }
    dot(u, v) / (nu * nv)
}

/// `u·v / (|u||v|)`, or 0 when either vector is zero.
pub fn cosine(u: &[f64], v: &[f64]) -> f64 {
    assert_eq!(u.len(), v.len(), "cosine of vectors with different lengths");
    cosine_with_norms(u, v, norm(u), norm(v))
}

/// Index of the document most similar to `query`, excluding the query
/// itself; ties go to the lowest index.
pub fn nearest_document(query: usize, space: &SemanticSpace) -> usize {
    assert!(space.len() >= 2, "nearest neighbour needs at least two documents");
    assert!(query < space.len(), "query {query} out of range");
    space.nearest(query)
}

/// Tokens to space: term counts, log-entropy weighting, truncated SVD.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceBuilder {
    pub k: usize,
    pub svd: SvdOptions,
}

impl SpaceBuilder {
    pub fn new(k: usize, seed: u64) -> Self {
        SpaceBuilder {
            k,
            svd: SvdOptions {
                seed,
                ..SvdOptions::default()
            },
        }
    }

    pub fn build(&self, streams: &[TokenStream]) -> Result<SemanticSpace> {
        let tdm = build_term_doc(streams)?;
        let weighted = log_entropy(&tdm);
        let svd = truncated_svd(&weighted.matrix, self.k, &self.svd)?;
        let scaled = svd.scaled_right();
        let k = svd.rank();
        let mut vectors = Vec::with_capacity(scaled.nrows() * k);
        for (j, row) in scaled.row_iter().enumerate() {
            if weighted.matrix.column(j).next().is_none() {
                vectors.extend(std::iter::repeat_n(0.0, k));
            } else {
                vectors.extend(row.iter().copied());
            }
        }
        Ok(SemanticSpace::assemble(
            k,
            vectors,
            svd.singular_values,
            weighted.global,
            tdm.vocab,
            self.k,
            svd.steps,
        ))
    }
}

impl Default for SpaceBuilder {
    /// 36 dimensions.
    fn default() -> Self {
        SpaceBuilder::new(36, 0)
    }
}
