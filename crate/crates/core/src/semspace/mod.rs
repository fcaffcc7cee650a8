//! Latent semantic spaces: tokenization, term-document counts, log-entropy
//! weighting, truncated SVD and cosine nearest neighbours.

mod space;
mod sparse;
mod svd;
mod termdoc;
mod tokenize;
mod weighting;

pub use space::{cosine, nearest_document, SemanticSpace, SpaceBuilder};
pub use sparse::SparseMatrix;
pub use svd::{truncated_svd, SvdMethod, SvdOptions, TruncatedSvd};
pub use termdoc::{build_term_doc, TermDocMatrix};
pub use tokenize::{tokenize, tokenize_without, TokenStream};
pub use weighting::{log_entropy, WeightedMatrix};
