//! Maps emotion-labelled text corpora onto a valence/arousal circumplex.
//!
//! The pipeline samples balanced subcorpora ([`corpus`]), builds a
//! log-entropy weighted latent semantic space per subcorpus
//! ([`semspace`]), relabels every document by its nearest neighbour to get
//! an emotion × emotion clustering matrix ([`delsar`]), and turns each
//! matrix row into a normalised (valence, arousal) point with per-emotion
//! centroids and dispersion ([`circumplex`]). [`pipeline`] ties the stages
//! together and [`report`] writes the CSV tables, SVG plots and run
//! manifest.

pub mod circumplex;
pub mod corpus;
pub mod delsar;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod semspace;

pub use error::{Error, Result};
