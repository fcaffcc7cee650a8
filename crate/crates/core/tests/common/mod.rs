//! Reference implementations and fixtures shared by the integration tests.
#![allow(dead_code)]

use affectmap::corpus::{build_subcorpus, generate_synthetic, GeneratorSpec, Subcorpus};
use affectmap::delsar::ClusteringMatrix;
use affectmap::semspace::{cosine, tokenize_without, SpaceBuilder, SparseMatrix, TokenStream};
use nalgebra::DMatrix;
use rand::Rng;

/// Singular values by one-sided Jacobi rotations, largest first.
pub fn jacobi_singular_values(a: &DMatrix<f64>) -> Vec<f64> {
    let mut u = if a.nrows() >= a.ncols() {
        a.clone()
    } else {
        a.transpose()
    };
    let (m, n) = u.shape();
    for _sweep in 0..100 {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for i in 0..m {
                    alpha += u[(i, p)] * u[(i, p)];
                    beta += u[(i, q)] * u[(i, q)];
                    gamma += u[(i, p)] * u[(i, q)];
                }
                if alpha == 0.0 || beta == 0.0 || gamma.abs() <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let (up, uq) = (u[(i, p)], u[(i, q)]);
                    u[(i, p)] = c * up - s * uq;
                    u[(i, q)] = s * up + c * uq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n).map(|j| u.column(j).norm()).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// Random non-negative sparse matrix shaped like a weighted term-document
/// matrix.
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> SparseMatrix {
    let mut columns = vec![Vec::new(); cols];
    for column in &mut columns {
        for i in 0..rows {
            if rng.random_bool(density) {
                column.push((i, rng.random_range(0.05..2.0)));
            }
        }
    }
    SparseMatrix::from_columns(rows, columns)
}

/// Clustering matrix from the full pairwise similarity table: each document
/// goes to the label of its most similar other document, first index on
/// ties.
pub fn brute_force_delsar(sub: &Subcorpus, builder: &SpaceBuilder) -> ClusteringMatrix {
    let (labels, streams): (Vec<usize>, Vec<TokenStream>) = sub
        .labelled()
        .map(|(e, d)| (e, tokenize_without(&d.text, sub.keywords.get(e).unwrap())))
        .unzip();
    let space = builder.build(&streams).unwrap();
    let n = space.len();
    let sim: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| cosine(space.vector(i), space.vector(j))).collect())
        .collect();
    let mut m = ClusteringMatrix::zeros(sub.keywords.clone());
    for i in 0..n {
        let mut best: Option<usize> = None;
        for j in (0..n).filter(|&j| j != i) {
            if best.is_none_or(|b| sim[i][j] > sim[i][b]) {
                best = Some(j);
            }
        }
        m.increment(labels[i], labels[best.unwrap()]);
    }
    m
}

/// Synthetic subcorpus with `n` documents per default emotion.
pub fn planted_subcorpus(n: usize, overlap: f64, profile_size: usize, seed: u64) -> Subcorpus {
    let spec = GeneratorSpec {
        n_per_emotion: n,
        overlap,
        profile_size,
        ..GeneratorSpec::default()
    };
    let docs = generate_synthetic(&spec, seed).unwrap();
    build_subcorpus(&docs, "planted", &spec.emotions, n).unwrap()
}

pub fn diagonal_fractions(m: &ClusteringMatrix) -> Vec<f64> {
    (0..m.size()).map(|e| m.diagonal_fraction(e)).collect()
}
