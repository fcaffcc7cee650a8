use super::sparse::SparseMatrix;
use super::termdoc::TermDocMatrix;

/// Log-entropy weighted term-document matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedMatrix {
    pub matrix: SparseMatrix,
    /// Global weight `G(i)` of every term, in vocabulary order.
    pub global: Vec<f64>,
}

/// Log-entropy weighting: `w(i,j) = log2(1 + tf(i,j)) * G(i)` with
///
/// ```text
/// G(i) = 1 + Σ_j p(i,j) log2 p(i,j) / log2 n,   p(i,j) = tf(i,j) / gf(i)
/// ```
///
/// where `gf(i)` is the term's total frequency and `n` the number of
/// documents. `G` is 1 for a term confined to one document and 0 for a term
/// spread evenly over all of them. With fewer than two documents every
/// `G(i)` is 1.
pub fn log_entropy(tdm: &TermDocMatrix) -> WeightedMatrix {
    let counts = &tdm.counts;
    let n_docs = counts.ncols();
    let n_terms = counts.nrows();

    let mut gf = vec![0.0; n_terms];
    for (i, _, tf) in counts.entries() {
        gf[i] += tf;
    }

    let global = if n_docs < 2 {
        vec![1.0; n_terms]
    } else {
        let mut plogp = vec![0.0; n_terms];
        for (i, _, tf) in counts.entries() {
            let p = tf / gf[i];
            plogp[i] += p * p.log2();
        }
        let log_n = (n_docs as f64).log2();
        plogp
            .into_iter()
            .map(|s| (1.0 + s / log_n).clamp(0.0, 1.0))
            .collect::<Vec<_>>()
    };

    let matrix = counts.map(|i, _, tf| (1.0 + tf).log2() * global[i]);
    WeightedMatrix { matrix, global }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semspace::build_term_doc;
    use proptest::prelude::*;

    fn tdm(docs: &[Vec<&str>]) -> TermDocMatrix {
        let streams: Vec<_> = docs
            .iter()
            .map(|d| d.iter().map(|s| s.to_string()).collect())
            .collect();
        build_term_doc(&streams).unwrap()
    }

    #[test]
    fn hand_computed_row() {
        // tf row (2, 1, 0) for term "a"; "b" fills the third document
        let m = tdm(&[vec!["a", "a"], vec!["a"], vec!["b"]]);
        let w = log_entropy(&m);
        let g = w.global[0];
        // G = 1 + [(2/3)log2(2/3) + (1/3)log2(1/3)] / log2(3)
        assert!((g - 0.420_619_835_714_304_95).abs() < 1e-12, "{g}");
        assert!((w.matrix.get(0, 0) - 0.666_666_666_666_666_6).abs() < 1e-12);
        assert!((w.matrix.get(0, 1) - g).abs() < 1e-15);
        assert_eq!(w.matrix.get(0, 2), 0.0);
        // "b" occurs once in one document of three
        assert_eq!(w.global[1], 1.0);
    }

    #[test]
    fn evenly_spread_term_has_zero_weight() {
        let m = tdm(&[vec!["a", "x"], vec!["a", "y"], vec!["a", "z"], vec!["a"]]);
        let w = log_entropy(&m);
        assert!(w.global[0].abs() < 1e-15);
        for j in 0..4 {
            assert_eq!(w.matrix.get(0, j), 0.0);
        }
        assert_eq!(w.global[1], 1.0);
    }

    #[test]
    fn single_document_weights_are_one() {
        let m = tdm(&[vec!["a", "a", "b"]]);
        let w = log_entropy(&m);
        assert_eq!(w.global, [1.0, 1.0]);
        assert_eq!(w.matrix.get(0, 0), 3f64.log2());
    }

    /// Direct formula over a dense row, independent of the sparse path.
    fn global_weight(row: &[u32]) -> f64 {
        let n = row.len() as f64;
        let gf: f64 = row.iter().map(|&t| t as f64).sum();
        let s: f64 = row
            .iter()
            .filter(|&&t| t > 0)
            .map(|&t| {
                let p = t as f64 / gf;
                p * p.log2()
            })
            .sum();
        1.0 + s / n.log2()
    }

    proptest! {
        #[test]
        fn global_weights_in_unit_interval(rows in prop::collection::vec(prop::collection::vec(0u32..5, 6), 1..8)) {
            // one term per row, spread over 6 documents
            let mut docs = vec![Vec::new(); 6];
            let names: Vec<String> = (0..rows.len()).map(|i| format!("t{i}")).collect();
            for (i, row) in rows.iter().enumerate() {
                for (j, &tf) in row.iter().enumerate() {
                    for _ in 0..tf {
                        docs[j].push(names[i].as_str());
                    }
                }
            }
            prop_assume!(docs.iter().any(|d| !d.is_empty()));
            let m = tdm(&docs);
            let w = log_entropy(&m);
            for (t, &g) in m.vocab.iter().zip(&w.global) {
                prop_assert!((0.0..=1.0).contains(&g));
                let i: usize = t[1..].parse().unwrap();
                prop_assert!((g - global_weight(&rows[i]).clamp(0.0, 1.0)).abs() < 1e-12);
            }
        }

        #[test]
        fn concentration_never_lowers_weight(gf in 1u32..12, spread in 1usize..12, n in 2usize..14) {
            // "a" and "b" share a total frequency; "a" sits in fewer documents
            let spread = spread.min(n).min(gf as usize);
            let fewer = spread.saturating_sub(1).max(1);
            let mut docs = vec![Vec::new(); n];
            for t in 0..gf as usize {
                docs[t % fewer].push("a");
                docs[t % spread].push("b");
            }
            let w = log_entropy(&tdm(&docs));
            prop_assert!(w.global[0] >= w.global[1] - 1e-12);
        }
    }
}
