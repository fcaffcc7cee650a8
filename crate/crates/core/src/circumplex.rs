//! Valence/arousal coordinates from clustering matrices.
//!
//! An emotion's raw valence is the share of its clustering row that lands
//! on theoretically positive emotions; raw arousal is the share landing on
//! engaged ones. Coordinates are then centred on the mean over every point
//! of every subcorpus in the run.

use std::collections::BTreeSet;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::corpus::KeywordSet;
use crate::delsar::ClusteringMatrix;
use crate::error::{Error, Result};

/// Theoretical positive and engaged emotions; everything else is negative
/// or disengaged respectively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmotionCategories {
    pub positive: BTreeSet<String>,
    pub engaged: BTreeSet<String>,
}

impl Default for EmotionCategories {
    fn default() -> Self {
        let set = |words: &[&str]| words.iter().map(|w| w.to_string()).collect();
        EmotionCategories {
            positive: set(&["calm", "excited", "happy", "interested", "sleepy", "surprised"]),
            engaged: set(&["angry", "excited", "interested", "scared", "stressed", "surprised"]),
        }
    }
}

impl EmotionCategories {
    /// Swaps positive and negative within `keywords`.
    pub fn flip_valence(&self, keywords: &KeywordSet) -> Self {
        EmotionCategories {
            positive: keywords
                .iter()
                .filter(|e| !self.positive.contains(*e))
                .map(String::from)
                .collect(),
            engaged: self.engaged.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircumplexPoint {
    pub subcorpus: String,
    pub emotion: String,
    pub raw_valence: f64,
    pub raw_arousal: f64,
    /// Equal to the raw values until [`normalize`] has run.
    pub valence: f64,
    pub arousal: f64,
    pub normalized: bool,
}

/// Raw coordinate of one emotion's clustering row.
pub fn raw_point(
    matrix: &ClusteringMatrix,
    subcorpus: &str,
    emotion: &str,
    categories: &EmotionCategories,
) -> Result<CircumplexPoint> {
    let e = matrix
        .emotions
        .index_of(emotion)
        .ok_or_else(|| Error::UnknownEmotion(emotion.to_string()))?;
    let total = matrix.row_sum(e);
    if total == 0 {
        return Err(Error::Config(format!("clustering row for `{emotion}` is empty")));
    }
    let share = |set: &BTreeSet<String>| {
        let hits: u64 = matrix
            .emotions
            .iter()
            .enumerate()
            .filter(|(_, f)| set.contains(*f))
            .map(|(f, _)| matrix.get(e, f))
            .sum();
        hits as f64 / total as f64
    };
    let (v, a) = (share(&categories.positive), share(&categories.engaged));
    Ok(CircumplexPoint {
        subcorpus: subcorpus.to_string(),
        emotion: emotion.to_string(),
        raw_valence: v,
        raw_arousal: a,
        valence: v,
        arousal: a,
        normalized: false,
    })
}

/// Raw points of every emotion of one subcorpus, in keyword order.
pub fn subcorpus_points(
    matrix: &ClusteringMatrix,
    subcorpus: &str,
    categories: &EmotionCategories,
) -> Result<Vec<CircumplexPoint>> {
    matrix
        .emotions
        .iter()
        .map(|e| raw_point(matrix, subcorpus, e, categories))
        .collect()
}

/// Subtracts the mean raw valence and mean raw arousal of all `points`.
pub fn normalize(points: &mut [CircumplexPoint]) {
    if points.is_empty() {
        return;
    }
    let n = points.len() as f64;
    let mv = points.iter().map(|p| p.raw_valence).sum::<f64>() / n;
    let ma = points.iter().map(|p| p.raw_arousal).sum::<f64>() / n;
    for p in points {
        p.valence = p.raw_valence - mv;
        p.arousal = p.raw_arousal - ma;
        p.normalized = true;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Centroid {
    pub emotion: String,
    pub valence: f64,
    pub arousal: f64,
    /// Sum of Euclidean distances of the emotion's points to the centroid.
    pub distance_sum: f64,
    pub points: usize,
}

/// Per-emotion centroids, in the order emotions first appear.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentroidReport {
    pub centroids: Vec<Centroid>,
}

impl CentroidReport {
    pub fn get(&self, emotion: &str) -> Option<&Centroid> {
        self.centroids.iter().find(|c| c.emotion == emotion)
    }

    /// Ascending by distance sum, ties by emotion name.
    pub fn sorted_by_distance(&self) -> Vec<&Centroid> {
        let mut v: Vec<_> = self.centroids.iter().collect();
        v.sort_by(|a, b| {
            a.distance_sum
                .total_cmp(&b.distance_sum)
                .then_with(|| a.emotion.cmp(&b.emotion))
        });
        v
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["emotion", "cv", "ca", "distance_sum"])?;
        for c in self.sorted_by_distance() {
            w.write_record([
                c.emotion.clone(),
                c.valence.to_string(),
                c.arousal.to_string(),
                c.distance_sum.to_string(),
            ])?;
        }
        w.flush().map_err(Error::Stream)?;
        Ok(())
    }
}

/// One centroid per emotion across all subcorpora, with the total distance
/// of that emotion's points to it.
///
/// This is k-means with one cluster per emotion and the assignment fixed by
/// label, so the fixed point is reached immediately at the mean.
pub fn centroids(points: &[CircumplexPoint]) -> CentroidReport {
    let mut order: Vec<&str> = Vec::new();
    for p in points {
        if !order.contains(&p.emotion.as_str()) {
            order.push(&p.emotion);
        }
    }
    let centroids = order
        .into_iter()
        .map(|emotion| {
            let mine: Vec<_> = points.iter().filter(|p| p.emotion == emotion).collect();
            let n = mine.len() as f64;
            let cv = mine.iter().map(|p| p.valence).sum::<f64>() / n;
            let ca = mine.iter().map(|p| p.arousal).sum::<f64>() / n;
            let distance_sum = mine
                .iter()
                .map(|p| (p.valence - cv).hypot(p.arousal - ca))
                .sum();
            Centroid {
                emotion: emotion.to_string(),
                valence: cv,
                arousal: ca,
                distance_sum,
                points: mine.len(),
            }
        })
        .collect();
    CentroidReport { centroids }
}

/// Mean (positivity, engagement) of one subcorpus's points; every keyword
/// must be present exactly once.
pub fn aggregate_subcorpus(
    subcorpus: &str,
    points: &[CircumplexPoint],
    keywords: &KeywordSet,
) -> Result<(f64, f64)> {
    let mut sum = (0.0, 0.0);
    for emotion in keywords.iter() {
        let p = points
            .iter()
            .find(|p| p.subcorpus == subcorpus && p.emotion == emotion)
            .ok_or_else(|| Error::MissingEmotion {
                subcorpus: subcorpus.to_string(),
                emotion: emotion.to_string(),
            })?;
        sum.0 += p.valence;
        sum.1 += p.arousal;
    }
    let n = keywords.len() as f64;
    Ok((sum.0 / n, sum.1 / n))
}

/// Writes `subcorpus,emotion,raw_valence,raw_arousal,norm_valence,norm_arousal`.
pub fn write_points_csv<W: Write>(points: &[CircumplexPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "subcorpus",
        "emotion",
        "raw_valence",
        "raw_arousal",
        "norm_valence",
        "norm_arousal",
    ])?;
    for p in points {
        w.write_record([
            p.subcorpus.clone(),
            p.emotion.clone(),
            p.raw_valence.to_string(),
            p.raw_arousal.to_string(),
            p.valence.to_string(),
            p.arousal.to_string(),
        ])?;
    }
    w.flush().map_err(Error::Stream)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_row(target: &str) -> ClusteringMatrix {
        let k = KeywordSet::default();
        let t = k.index_of(target).unwrap();
        let rows: Vec<Vec<u64>> = (0..12)
            .map(|_| (0..12).map(|f| if f == t { 1000 } else { 0 }).collect())
            .collect();
        ClusteringMatrix::from_rows(k, &rows).unwrap()
    }

    fn point(sub: &str, emotion: &str, v: f64, a: f64) -> CircumplexPoint {
        CircumplexPoint {
            subcorpus: sub.into(),
            emotion: emotion.into(),
            raw_valence: v,
            raw_arousal: a,
            valence: v,
            arousal: a,
            normalized: false,
        }
    }

    #[test]
    fn default_categories_are_the_table() {
        let c = EmotionCategories::default();
        let k = KeywordSet::default();
        let cat: Vec<(bool, bool)> = k
            .iter()
            .map(|e| (c.positive.contains(e), c.engaged.contains(e)))
            .collect();
        // angry ashamed calm depressed excited happy interested sad scared
        // sleepy stressed surprised
        let expected = [
            (false, true),
            (false, false),
            (true, false),
            (false, false),
            (true, true),
            (true, false),
            (true, true),
            (false, false),
            (false, true),
            (true, false),
            (false, true),
            (true, true),
        ];
        assert_eq!(cat, expected);
    }

    #[test]
    fn mass_on_happy_or_excited() {
        let c = EmotionCategories::default();
        let p = raw_point(&one_row("happy"), "x", "sad", &c).unwrap();
        assert_eq!((p.raw_valence, p.raw_arousal), (1.0, 0.0));
        let p = raw_point(&one_row("excited"), "x", "calm", &c).unwrap();
        assert_eq!((p.raw_valence, p.raw_arousal), (1.0, 1.0));
        assert!(matches!(
            raw_point(&one_row("happy"), "x", "bored", &c),
            Err(Error::UnknownEmotion(_))
        ));
    }

    #[test]
    fn arithmetic_share() {
        let k = KeywordSet::new(["happy", "sad"]).unwrap();
        let m = ClusteringMatrix::from_rows(k, &[vec![623, 377], vec![0, 1000]]).unwrap();
        let c = EmotionCategories::default();
        assert_eq!(raw_point(&m, "x", "happy", &c).unwrap().raw_valence, 0.623);
    }

    #[test]
    fn mean_centering() {
        let mut pts = vec![
            point("a", "x", 0.5, 0.2),
            point("b", "x", 0.6, 0.2),
            point("c", "x", 0.7, 0.2),
        ];
        normalize(&mut pts);
        let v: Vec<f64> = pts.iter().map(|p| p.valence).collect();
        assert!((v[0] + 0.1).abs() < 1e-12 && v[1].abs() < 1e-12 && (v[2] - 0.1).abs() < 1e-12);
        assert!(pts.iter().all(|p| p.normalized && p.arousal.abs() < 1e-15));

        let mut single = vec![point("a", "x", 0.3, 0.9)];
        normalize(&mut single);
        assert_eq!((single[0].valence, single[0].arousal), (0.0, 0.0));
    }

    #[test]
    fn centroid_of_symmetric_pair() {
        let pts = vec![
            point("a", "sad", 0.2, 0.5),
            point("b", "sad", 0.4, 0.5),
            point("a", "calm", 0.9, 0.1),
        ];
        let r = centroids(&pts);
        let sad = r.get("sad").unwrap();
        assert!((sad.valence - 0.3).abs() < 1e-15 && (sad.arousal - 0.5).abs() < 1e-15);
        assert!((sad.distance_sum - 0.2).abs() < 1e-15);
        let calm = r.get("calm").unwrap();
        assert_eq!((calm.valence, calm.arousal, calm.distance_sum), (0.9, 0.1, 0.0));
        let sorted: Vec<_> = r.sorted_by_distance().iter().map(|c| c.emotion.as_str()).collect();
        assert_eq!(sorted, ["calm", "sad"]);
    }

    #[test]
    fn aggregates() {
        let k = KeywordSet::new(["happy", "sad"]).unwrap();
        let pts = vec![point("s", "happy", 0.1, 0.0), point("s", "sad", 0.1, 0.0)];
        let (pos, eng) = aggregate_subcorpus("s", &pts, &k).unwrap();
        assert!((pos - 0.1).abs() < 1e-15);
        assert_eq!(eng, 0.0);
        assert!(matches!(
            aggregate_subcorpus("s", &pts[..1], &k),
            Err(Error::MissingEmotion { .. })
        ));
    }

    #[test]
    fn points_csv_header() {
        let mut buf = Vec::new();
        write_points_csv(&[point("Asia", "sad", 0.25, 0.5)], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "subcorpus,emotion,raw_valence,raw_arousal,norm_valence,norm_arousal\nAsia,sad,0.25,0.5,0.25,0.5\n"
        );
    }

    fn arb_matrix(n: u64) -> impl Strategy<Value = ClusteringMatrix> {
        prop::collection::vec(prop::collection::vec(0u64..100, 12), 12).prop_map(move |raw| {
            // scale each row to sum to n
            let rows: Vec<Vec<u64>> = raw
                .into_iter()
                .map(|r| {
                    let total: u64 = r.iter().sum::<u64>().max(1);
                    let mut scaled: Vec<u64> = r.iter().map(|x| x * n / total).collect();
                    let missing = n - scaled.iter().sum::<u64>();
                    scaled[0] += missing;
                    scaled
                })
                .collect();
            ClusteringMatrix::from_rows(KeywordSet::default(), &rows).unwrap()
        })
    }

    proptest! {
        #[test]
        fn raw_coordinates_are_shares(m in arb_matrix(1000)) {
            let c = EmotionCategories::default();
            let flipped = c.flip_valence(&m.emotions);
            for e in m.emotions.iter() {
                let p = raw_point(&m, "s", e, &c).unwrap();
                let q = raw_point(&m, "s", e, &flipped).unwrap();
                prop_assert!((0.0..=1.0).contains(&p.raw_valence));
                prop_assert!((0.0..=1.0).contains(&p.raw_arousal));
                prop_assert!((p.raw_valence + q.raw_valence - 1.0).abs() <= 2.0 * f64::EPSILON);
                prop_assert!((q.raw_valence - (1.0 - p.raw_valence)).abs() <= 2.0 * f64::EPSILON);
            }
        }

        #[test]
        fn normalization_is_a_translation(ms in prop::collection::vec(arb_matrix(100), 1..6)) {
            let c = EmotionCategories::default();
            let mut pts = Vec::new();
            for (i, m) in ms.iter().enumerate() {
                pts.extend(subcorpus_points(m, &format!("s{i}"), &c).unwrap());
            }
            let raw = pts.clone();
            normalize(&mut pts);
            let n = pts.len() as f64;
            prop_assert!((pts.iter().map(|p| p.valence).sum::<f64>() / n).abs() < 1e-12);
            prop_assert!((pts.iter().map(|p| p.arousal).sum::<f64>() / n).abs() < 1e-12);
            let shift = raw[0].raw_valence - pts[0].valence;
            for (r, p) in raw.iter().zip(&pts) {
                prop_assert!(((r.valence - p.valence) - shift).abs() < 1e-12);
            }
            for c in centroids(&pts).centroids {
                let (dv, da) = pts
                    .iter()
                    .filter(|p| p.emotion == c.emotion)
                    .fold((0.0, 0.0), |acc, p| (acc.0 + p.valence - c.valence, acc.1 + p.arousal - c.arousal));
                prop_assert!(dv.abs() < 1e-12 && da.abs() < 1e-12);
                prop_assert!(c.distance_sum >= 0.0);
            }
            let k = KeywordSet::default();
            let (mut sp, mut se) = (0.0, 0.0);
            for i in 0..ms.len() {
                let (p, e) = aggregate_subcorpus(&format!("s{i}"), &pts, &k).unwrap();
                sp += p;
                se += e;
            }
            prop_assert!((sp / ms.len() as f64).abs() < 1e-12);
            prop_assert!((se / ms.len() as f64).abs() < 1e-12);
        }
    }
}
