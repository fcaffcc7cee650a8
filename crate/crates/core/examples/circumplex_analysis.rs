//! From clustering matrices to normalized valence/arousal points,
//! per-emotion centroids and subcorpus aggregates.

use affectmap::circumplex::{
    aggregate_subcorpus, centroids, normalize, subcorpus_points, EmotionCategories,
};
use affectmap::corpus::{generate_synthetic, make_controls, GeneratorSpec};
use affectmap::delsar::run_delsar;
use affectmap::semspace::SpaceBuilder;

fn main() -> affectmap::Result<()> {
    let spec = GeneratorSpec {
        n_per_emotion: 300,
        overlap: 0.7,
        ..GeneratorSpec::default()
    };
    let docs = generate_synthetic(&spec, 11)?;
    let subcorpora = make_controls(&docs, &spec.emotions, 100, 3, 5)?;
    let categories = EmotionCategories::default();

    let mut points = Vec::new();
    for sub in &subcorpora {
        let m = run_delsar(sub, &SpaceBuilder::new(24, 0))?;
        points.extend(subcorpus_points(&m, &sub.name, &categories)?);
    }
    normalize(&mut points);

    for sub in &subcorpora {
        let (p, e) = aggregate_subcorpus(&sub.name, &points, &spec.emotions)?;
        println!("{:<9} positivity {p:+.4} engagement {e:+.4}", sub.name);
    }
    println!("\nemotion      valence  arousal  spread");
    for c in centroids(&points).sorted_by_distance() {
        println!(
            "{:<11} {:+.4}  {:+.4}  {:.4}",
            c.emotion, c.valence, c.arousal, c.distance_sum
        );
    }
    Ok(())
}
