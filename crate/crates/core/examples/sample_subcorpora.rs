//! Evenly spaced sampling of region subcorpora and seeded controls.

use affectmap::corpus::{
    build_subcorpus, generate_synthetic, make_controls, modulus_indices, partition_region,
    GeneratorSpec, RegionConfig,
};

fn main() -> affectmap::Result<()> {
    // 6000 candidates, 1000 wanted: every sixth document
    let picked = modulus_indices(6000, 1000, 0).expect("enough documents");
    println!("first picks {:?} ... last {}", &picked[..4], picked[999]);

    let spec = GeneratorSpec {
        n_per_emotion: 60,
        ..GeneratorSpec::default()
    };
    let docs = generate_synthetic(&spec, 1)?;
    let regions = RegionConfig::default();
    for region in &regions.regions {
        let local = partition_region(&docs, region);
        let sub = build_subcorpus(&local, &region.name, &spec.emotions, 10)?;
        let first = &sub.get("happy").unwrap()[0];
        println!(
            "{:<6} {} of {} documents, first happy: {} ({})",
            sub.name,
            sub.len(),
            local.len(),
            first.id,
            first.timezone
        );
    }

    for control in make_controls(&docs, &spec.emotions, 20, 3, 42)? {
        let ids: Vec<&str> = control.get("sad").unwrap()[..3]
            .iter()
            .map(|d| d.id.as_str())
            .collect();
        println!("{} starts sad at {:?}", control.name, ids);
    }

    match build_subcorpus(&docs, "Everything", &spec.emotions, 61) {
        Err(e) => println!("asking for 61 per emotion: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
