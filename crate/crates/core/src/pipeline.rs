//! End-to-end runs behind the command-line front end.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circumplex::{
    aggregate_subcorpus, centroids, normalize, subcorpus_points, write_points_csv, CentroidReport,
    CircumplexPoint, EmotionCategories,
};
use crate::corpus::sample::{controls_from_groups, group_by_emotion, sample_groups};
use crate::corpus::{
    dedupe, parse_corpus, write_corpus, Document, GeneratorSpec, KeywordSet, RegionConfig,
    Subcorpus,
};
use crate::delsar::{run_delsar_detailed, DelsarRun};
use crate::error::{Error, Result};
use crate::report::{
    aggregate_plot, centroid_plot, circumplex_plot, sha256_hex, Manifest, OutputDigest,
};
use crate::semspace::SpaceBuilder;

/// Settings of one `analyze` run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    /// Region definitions; the bundled Asia/Europe/NA lists when absent.
    pub regions: Option<PathBuf>,
    /// Restrict the run to these region names, in this order.
    pub only_regions: Vec<String>,
    pub emotions: KeywordSet,
    pub categories: EmotionCategories,
    pub per_emotion: usize,
    pub controls: usize,
    pub seed: u64,
    pub dims: usize,
    pub out: PathBuf,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        RunConfig {
            input: input.into(),
            regions: None,
            only_regions: Vec::new(),
            emotions: KeywordSet::default(),
            categories: EmotionCategories::default(),
            per_emotion: 1000,
            controls: 6,
            seed: 0,
            dims: 36,
            out: out.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.per_emotion == 0 {
            return Err(Error::Config("--per-emotion must be positive".into()));
        }
        if self.dims == 0 {
            return Err(Error::Config("--dims must be positive".into()));
        }
        for e in self.categories.positive.iter().chain(&self.categories.engaged) {
            if !self.emotions.contains(e) {
                return Err(Error::Config(format!(
                    "category emotion `{e}` is not one of the keywords"
                )));
            }
        }
        Ok(())
    }

    pub fn region_config(&self) -> Result<RegionConfig> {
        let all = match &self.regions {
            Some(path) => RegionConfig::load(path)?,
            None => RegionConfig::default(),
        };
        if self.only_regions.is_empty() {
            return Ok(all);
        }
        let picked = self
            .only_regions
            .iter()
            .map(|name| {
                all.get(name)
                    .cloned()
                    .ok_or_else(|| Error::Config(format!("no region named `{name}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        RegionConfig::new(picked)
    }

    /// The parts of the configuration that determine the outputs.
    fn manifest_view(&self, regions: &RegionConfig) -> serde_json::Value {
        serde_json::json!({
            "regions": regions.regions,
            "emotions": self.emotions,
            "categories": self.categories,
            "per_emotion": self.per_emotion,
            "controls": self.controls,
            "seed": self.seed,
            "dims": self.dims,
        })
    }
}

/// Reads a corpus file, failing on any malformed line.
pub fn load_corpus(path: &Path, keywords: &KeywordSet) -> Result<Vec<Document>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_corpus(BufReader::new(file), keywords)?.strict()?.documents)
}

/// Region subcorpora in region order, then the controls.
pub fn build_subcorpora(
    docs: &[Document],
    regions: &RegionConfig,
    keywords: &KeywordSet,
    per_emotion: usize,
    controls: usize,
    seed: u64,
) -> Result<Vec<Subcorpus>> {
    let mut out = Vec::with_capacity(regions.regions.len() + controls);
    for region in &regions.regions {
        let groups = group_by_emotion(docs.iter().filter(|d| region.contains(&d.timezone)), keywords);
        out.push(sample_groups(&groups, &region.name, keywords, per_emotion, |_| 0)?);
    }
    let groups = group_by_emotion(docs, keywords);
    out.extend(controls_from_groups(&groups, keywords, per_emotion, controls, seed)?);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubcorpusResult {
    pub name: String,
    pub documents: usize,
    pub run: DelsarRun,
    pub positivity: f64,
    pub engagement: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Analysis {
    pub documents: usize,
    pub duplicates_removed: usize,
    pub subcorpora: Vec<SubcorpusResult>,
    pub points: Vec<CircumplexPoint>,
    pub centroids: CentroidReport,
    /// Files written, relative to the output directory.
    pub outputs: Vec<OutputDigest>,
}

impl Analysis {
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} documents after removing {} duplicates\n",
            self.documents, self.duplicates_removed
        );
        s.push_str("subcorpus      docs   dims  vocab  positivity  engagement\n");
        for r in &self.subcorpora {
            s.push_str(&format!(
                "{:<12} {:>6} {:>6} {:>6} {:>11.4} {:>11.4}\n",
                r.name,
                r.documents,
                r.run.space_dimension,
                r.run.vocabulary,
                r.positivity,
                r.engagement
            ));
        }
        s
    }

    /// Subcorpora whose space has fewer dimensions than requested.
    pub fn clamped(&self) -> Vec<&SubcorpusResult> {
        self.subcorpora
            .iter()
            .filter(|r| r.run.space_dimension < r.run.requested_dimension)
            .collect()
    }
}

/// File stem for a subcorpus name: lowercase ASCII alphanumerics, anything
/// else as `_`.
pub fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() {
                c.to_ascii_lowercase()
            } else {
                '_'
            }
        })
        .collect()
}

struct OutputDir {
    root: PathBuf,
    written: Vec<OutputDigest>,
}

impl OutputDir {
    fn put(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let path = self.root.join(name);
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        self.written.push(OutputDigest::of(name, bytes));
        Ok(())
    }
}

/// Runs the whole analysis and writes every output under `config.out`.
pub fn analyze(config: &RunConfig) -> Result<Analysis> {
    config.validate()?;
    let regions = config.region_config()?;
    let raw = fs::read(&config.input).map_err(|e| Error::io(&config.input, e))?;
    let parsed = parse_corpus(raw.as_slice(), &config.emotions)?.strict()?;
    let before = parsed.documents.len();
    let docs = dedupe(parsed.documents);
    let duplicates_removed = before - docs.len();

    let subcorpora = build_subcorpora(
        &docs,
        &regions,
        &config.emotions,
        config.per_emotion,
        config.controls,
        config.seed,
    )?;
    drop(docs);

    let builder = SpaceBuilder::new(config.dims, config.seed);
    let runs = subcorpora
        .par_iter()
        .map(|s| run_delsar_detailed(s, &builder))
        .collect::<Result<Vec<_>>>()?;

    let mut points = Vec::new();
    for (s, run) in subcorpora.iter().zip(&runs) {
        points.extend(subcorpus_points(&run.matrix, &s.name, &config.categories)?);
    }
    normalize(&mut points);
    let report = centroids(&points);

    let mut results = Vec::with_capacity(runs.len());
    for (s, run) in subcorpora.iter().zip(runs) {
        let (positivity, engagement) = aggregate_subcorpus(&s.name, &points, &config.emotions)?;
        results.push(SubcorpusResult {
            name: s.name.clone(),
            documents: s.len(),
            run,
            positivity,
            engagement,
        });
    }

    let mut out = OutputDir {
        root: config.out.clone(),
        written: Vec::new(),
    };
    fs::create_dir_all(&out.root).map_err(|e| Error::io(&out.root, e))?;
    for r in &results {
        let mut buf = Vec::new();
        r.run.matrix.write_csv(&mut buf)?;
        out.put(&format!("clustering_{}.csv", file_stem(&r.name)), &buf)?;
    }
    let mut buf = Vec::new();
    write_points_csv(&points, &mut buf)?;
    out.put("points.csv", &buf)?;

    let mut buf = Vec::new();
    report.write_csv(&mut buf)?;
    out.put("centroids.csv", &buf)?;

    let aggregates: Vec<(String, f64, f64)> = results
        .iter()
        .map(|r| (r.name.clone(), r.positivity, r.engagement))
        .collect();
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(["subcorpus", "positivity", "engagement"])?;
        for (name, p, e) in &aggregates {
            w.write_record([name.clone(), p.to_string(), e.to_string()])?;
        }
        w.flush().map_err(Error::Stream)?;
    }
    out.put("aggregates.csv", &buf)?;

    out.put("circumplex.svg", circumplex_plot(&points).to_svg().as_bytes())?;
    out.put("aggregates.svg", aggregate_plot(&aggregates).to_svg().as_bytes())?;
    out.put("centroids.svg", centroid_plot(&report).to_svg().as_bytes())?;

    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.manifest_view(&regions),
        input_sha256: sha256_hex(&raw),
        outputs: out.written.clone(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    let path = out.root.join("manifest.json");
    fs::write(&path, &text).map_err(|e| Error::io(&path, e))?;

    Ok(Analysis {
        documents: before - duplicates_removed,
        duplicates_removed,
        subcorpora: results,
        points,
        centroids: report,
        outputs: out.written,
    })
}

/// Per-emotion document counts by region, with row and column totals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub emotions: Vec<String>,
    pub regions: Vec<String>,
    /// `counts[e][r]`; the last column counts every region-less document too.
    pub counts: Vec<Vec<usize>>,
}

impl Census {
    pub fn count(docs: &[Document], keywords: &KeywordSet, regions: &RegionConfig) -> Self {
        let width = regions.regions.len() + 1;
        let mut counts = vec![vec![0; width]; keywords.len()];
        for d in docs {
            let Some(e) = keywords.index_of(&d.emotion) else {
                continue;
            };
            if let Some(r) = regions.regions.iter().position(|r| r.contains(&d.timezone)) {
                counts[e][r] += 1;
            }
            counts[e][width - 1] += 1;
        }
        Census {
            emotions: keywords.iter().map(String::from).collect(),
            regions: regions.regions.iter().map(|r| r.name.clone()).collect(),
            counts,
        }
    }

    pub fn get(&self, emotion: &str, column: &str) -> Option<usize> {
        let e = self.emotions.iter().position(|x| x == emotion)?;
        let c = if column == "All" {
            self.regions.len()
        } else {
            self.regions.iter().position(|x| x == column)?
        };
        Some(self.counts[e][c])
    }

    pub fn totals(&self) -> Vec<usize> {
        let width = self.regions.len() + 1;
        (0..width).map(|c| self.counts.iter().map(|row| row[c]).sum()).collect()
    }

    /// Plain-text table: one row per emotion, one column per region, then
    /// `All`, then a `Total` row.
    pub fn render(&self) -> String {
        let mut header = vec!["Emotion".to_string()];
        header.extend(self.regions.iter().cloned());
        header.push("All".into());
        let mut rows = vec![header];
        for (e, counts) in self.emotions.iter().zip(&self.counts) {
            let mut row = vec![capitalize(e)];
            row.extend(counts.iter().map(usize::to_string));
            rows.push(row);
        }
        let mut total = vec!["Total".to_string()];
        total.extend(self.totals().iter().map(usize::to_string));
        rows.push(total);

        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
            .collect();
        let mut s = String::new();
        for row in &rows {
            for (c, cell) in row.iter().enumerate() {
                if c == 0 {
                    s.push_str(&format!("{cell:<w$}", w = widths[0]));
                } else {
                    s.push_str(&format!("  {cell:>w$}", w = widths[c]));
                }
            }
            s.push('\n');
        }
        s
    }
}

fn capitalize(word: &str) -> String {
    let mut chars = word.chars();
    match chars.next() {
        Some(c) => c.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

/// Counts a corpus file by emotion and region.
pub fn stats(
    input: &Path,
    regions: &RegionConfig,
    keywords: &KeywordSet,
    deduplicate: bool,
) -> Result<Census> {
    let mut docs = load_corpus(input, keywords)?;
    if deduplicate {
        docs = dedupe(docs);
    }
    Ok(Census::count(&docs, keywords, regions))
}

/// Writes a synthetic corpus and returns the number of documents.
pub fn generate(spec: &GeneratorSpec, seed: u64, output: &Path) -> Result<usize> {
    let docs = crate::corpus::generate_synthetic(spec, seed)?;
    let file = File::create(output).map_err(|e| Error::io(output, e))?;
    let mut w = BufWriter::new(file);
    write_corpus(&docs, &mut w)?;
    w.flush().map_err(|e| Error::io(output, e))?;
    Ok(docs.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::test_util::docs_at;
    use crate::corpus::RegionSpec;

    #[test]
    fn stems() {
        assert_eq!(file_stem("NA"), "na");
        assert_eq!(file_stem("control3"), "control3");
        assert_eq!(file_stem("Latin America/2"), "latin_america_2");
    }

    #[test]
    fn census_layout() {
        let keywords = KeywordSet::new(["happy", "sad"]).unwrap();
        let regions = RegionConfig::new(vec![
            RegionSpec::new("East", ["Tokyo"]),
            RegionSpec::new("West", ["London"]),
        ])
        .unwrap();
        let mut docs = docs_at("happy", 3);
        docs.extend(docs_at("sad", 2));
        for (d, tz) in docs.iter_mut().zip(["London", "Tokyo", "Tokyo", "Tokyo", "Nowhere"]) {
            d.timezone = tz.into();
        }
        let census = Census::count(&docs, &keywords, &regions);
        assert_eq!(census.counts, vec![vec![2, 1, 3], vec![1, 0, 2]]);
        assert_eq!(census.totals(), vec![3, 1, 5]);
        assert_eq!(census.get("sad", "All"), Some(2));
        assert_eq!(census.get("happy", "West"), Some(1));
        assert_eq!(
            census.render(),
            "Emotion  East  West  All\n\
             Happy       2     1    3\n\
             Sad         1     0    2\n\
             Total       3     1    5\n"
        );
    }

    #[test]
    fn region_filter() {
        let mut c = RunConfig::new("in", "out");
        c.only_regions = vec!["NA".into(), "Asia".into()];
        let names: Vec<_> = c.region_config().unwrap().regions.into_iter().map(|r| r.name).collect();
        assert_eq!(names, ["NA", "Asia"]);
        c.only_regions = vec!["Atlantis".into()];
        assert!(c.region_config().is_err());
    }

    #[test]
    fn config_checks() {
        let mut c = RunConfig::new("in", "out");
        assert!(c.validate().is_ok());
        c.per_emotion = 0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new("in", "out");
        c.emotions = KeywordSet::new(["happy", "sad"]).unwrap();
        assert!(c.validate().is_err());
    }
}
