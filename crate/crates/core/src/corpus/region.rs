use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Document;
use crate::error::{Error, Result};

const DEFAULT_REGIONS: &str = include_str!("../../config/regions.toml");

/// A named set of timezones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub name: String,
    pub timezones: BTreeSet<String>,
}

impl RegionSpec {
    pub fn new<I, S>(name: impl Into<String>, timezones: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        RegionSpec {
            name: name.into(),
            timezones: timezones.into_iter().map(Into::into).collect(),
        }
    }

    pub fn contains(&self, timezone: &str) -> bool {
        self.timezones.contains(timezone)
    }
}

/// Ordered list of regions with pairwise disjoint timezone sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionConfig {
    #[serde(rename = "region")]
    pub regions: Vec<RegionSpec>,
}

impl RegionConfig {
    pub fn new(regions: Vec<RegionSpec>) -> Result<Self> {
        let config = RegionConfig { regions };
        config.validate()?;
        Ok(config)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: RegionConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn get(&self, name: &str) -> Option<&RegionSpec> {
        self.regions.iter().find(|r| r.name == name)
    }

    /// Region owning `timezone`, if any.
    pub fn region_of(&self, timezone: &str) -> Option<&RegionSpec> {
        self.regions.iter().find(|r| r.contains(timezone))
    }

    fn validate(&self) -> Result<()> {
        let mut owner: HashMap<&str, &str> = HashMap::new();
        let mut names = BTreeSet::new();
        for region in &self.regions {
            if !names.insert(region.name.as_str()) {
                return Err(Error::Config(format!("duplicate region `{}`", region.name)));
            }
            if region.timezones.is_empty() {
                return Err(Error::Config(format!("region `{}` has no timezones", region.name)));
            }
            for tz in &region.timezones {
                if let Some(prev) = owner.insert(tz, &region.name) {
                    return Err(Error::Config(format!(
                        "timezone `{tz}` belongs to both `{prev}` and `{}`",
                        region.name
                    )));
                }
            }
        }
        Ok(())
    }
}

impl Default for RegionConfig {
    /// Asia, Europe and NA.
    fn default() -> Self {
        Self::from_toml(DEFAULT_REGIONS).expect("bundled region config is valid")
    }
}

/// Documents whose timezone belongs to `region`, in their original order.
pub fn partition_region(docs: &[Document], region: &RegionSpec) -> Vec<Document> {
    docs.iter()
        .filter(|d| region.contains(&d.timezone))
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::dedupe;
    use crate::corpus::test_util::doc;
    use proptest::prelude::*;

    #[test]
    fn default_regions_match_bundled_lists() {
        let cfg = RegionConfig::default();
        let names: Vec<_> = cfg.regions.iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["Asia", "Europe", "NA"]);
        assert_eq!(cfg.get("Asia").unwrap().timezones.len(), 7);
        assert_eq!(cfg.get("Europe").unwrap().timezones.len(), 7);
        assert_eq!(cfg.get("NA").unwrap().timezones.len(), 4);
        assert_eq!(cfg.region_of("Dublin").unwrap().name, "Europe");
        assert!(cfg.region_of("Eastern Time (US & Canada)").is_some());
        assert!(cfg.region_of("Quito").is_none());
    }

    #[test]
    fn overlapping_regions_are_rejected() {
        let err = RegionConfig::new(vec![
            RegionSpec::new("A", ["London"]),
            RegionSpec::new("B", ["London", "Paris"]),
        ])
        .unwrap_err();
        assert!(err.to_string().contains("London"));
        assert!(RegionConfig::new(vec![RegionSpec::new("A", Vec::<String>::new())]).is_err());
    }

    #[test]
    fn partition_keeps_matching_docs_in_order() {
        let europe = RegionConfig::default().get("Europe").unwrap().clone();
        let docs = vec![
            doc("1", "x", "happy", "London"),
            doc("2", "y", "happy", "Tokyo"),
            doc("3", "z", "sad", "Paris"),
        ];
        let ids: Vec<_> = partition_region(&docs, &europe)
            .into_iter()
            .map(|d| d.id)
            .collect();
        assert_eq!(ids, ["1", "3"]);
        assert!(partition_region(&docs[1..2], &europe).is_empty());
    }

    #[test]
    fn dedupe_and_partition_do_not_commute_across_timezones() {
        // The same text posted from two regions: deduplicating first keeps
        // only the Tokyo copy, filtering first keeps the London one.
        let europe = RegionConfig::default().get("Europe").unwrap().clone();
        let docs = vec![
            doc("1", "same text", "happy", "Tokyo"),
            doc("2", "same text", "happy", "London"),
        ];
        assert!(partition_region(&dedupe(docs.clone()), &europe).is_empty());
        assert_eq!(dedupe(partition_region(&docs, &europe)).len(), 1);
    }

    proptest! {
        // Commutes whenever duplicate texts never straddle timezones.
        #[test]
        fn dedupe_commutes_with_partition(items in prop::collection::vec(0usize..8, 0..40)) {
            let tzs = ["London", "Tokyo", "Paris", "Berlin"];
            let docs: Vec<_> = items
                .iter()
                .enumerate()
                .map(|(i, &t)| {
                    let tz = tzs[t % tzs.len()];
                    doc(&format!("{i:03}"), &format!("text {t}"), "calm", tz)
                })
                .collect();
            let europe = RegionConfig::default().get("Europe").unwrap().clone();
            prop_assert_eq!(
                partition_region(&dedupe(docs.clone()), &europe),
                dedupe(partition_region(&docs, &europe))
            );
        }
    }
}
