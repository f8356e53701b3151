//! Family JSON: `{"n": int, "k": int, "sets": [[int, ...], ...]}`, 1-indexed.

use crate::error::Result;
use crate::family::Family;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::path::Path;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FamilyFile { n: self.n(), k: self.k(), sets: self.to_one_based() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Family, D::Error> {
        let raw = FamilyFile::deserialize(d)?;
        Family::from_one_based(raw.n, raw.k, &raw.sets).map_err(serde::de::Error::custom)
    }
}

/// Parses and validates a family from JSON text.
pub fn family_from_json(text: &str) -> Result<Family> {
    let raw: FamilyFile = serde_json::from_str(text)?;
    Family::from_one_based(raw.n, raw.k, &raw.sets)
}

pub fn family_to_json(f: &Family) -> String {
    serde_json::to_string(f).expect("families always serialize")
}

pub fn read_family(path: &Path) -> Result<Family> {
    family_from_json(&std::fs::read_to_string(path)?)
}
