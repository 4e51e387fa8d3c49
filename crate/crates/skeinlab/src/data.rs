//! The bundled table of named links.
//!
//! The table is a versioned TOML file. `SKEINLAB_DATA` may point at a directory holding a
//! replacement `links.toml`.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classical::jones;
use crate::diagram::{parse_pd, BraidWord, LinkDiagram};
use crate::error::{Error, Result};
use crate::poly::{parse_fraction, LaurentFraction};

const BUNDLED: &str = include_str!("../data/links.toml");
pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkTableEntry {
    pub name: String,
    #[serde(default)]
    pub pd: Option<String>,
    /// Alternative to `pd`: a braid word and its strand count.
    #[serde(default)]
    pub braid: Option<String>,
    #[serde(default)]
    pub strands: Option<usize>,
    #[serde(default)]
    pub orientation: String,
    #[serde(default)]
    pub jones: Option<String>,
    #[serde(default)]
    pub source: String,
}

impl LinkTableEntry {
    /// Name with its orientation tag, e.g. `L11n358{0,1}`.
    pub fn label(&self) -> String {
        format!("{}{}", self.name, self.orientation)
    }

    pub fn diagram(&self) -> Result<LinkDiagram> {
        match (&self.pd, &self.braid) {
            (Some(pd), _) => Ok(parse_pd(pd)?),
            (None, Some(w)) => Ok(BraidWord::parse(w, self.strands)?.closure()?),
            (None, None) => Err(Error::MissingData(format!("{} has no diagram", self.name))),
        }
    }

    pub fn expected_jones(&self) -> Result<Option<LaurentFraction>> {
        self.jones
            .as_deref()
            .map(|j| parse_fraction(j).map_err(Error::from))
            .transpose()
    }

    /// Checks the computed Jones polynomial against the recorded one.
    pub fn validate(&self) -> Result<bool> {
        match self.expected_jones()? {
            Some(want) => Ok(jones(&self.diagram()?)? == want),
            None => Ok(true),
        }
    }
}

#[derive(Debug, Deserialize)]
struct TableFile {
    format: u32,
    #[serde(default)]
    link: Vec<LinkTableEntry>,
}

#[derive(Clone, Debug, Default)]
pub struct LinkTable {
    pub entries: Vec<LinkTableEntry>,
    pub origin: String,
}

impl LinkTable {
    pub fn from_toml(text: &str, origin: &str) -> Result<Self> {
        let file: TableFile = toml::from_str(text)
            .map_err(|e| Error::MissingData(format!("{origin}: {e}")))?;
        if file.format != FORMAT {
            return Err(Error::MissingData(format!(
                "{origin}: unsupported table format {}",
                file.format
            )));
        }
        Ok(LinkTable {
            entries: file.link,
            origin: origin.to_string(),
        })
    }

    pub fn bundled() -> Self {
        Self::from_toml(BUNDLED, "bundled").expect("bundled table parses")
    }

    /// `$SKEINLAB_DATA/links.toml` when the variable is set, the bundled table otherwise.
    pub fn load() -> Result<Self> {
        match std::env::var_os("SKEINLAB_DATA") {
            Some(dir) => Self::load_dir(Path::new(&dir)),
            None => Ok(Self::bundled()),
        }
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let path: PathBuf = dir.join("links.toml");
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::MissingData(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text, &path.display().to_string())
    }

    /// Looks up by label (`L11n358{0,1}`) or by bare name.
    pub fn get(&self, label: &str) -> Option<&LinkTableEntry> {
        self.entries
            .iter()
            .find(|e| e.label() == label)
            .or_else(|| self.entries.iter().find(|e| e.name == label))
    }

    pub fn diagram(&self, label: &str) -> Result<LinkDiagram> {
        self.get(label)
            .ok_or_else(|| Error::MissingData(format!("no entry {label:?} in {}", self.origin)))?
            .diagram()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_table_loads() {
        let t = LinkTable::bundled();
        assert!(t.get("L11n358{0,1}").is_some());
        assert!(t.get("4_1").is_some());
        assert_eq!(t.diagram("unlink2").unwrap().n_components(), 2);
    }

    #[test]
    fn wrong_format_is_rejected() {
        assert!(LinkTable::from_toml("format = 7\n", "x").is_err());
    }
}
