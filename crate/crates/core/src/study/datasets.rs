//! Embedded survival datasets and the plain-text loader.

use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::estimation::Sample;

const BLADDER_TEXT: &str = include_str!("../../data/bladder.txt");
const GUINEA_TEXT: &str = include_str!("../../data/guinea.txt");

pub const BLADDER_SHA256: &str = "4fb8d0eae31e029aaab00460197325234d5182a59107a2adb49b4b6883bf13bb";
pub const GUINEA_SHA256: &str = "44d14bc74f7a4247a08661400d67a8d1fe6af13576a2a6e0764c356386b81b2a";

/// Names accepted by [`by_name`].
pub const DATASET_NAMES: [&str; 2] = ["bladder", "guinea"];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dataset {
    pub name: String,
    pub values: Vec<f64>,
    pub source: String,
}

impl Dataset {
    pub fn sample(&self) -> Result<Sample> {
        Sample::new(self.values.clone())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Parses one decimal per line; `#` starts a comment and blank lines are skipped.
pub fn parse_values(text: &str) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let v: f64 = body
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: '{body}' is not a number", lineno + 1)))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Parse(format!("line {}: {v} is not a finite positive number", lineno + 1)));
        }
        out.push(v);
    }
    Ok(out)
}

/// Lower-case hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn embedded(name: &str, text: &str, sha: &str, source: &str) -> Dataset {
    debug_assert_eq!(sha256_hex(text.as_bytes()), sha, "embedded {name} data altered");
    Dataset {
        name: name.to_string(),
        values: parse_values(text).expect("embedded data parses"),
        source: source.to_string(),
    }
}

/// Remission times in months of 128 bladder cancer patients.
pub fn bladder() -> Dataset {
    embedded("bladder", BLADDER_TEXT, BLADDER_SHA256, "Lee and Wang (2003), bladder cancer remission times")
}

/// Survival times in days of 72 guinea pigs infected with tubercle bacilli.
pub fn guinea() -> Dataset {
    embedded("guinea", GUINEA_TEXT, GUINEA_SHA256, "Gross and Clark (1975), infected guinea pig survival times")
}

pub fn by_name(name: &str) -> Result<Dataset> {
    match name.to_ascii_lowercase().as_str() {
        "bladder" => Ok(bladder()),
        "guinea" | "guinea-pigs" | "guinea_pigs" => Ok(guinea()),
        other => Err(Error::InvalidParameter(format!(
            "unknown dataset '{other}' (expected one of {})",
            DATASET_NAMES.join(", ")
        ))),
    }
}

pub fn from_file(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(Dataset {
        name: path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
        values: parse_values(&text)?,
        source: path.display().to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_counts_and_checksums() {
        assert_eq!(bladder().len(), 128);
        assert_eq!(guinea().len(), 72);
        assert_eq!(sha256_hex(BLADDER_TEXT.as_bytes()), BLADDER_SHA256);
        assert_eq!(sha256_hex(GUINEA_TEXT.as_bytes()), GUINEA_SHA256);
    }

    #[test]
    fn printed_oddities_preserved() {
        let g = guinea().values;
        assert_eq!(&g[17..21], &[1.07, 7.0, 0.08, 1.08]);
        let b = bladder().values;
        assert!(b.contains(&3.5) && b.contains(&2.0));
    }

    #[test]
    fn parser_handles_comments_and_errors() {
        assert_eq!(parse_values("# head\n1.5\n\n  2 # tail\n").unwrap(), vec![1.5, 2.0]);
        assert!(matches!(parse_values("1\nabc\n"), Err(Error::Parse(_))));
        assert!(parse_values("-1\n").is_err());
        assert!(parse_values("").unwrap().is_empty());
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(by_name("Bladder").unwrap().name, "bladder");
        assert!(by_name("nope").is_err());
    }
}
