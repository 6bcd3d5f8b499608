use std::collections::HashSet;

use serde::Deserialize;
use thiserror::Error;

const BUILTIN: &str = include_str!("../checks.toml");

/// One golden or property check: what it is, where it comes from, and the
/// exact string the computation must produce.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub id: String,
    pub suite: String,
    pub reference: String,
    pub expected: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(rename = "check")]
    pub checks: Vec<CheckSpec>,
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("manifest: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("duplicate check id {0:?}")]
    Duplicate(String),
}

impl Manifest {
    /// The manifest bundled with the binary.
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("bundled manifest is valid")
    }

    pub fn parse(text: &str) -> Result<Self, ManifestError> {
        let manifest: Manifest = toml::from_str(text)?;
        let mut seen = HashSet::new();
        for c in &manifest.checks {
            if !seen.insert(c.id.as_str()) {
                return Err(ManifestError::Duplicate(c.id.clone()));
            }
        }
        Ok(manifest)
    }

    pub fn suites(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.checks {
            if !out.contains(&c.suite.as_str()) {
                out.push(&c.suite);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_parses() {
        let m = Manifest::builtin();
        assert!(!m.checks.is_empty());
        assert_eq!(
            m.suites(),
            ["free2", "largeness", "magnus", "congruence", "affine", "properties"]
        );
        for c in &m.checks {
            assert!(c.id.starts_with(&format!("{}.", c.suite)), "{}", c.id);
        }
    }

    #[test]
    fn duplicates_rejected() {
        let text = r#"
[[check]]
id = "a.b"
suite = "a"
reference = "r"
expected = "1"

[[check]]
id = "a.b"
suite = "a"
reference = "r"
expected = "2"
"#;
        assert!(matches!(Manifest::parse(text), Err(ManifestError::Duplicate(_))));
        assert!(Manifest::parse("[[check]]\nid = 1\n").is_err());
    }
}
