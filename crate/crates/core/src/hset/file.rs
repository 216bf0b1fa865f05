//! Structured-text h-set files.
//!
//! One JSON object per file:
//!
//! ```json
//! {
//!   "name": "N1",
//!   "center": [0, 0, -2.9288690017630725, -1.649404627725545],
//!   "matrix": [[...], [...], [...], [...]],
//!   "u": 2,
//!   "s": 2
//! }
//! ```
//!
//! `matrix` lists the columns of `M`: the first `u` are unstable, the rest
//! stable. Reals keep their decimal spelling so reports can quote exactly
//! what was read; arithmetic uses the nearest binary64.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::HSet;
use crate::error::{Error, Result};

/// A real number together with the decimal text it was read from.
#[derive(Clone, PartialEq)]
pub struct Decimal {
    text: String,
    value: f64,
}

impl Decimal {
    pub fn parse(text: &str) -> Result<Self> {
        let value: f64 = text
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not a real number: `{text}`")))?;
        if !value.is_finite() {
            return Err(Error::Parse(format!("non-finite value `{text}`")));
        }
        Ok(Decimal {
            text: text.trim().to_owned(),
            value,
        })
    }

    /// Shortest decimal that round-trips to `value`.
    pub fn from_f64(value: f64) -> Self {
        Decimal {
            text: format!("{value:?}"),
            value,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn text(&self) -> &str {
        &self.text
    }
}

impl fmt::Debug for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl fmt::Display for Decimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl Serialize for Decimal {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let num = serde_json::Number::from_str(&self.text).map_err(serde::ser::Error::custom)?;
        num.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Decimal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let num = serde_json::Number::deserialize(de)?;
        Decimal::parse(&num.to_string()).map_err(serde::de::Error::custom)
    }
}

/// On-disk representation of an affine h-set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HSetFile {
    pub name: String,
    pub center: Vec<Decimal>,
    pub matrix: Vec<Vec<Decimal>>,
    pub u: usize,
    pub s: usize,
}

impl HSetFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("h-set files always serialize")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn to_hset(&self) -> Result<HSet> {
        let values = |v: &[Decimal]| v.iter().map(Decimal::value).collect::<Vec<_>>();
        HSet::new(
            self.name.clone(),
            values(&self.center),
            self.matrix.iter().map(|c| values(c)).collect(),
            self.u,
            self.s,
        )
    }

    pub fn from_hset(n: &HSet) -> Self {
        let decimals = |v: &[f64]| v.iter().copied().map(Decimal::from_f64).collect();
        HSetFile {
            name: n.name().to_owned(),
            center: decimals(n.center()),
            matrix: n.columns().iter().map(|c| decimals(c)).collect(),
            u: n.u(),
            s: n.s(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "name": "box",
        "center": [0, 0.1, -2.9288690017630725],
        "matrix": [[1, 0, 0], [0, 1, 0], [0, 0, 1e-3]],
        "u": 1,
        "s": 2
    }"#;

    #[test]
    fn decimal_text_is_preserved() {
        let f = HSetFile::from_json(SAMPLE).unwrap();
        assert_eq!(f.center[2].text(), "-2.9288690017630725");
        assert_eq!(f.center[2].value(), -2.9288690017630725);
        assert_eq!(f.matrix[2][2].text(), "1e-3");
        let n = f.to_hset().unwrap();
        assert_eq!(n.u(), 1);
        assert_eq!(n.center()[1], 0.1);
    }

    #[test]
    fn reserialization_keeps_spelling() {
        let f = HSetFile::from_json(SAMPLE).unwrap();
        let again = HSetFile::from_json(&f.to_json()).unwrap();
        assert_eq!(again, f);
        assert!(f.to_json().contains("1e-3"));
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(HSetFile::from_json("{").is_err());
        assert!(HSetFile::from_json(r#"{"name": "x", "center": ["a"], "matrix": [], "u": 0, "s": 1}"#).is_err());
        let bad_dims = r#"{"name": "x", "center": [0, 0], "matrix": [[1, 0], [0, 1]], "u": 2, "s": 1}"#;
        assert!(HSetFile::from_json(bad_dims).unwrap().to_hset().is_err());
    }
}
