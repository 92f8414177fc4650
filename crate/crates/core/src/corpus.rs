//! Bundled table of codes with expected gains.
//!
//! ```json
//! { "entries": [
//!   { "name": "e8", "code": "codes/e8.json", "expected": { "xi": 1.3333, "d": 4 } },
//!   { "name": "c12", "enumerator": { "n": 12, "counts": { "0": "1", "4": "6" } } },
//!   { "name": "sum", "direct_sum": ["codes/rep2.json", "codes/n16.json"] }
//! ] }
//! ```
//! Paths are relative to the table file.

use crate::code::io::load_code;
use crate::code::{direct_sum, Code, EnumOptions, EnumeratorJson, WeightEnumerator};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerator: Option<EnumeratorJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub direct_sum: Vec<PathBuf>,
    #[serde(default)]
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Corpus {
    #[serde(default)]
    pub entries: Vec<CorpusEntry>,
    #[serde(skip)]
    pub dir: PathBuf,
}

/// A resolved entry: the code when one is available, and its enumerator.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub code: Option<Code>,
    pub enumerator: WeightEnumerator,
}

impl Corpus {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut c: Corpus = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        c.dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(c)
    }

    pub fn resolve(&self, e: &CorpusEntry, opts: EnumOptions) -> Result<Resolved> {
        let sources = e.code.is_some() as usize + e.enumerator.is_some() as usize + !e.direct_sum.is_empty() as usize;
        if sources != 1 {
            return Err(Error::InvalidCode(format!(
                "entry {:?} needs exactly one of \"code\", \"enumerator\", \"direct_sum\"",
                e.name
            )));
        }
        let code = if let Some(p) = &e.code {
            load_code(self.dir.join(p), opts)?
        } else if let Some(j) = &e.enumerator {
            return Ok(Resolved { code: None, enumerator: WeightEnumerator::from_json(j)? });
        } else {
            let parts = e.direct_sum.iter().map(|p| load_code(self.dir.join(p), opts)).collect::<Result<Vec<_>>>()?;
            direct_sum(&parts)?
        };
        let code = code.with_name(&e.name);
        let enumerator = code.weight_enumerator_with(opts)?.clone();
        Ok(Resolved { code: Some(code), enumerator })
    }
}
