//! JSON code files.
//!
//! ```json
//! { "name": "e8", "kind": "linear", "n": 8, "rows": ["10001110", ...] }
//! { "name": "tb75", "kind": "tailbiting", "n": 18, "polys": "7,5" }
//! ```

use super::gray::parse_z4;
use super::word::parse_bits;
use super::{Code, EnumOptions};
use crate::convcode::{PolyBase, TailBitingSpec};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CodeKind {
    Linear,
    Explicit,
    Z4gray,
    Tailbiting,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CodeFile {
    pub name: String,
    pub kind: CodeKind,
    /// Binary length (twice the Z4 length for `z4gray`).
    pub n: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<String>,
    /// Tail-biting generator pair, e.g. `"7,5"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polys: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<PolyBase>,
}

impl CodeFile {
    pub fn to_code(&self, opts: EnumOptions) -> Result<Code> {
        let n = self.n;
        match self.kind {
            CodeKind::Linear | CodeKind::Explicit => {
                let words = self
                    .rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| parse_bits(r, n).map_err(|reason| Error::BadRow { row: i, reason }))
                    .collect::<Result<Vec<_>>>()?;
                if self.kind == CodeKind::Linear {
                    Code::linear(&self.name, n, words)
                } else {
                    Code::explicit(&self.name, n, words)
                }
            }
            CodeKind::Z4gray => {
                if !n.is_multiple_of(2) {
                    return Err(Error::InvalidCode(format!("z4gray length {n} must be even")));
                }
                let rows = self
                    .rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| parse_z4(r, n / 2).map_err(|reason| Error::BadRow { row: i, reason }))
                    .collect::<Result<Vec<_>>>()?;
                Code::z4_gray(&self.name, rows, opts)
            }
            CodeKind::Tailbiting => {
                if !n.is_multiple_of(2) {
                    return Err(Error::InvalidCode(format!("tail-biting length {n} must be even")));
                }
                let polys = self
                    .polys
                    .as_deref()
                    .ok_or_else(|| Error::InvalidCode("tailbiting code needs \"polys\"".into()))?;
                let spec = TailBitingSpec::parse(polys, self.base.unwrap_or(PolyBase::Octal), n / 2)?;
                Ok(spec.build()?.with_name(&self.name))
            }
        }
    }
}

pub fn parse_code_json(text: &str, opts: EnumOptions) -> Result<Code> {
    let f: CodeFile = serde_json::from_str(text)?;
    f.to_code(opts)
}

pub fn load_code(path: impl AsRef<Path>, opts: EnumOptions) -> Result<Code> {
    let text = std::fs::read_to_string(path)?;
    parse_code_json(&text, opts)
}
