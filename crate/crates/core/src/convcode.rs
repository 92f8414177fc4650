//! Rate-1/2 tail-biting convolutional codes as [2L, L] block codes.
//!
//! Polynomials follow the usual octal convention: the octal digits give a bit
//! string, strings of a pair are right-aligned to a common length, and the
//! leftmost bit is the coefficient of D^0. Internally bit j of `g1`/`g2`
//! holds the coefficient of D^j.

use crate::code::{Code, EnumOptions, Word, WeightEnumerator};
use crate::error::{Error, Result};
use crate::par;
use crate::secrecy::{necessary_condition_score, strong_secrecy_gain, GainOptions};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyBase {
    #[default]
    Octal,
    Binary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailBitingSpec {
    pub g1: u64,
    pub g2: u64,
    pub memory: usize,
    pub length: usize,
}

fn degree(g: u64) -> Option<usize> {
    if g == 0 {
        None
    } else {
        Some(63 - g.leading_zeros() as usize)
    }
}

/// Reverses the low `len` bits.
fn reverse_bits(v: u64, len: usize) -> u64 {
    (0..len).fold(0, |acc, j| acc | (((v >> j) & 1) << (len - 1 - j)))
}

impl TailBitingSpec {
    pub fn new(g1: u64, g2: u64, length: usize) -> Result<Self> {
        let memory = match (degree(g1), degree(g2)) {
            (None, None) => return Err(Error::Construction("both generator polynomials are zero".into())),
            (a, b) => a.unwrap_or(0).max(b.unwrap_or(0)),
        };
        if memory > 62 {
            return Err(Error::Construction(format!("memory {memory} too large")));
        }
        if length <= memory {
            return Err(Error::Construction(format!("length L = {length} must exceed memory m = {memory}")));
        }
        if 2 * length > crate::code::MAX_N {
            return Err(Error::Construction(format!("length 2L = {} exceeds {}", 2 * length, crate::code::MAX_N)));
        }
        Ok(TailBitingSpec { g1, g2, memory, length })
    }

    /// Parses `"7,5"` (octal) or `"111,101"` (binary).
    pub fn parse(polys: &str, base: PolyBase, length: usize) -> Result<Self> {
        let parts: Vec<&str> = polys.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Construction(format!("expected two polynomials, got {polys:?}")));
        }
        let radix = match base {
            PolyBase::Octal => 8,
            PolyBase::Binary => 2,
        };
        let vals = parts
            .iter()
            .map(|p| u64::from_str_radix(p, radix).map_err(|_| Error::Construction(format!("bad polynomial {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let width = match base {
            PolyBase::Octal => vals.iter().map(|v| 64 - v.leading_zeros() as usize).max().unwrap_or(0),
            PolyBase::Binary => parts.iter().map(|p| p.len()).max().unwrap_or(0),
        };
        if width == 0 || width > 63 {
            return Err(Error::Construction(format!("bad polynomial pair {polys:?}")));
        }
        Self::new(reverse_bits(vals[0], width), reverse_bits(vals[1], width), length)
    }

    fn to_octal(&self, g: u64) -> String {
        format!("{:o}", reverse_bits(g, self.memory + 1))
    }

    pub fn g1_octal(&self) -> String {
        self.to_octal(self.g1)
    }

    pub fn g2_octal(&self) -> String {
        self.to_octal(self.g2)
    }

    /// Interleaved impulse response (g1_0, g2_0, g1_1, g2_1, ...) as a word.
    fn impulse(&self) -> Word {
        let mut v: Word = 0;
        for j in 0..=self.memory {
            v |= (((self.g1 >> j) & 1) as Word) << (2 * j);
            v |= (((self.g2 >> j) & 1) as Word) << (2 * j + 1);
        }
        v
    }

    /// Generator rows: the impulse response rotated by 2i positions modulo 2L.
    pub fn rows(&self) -> Vec<Word> {
        let n = 2 * self.length;
        let v = self.impulse();
        (0..self.length).map(|i| rotate(v, 2 * i, n)).collect()
    }

    pub fn build(&self) -> Result<Code> {
        let rows = self.rows();
        let rk = crate::code::word::rank(&rows);
        if rk != rows.len() {
            return Err(Error::Construction(format!(
                "rows of ({},{}) at L = {} have rank {rk} < {}",
                self.g1_octal(),
                self.g2_octal(),
                self.length,
                self.length
            )));
        }
        Ok(Code::tail_biting(self.clone(), rows))
    }
}

fn rotate(v: Word, s: usize, n: usize) -> Word {
    let m = crate::code::word::mask(n);
    let s = s % n;
    if s == 0 {
        return v;
    }
    ((v << s) | (v >> (n - s))) & m
}

/// Builds the tail-biting block code of `spec`.
pub fn tailbite(spec: &TailBitingSpec) -> Result<Code> {
    spec.build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanRanking {
    /// Descending strong secrecy gain.
    Gain,
    /// Ascending sum A_w / (w + 1).
    Score,
}

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub spec: TailBitingSpec,
    pub enumerator: WeightEnumerator,
    pub d: usize,
    pub kissing: BigUint,
    pub xi: f64,
    pub weak: f64,
    pub necessary_score: BigRational,
    pub is_fsd: bool,
    /// Other scanned pairs with the same enumerator.
    pub duplicates: usize,
}

#[derive(Clone, Debug)]
pub struct ScanResult {
    pub entries: Vec<ScanEntry>,
    pub candidates: usize,
    pub rank_deficient: usize,
    pub fsd_failures: usize,
}

fn lex_cmp(a: &TailBitingSpec, b: &TailBitingSpec) -> Ordering {
    (a.g1_octal(), a.g2_octal()).cmp(&(b.g1_octal(), b.g2_octal()))
}

/// Tries every pair of polynomials of degree <= `m_max` at tail-biting length `length`.
pub fn scan_convolutional(m_max: usize, length: usize, ranking: ScanRanking, parallel: bool) -> Result<ScanResult> {
    if m_max > 8 {
        return Err(Error::ResourceLimit { log2_required: 2 * (m_max as u32 + 1), log2_cap: 18 });
    }
    let opts = EnumOptions { parallel: false, ..EnumOptions::default() };
    if length as u32 > opts.log2_cap {
        return Err(Error::ResourceLimit { log2_required: length as u32, log2_cap: opts.log2_cap });
    }
    let span = 1u64 << (m_max + 1);
    let pairs: Vec<(u64, u64)> =
        (0..span).flat_map(|a| (0..span).map(move |b| (a, b))).filter(|&(a, b)| a != 0 || b != 0).collect();
    let candidates = pairs.len();
    let gain_opts = GainOptions { parallel: false, ..GainOptions::default() };

    let analysed = par::map_slice(&pairs, parallel, |&(g1, g2)| -> Result<Option<ScanEntry>> {
        let spec = match TailBitingSpec::new(g1, g2, length) {
            Ok(s) => s,
            Err(_) => return Ok(None),
        };
        let code = match spec.build() {
            Ok(c) => c,
            Err(_) => return Ok(None),
        };
        let w = code.weight_enumerator_with(opts)?.clone();
        let is_fsd = crate::code::fsd_certificate(&w).is_fsd;
        let d = w.min_nonzero_weight().ok_or(Error::UndefinedDistance)?;
        let kissing = w.count(d).clone();
        let necessary_score = necessary_condition_score(&w);
        let (xi, weak) = if w.has_unit_volume() {
            let g = strong_secrecy_gain(&w, &gain_opts)?;
            (g.xi.to_f64(), g.weak.to_f64())
        } else {
            (f64::NAN, f64::NAN)
        };
        Ok(Some(ScanEntry { spec, enumerator: w, d, kissing, xi, weak, necessary_score, is_fsd, duplicates: 0 }))
    });

    let mut entries = Vec::new();
    let mut rank_deficient = 0;
    for a in analysed {
        match a? {
            Some(e) => entries.push(e),
            None => rank_deficient += 1,
        }
    }
    let fsd_failures = entries.iter().filter(|e| !e.is_fsd).count();

    entries.sort_by(|a, b| {
        let primary = match ranking {
            ScanRanking::Gain => b.xi.partial_cmp(&a.xi).unwrap_or(Ordering::Equal),
            ScanRanking::Score => a.necessary_score.cmp(&b.necessary_score),
        };
        primary.then(b.d.cmp(&a.d)).then_with(|| lex_cmp(&a.spec, &b.spec))
    });

    let mut seen: HashMap<WeightEnumerator, usize> = HashMap::new();
    let mut unique: Vec<ScanEntry> = Vec::new();
    for e in entries {
        if let Some(&i) = seen.get(&e.enumerator) {
            unique[i].duplicates += 1;
        } else {
            seen.insert(e.enumerator.clone(), unique.len());
            unique.push(e);
        }
    }
    Ok(ScanResult { entries: unique, candidates, rank_deficient, fsd_failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::format_bits;

    #[test]
    fn octal_convention() {
        let s = TailBitingSpec::parse("7,5", PolyBase::Octal, 4).unwrap();
        assert_eq!((s.g1, s.g2, s.memory), (0b111, 0b101, 2));
        let b = TailBitingSpec::parse("111,101", PolyBase::Binary, 4).unwrap();
        assert_eq!(s, b);
        let r = TailBitingSpec::parse("3,5", PolyBase::Octal, 4).unwrap();
        // 011 -> D + D^2, 101 -> 1 + D^2
        assert_eq!((r.g1, r.g2), (0b110, 0b101));
        assert_eq!((r.g1_octal(), r.g2_octal()), ("3".to_string(), "5".to_string()));
    }

    #[test]
    fn rows_are_rotations() {
        let s = TailBitingSpec::parse("7,5", PolyBase::Octal, 4).unwrap();
        let rows: Vec<String> = s.rows().iter().map(|&r| format_bits(r, 8)).collect();
        assert_eq!(rows, vec!["11101100", "00111011", "11001110", "10110011"]);
    }

    #[test]
    fn memory_must_be_below_length() {
        assert!(TailBitingSpec::parse("7,5", PolyBase::Octal, 2).is_err());
    }

    #[test]
    fn degenerate_pair_fails_loudly() {
        // g1 = g2 = 1 + D: every row sums to zero around the circle
        let s = TailBitingSpec::new(0b11, 0b11, 4).unwrap();
        assert!(matches!(s.build(), Err(Error::Construction(_))));
    }
}
