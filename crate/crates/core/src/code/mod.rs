//! Binary codes: representations, weight enumerators, formal self-duality,
//! Gray images of Z4 codes, direct sums and distance data.

pub mod enumerator;
pub mod gray;
pub mod io;
pub mod linear;
pub mod word;

pub use enumerator::{fsd_certificate, EnumeratorJson, FsdCertificate, FsdFailure, WeightEnumerator};
pub use word::{format_bits, parse_bits, Word, MAX_N};

use crate::convcode::TailBitingSpec;
use crate::error::{Error, Result};
use crate::par;
use num_bigint::BigUint;
use num_traits::One;
use std::sync::OnceLock;

/// Default message-space cap: 2^36 messages.
pub const DEFAULT_LOG2_CAP: u32 = 36;

/// Listing codewords explicitly is limited to 2^24 words.
pub const LOG2_LIST_CAP: u32 = 24;

/// Pairwise distance work is limited to M <= 2^16.
const LOG2_PAIRWISE_CAP: u32 = 16;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub log2_cap: u32,
    pub parallel: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { log2_cap: DEFAULT_LOG2_CAP, parallel: par::DEFAULT_PARALLEL }
    }
}

#[derive(Clone, Debug)]
pub enum Representation {
    Linear { rows: Vec<Word> },
    Explicit { words: Vec<Word> },
    /// Z4 generator rows together with their (sorted) binary image.
    Z4Gray { rows: Vec<Vec<u8>>, image: Vec<Word> },
    TailBiting { spec: TailBitingSpec, rows: Vec<Word> },
}

#[derive(Clone, Debug)]
pub struct Code {
    name: String,
    n: usize,
    repr: Representation,
    enumerator: OnceLock<WeightEnumerator>,
}

/// Outcome of the distance-invariance test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceInvariance {
    pub invariant: bool,
    /// First codeword whose distance profile differs from that of the first codeword.
    pub violating: Option<Word>,
}

fn check_length(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidCode(format!("length {n} outside 1..={MAX_N}")));
    }
    Ok(())
}

impl Code {
    pub fn linear(name: impl Into<String>, n: usize, rows: Vec<Word>) -> Result<Self> {
        check_length(n)?;
        for (i, &r) in rows.iter().enumerate() {
            if r & !word::mask(n) != 0 {
                return Err(Error::BadRow { row: i, reason: format!("has bits beyond length {n}") });
            }
        }
        let rk = word::rank(&rows);
        if rk != rows.len() {
            return Err(Error::InvalidCode(format!(
                "generator rows are linearly dependent (rank {rk} of {})",
                rows.len()
            )));
        }
        Ok(Code { name: name.into(), n, repr: Representation::Linear { rows }, enumerator: OnceLock::new() })
    }

    pub fn explicit(name: impl Into<String>, n: usize, mut words: Vec<Word>) -> Result<Self> {
        check_length(n)?;
        if words.is_empty() {
            return Err(Error::InvalidCode("explicit code has no codewords".into()));
        }
        for (i, &w) in words.iter().enumerate() {
            if w & !word::mask(n) != 0 {
                return Err(Error::BadRow { row: i, reason: format!("has bits beyond length {n}") });
            }
        }
        words.sort_unstable();
        if let Some(p) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::InvalidCode(format!("duplicate codeword {}", format_bits(p[0], n))));
        }
        Ok(Code { name: name.into(), n, repr: Representation::Explicit { words }, enumerator: OnceLock::new() })
    }

    /// Gray image of the Z4-linear code generated by `rows`; n = 2 * (Z4 length).
    pub fn z4_gray(name: impl Into<String>, rows: Vec<Vec<u8>>, opts: EnumOptions) -> Result<Self> {
        let len = rows.first().map(|r| r.len()).ok_or_else(|| Error::InvalidCode("no Z4 rows".into()))?;
        let image = gray::gray_image(&rows, len, opts.log2_cap)?;
        Ok(Code { name: name.into(), n: 2 * len, repr: Representation::Z4Gray { rows, image }, enumerator: OnceLock::new() })
    }

    pub(crate) fn tail_biting(spec: TailBitingSpec, rows: Vec<Word>) -> Self {
        let name = format!("tb({},{};L={})", spec.g1_octal(), spec.g2_octal(), spec.length);
        let n = 2 * spec.length;
        Code { name, n, repr: Representation::TailBiting { spec, rows }, enumerator: OnceLock::new() }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn representation(&self) -> &Representation {
        &self.repr
    }

    /// Generator rows when the code is stored as a linear code.
    pub fn generator_rows(&self) -> Option<&[Word]> {
        match &self.repr {
            Representation::Linear { rows } | Representation::TailBiting { rows, .. } => Some(rows),
            _ => None,
        }
    }

    fn explicit_words(&self) -> Option<&[Word]> {
        match &self.repr {
            Representation::Explicit { words } => Some(words),
            Representation::Z4Gray { image, .. } => Some(image),
            _ => None,
        }
    }

    /// A basis when the code is linear; for explicit sets this checks closure.
    pub fn linear_basis(&self) -> Option<Vec<Word>> {
        if let Some(rows) = self.generator_rows() {
            return Some(rows.to_vec());
        }
        let words = self.explicit_words()?;
        if !words.contains(&0) || !words.len().is_power_of_two() {
            return None;
        }
        let basis = word::reduce_basis(words);
        if 1usize << basis.len() == words.len() {
            Some(basis)
        } else {
            None
        }
    }

    pub fn is_linear(&self) -> bool {
        self.linear_basis().is_some()
    }

    /// M, the number of codewords.
    pub fn size(&self) -> BigUint {
        match &self.repr {
            Representation::Linear { rows } | Representation::TailBiting { rows, .. } => BigUint::one() << rows.len(),
            Representation::Explicit { words } => BigUint::from(words.len()),
            Representation::Z4Gray { image, .. } => BigUint::from(image.len()),
        }
    }

    pub fn contains_zero(&self) -> bool {
        match self.explicit_words() {
            Some(w) => w.binary_search(&0).is_ok(),
            None => true,
        }
    }

    /// All codewords, sorted.
    pub fn codewords(&self) -> Result<Vec<Word>> {
        match self.generator_rows() {
            Some(rows) => {
                let k = rows.len() as u32;
                if k > LOG2_LIST_CAP {
                    return Err(Error::ResourceLimit { log2_required: k, log2_cap: LOG2_LIST_CAP });
                }
                let mut all = linear::span(rows);
                all.sort_unstable();
                Ok(all)
            }
            None => Ok(self.explicit_words().expect("explicit").to_vec()),
        }
    }

    pub fn weight_enumerator(&self) -> Result<&WeightEnumerator> {
        self.weight_enumerator_with(EnumOptions::default())
    }

    pub fn weight_enumerator_with(&self, opts: EnumOptions) -> Result<&WeightEnumerator> {
        if let Some(w) = self.enumerator.get() {
            return Ok(w);
        }
        let counts = match self.generator_rows() {
            Some(rows) => {
                let k = rows.len() as u32;
                if k > opts.log2_cap {
                    return Err(Error::ResourceLimit { log2_required: k, log2_cap: opts.log2_cap });
                }
                linear::weight_counts(rows, self.n, opts.parallel)
            }
            None => {
                let mut c = vec![0u64; self.n + 1];
                for &w in self.explicit_words().expect("explicit") {
                    c[w.count_ones() as usize] += 1;
                }
                c
            }
        };
        let we = WeightEnumerator::from_u64(self.n, &counts)?;
        let _ = self.enumerator.set(we);
        Ok(self.enumerator.get().expect("just set"))
    }

    pub fn is_formally_self_dual(&self) -> Result<FsdCertificate> {
        Ok(fsd_certificate(self.weight_enumerator()?))
    }

    fn pairwise_words(&self) -> Result<Vec<Word>> {
        let words = self.codewords()?;
        let log2m = (words.len() as f64).log2().ceil() as u32;
        if log2m > LOG2_PAIRWISE_CAP {
            return Err(Error::ResourceLimit { log2_required: log2m, log2_cap: LOG2_PAIRWISE_CAP });
        }
        Ok(words)
    }

    /// Distance profile (histogram of distances to every codeword) of each codeword.
    fn profiles(&self, words: &[Word]) -> Vec<Vec<u32>> {
        let n = self.n;
        par::map_slice(words, par::DEFAULT_PARALLEL, |&c| {
            let mut h = vec![0u32; n + 1];
            for &x in words {
                h[(c ^ x).count_ones() as usize] += 1;
            }
            h
        })
    }

    pub fn min_distance(&self) -> Result<usize> {
        if self.size() < BigUint::from(2u32) {
            return Err(Error::UndefinedDistance);
        }
        if self.is_linear() {
            return self.weight_enumerator()?.min_nonzero_weight().ok_or(Error::UndefinedDistance);
        }
        let words = self.pairwise_words()?;
        let profiles = self.profiles(&words);
        (1..=self.n).find(|&d| profiles.iter().any(|h| h[d] > 0)).ok_or(Error::UndefinedDistance)
    }

    /// Number of codewords at minimum distance; for nonlinear codes the maximum over codewords.
    pub fn kissing_number(&self) -> Result<BigUint> {
        let d = self.min_distance()?;
        if self.is_linear() {
            return Ok(self.weight_enumerator()?.count(d).clone());
        }
        let words = self.pairwise_words()?;
        let profiles = self.profiles(&words);
        Ok(BigUint::from(profiles.iter().map(|h| h[d]).max().unwrap_or(0)))
    }

    /// Necessary condition for geometric uniformity: every codeword sees the same distance profile.
    pub fn distance_invariance_check(&self) -> Result<DistanceInvariance> {
        if self.is_linear() {
            return Ok(DistanceInvariance { invariant: true, violating: None });
        }
        let words = self.pairwise_words()?;
        let profiles = self.profiles(&words);
        let violating = profiles.iter().position(|h| *h != profiles[0]).map(|i| words[i]);
        Ok(DistanceInvariance { invariant: violating.is_none(), violating })
    }
}

/// Concatenation code C1 (+) C2 (+) ...; linear when every summand is.
pub fn direct_sum(codes: &[Code]) -> Result<Code> {
    match codes {
        [] => Err(Error::InvalidCode("direct sum of an empty list".into())),
        [one] => Ok(one.clone()),
        _ => {
            let n: usize = codes.iter().map(|c| c.n()).sum();
            check_length(n)?;
            let name = codes.iter().map(|c| c.name()).collect::<Vec<_>>().join("+");
            let product = codes
                .iter()
                .map(|c| c.weight_enumerator().cloned())
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .reduce(|a, b| a.product(&b))
                .expect("non-empty");
            let code = if codes.iter().all(|c| c.is_linear()) {
                let mut rows = Vec::new();
                let mut shift = 0;
                for c in codes {
                    rows.extend(c.linear_basis().expect("linear").iter().map(|r| r << shift));
                    shift += c.n();
                }
                Code::linear(name, n, rows)?
            } else {
                let mut words: Vec<Word> = vec![0];
                let mut shift = 0;
                for c in codes {
                    let cw = c.codewords()?;
                    if (words.len() as u128) * (cw.len() as u128) > 1u128 << LOG2_LIST_CAP {
                        return Err(Error::ResourceLimit { log2_required: LOG2_LIST_CAP + 1, log2_cap: LOG2_LIST_CAP });
                    }
                    words = words.iter().flat_map(|&a| cw.iter().map(move |&b| a | (b << shift))).collect();
                    shift += c.n();
                }
                Code::explicit(name, n, words)?
            };
            let direct = code.weight_enumerator()?;
            if *direct != product {
                return Err(Error::InvalidCode("direct-sum enumerator differs from the product".into()));
            }
            Ok(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(n: usize, s: &[&str]) -> Vec<Word> {
        s.iter().map(|x| parse_bits(x, n).unwrap()).collect()
    }

    #[test]
    fn dependent_rows_rejected() {
        let r = Code::linear("dep", 4, bits(4, &["1100", "0011", "1111"]));
        assert!(matches!(r, Err(Error::InvalidCode(_))));
    }

    #[test]
    fn explicit_duplicates_rejected() {
        assert!(Code::explicit("dup", 2, bits(2, &["11", "11"])).is_err());
    }

    #[test]
    fn single_word_code() {
        let c = Code::explicit("zero", 5, vec![0]).unwrap();
        assert_eq!(c.weight_enumerator().unwrap().counts()[0], BigUint::one());
        assert!(matches!(c.min_distance(), Err(Error::UndefinedDistance)));
    }

    #[test]
    fn explicit_linear_detection() {
        let c = Code::explicit("rep", 4, bits(4, &["0000", "1111", "1100", "0011"])).unwrap();
        assert!(c.is_linear());
        let nl = Code::explicit("nl", 4, bits(4, &["0000", "1100", "1010", "1110"])).unwrap();
        assert!(!nl.is_linear());
        let di = nl.distance_invariance_check().unwrap();
        assert!(!di.invariant);
    }

    #[test]
    fn cap_is_enforced() {
        let rows: Vec<Word> = (0..10).map(|i| 1u128 << i).collect();
        let c = Code::linear("id", 10, rows).unwrap();
        let opts = EnumOptions { log2_cap: 8, parallel: false };
        assert!(matches!(c.weight_enumerator_with(opts), Err(Error::ResourceLimit { log2_cap: 8, .. })));
    }
}
