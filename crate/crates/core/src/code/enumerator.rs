use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Coefficients A_0..A_n of W(x, y) = sum_w A_w x^(n-w) y^w.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    n: usize,
    counts: Vec<BigUint>,
}

impl WeightEnumerator {
    pub fn new(n: usize, counts: Vec<BigUint>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCode("length must be positive".into()));
        }
        if counts.len() > n + 1 {
            let w = counts.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
            if w > n {
                return Err(Error::InvalidCode(format!("weight {w} exceeds length {n}")));
            }
        }
        let mut counts = counts;
        counts.resize(n + 1, BigUint::zero());
        if counts.iter().all(Zero::is_zero) {
            return Err(Error::InvalidCode("empty weight enumerator".into()));
        }
        Ok(WeightEnumerator { n, counts })
    }

    pub fn from_u64(n: usize, counts: &[u64]) -> Result<Self> {
        Self::new(n, counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, u64)]) -> Result<Self> {
        let mut counts = vec![BigUint::zero(); n + 1];
        for &(w, c) in pairs {
            if w > n {
                return Err(Error::InvalidCode(format!("weight {w} exceeds length {n}")));
            }
            counts[w] += c;
        }
        Self::new(n, counts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Nonzero (weight, count) pairs in increasing weight.
    pub fn support(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// M = W(1, 1).
    pub fn size(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..=self.n).find(|&w| !self.counts[w].is_zero())
    }

    pub fn is_even(&self) -> bool {
        self.support().all(|(w, _)| w % 2 == 0)
    }

    /// True when M = 2^(n/2); requires even n.
    pub fn has_unit_volume(&self) -> bool {
        self.n.is_multiple_of(2) && self.size() == BigUint::one() << (self.n / 2)
    }

    /// Enumerator of the direct sum (polynomial product).
    pub fn product(&self, other: &WeightEnumerator) -> WeightEnumerator {
        let n = self.n + other.n;
        let mut counts = vec![BigUint::zero(); n + 1];
        for (i, a) in self.support() {
            for (j, b) in other.support() {
                counts[i + j] += a * b;
            }
        }
        WeightEnumerator { n, counts }
    }

    /// (1/M) W(x + y, x - y), exactly. Fails when some coefficient is not divisible by M.
    pub fn macwilliams(&self, m: &BigUint) -> Result<WeightEnumerator> {
        if m.is_zero() {
            return Err(Error::Domain("M must be positive".into()));
        }
        let n = self.n;
        let binom = binomial_table(n);
        let m = BigInt::from(m.clone());
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut acc = BigInt::zero();
            for (w, a) in self.support() {
                let k = krawtchouk(&binom, n, j, w);
                if !k.is_zero() {
                    acc += BigInt::from(a.clone()) * k;
                }
            }
            let (q, r) = acc.div_rem(&m);
            if !r.is_zero() || q.is_negative() {
                return Err(Error::NonIntegralTransform { weight: j, m: m.to_string() });
            }
            out.push(q.to_biguint().expect("nonnegative"));
        }
        Ok(WeightEnumerator { n, counts: out })
    }

    pub fn to_json(&self) -> EnumeratorJson {
        EnumeratorJson {
            n: self.n,
            counts: self.support().map(|(w, c)| (w.to_string(), c.to_string())).collect(),
        }
    }

    pub fn from_json(j: &EnumeratorJson) -> Result<Self> {
        let mut counts = vec![BigUint::zero(); j.n + 1];
        for (w, c) in &j.counts {
            let w: usize = w.parse().map_err(|_| Error::InvalidCode(format!("bad weight key {w:?}")))?;
            if w > j.n {
                return Err(Error::InvalidCode(format!("weight {w} exceeds length {}", j.n)));
            }
            counts[w] = c.parse().map_err(|_| Error::InvalidCode(format!("bad count {c:?} at weight {w}")))?;
        }
        Self::new(j.n, counts)
    }

    /// Counts as f64 (for coarse grids only).
    pub fn counts_f64(&self) -> Vec<f64> {
        self.counts.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }
}

impl fmt::Debug for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W[n={}]{{", self.n)?;
        let mut first = true;
        for (w, c) in self.support() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{w}:{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n;
        let mut terms = Vec::new();
        for (w, c) in self.support() {
            let coef = if c.is_one() { String::new() } else { c.to_string() };
            let x = match n - w {
                0 => String::new(),
                1 => "x".into(),
                e => format!("x^{e}"),
            };
            let y = match w {
                0 => String::new(),
                1 => "y".into(),
                e => format!("y^{e}"),
            };
            let mut t = format!("{coef}{x}{y}");
            if t.is_empty() {
                t = "1".into();
            }
            terms.push(t);
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// Serialized form: `{ "n": 16, "counts": { "0": "1", "6": "112", ... } }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EnumeratorJson {
    pub n: usize,
    pub counts: BTreeMap<String, String>,
}

pub(crate) fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = BigInt::one();
        for j in 1..=i {
            t[i][j] = &t[i - 1][j - 1] + &t[i - 1][j];
        }
    }
    t
}

/// K_j(w) = sum_s (-1)^s C(w, s) C(n - w, j - s): the coefficient of x^(n-j) y^j
/// in (x - y)^w (x + y)^(n-w).
pub(crate) fn krawtchouk(binom: &[Vec<BigInt>], n: usize, j: usize, w: usize) -> BigInt {
    let mut k = BigInt::zero();
    let lo = j.saturating_sub(n - w);
    let hi = j.min(w);
    for s in lo..=hi {
        let term = &binom[w][s] * &binom[n - w][j - s];
        if s % 2 == 0 {
            k += term;
        } else {
            k -= term;
        }
    }
    k
}

/// Why a code failed the formal self-duality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FsdFailure {
    /// An FSD code has exactly 2^(n/2) words.
    SizeNotHalfPower { n: usize, m: String },
    NonIntegral { weight: usize },
    Mismatch { weight: usize },
}

#[derive(Clone, Debug)]
pub struct FsdCertificate {
    pub is_fsd: bool,
    /// The normalized MacWilliams image, when it is integral.
    pub transformed: Option<WeightEnumerator>,
    pub first_mismatch: Option<usize>,
    pub failure: Option<FsdFailure>,
}

pub fn fsd_certificate(w: &WeightEnumerator) -> FsdCertificate {
    let m = w.size();
    let transformed = match w.macwilliams(&m) {
        Ok(t) => t,
        Err(Error::NonIntegralTransform { weight, .. }) => {
            return FsdCertificate {
                is_fsd: false,
                transformed: None,
                first_mismatch: Some(weight),
                failure: Some(FsdFailure::NonIntegral { weight }),
            }
        }
        Err(e) => unreachable!("unexpected transform failure: {e}"),
    };
    let first_mismatch = (0..=w.n()).find(|&j| transformed.count(j) != w.count(j));
    let size_ok = w.has_unit_volume();
    let failure = if let Some(weight) = first_mismatch {
        Some(FsdFailure::Mismatch { weight })
    } else if !size_ok {
        Some(FsdFailure::SizeNotHalfPower { n: w.n(), m: m.to_string() })
    } else {
        None
    };
    FsdCertificate { is_fsd: failure.is_none(), transformed: Some(transformed), first_mismatch, failure }
}
