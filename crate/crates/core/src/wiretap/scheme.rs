use crate::code::word::{in_span, lex_key, reduce_basis};
use crate::code::{format_bits, io::CodeFile, Code, EnumOptions, Word, LOG2_LIST_CAP};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DecompositionFailure {
    /// Some vector is b ⊕ c in two ways.
    DoubleRepresentation,
    /// |A| differs from |B|·|C| although every sum is distinct.
    SizeMismatch,
    /// A sum b ⊕ c falls outside A.
    NotInA,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub valid: bool,
    pub witness: Option<Word>,
    pub failure: Option<DecompositionFailure>,
}

fn smallest(n: usize, it: impl IntoIterator<Item = Word>) -> Option<Word> {
    it.into_iter().min_by_key(|&w| lex_key(w, n))
}

/// Checks (B−B) ∩ (C−C) = {0}, |A| = |B||C| and B ⊕ C ⊆ A.
///
/// The witness for a double representation is the lexicographically
/// smallest vector reached twice.
pub fn check_unique_decomposition(n: usize, a: &[Word], b: &[Word], c: &[Word]) -> Result<DecompositionCheck> {
    if !b.contains(&0) || !c.contains(&0) {
        return Err(Error::Precondition("the zero word must belong to both B and C".into()));
    }
    let mut seen: HashMap<Word, u32> = HashMap::with_capacity(b.len() * c.len());
    for &x in b {
        for &y in c {
            *seen.entry(x ^ y).or_default() += 1;
        }
    }
    if let Some(w) = smallest(n, seen.iter().filter(|(_, &k)| k > 1).map(|(&w, _)| w)) {
        return Ok(DecompositionCheck { valid: false, witness: Some(w), failure: Some(DecompositionFailure::DoubleRepresentation) });
    }
    let a_set: HashSet<Word> = a.iter().copied().collect();
    if let Some(w) = smallest(n, seen.keys().copied().filter(|w| !a_set.contains(w))) {
        return Ok(DecompositionCheck { valid: false, witness: Some(w), failure: Some(DecompositionFailure::NotInA) });
    }
    if a_set.len() != seen.len() {
        let w = smallest(n, a_set.iter().copied().filter(|w| !seen.contains_key(w)));
        return Ok(DecompositionCheck { valid: false, witness: w, failure: Some(DecompositionFailure::SizeMismatch) });
    }
    Ok(DecompositionCheck { valid: true, witness: None, failure: None })
}

fn span_of(basis: &[Word]) -> Vec<Word> {
    let mut out = vec![0];
    for &g in basis {
        let ext: Vec<Word> = out.iter().map(|&x| x ^ g).collect();
        out.extend(ext);
    }
    out
}

/// Greedy search for a linear B with A = B ⊕ C uniquely.
///
/// Candidates are c ⊕ ĉ ⊕ c̃ over distinct codewords, the generators of A
/// outside span(C) and their shifts c ⊕ ĉ ⊕ g, tried in lexicographic order.
/// If that list runs dry the whole of A is scanned.
pub fn find_linear_b(c: &Code, a: Option<&Code>) -> Result<Code> {
    let n = c.n();
    let cw = c.codewords()?;
    if !cw.contains(&0) {
        return Err(Error::Precondition("C must contain the zero word".into()));
    }
    let c_basis = reduce_basis(&cw);
    let a_basis = match a {
        Some(a) => {
            if a.n() != n {
                return Err(Error::Precondition(format!("A has length {} but C has length {n}", a.n())));
            }
            a.linear_basis().ok_or_else(|| Error::Precondition("A must be linear".into()))?
        }
        None => c_basis.clone(),
    };
    if let Some(&w) = cw.iter().find(|&&w| !in_span(&a_basis, w)) {
        return Err(Error::Precondition(format!("codeword {} of C lies outside A", format_bits(w, n))));
    }
    let a_size = 1u128 << a_basis.len();
    let c_size = cw.len() as u128;
    if !a_size.is_multiple_of(c_size) || !(a_size / c_size).is_power_of_two() {
        return Err(Error::Precondition(format!("|A| = {a_size} is not a power-of-two multiple of |C| = {c_size}")));
    }
    let target = (a_size / c_size).trailing_zeros() as usize;
    if cw.len() > 1 << 12 {
        return Err(Error::ResourceLimit { log2_required: (cw.len() as f64).log2().ceil() as u32 * 3, log2_cap: 36 });
    }

    let diffs: HashSet<Word> = cw.iter().flat_map(|&x| cw.iter().map(move |&y| x ^ y)).collect();
    let mut cand: BTreeSet<(Word, Word)> = BTreeSet::new();
    let mut push = |w: Word| {
        if w != 0 {
            cand.insert((lex_key(w, n), w));
        }
    };
    for i in 0..cw.len() {
        for j in i + 1..cw.len() {
            let p = cw[i] ^ cw[j];
            for &z in &cw[j + 1..] {
                push(p ^ z);
            }
        }
    }
    let extra: Vec<Word> = a_basis.iter().copied().filter(|&g| !in_span(&c_basis, g)).collect();
    for &g in &extra {
        push(g);
        for &d in &diffs {
            push(d ^ g);
        }
    }

    let a_words: HashSet<Word> = span_of(&a_basis).into_iter().collect();
    let mut tried = 0usize;
    let mut basis: Vec<Word> = Vec::new();
    let mut grow = |basis: &mut Vec<Word>, list: &mut dyn Iterator<Item = Word>| {
        for w in list {
            if basis.len() == target {
                break;
            }
            if !a_words.contains(&w) || in_span(basis, w) {
                continue;
            }
            tried += 1;
            let mut trial = basis.clone();
            trial.push(w);
            let b_words = span_of(&trial);
            let ok = b_words.iter().all(|&b| b == 0 || !diffs.contains(&b))
                && b_words.iter().all(|&b| cw.iter().all(|&x| a_words.contains(&(b ^ x))));
            if ok {
                *basis = trial;
            }
        }
    };
    grow(&mut basis, &mut cand.iter().map(|&(_, w)| w));
    if basis.len() < target {
        if a_basis.len() > LOG2_LIST_CAP as usize {
            return Err(Error::NoLinearComplement { tried, best_dim: basis.len(), target_dim: target });
        }
        let mut all: Vec<Word> = a_words.iter().copied().collect();
        all.sort_by_key(|&w| lex_key(w, n));
        grow(&mut basis, &mut all.into_iter());
    }
    if basis.len() < target {
        return Err(Error::NoLinearComplement { tried, best_dim: basis.len(), target_dim: target });
    }
    let b_words = span_of(&basis);
    let a_list: Vec<Word> = a_words.into_iter().collect();
    let check = check_unique_decomposition(n, &a_list, &b_words, &cw)?;
    if !check.valid {
        return Err(Error::Construction("greedy complement failed the decomposition re-check".into()));
    }
    basis.sort_by_key(|&w| lex_key(w, n));
    Code::linear(format!("B({})", c.name()), n, basis)
}

/// A valid coset scheme: Λ_b from A, Eve's packing from C, secrets indexed by B.
#[derive(Clone, Debug)]
pub struct CosetScheme {
    pub name: String,
    pub a: Code,
    pub b: Code,
    pub c: Code,
    /// B words in lexicographic order; the secret j is the index into this list.
    pub b_words: Vec<Word>,
    pub c_words: Vec<Word>,
    /// a ↦ (j, c) for every a in A.
    pub(crate) split: HashMap<Word, (usize, Word)>,
}

impl CosetScheme {
    pub fn new(name: impl Into<String>, a: Code, b: Code, c: Code) -> Result<Self> {
        let n = a.n();
        if b.n() != n || c.n() != n {
            return Err(Error::Precondition("A, B and C must share one length".into()));
        }
        if !a.is_linear() {
            return Err(Error::Precondition("A must be linear".into()));
        }
        if !b.is_linear() {
            return Err(Error::Precondition("B must be linear".into()));
        }
        let mut b_words = b.codewords()?;
        b_words.sort_by_key(|&w| lex_key(w, n));
        let mut c_words = c.codewords()?;
        c_words.sort_by_key(|&w| lex_key(w, n));
        let a_words = a.codewords()?;
        let check = check_unique_decomposition(n, &a_words, &b_words, &c_words)?;
        if !check.valid {
            let w = check.witness.map(|w| format_bits(w, n)).unwrap_or_default();
            return Err(Error::Construction(format!("A ≠ B ⊕ C uniquely ({:?}, witness {w})", check.failure.unwrap())));
        }
        let mut split = HashMap::with_capacity(a_words.len());
        for (j, &x) in b_words.iter().enumerate() {
            for &y in &c_words {
                split.insert(x ^ y, (j, y));
            }
        }
        Ok(CosetScheme { name: name.into(), a, b, c, b_words, c_words, split })
    }

    pub fn n(&self) -> usize {
        self.a.n()
    }

    /// Secret bits per transmission.
    pub fn k(&self) -> usize {
        self.b_words.len().trailing_zeros() as usize
    }

    /// The secret index carried by a ∈ A.
    pub fn secret_of(&self, a: Word) -> Option<usize> {
        self.split.get(&a).map(|&(j, _)| j)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CodeRef {
    Path(PathBuf),
    Inline(CodeFile),
}

/// Scheme file. Code references are paths relative to the scheme file or inline
/// code objects; a missing `b` is searched for with [`find_linear_b`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemeFile {
    pub name: String,
    pub a: CodeRef,
    #[serde(default)]
    pub b: Option<CodeRef>,
    pub c: CodeRef,
}

fn resolve(r: &CodeRef, dir: &Path, opts: EnumOptions) -> Result<Code> {
    match r {
        CodeRef::Path(p) => crate::code::io::load_code(dir.join(p), opts),
        CodeRef::Inline(f) => f.to_code(opts),
    }
}

pub fn load_scheme(path: impl AsRef<Path>) -> Result<CosetScheme> {
    let path = path.as_ref();
    let file: SchemeFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let opts = EnumOptions::default();
    let a = resolve(&file.a, dir, opts)?;
    let c = resolve(&file.c, dir, opts)?;
    let b = match &file.b {
        Some(r) => resolve(r, dir, opts)?,
        None => find_linear_b(&c, Some(&a))?,
    };
    CosetScheme::new(file.name, a, b, c)
}
