//! Packed binary words. Character `j` of a bit string is bit `j` of the word.

pub type Word = u128;

pub const MAX_N: usize = 128;

pub fn mask(n: usize) -> Word {
    if n >= 128 {
        Word::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub fn weight(w: Word) -> u32 {
    w.count_ones()
}

pub fn parse_bits(s: &str, n: usize) -> Result<Word, String> {
    let s = s.trim();
    if s.len() != n {
        return Err(format!("expected {n} bits, found {}", s.len()));
    }
    let mut w: Word = 0;
    for (j, c) in s.chars().enumerate() {
        match c {
            '0' => {}
            '1' => w |= 1u128 << j,
            other => return Err(format!("invalid bit character {other:?}")),
        }
    }
    Ok(w)
}

pub fn format_bits(w: Word, n: usize) -> String {
    (0..n).map(|j| if (w >> j) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Orders words as their bit strings would sort (`"0001" < "0010"`).
pub fn lex_key(w: Word, n: usize) -> Word {
    let mut r: Word = 0;
    for j in 0..n {
        if (w >> j) & 1 == 1 {
            r |= 1u128 << (n - 1 - j);
        }
    }
    r
}

/// Echelon basis over GF(2), sorted by descending leading bit.
pub fn reduce_basis(rows: &[Word]) -> Vec<Word> {
    let mut basis: Vec<Word> = Vec::new();
    for &r in rows {
        if let Some(v) = reduce(&basis, r) {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// Reduces `v` against a basis sorted by descending leading bit. `None` if it vanishes.
pub fn reduce(basis: &[Word], mut v: Word) -> Option<Word> {
    for &b in basis {
        let lead = 127 - b.leading_zeros();
        if (v >> lead) & 1 == 1 {
            v ^= b;
        }
    }
    if v == 0 {
        None
    } else {
        Some(v)
    }
}

pub fn rank(rows: &[Word]) -> usize {
    reduce_basis(rows).len()
}

pub fn in_span(basis: &[Word], v: Word) -> bool {
    reduce(basis, v).is_none()
}
