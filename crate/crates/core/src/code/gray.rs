//! Z4-linear codes and the Gray map 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10.

use super::word::Word;
use crate::error::{Error, Result};

/// Z4 vector as two bit planes: symbol i is `lo_i + 2 hi_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Z4Vec {
    lo: u64,
    hi: u64,
}

impl Z4Vec {
    fn from_digits(d: &[u8]) -> Self {
        let mut v = Z4Vec::default();
        for (i, &s) in d.iter().enumerate() {
            v.lo |= ((s & 1) as u64) << i;
            v.hi |= (((s >> 1) & 1) as u64) << i;
        }
        v
    }

    fn add(self, o: Z4Vec) -> Z4Vec {
        let carry = self.lo & o.lo;
        Z4Vec { lo: self.lo ^ o.lo, hi: self.hi ^ o.hi ^ carry }
    }

    fn gray(self, len: usize) -> Word {
        let mut w: Word = 0;
        for i in 0..len {
            let hi = (self.hi >> i) & 1;
            let lo = (self.lo >> i) & 1;
            w |= (hi as Word) << (2 * i);
            w |= ((hi ^ lo) as Word) << (2 * i + 1);
        }
        w
    }
}

pub fn parse_z4(s: &str, len: usize) -> std::result::Result<Vec<u8>, String> {
    let s = s.trim();
    if s.len() != len {
        return Err(format!("expected {len} quaternary digits, found {}", s.len()));
    }
    s.chars()
        .map(|c| match c {
            '0'..='3' => Ok(c as u8 - b'0'),
            other => Err(format!("invalid quaternary digit {other:?}")),
        })
        .collect()
}

/// Binary image of the Z4 code generated by `rows`, sorted and deduplicated.
pub fn gray_image(rows: &[Vec<u8>], z4_len: usize, log2_cap: u32) -> Result<Vec<Word>> {
    if z4_len == 0 || 2 * z4_len > super::word::MAX_N {
        return Err(Error::InvalidCode(format!("Z4 length {z4_len} out of range 1..=64")));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != z4_len {
            return Err(Error::BadRow { row: i, reason: format!("expected {z4_len} symbols, found {}", r.len()) });
        }
        if let Some(&d) = r.iter().find(|&&d| d > 3) {
            return Err(Error::BadRow { row: i, reason: format!("symbol {d} is not in Z4") });
        }
    }
    let k = rows.len() as u32;
    if 2 * k > log2_cap {
        return Err(Error::ResourceLimit { log2_required: 2 * k, log2_cap });
    }
    let gens: Vec<Z4Vec> = rows.iter().map(|r| Z4Vec::from_digits(r)).collect();
    // Odometer over the message digits: stepping digit i (including the
    // 3 -> 0 wrap, since 4 row_i = 0) always adds row_i.
    let total: u64 = 1u64 << (2 * k);
    let mut digits = vec![0u8; rows.len()];
    let mut cur = Z4Vec::default();
    let mut out = Vec::with_capacity(total as usize);
    out.push(cur.gray(z4_len));
    for _ in 1..total {
        for (i, d) in digits.iter_mut().enumerate() {
            cur = cur.add(gens[i]);
            *d = (*d + 1) % 4;
            if *d != 0 {
                break;
            }
        }
        out.push(cur.gray(z4_len));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::word::format_bits;

    #[test]
    fn map_table() {
        for (s, expect) in [(0u8, "00"), (1, "01"), (2, "11"), (3, "10")] {
            let img = Z4Vec::from_digits(&[s]).gray(1);
            assert_eq!(format_bits(img, 2), expect);
        }
    }

    #[test]
    fn small_images() {
        assert_eq!(gray_image(&[vec![0]], 1, 36).unwrap(), vec![0]);
        let img = gray_image(&[vec![2]], 1, 36).unwrap();
        let s: Vec<String> = img.iter().map(|&w| format_bits(w, 2)).collect();
        assert_eq!(s.len(), 2);
        assert!(s.contains(&"00".to_string()) && s.contains(&"11".to_string()));
    }

    #[test]
    fn z4_addition_wraps() {
        let a = Z4Vec::from_digits(&[3, 2, 1]);
        let b = Z4Vec::from_digits(&[1, 3, 1]);
        assert_eq!(a.add(b), Z4Vec::from_digits(&[0, 1, 2]));
    }
}
