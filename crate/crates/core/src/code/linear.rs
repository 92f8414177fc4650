//! Weight counting for linear codes by Gray-code message enumeration.

use super::word::Word;
use crate::par;

/// Low message bits walked in Gray order inside each chunk; the remaining
/// high bits select the chunk.
const CHUNK_BITS: usize = 16;

/// Weight histogram (length n + 1) of the span of `rows`, which must be independent.
///
/// Consecutive messages in Gray order differ in one bit, so each step XORs a
/// single row and adjusts the running weight by the popcount of the bits that
/// row flips on and off.
pub fn weight_counts(rows: &[Word], n: usize, parallel: bool) -> Vec<u64> {
    let k = rows.len();
    let low = k.min(CHUNK_BITS);
    let high = k - low;
    let chunks = 1usize << high;
    let partial = par::map_range(chunks, parallel, |c| {
        let mut cur: Word = 0;
        for (i, r) in rows[low..].iter().enumerate() {
            if (c >> i) & 1 == 1 {
                cur ^= r;
            }
        }
        gray_walk(&rows[..low], cur, n)
    });
    let mut total = vec![0u64; n + 1];
    for p in partial {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    total
}

fn gray_walk(rows: &[Word], start: Word, n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let mut cur = start;
    let mut wt = cur.count_ones() as i64;
    counts[wt as usize] += 1;
    let steps: u64 = 1u64 << rows.len();
    for i in 1..steps {
        let r = rows[i.trailing_zeros() as usize];
        wt += (r & !cur).count_ones() as i64 - (r & cur).count_ones() as i64;
        cur ^= r;
        counts[wt as usize] += 1;
    }
    counts
}

/// Reference implementation: builds every codeword from its message independently.
pub fn weight_counts_brute(rows: &[Word], n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    for m in 0u64..(1u64 << rows.len()) {
        let mut c: Word = 0;
        for (i, r) in rows.iter().enumerate() {
            if (m >> i) & 1 == 1 {
                c ^= r;
            }
        }
        counts[c.count_ones() as usize] += 1;
    }
    counts
}

/// All codewords in Gray order.
pub fn span(rows: &[Word]) -> Vec<Word> {
    let mut out = Vec::with_capacity(1usize << rows.len());
    let mut cur: Word = 0;
    out.push(cur);
    for i in 1u64..(1u64 << rows.len()) {
        cur ^= rows[i.trailing_zeros() as usize];
        out.push(cur);
    }
    out
}
