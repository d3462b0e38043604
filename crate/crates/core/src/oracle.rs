//! Brute-force reference implementations.
//!
//! Nothing here touches RS insertion: the subsequence statistics are
//! computed by exhaustive search over sets of positions, and column
//! strictness by trying every arrangement of every row. These are slow by
//! construction and exist to check the fast paths.

use crate::diagram::Diagram;
use crate::entry::Entry;

/// Words longer than this are rejected; the search is exponential.
pub const MAX_ORACLE_WORD: usize = 16;

fn chain_masks(w: &[Entry], ok: impl Fn(Entry, Entry) -> bool) -> Vec<bool> {
    let n = w.len();
    assert!(n <= MAX_ORACLE_WORD, "oracle word too long ({n})");
    // pair_ok[i] = positions j > i that may follow i in the same subsequence
    let mut pair_ok = vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            if ok(w[i], w[j]) {
                pair_ok[i] |= 1 << j;
            }
        }
    }
    let full = 1usize << n;
    let mut valid = vec![false; full];
    valid[0] = true;
    for mask in 1..full {
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        // every later element of the subsequence must be compatible with i
        valid[mask] = valid[rest] && (rest as u32 & !pair_ok[i]) == 0;
    }
    valid
}

/// Minimum number of valid subsequences needed to cover each set of positions.
fn cover_numbers(valid: &[bool]) -> Vec<usize> {
    let full = valid.len();
    let mut cover = vec![usize::MAX; full];
    cover[0] = 0;
    for mask in 1..full {
        let low = mask & mask.wrapping_neg();
        let rest = mask & !low;
        // the subsequence containing the lowest position: low | (subset of rest)
        let mut sub = rest;
        let mut best = usize::MAX;
        loop {
            let part = sub | low;
            if valid[part] {
                let c = cover[mask & !part];
                if c != usize::MAX {
                    best = best.min(c + 1);
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        cover[mask] = best;
    }
    cover
}

fn best_with_k(cover: &[usize], k: usize) -> usize {
    cover
        .iter()
        .enumerate()
        .filter(|(_, &c)| c <= k)
        .map(|(mask, _)| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Exhaustive `ell(w, k)`: non-decreasing means `i < j` implies `w_i` is not
/// strictly above `w_j`, for every pair in the subsequence.
pub fn oracle_ell(w: &[Entry], k: usize) -> usize {
    let valid = chain_masks(w, |a, b| !a.gt(b));
    best_with_k(&cover_numbers(&valid), k)
}

/// Exhaustive `ctc(w, k)` over strictly decreasing subsequences.
pub fn oracle_ctc(w: &[Entry], k: usize) -> usize {
    let valid = chain_masks(w, |a, b| a.gt(b));
    best_with_k(&cover_numbers(&valid), k)
}

/// Both statistics for every `k` in `1..=max_k`, sharing the subset tables.
pub fn oracle_profiles(w: &[Entry], max_k: usize) -> (Vec<usize>, Vec<usize>) {
    let up = cover_numbers(&chain_masks(w, |a, b| !a.gt(b)));
    let down = cover_numbers(&chain_masks(w, |a, b| a.gt(b)));
    let ells = (1..=max_k).map(|k| best_with_k(&up, k)).collect();
    let ctcs = (1..=max_k).map(|k| best_with_k(&down, k)).collect();
    (ells, ctcs)
}

fn permutations(row: &[Entry]) -> Vec<Vec<Entry>> {
    if row.len() <= 1 {
        return vec![row.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..row.len() {
        let mut rest = row.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn strict_below(prev: &[Option<Entry>], row: &[Entry]) -> bool {
    row.iter().enumerate().all(|(col, &e)| prev[col].is_none_or(|top| e.lt(top)))
}

/// Tries every arrangement of every row. Tiny diagrams only.
pub fn oracle_jre_cs(d: &Diagram) -> bool {
    let width = d.rows().iter().map(Vec::len).max().unwrap_or(0);
    fn go(rows: &[Vec<Entry>], above: Vec<Option<Entry>>) -> bool {
        let Some((first, rest)) = rows.split_first() else { return true };
        permutations(first).into_iter().any(|perm| {
            if !strict_below(&above, &perm) {
                return false;
            }
            let mut next = above.clone();
            for (col, &e) in perm.iter().enumerate() {
                next[col] = Some(e);
            }
            go(rest, next)
        })
    }
    go(d.rows(), vec![None; width])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entry::Sign;

    fn ints(v: &[i64]) -> Vec<Entry> {
        v.iter().map(|&k| Entry::int(k)).collect()
    }

    #[test]
    fn small_words() {
        let w = ints(&[1, 2, 1]);
        assert_eq!(oracle_ell(&w, 1), 2);
        assert_eq!(oracle_ell(&w, 2), 3);
        assert_eq!(oracle_ctc(&w, 1), 2);
        assert_eq!(oracle_ctc(&ints(&[3, 2, 1]), 1), 3);
        assert_eq!(oracle_ctc(&[Entry::int(0), Entry::half(0)], 1), 1);
        assert_eq!(oracle_ell(&[], 3), 0);
    }

    #[test]
    fn non_decreasing_needs_every_pair() {
        // 0, zeta, -1: consecutive pairs are fine but 0 > -1
        let w = [Entry::int(0), Entry::generic("zeta", Sign::Plus, 0), Entry::int(-1)];
        assert_eq!(oracle_ell(&w, 1), 2);
    }

    #[test]
    fn arrangement_oracle() {
        assert!(oracle_jre_cs(&Diagram::new(vec![ints(&[2, 5]), ints(&[3, 1])])));
        assert!(!oracle_jre_cs(&Diagram::new(vec![ints(&[1]), ints(&[1])])));
    }
}
