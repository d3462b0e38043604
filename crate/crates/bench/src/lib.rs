//! Deterministic inputs for the benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stab_core::{Diagram, Entry, Sign};

fn letters() -> Vec<Entry> {
    let mut v: Vec<Entry> = (-4..=4).map(Entry::int).collect();
    v.extend((-2..=1).map(Entry::half));
    v.extend((-2..=2).map(|k| Entry::generic("zeta", Sign::Plus, k)));
    v
}

/// A word of length `n` over mixed cosets.
pub fn word(seed: u64, n: usize) -> Vec<Entry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = letters();
    (0..n).map(|_| *pool.choose(&mut rng).expect("letters")).collect()
}

/// A column strict integral diagram with the given row lengths, rows shuffled.
pub fn column_strict(seed: u64, lengths: &[usize]) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = lengths.iter().copied().max().unwrap_or(0);
    let mut rows: Vec<Vec<Entry>> = lengths.iter().map(|_| Vec::new()).collect();
    for col in 0..width {
        let mut v = rng.gen_range(0..4) + 2 * lengths.len() as i64;
        for (row, _) in lengths.iter().enumerate().filter(|(_, &m)| m > col) {
            rows[row].push(Entry::int(v));
            v -= rng.gen_range(1..3);
        }
    }
    for row in &mut rows {
        row.shuffle(&mut rng);
    }
    Diagram::new(rows)
}
