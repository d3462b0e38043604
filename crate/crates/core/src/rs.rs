//! Robinson–Schensted insertion over coset numbers and the column strictness
//! tests built on it.
//!
//! Tableaux are stored bottom row first: insertion always starts in
//! `rows[0]` and bumped entries move to `rows[1]`, and so on.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::entry::Entry;
use crate::table::RowClass;

/// A partition, parts weakly decreasing and positive.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionShape {
    parts: Vec<usize>,
}

impl PartitionShape {
    /// Sorts and drops zero parts.
    pub fn new(mut parts: Vec<usize>) -> PartitionShape {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PartitionShape { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn transpose(&self) -> PartitionShape {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|col| self.parts.iter().filter(|&&p| p > col).count()).collect();
        PartitionShape { parts }
    }

    /// `p_1 + ... + p_k`.
    pub fn prefix_sum(&self, k: usize) -> usize {
        self.parts.iter().take(k).sum()
    }

    /// Dominance order: every prefix sum of `self` is at most that of `other`.
    pub fn dominated_by(&self, other: &PartitionShape) -> bool {
        let n = self.parts.len().max(other.parts.len());
        (1..=n).all(|k| self.prefix_sum(k) <= other.prefix_sum(k))
    }
}

impl std::fmt::Display for PartitionShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tableau {
    rows: Vec<Vec<Entry>>,
}

impl Tableau {
    pub fn new() -> Tableau {
        Tableau::default()
    }

    /// Rows, bottom row first.
    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn shape(&self) -> PartitionShape {
        PartitionShape::new(self.rows.iter().map(Vec::len).collect())
    }

    /// Inserts `x`: it bumps the first entry of the bottom row that is
    /// strictly above it, otherwise it is appended. Incomparable entries never
    /// bump.
    pub fn insert(&mut self, x: Entry) {
        let mut carry = x;
        for row in &mut self.rows {
            match row.iter().position(|&b| carry.lt(b)) {
                Some(j) => carry = std::mem::replace(&mut row[j], carry),
                None => {
                    row.push(carry);
                    return;
                }
            }
        }
        self.rows.push(vec![carry]);
    }

    /// Same tableau with each row sorted by the canonical key, i.e. the
    /// representative of its row equivalence class.
    pub fn canonical(&self) -> Tableau {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.sort_unstable();
                row
            })
            .collect();
        Tableau { rows }
    }
}

pub fn rs_insert(t: &Tableau, x: Entry) -> Tableau {
    let mut t = t.clone();
    t.insert(x);
    t
}

pub fn rs_word(w: &[Entry]) -> Tableau {
    let mut t = Tableau::new();
    for &x in w {
        t.insert(x);
    }
    t
}

pub fn shape(w: &[Entry]) -> PartitionShape {
    rs_word(w).shape()
}

/// Largest total length of `k` disjoint non-decreasing subsequences.
pub fn ell(w: &[Entry], k: usize) -> usize {
    shape(w).prefix_sum(k)
}

/// Largest total length of `k` disjoint strictly decreasing subsequences.
pub fn ctc(w: &[Entry], k: usize) -> usize {
    shape(w).transpose().prefix_sum(k)
}

/// RS of a row equivalence class: insertion of the reading word of a
/// representative with non-decreasing rows.
pub fn rs_class(class: &RowClass) -> Tableau {
    rs_word(&class.table().as_diagram().word()).canonical()
}

pub fn rs_diagram(d: &Diagram) -> Tableau {
    rs_word(&d.word())
}

/// Left-justified columns strictly decreasing from top to bottom. Entries of
/// a column separated by rows too short to reach it are compared directly.
pub fn is_column_strict(d: &Diagram) -> bool {
    let width = d.rows().iter().map(Vec::len).max().unwrap_or(0);
    (0..width).all(|col| {
        let column: Vec<Entry> = d.rows().iter().filter_map(|row| row.get(col).copied()).collect();
        column.windows(2).all(|w| w[1].lt(w[0]))
    })
}

/// Partition of the row lengths of `d`.
pub fn frame_part(d: &Diagram) -> PartitionShape {
    PartitionShape::new(d.row_lengths())
}

/// Whether some rearrangement within rows of the left justification of `d`
/// is column strict. Convex diagrams use the RS shape test; others fall
/// back to search.
pub fn is_jre_cs(d: &Diagram) -> bool {
    if d.is_convex() {
        jre_cs_by_shape(d)
    } else {
        column_strict_arrangement(d).is_some()
    }
}

/// Shape test: `part(RS(word)) == part(frame)`. Only meaningful for convex diagrams.
pub fn jre_cs_by_shape(d: &Diagram) -> bool {
    rs_diagram(d).shape() == frame_part(d)
}

/// Searches, row by row, for a column strict rearrangement of `d`.
pub fn column_strict_arrangement(d: &Diagram) -> Option<Diagram> {
    let width = d.rows().iter().map(Vec::len).max().unwrap_or(0);
    let mut search = Search { rows: d.sorted().into_rows(), dead: HashSet::new(), chosen: Vec::new() };
    let above = vec![None; width];
    if search.place_row(0, &above) {
        Some(Diagram::new(search.chosen))
    } else {
        None
    }
}

struct Search {
    rows: Vec<Vec<Entry>>,
    /// `(row, column tops)` states known to have no completion.
    dead: HashSet<(usize, Vec<Option<Entry>>)>,
    chosen: Vec<Vec<Entry>>,
}

impl Search {
    fn place_row(&mut self, idx: usize, above: &[Option<Entry>]) -> bool {
        if idx == self.rows.len() {
            return true;
        }
        let key = (idx, above.to_vec());
        if self.dead.contains(&key) {
            return false;
        }
        let mut remaining = self.rows[idx].clone();
        let mut placed = Vec::with_capacity(remaining.len());
        if self.fill_columns(idx, above, &mut remaining, &mut placed) {
            return true;
        }
        self.dead.insert(key);
        false
    }

    fn fill_columns(&mut self, idx: usize, above: &[Option<Entry>], remaining: &mut Vec<Entry>, placed: &mut Vec<Entry>) -> bool {
        if remaining.is_empty() {
            let mut next = above.to_vec();
            for (col, &e) in placed.iter().enumerate() {
                next[col] = Some(e);
            }
            self.chosen.push(placed.clone());
            if self.place_row(idx + 1, &next) {
                return true;
            }
            self.chosen.pop();
            return false;
        }
        let col = placed.len();
        let mut tried: Vec<Entry> = Vec::new();
        for pos in 0..remaining.len() {
            let e = remaining[pos];
            if tried.contains(&e) {
                continue;
            }
            tried.push(e);
            if let Some(top) = above[col] {
                if !e.lt(top) {
                    continue;
                }
            }
            remaining.remove(pos);
            placed.push(e);
            let ok = self.fill_columns(idx, above, remaining, placed);
            placed.pop();
            remaining.insert(pos, e);
            if ok {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entry::Sign;

    fn ints(v: &[i64]) -> Vec<Entry> {
        v.iter().map(|&k| Entry::int(k)).collect()
    }

    fn diagram(rows: &[&[i64]]) -> Diagram {
        Diagram::new(rows.iter().map(|r| ints(r)).collect())
    }

    #[test]
    fn insertion_examples() {
        assert_eq!(rs_insert(&Tableau::new(), Entry::int(1)).rows(), &[ints(&[1])]);
        let t = rs_word(&ints(&[1, 2]));
        assert_eq!(rs_insert(&t, Entry::int(1)).rows(), &[ints(&[1, 1]), ints(&[2])]);
        let t = rs_word(&ints(&[0]));
        assert_eq!(rs_insert(&t, Entry::half(0)).rows(), &[vec![Entry::int(0), Entry::half(0)]]);
    }

    #[test]
    fn word_shapes() {
        assert_eq!(shape(&[]), PartitionShape::default());
        assert_eq!(shape(&ints(&[1, 2, 1])).parts(), &[2, 1]);
        let mixed = [Entry::int(0), Entry::half(0), Entry::generic("pi", Sign::Plus, 0)];
        assert_eq!(shape(&mixed).parts(), &[3]);
    }

    #[test]
    fn statistics() {
        assert_eq!(ctc(&ints(&[3, 2, 1]), 1), 3);
        assert_eq!(ell(&ints(&[1, 2, 1]), 1), 2);
        assert_eq!(ell(&ints(&[1, 2, 1]), 2), 3);
        assert_eq!(ctc(&[Entry::int(0), Entry::half(0)], 1), 1);
    }

    #[test]
    fn transpose_and_dominance() {
        let p = PartitionShape::new(vec![3, 1, 0, 2]);
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.transpose().parts(), &[3, 2, 1]);
        assert_eq!(PartitionShape::new(vec![4, 1]).transpose().parts(), &[2, 1, 1, 1]);
        assert!(PartitionShape::new(vec![2, 2]).dominated_by(&PartitionShape::new(vec![3, 1])));
        assert!(!PartitionShape::new(vec![3, 1]).dominated_by(&PartitionShape::new(vec![2, 2])));
    }

    #[test]
    fn column_strictness() {
        assert!(is_column_strict(&diagram(&[&[4, 5], &[2, 3], &[-3, -2], &[-5, -4]])));
        assert!(!is_column_strict(&diagram(&[&[1], &[1]])));
        assert!(!is_column_strict(&Diagram::new(vec![vec![Entry::half(0)], vec![Entry::int(0)]])));
    }

    #[test]
    fn class_rs_of_integral_part() {
        let d = diagram(&[&[4, 5], &[2, 3], &[-3, -2], &[-5, -4]]);
        let class = RowClass::from(&crate::table::STable::new(d.rows().to_vec()).unwrap());
        let t = rs_class(&class);
        assert_eq!(t.shape().parts(), &[2, 2, 2, 2]);
        assert!(is_jre_cs(&d));
    }

    #[test]
    fn jre_cs_examples() {
        assert!(!is_jre_cs(&diagram(&[&[1], &[1]])));
        // rows need rearranging: [2,5] over [3,1] -> 5 over 3, 2 over 1
        assert!(is_jre_cs(&diagram(&[&[2, 5], &[3, 1]])));
        assert!(!is_jre_cs(&diagram(&[&[2, 3], &[3, 1]])));
        // non-convex: column 2 skips the middle row
        let d = diagram(&[&[5, 9], &[4], &[3, 8]]);
        assert!(!d.is_convex());
        let arranged = column_strict_arrangement(&d).unwrap();
        assert!(is_column_strict(&arranged));
        assert!(column_strict_arrangement(&diagram(&[&[5, 7], &[4], &[3, 8]])).is_none());
    }
}
