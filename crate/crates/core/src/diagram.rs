//! Plain diagrams: rows of entries with no symmetry requirement.
//!
//! Restrictions `A_z` of an s-table to a single coset are diagrams, and so are
//! the intermediate halves examined by the bound checks. Rows are always
//! thought of as left justified.

use std::collections::BTreeSet;

use crate::entry::{Coset, Entry, PmClass};
use crate::frame::lengths_convex;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    rows: Vec<Vec<Entry>>,
}

impl Diagram {
    pub fn new(rows: Vec<Vec<Entry>>) -> Diagram {
        Diagram { rows }
    }

    /// `rows` empty rows.
    pub fn empty(rows: usize) -> Diagram {
        Diagram { rows: vec![Vec::new(); rows] }
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<Entry>> {
        self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_convex(&self) -> bool {
        lengths_convex(&self.row_lengths())
    }

    /// Same diagram with every row sorted by the canonical total key. Sorted
    /// rows are non-decreasing in the partial order.
    pub fn sorted(&self) -> Diagram {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut row = row.clone();
                row.sort_unstable();
                row
            })
            .collect();
        Diagram { rows }
    }

    /// Reading word of the sorted representative: left to right, top to bottom.
    pub fn word(&self) -> Vec<Entry> {
        self.sorted().rows.into_iter().flatten().collect()
    }

    /// Entries in the coset `coset` only (the diagram `A_z`).
    pub fn restrict(&self, coset: Coset) -> Diagram {
        self.filter(|e| e.coset == coset)
    }

    /// Entries in `z + Z` or `-z + Z` (the diagram `A_{±z}`).
    pub fn restrict_pm(&self, class: PmClass) -> Diagram {
        self.filter(|e| e.pm() == class)
    }

    pub fn filter(&self, keep: impl Fn(&Entry) -> bool) -> Diagram {
        Diagram { rows: self.rows.iter().map(|row| row.iter().copied().filter(|e| keep(e)).collect()).collect() }
    }

    /// Row-wise concatenation; `None` when the row counts differ.
    pub fn concat(&self, other: &Diagram) -> Option<Diagram> {
        if self.rows.len() != other.rows.len() {
            return None;
        }
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.iter().chain(b).copied().collect()).collect();
        Some(Diagram { rows })
    }

    pub fn cosets(&self) -> BTreeSet<Coset> {
        self.rows.iter().flatten().map(|e| e.coset).collect()
    }

    pub fn pm_classes(&self) -> BTreeSet<PmClass> {
        self.rows.iter().flatten().map(|e| e.pm()).collect()
    }

    /// Rows `range` as a new diagram.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Diagram {
        Diagram { rows: self.rows[range].to_vec() }
    }

    pub fn with_row(&self, idx: usize, row: Vec<Entry>) -> Diagram {
        let mut rows = self.rows.clone();
        rows[idx] = row;
        Diagram { rows }
    }
}

impl From<Vec<Vec<Entry>>> for Diagram {
    fn from(rows: Vec<Vec<Entry>>) -> Self {
        Diagram { rows }
    }
}
