//! s-tables and their row equivalence classes.

use std::fmt;

use thiserror::Error;

use crate::diagram::Diagram;
use crate::entry::{Coset, Entry, PmClass};
use crate::frame::{row_index, row_label, Pyramid, SFrame};

/// A box whose content breaks skew symmetry, in row-label / column coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewDiagnostic {
    pub row: i64,
    pub column: usize,
    pub found: Option<Entry>,
    pub expected: Option<Entry>,
}

impl fmt::Display for SkewDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |e: Option<Entry>| e.map_or_else(|| "nothing".to_owned(), |e| e.to_string());
        write!(f, "row {} column {}: found {}, expected {}", self.row, self.column + 1, show(self.found), show(self.expected))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("an s-table needs a positive even number of rows, got {0}")]
    OddRowCount(usize),
    #[error("table is not skew symmetric: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    SkewViolation(Vec<SkewDiagnostic>),
    #[error("row {row} has {found} boxes, the frame wants {expected}")]
    ShapeMismatch { row: i64, expected: usize, found: usize },
    #[error("weight has {found} coordinates, the pyramid has rank {expected}")]
    WeightLength { expected: usize, found: usize },
    #[error("cannot concatenate tables with {left} and {right} rows")]
    RowCountMismatch { left: usize, right: usize },
    #[error("cannot strip {k} outer row pairs from a table with {r} row pairs")]
    BadDepth { k: usize, r: usize },
}

fn sorted(row: &[Entry]) -> Vec<Entry> {
    let mut v = row.to_vec();
    v.sort_unstable();
    v
}

/// Boxes breaking skew symmetry. Empty iff row `-i` is, as a multiset, the
/// negation of row `i` for every `i`. Coordinates compare the stored row
/// against the centrally symmetric placement of the mirrored row.
pub fn skew_diagnostics(rows: &[Vec<Entry>]) -> Vec<SkewDiagnostic> {
    let total = rows.len();
    if total % 2 != 0 {
        return Vec::new();
    }
    let r = total / 2;
    let mut out = Vec::new();
    for i in 0..r {
        let upper = &rows[i];
        let lower = &rows[total - 1 - i];
        let negated: Vec<Entry> = upper.iter().rev().map(|e| e.neg()).collect();
        if sorted(&negated) == sorted(lower) {
            continue;
        }
        let label = row_label(r, total - 1 - i);
        for col in 0..negated.len().max(lower.len()) {
            let found = lower.get(col).copied();
            let expected = negated.get(col).copied();
            if found != expected {
                out.push(SkewDiagnostic { row: label, column: col, found, expected });
            }
        }
    }
    out
}

/// A skew symmetric filling of an s-frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct STable {
    rows: Vec<Vec<Entry>>,
}

impl STable {
    pub fn new(rows: Vec<Vec<Entry>>) -> Result<STable, TableError> {
        if rows.is_empty() || rows.len() % 2 != 0 {
            return Err(TableError::OddRowCount(rows.len()));
        }
        let diagnostics = skew_diagnostics(&rows);
        if !diagnostics.is_empty() {
            return Err(TableError::SkewViolation(diagnostics));
        }
        Ok(STable { rows })
    }

    /// Builds the table from rows `1..=r`; row `-i` gets the negated entries
    /// in the centrally symmetric boxes.
    pub fn from_top(top: Vec<Vec<Entry>>) -> STable {
        let mut rows = top;
        let r = rows.len();
        for i in (0..r).rev() {
            let mirrored = rows[i].iter().rev().map(|e| e.neg()).collect();
            rows.push(mirrored);
        }
        STable { rows }
    }

    pub fn r(&self) -> usize {
        self.rows.len() / 2
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        &self.rows
    }

    pub fn row(&self, label: i64) -> &[Entry] {
        &self.rows[row_index(self.r(), label)]
    }

    pub fn top_rows(&self) -> &[Vec<Entry>] {
        &self.rows[..self.r()]
    }

    pub fn frame(&self) -> SFrame {
        SFrame::new(self.top_rows().iter().map(Vec::len).collect())
    }

    pub fn row_lengths(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn num_boxes(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn as_diagram(&self) -> Diagram {
        Diagram::new(self.rows.clone())
    }

    /// Checks that the row lengths are those of `p`.
    pub fn check_shape(&self, p: &Pyramid) -> Result<(), TableError> {
        if self.r() != p.r() {
            return Err(TableError::RowCountMismatch { left: self.rows.len(), right: 2 * p.r() });
        }
        for (idx, (row, want)) in self.rows.iter().zip(p.frame().row_lengths()).enumerate() {
            if row.len() != want {
                return Err(TableError::ShapeMismatch { row: row_label(self.r(), idx), expected: want, found: row.len() });
            }
        }
        Ok(())
    }

    /// `A_z`: entries of the single coset `coset`. Generally not skew symmetric.
    pub fn restrict(&self, coset: Coset) -> Diagram {
        self.as_diagram().restrict(coset)
    }

    /// `A_{±z}`: again an s-table, possibly with empty rows.
    pub fn restrict_pm(&self, class: PmClass) -> STable {
        STable { rows: self.as_diagram().restrict_pm(class).into_rows() }
    }

    pub fn pm_classes(&self) -> Vec<PmClass> {
        self.as_diagram().pm_classes().into_iter().collect()
    }

    pub fn cosets(&self) -> Vec<Coset> {
        self.as_diagram().cosets().into_iter().collect()
    }

    pub fn concat(&self, other: &STable) -> Result<STable, TableError> {
        if self.rows.len() != other.rows.len() {
            return Err(TableError::RowCountMismatch { left: self.rows.len(), right: other.rows.len() });
        }
        // Appending to row i and prepending the mirror to row -i keeps the
        // geometric placement centrally symmetric.
        let r = self.r();
        let rows = (0..2 * r)
            .map(|idx| {
                if idx < r {
                    self.rows[idx].iter().chain(&other.rows[idx]).copied().collect()
                } else {
                    other.rows[idx].iter().chain(&self.rows[idx]).copied().collect()
                }
            })
            .collect();
        Ok(STable { rows })
    }

    /// `A+`: one extra box per row, holding `i - 1` in row `i` and `-(i - 1)` in row `-i`.
    pub fn plus(&self) -> STable {
        let r = self.r();
        let mut rows = self.rows.clone();
        for i in 1..=r {
            rows[row_index(r, i as i64)].push(Entry::int(i as i64 - 1));
            rows[row_index(r, -(i as i64))].insert(0, Entry::int(-(i as i64 - 1)));
        }
        STable { rows }
    }

    /// The subtable with rows `±1..=±k` removed.
    pub fn strip_outer(&self, k: usize) -> Result<STable, TableError> {
        let r = self.r();
        if k == 0 || k >= r {
            return Err(TableError::BadDepth { k, r });
        }
        Ok(STable { rows: self.rows[k..2 * r - k].to_vec() })
    }

    /// Upper half-plane part `A_+` (rows `1..=r`).
    pub fn top_half(&self) -> Diagram {
        Diagram::new(self.top_rows().to_vec())
    }

    /// Lower half-plane part `A_-` (rows `-r..=-1`).
    pub fn bottom_half(&self) -> Diagram {
        Diagram::new(self.rows[self.r()..].to_vec())
    }

    pub fn row_class(&self) -> RowClass {
        RowClass::from(self)
    }
}

impl fmt::Display for STable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| format!("[{}]", row.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        f.write_str(&rows.join(" "))
    }
}

/// Weight `sum a_i eps_i` placed as the s-table with `a_i` in the box of `i`
/// in the coordinate pyramid.
pub fn table_from_weight(p: &Pyramid, weight: &[Entry]) -> Result<STable, TableError> {
    if weight.len() != p.n() {
        return Err(TableError::WeightLength { expected: p.n(), found: weight.len() });
    }
    let mut it = weight.iter().copied();
    let top = p.top_lengths().iter().map(|&m| it.by_ref().take(m).collect()).collect();
    Ok(STable::from_top(top))
}

/// Inverse of [`table_from_weight`]: reads the top rows in coordinate order.
pub fn weight_from_table(p: &Pyramid, a: &STable) -> Result<Vec<Entry>, TableError> {
    a.check_shape(p)?;
    Ok(a.top_rows().iter().flatten().copied().collect())
}

/// Row equivalence class of an s-table, stored as the representative whose
/// rows are sorted by the canonical total key.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowClass {
    table: STable,
}

impl RowClass {
    pub fn table(&self) -> &STable {
        &self.table
    }

    pub fn into_table(self) -> STable {
        self.table
    }

    pub fn r(&self) -> usize {
        self.table.r()
    }

    pub fn rows(&self) -> &[Vec<Entry>] {
        self.table.rows()
    }

    pub fn row(&self, label: i64) -> &[Entry] {
        self.table.row(label)
    }

    pub fn restrict_pm(&self, class: PmClass) -> RowClass {
        RowClass::from(&self.table.restrict_pm(class))
    }

    pub fn restrict(&self, coset: Coset) -> Diagram {
        self.table.restrict(coset)
    }

    pub fn concat(&self, other: &RowClass) -> Result<RowClass, TableError> {
        Ok(RowClass::from(&self.table.concat(&other.table)?))
    }

    pub fn plus(&self) -> RowClass {
        RowClass::from(&self.table.plus())
    }

    pub fn pm_classes(&self) -> Vec<PmClass> {
        self.table.pm_classes()
    }

    /// Builds a class from top rows; the bottom half is implied.
    pub fn from_top(top: Vec<Vec<Entry>>) -> RowClass {
        RowClass::from(&STable::from_top(top))
    }
}

impl From<&STable> for RowClass {
    fn from(t: &STable) -> Self {
        RowClass { table: STable { rows: t.rows.iter().map(|row| sorted(row)).collect() } }
    }
}

impl fmt::Display for RowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.table, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entry::Sign;

    fn int_row(v: &[i64]) -> Vec<Entry> {
        v.iter().map(|&k| Entry::int(k)).collect()
    }

    fn pi(sign: Sign) -> Entry {
        Entry::generic("pi", sign, 0)
    }

    fn first_display() -> Vec<Vec<Entry>> {
        vec![
            int_row(&[4, 5]),
            vec![pi(Sign::Plus), Entry::int(2), Entry::int(3)],
            vec![Entry::int(-3), Entry::int(-2), pi(Sign::Minus)],
            int_row(&[-5, -3]),
        ]
    }

    #[test]
    fn first_display_is_flagged() {
        let err = STable::new(first_display()).unwrap_err();
        let TableError::SkewViolation(diags) = err else { panic!("expected skew violation") };
        assert_eq!(diags, vec![SkewDiagnostic { row: -1, column: 1, found: Some(Entry::int(-3)), expected: Some(Entry::int(-4)) }]);
    }

    #[test]
    fn restriction_of_first_display() {
        let d = Diagram::new(first_display());
        assert_eq!(
            d.restrict(Coset::Int),
            Diagram::new(vec![int_row(&[4, 5]), int_row(&[2, 3]), int_row(&[-3, -2]), int_row(&[-5, -3])])
        );
        assert_eq!(d.restrict(pi(Sign::Plus).coset), Diagram::new(vec![vec![], vec![pi(Sign::Plus)], vec![], vec![]]));
    }

    #[test]
    fn weight_round_trip_and_layout() {
        let p = Pyramid::from_rows(&[2, 3]).unwrap();
        let w: Vec<Entry> = (1..=5).map(|k| Entry::generic(&format!("a{k}"), Sign::Plus, 0)).collect();
        let a = table_from_weight(&p, &w).unwrap();
        assert_eq!(a.row(1), &w[..2]);
        assert_eq!(a.row(2), &w[2..]);
        assert_eq!(a.row(-2), &[w[4].neg(), w[3].neg(), w[2].neg()]);
        assert_eq!(weight_from_table(&p, &a).unwrap(), w);

        let p1 = Pyramid::from_rows(&[1]).unwrap();
        let zero = table_from_weight(&p1, &[Entry::int(0)]).unwrap();
        assert_eq!(zero.rows(), &[int_row(&[0]), int_row(&[0])]);
    }

    #[test]
    fn plus_appends_row_index_minus_one() {
        let a = STable::from_top(vec![int_row(&[7]), int_row(&[8])]);
        let plus = a.plus();
        assert_eq!(plus.row_lengths(), vec![2, 2, 2, 2]);
        assert!(plus.row(1).contains(&Entry::int(0)));
        assert!(plus.row(2).contains(&Entry::int(1)));
        assert!(plus.row(-2).contains(&Entry::int(-1)));
        assert!(plus.row(-1).contains(&Entry::int(0)));
        assert!(STable::new(plus.rows().to_vec()).is_ok());

        let x = Entry::generic("x", Sign::Plus, 0);
        let two = STable::from_top(vec![vec![x]]);
        assert_eq!(two.plus().rows(), &[vec![x, Entry::int(0)], vec![Entry::int(0), x.neg()]]);
    }

    #[test]
    fn strip_outer_depths() {
        let a = STable::from_top(vec![int_row(&[1]), int_row(&[2, 3]), int_row(&[4, 5])]);
        assert_eq!(a.strip_outer(1).unwrap().top_rows(), &[int_row(&[2, 3]), int_row(&[4, 5])]);
        assert_eq!(a.strip_outer(2).unwrap().rows(), &[int_row(&[4, 5]), int_row(&[-5, -4])]);
        assert_eq!(a.strip_outer(3), Err(TableError::BadDepth { k: 3, r: 3 }));
    }

    #[test]
    fn concat_of_pm_restrictions_is_row_equivalent() {
        let p = Pyramid::from_rows(&[2, 3]).unwrap();
        let a = STable::from_top(vec![int_row(&[4, 5]), vec![pi(Sign::Plus), Entry::int(2), Entry::int(3)]]);
        a.check_shape(&p).unwrap();
        let mut glued = STable::from_top(vec![vec![], vec![]]);
        for class in a.pm_classes() {
            glued = glued.concat(&a.restrict_pm(class)).unwrap();
        }
        assert_eq!(glued.row_class(), a.row_class());
        assert!(STable::new(glued.rows().to_vec()).is_ok());
    }

    #[test]
    fn concat_single_pairs() {
        let x = Entry::int(1);
        let y = Entry::half(0);
        let a = STable::from_top(vec![vec![x]]);
        let b = STable::from_top(vec![vec![y]]);
        let ab = a.concat(&b).unwrap();
        assert_eq!(ab.rows(), &[vec![x, y], vec![y.neg(), x.neg()]]);
        assert_eq!(
            a.concat(&STable::from_top(vec![vec![], vec![]])),
            Err(TableError::RowCountMismatch { left: 2, right: 4 })
        );
    }
}
