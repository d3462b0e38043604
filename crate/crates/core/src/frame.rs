//! Symmetric frames and pyramids.
//!
//! Rows of a frame with `2r` rows are labelled `1, ..., r, -r, ..., -1` from
//! top to bottom. Internally rows are stored positionally; [`row_index`] and
//! [`row_label`] convert between the two.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrameError {
    #[error("row lengths must weakly increase towards the axis, got {0:?}")]
    NonMonotone(Vec<usize>),
    #[error("a pyramid has no empty rows, got {0:?}")]
    EmptyRow(Vec<usize>),
    #[error("a pyramid needs at least one row pair")]
    NoRows,
}

/// Position of the row with label `label` (`±1..=±r`) in a frame with `2r` rows.
pub fn row_index(r: usize, label: i64) -> usize {
    assert!(label != 0 && label.unsigned_abs() as usize <= r, "row label {label} out of range for r = {r}");
    if label > 0 {
        label as usize - 1
    } else {
        2 * r - label.unsigned_abs() as usize
    }
}

/// Label of the row stored at position `idx`.
pub fn row_label(r: usize, idx: usize) -> i64 {
    assert!(idx < 2 * r);
    if idx < r {
        idx as i64 + 1
    } else {
        -((2 * r - idx) as i64)
    }
}

/// Whether the left justification of rows with these lengths has connected columns.
pub fn lengths_convex(lengths: &[usize]) -> bool {
    let width = lengths.iter().copied().max().unwrap_or(0);
    (0..width).all(|col| {
        let mut seen_gap_after_run = false;
        let mut in_run = false;
        for &len in lengths {
            let occupied = len > col;
            if occupied {
                if seen_gap_after_run {
                    return false;
                }
                in_run = true;
            } else if in_run {
                seen_gap_after_run = true;
            }
        }
        true
    })
}

/// A centrally symmetric frame with `2r` rows, empty rows allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SFrame {
    /// Lengths of rows `1..=r`; row `-i` has the length of row `i`.
    top: Vec<usize>,
}

impl SFrame {
    pub fn new(top: Vec<usize>) -> SFrame {
        SFrame { top }
    }

    pub fn r(&self) -> usize {
        self.top.len()
    }

    pub fn top_lengths(&self) -> &[usize] {
        &self.top
    }

    /// All `2r` row lengths, top to bottom.
    pub fn row_lengths(&self) -> Vec<usize> {
        self.top.iter().chain(self.top.iter().rev()).copied().collect()
    }

    pub fn len_of(&self, label: i64) -> usize {
        self.top[label.unsigned_abs() as usize - 1]
    }

    pub fn num_boxes(&self) -> usize {
        2 * self.top.iter().sum::<usize>()
    }

    /// Left edge of each row, in half-box units from the left edge of the
    /// widest row, so that rows are centred on the vertical axis.
    pub fn row_offsets(&self) -> Vec<usize> {
        let width = self.top.iter().copied().max().unwrap_or(0);
        self.row_lengths().into_iter().map(|m| width - m).collect()
    }

    pub fn is_convex(&self) -> bool {
        lengths_convex(&self.row_lengths())
    }

    /// Jordan type: the multiset of row lengths, weakly decreasing, empty rows dropped.
    pub fn part(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = self.row_lengths().into_iter().filter(|&m| m > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }
}

/// A symmetric pyramid: an [`SFrame`] without empty rows whose rows weakly
/// decrease in length moving away from the horizontal axis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PyramidRows", into = "PyramidRows")]
pub struct Pyramid {
    frame: SFrame,
}

#[derive(Serialize, Deserialize)]
struct PyramidRows {
    rows: Vec<usize>,
}

impl TryFrom<PyramidRows> for Pyramid {
    type Error = FrameError;
    fn try_from(value: PyramidRows) -> Result<Self, Self::Error> {
        Pyramid::from_rows(&value.rows)
    }
}

impl From<Pyramid> for PyramidRows {
    fn from(p: Pyramid) -> Self {
        PyramidRows { rows: p.frame.top }
    }
}

impl Pyramid {
    /// Builds the pyramid whose top half has the given row lengths, outermost first.
    pub fn from_rows(lengths: &[usize]) -> Result<Pyramid, FrameError> {
        if lengths.is_empty() {
            return Err(FrameError::NoRows);
        }
        if lengths.contains(&0) {
            return Err(FrameError::EmptyRow(lengths.to_vec()));
        }
        if lengths.windows(2).any(|w| w[0] > w[1]) {
            return Err(FrameError::NonMonotone(lengths.to_vec()));
        }
        Ok(Pyramid { frame: SFrame::new(lengths.to_vec()) })
    }

    pub fn frame(&self) -> &SFrame {
        &self.frame
    }

    pub fn r(&self) -> usize {
        self.frame.r()
    }

    pub fn top_lengths(&self) -> &[usize] {
        self.frame.top_lengths()
    }

    pub fn len_of(&self, label: i64) -> usize {
        self.frame.len_of(label)
    }

    /// Half the number of boxes; the rank `n` of the weight space.
    pub fn n(&self) -> usize {
        self.frame.num_boxes() / 2
    }

    pub fn part(&self) -> Vec<usize> {
        self.frame.part()
    }

    /// The pyramid with one more box in every row.
    pub fn plus(&self) -> Pyramid {
        Pyramid { frame: SFrame::new(self.frame.top.iter().map(|m| m + 1).collect()) }
    }

    /// The pyramid with rows `±1..=±k` removed.
    pub fn strip_outer(&self, k: usize) -> Option<Pyramid> {
        (k < self.r()).then(|| Pyramid { frame: SFrame::new(self.frame.top[k..].to_vec()) })
    }

    /// Filling by `1..=n, -n..=-1` across rows from top to bottom.
    pub fn coordinate_pyramid(&self) -> Vec<Vec<i64>> {
        let n = self.n() as i64;
        let mut next = 1i64;
        let mut rows = Vec::with_capacity(2 * self.r());
        for &m in self.top_lengths() {
            rows.push((next..next + m as i64).collect());
            next += m as i64;
        }
        debug_assert_eq!(next - 1, n);
        for i in (0..self.r()).rev() {
            let row: &Vec<i64> = &rows[i];
            let mirrored = row.iter().rev().map(|k| -k).collect();
            rows.push(mirrored);
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pyramid_examples() {
        let p = Pyramid::from_rows(&[2, 3]).unwrap();
        assert_eq!(p.frame().row_lengths(), vec![2, 3, 3, 2]);
        assert_eq!(p.frame().num_boxes(), 10);
        assert_eq!(p.part(), vec![3, 3, 2, 2]);

        assert_eq!(Pyramid::from_rows(&[1]).unwrap().part(), vec![1, 1]);
        assert_eq!(Pyramid::from_rows(&[3, 3]).unwrap().part(), vec![3, 3, 3, 3]);
        assert_eq!(Pyramid::from_rows(&[3, 2]), Err(FrameError::NonMonotone(vec![3, 2])));
        assert!(matches!(Pyramid::from_rows(&[0, 2]), Err(FrameError::EmptyRow(_))));
    }

    #[test]
    fn coordinate_pyramids() {
        let k = Pyramid::from_rows(&[2, 3]).unwrap().coordinate_pyramid();
        assert_eq!(k, vec![vec![1, 2], vec![3, 4, 5], vec![-5, -4, -3], vec![-2, -1]]);
        assert_eq!(Pyramid::from_rows(&[1]).unwrap().coordinate_pyramid(), vec![vec![1], vec![-1]]);
        assert_eq!(Pyramid::from_rows(&[2]).unwrap().coordinate_pyramid(), vec![vec![1, 2], vec![-2, -1]]);
    }

    #[test]
    fn convexity_of_lengths() {
        assert!(lengths_convex(&[2, 3, 3, 2]));
        assert!(!lengths_convex(&[1, 0, 1]));
        assert!(lengths_convex(&[0, 2, 2, 0]));
        assert!(lengths_convex(&[]));
        assert!(!lengths_convex(&[2, 1, 2]));
    }

    #[test]
    fn labels_round_trip() {
        for r in 1..5 {
            for idx in 0..2 * r {
                assert_eq!(row_index(r, row_label(r, idx)), idx);
            }
        }
        assert_eq!(row_label(2, 2), -2);
        assert_eq!(row_label(2, 3), -1);
    }

    #[test]
    fn offsets_are_symmetric() {
        let f = Pyramid::from_rows(&[2, 3]).unwrap().frame().clone();
        assert_eq!(f.row_offsets(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn plus_pyramid() {
        let p = Pyramid::from_rows(&[2, 3]).unwrap();
        assert_eq!(p.plus(), Pyramid::from_rows(&[3, 4]).unwrap());
    }
}
