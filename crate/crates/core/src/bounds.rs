//! Explicit partition bounds for `part(RS(A_z))`.
//!
//! `A_z` has `N = 2r` rows: `p'_1, ..., p'_r` boxes in rows `1..r` and
//! `p''_r, ..., p''_1` in rows `-r..-1`, where `p'_i = floor(p_i / 2)` and
//! `p''_i = ceil(p_i / 2)`. Let `B` be the left justification of `A_z` with
//! row `-1` slid right until it is right justified with row `-2`. When `B` is
//! row equivalent to column strict, its columns are disjoint strictly
//! decreasing subsequences of the reading word, so their lengths bound the
//! transpose of the RS shape from below. The eight cases below spell those
//! column lengths out in closed form. Multiplicities are written as
//! exponents: `(N-1)^(2p'_1)` is `2p'_1` parts equal to `N - 1`.

use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::Diagram;
use crate::entry::Entry;
use crate::rs::{is_jre_cs, rs_diagram, PartitionShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BoundCase {
    #[serde(rename = "EE<=")]
    EeLe,
    #[serde(rename = "EE>")]
    EeGt,
    #[serde(rename = "EO<=")]
    EoLe,
    #[serde(rename = "EO>")]
    EoGt,
    #[serde(rename = "OE<=")]
    OeLe,
    #[serde(rename = "OE>")]
    OeGt,
    #[serde(rename = "OO<=")]
    OoLe,
    #[serde(rename = "OO>")]
    OoGt,
}

impl BoundCase {
    pub const ALL: [BoundCase; 8] =
        [BoundCase::EeLe, BoundCase::EeGt, BoundCase::EoLe, BoundCase::EoGt, BoundCase::OeLe, BoundCase::OeGt, BoundCase::OoLe, BoundCase::OoGt];

    pub fn name(self) -> &'static str {
        match self {
            BoundCase::EeLe => "EE<=",
            BoundCase::EeGt => "EE>",
            BoundCase::EoLe => "EO<=",
            BoundCase::EoGt => "EO>",
            BoundCase::OeLe => "OE<=",
            BoundCase::OeGt => "OE>",
            BoundCase::OoLe => "OO<=",
            BoundCase::OoGt => "OO>",
        }
    }
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error("need at least two row pairs, got {0}")]
    TooFewRows(usize),
    #[error("row lengths must weakly increase towards the axis: {0:?}")]
    NotMonotone(Vec<usize>),
    #[error("exponent {name} = {value} is negative for {case} with p = {p:?}")]
    NegativeExponent { case: BoundCase, name: String, value: i64, p: Vec<usize> },
    #[error("input p = {p:?} is in case {found}, not {expected}")]
    CaseMismatch { expected: BoundCase, found: BoundCase, p: Vec<usize> },
    #[error("row lengths {found:?} do not match the expected {expected:?}")]
    LengthMismatch { expected: Vec<usize>, found: Vec<usize> },
    #[error("context not satisfied: {0}")]
    ContextUnsatisfied(String),
}

/// Row lengths `p_1 <= ... <= p_r` of `A_{±z}`, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CaseInput {
    p: Vec<usize>,
}

impl CaseInput {
    pub fn new(p: Vec<usize>) -> Result<CaseInput, BoundError> {
        if p.len() < 2 {
            return Err(BoundError::TooFewRows(p.len()));
        }
        if p.windows(2).any(|w| w[0] > w[1]) {
            return Err(BoundError::NotMonotone(p));
        }
        Ok(CaseInput { p })
    }

    pub fn p(&self) -> &[usize] {
        &self.p
    }

    pub fn r(&self) -> usize {
        self.p.len()
    }

    /// `p'_i`, 1-based.
    pub fn lo(&self, i: usize) -> i64 {
        (self.p[i - 1] / 2) as i64
    }

    /// `p''_i`, 1-based.
    pub fn hi(&self, i: usize) -> i64 {
        self.p[i - 1].div_ceil(2) as i64
    }

    /// Row lengths of `A_z`, top to bottom.
    pub fn row_lengths(&self) -> Vec<usize> {
        let r = self.r();
        let top = (1..=r).map(|i| self.lo(i) as usize);
        let bottom = (1..=r).rev().map(|i| self.hi(i) as usize);
        top.chain(bottom).collect()
    }

    pub fn case(&self) -> BoundCase {
        let (p1, p2) = (self.p[0], self.p[1]);
        let (lo1, hi1, lo2, hi2) = (self.lo(1), self.hi(1), self.lo(2), self.hi(2));
        match (p1 % 2, p2 % 2) {
            (0, 0) if 2 * lo1 <= lo2 => BoundCase::EeLe,
            (0, 0) => BoundCase::EeGt,
            (0, _) if 2 * lo1 <= lo2 => BoundCase::EoLe,
            (0, _) => BoundCase::EoGt,
            (_, 0) if 2 * hi1 <= lo2 => BoundCase::OeLe,
            (_, 0) => BoundCase::OeGt,
            _ if 2 * hi1 <= hi2 + 1 => BoundCase::OoLe,
            _ => BoundCase::OoGt,
        }
    }
}

/// Parts given as `(value, multiplicity)` pairs, checked for negative
/// multiplicities and expanded.
fn expand(case: BoundCase, p: &[usize], factors: &[(i64, i64, String)]) -> Result<PartitionShape, BoundError> {
    let mut parts = Vec::new();
    for (value, mult, name) in factors {
        if *mult < 0 {
            return Err(BoundError::NegativeExponent { case, name: name.clone(), value: *mult, p: p.to_vec() });
        }
        if *mult > 0 && *value < 0 {
            return Err(BoundError::NegativeExponent { case, name: format!("part {name}"), value: *value, p: p.to_vec() });
        }
        parts.extend(std::iter::repeat_n(*value as usize, *mult as usize));
    }
    Ok(PartitionShape::new(parts))
}

/// The lower bound for `part(RS(A_z))^T` and the upper bound for
/// `part(RS(A_z))`, in the case determined by `input`.
pub fn case_bound(input: &CaseInput) -> Result<(PartitionShape, PartitionShape), BoundError> {
    let case = input.case();
    let n = 2 * input.r() as i64;
    let (a1, b1, a2, b2) = (input.lo(1), input.hi(1), input.lo(2), input.hi(2));
    let f = |v: i64, m: i64, name: &str| (v, m, name.to_owned());
    let mut lower = match case {
        BoundCase::EeLe => vec![f(n - 1, 2 * a1, "2p'1"), f(n - 2, a2 - 2 * a1, "p'2-2p'1")],
        BoundCase::EeGt => vec![f(n, 2 * a1 - a2, "2p'1-p'2"), f(n - 1, 2 * a2 - 2 * a1, "2p'2-2p'1")],
        BoundCase::EoLe => vec![f(n - 1, 2 * a1 - 1, "2p'1-1"), f(n - 2, a2 - 2 * a1 + 2, "p'2-2p'1+2")],
        BoundCase::EoGt => vec![f(n, 2 * a1 - a2 - 1, "2p'1-p'2-1"), f(n - 1, 2 * a2 - 2 * a1 + 1, "2p'2-2p'1+1"), f(n - 2, 1, "1")],
        BoundCase::OeLe => vec![f(n - 1, a1 + b1, "p'1+p''1"), f(n - 2, a2 - a1 - b1, "p'2-p'1-p''1")],
        BoundCase::OeGt => vec![f(n, 2 * a1 - a2 + 1, "2p'1-p'2+1"), f(n - 1, 2 * a2 - 2 * a1 - 1, "2p'2-2p'1-1")],
        BoundCase::OoLe => vec![f(n - 1, a1 + b1 - 1, "p'1+p''1-1"), f(n - 2, a2 - a1 - b1 + 2, "p'2-p'1-p''1+2")],
        BoundCase::OoGt => vec![f(n, 2 * a1 - a2, "2p'1-p'2"), f(n - 1, 2 * a2 - 2 * a1, "2p'2-2p'1"), f(n - 2, 1, "1")],
    };
    let mut upper_tail = Vec::new();
    for i in 3..=input.r() {
        let base = n - 2 * i as i64;
        lower.push(f(base + 2, input.lo(i) - input.hi(i - 1), &format!("p'{i}-p''{}", i - 1)));
        lower.push(f(base + 1, input.hi(i) - input.lo(i), &format!("p''{i}-p'{i}")));
        upper_tail.push(f(input.hi(i), 1, &format!("p''{i}")));
        upper_tail.push(f(input.lo(i), 1, &format!("p'{i}")));
    }
    let head = match case {
        BoundCase::EeLe => vec![b2, a2, 2 * a1],
        BoundCase::EeGt => vec![b2, a2, a2, 2 * a1 - a2],
        BoundCase::EoLe => vec![b2, a2 + 1, 2 * a1 - 1],
        BoundCase::EoGt => vec![b2, a2 + 1, a2, 2 * a1 - a2 - 1],
        BoundCase::OeLe => vec![b2, a2, a1 + b1],
        BoundCase::OeGt => vec![b2, a2, a2, a1 + b1 - a2],
        BoundCase::OoLe => vec![b2, a2 + 1, a1 + b1 - 1],
        BoundCase::OoGt => vec![b2, a2 + 1, a2, a1 + b1 - a2 - 1],
    };
    upper_tail.extend(head.into_iter().map(|v| f(v, 1, "head")));
    let lower = expand(case, input.p(), &lower)?;
    let upper = expand(case, input.p(), &upper_tail)?;
    Ok((lower, upper))
}

/// Like [`case_bound`], but fails unless the input is in `expected`.
pub fn case_bound_for(input: &CaseInput, expected: BoundCase) -> Result<(PartitionShape, PartitionShape), BoundError> {
    let found = input.case();
    if found != expected {
        return Err(BoundError::CaseMismatch { expected, found, p: input.p().to_vec() });
    }
    case_bound(input)
}

/// Columns of `B` as sets of row positions, left to right.
fn b_columns(input: &CaseInput) -> Vec<Vec<usize>> {
    let lengths = input.row_lengths();
    let rows = lengths.len();
    let below = lengths[rows - 2];
    let last = lengths[rows - 1];
    let width = lengths.iter().copied().max().unwrap_or(0);
    (0..width)
        .map(|col| {
            (0..rows)
                .filter(|&row| if row == rows - 1 { col + last >= below && col < below } else { col < lengths[row] })
                .collect()
        })
        .collect()
}

/// Column lengths of `B`, counted directly. Independent of the closed forms.
pub fn b_column_lengths(input: &CaseInput) -> PartitionShape {
    PartitionShape::new(b_columns(input).iter().map(Vec::len).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceVerdict {
    pub case: BoundCase,
    pub p: Vec<usize>,
    pub lower: PartitionShape,
    pub upper: PartitionShape,
    pub observed: PartitionShape,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl DominanceVerdict {
    pub fn passed(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Checks both bounds against the RS shape of `az`, after confirming the
/// context: the top half, bottom half, and the table with rows `±1`
/// removed are each justified row equivalent to column strict.
pub fn verify_bound(az: &Diagram, input: &CaseInput) -> Result<DominanceVerdict, BoundError> {
    let expected = input.row_lengths();
    if az.row_lengths() != expected {
        return Err(BoundError::LengthMismatch { expected, found: az.row_lengths() });
    }
    let n = az.num_rows();
    let checks = [("top half", az.slice(0..n / 2)), ("bottom half", az.slice(n / 2..n)), ("rows ±1 removed", az.slice(1..n - 1))];
    for (what, part) in checks {
        if !is_jre_cs(&part) {
            return Err(BoundError::ContextUnsatisfied(format!("{what} is not justified row equivalent to column strict")));
        }
    }
    let (lower, upper) = case_bound(input)?;
    let observed = rs_diagram(az).shape();
    Ok(DominanceVerdict {
        case: input.case(),
        p: input.p().to_vec(),
        lower_ok: lower.dominated_by(&observed.transpose()),
        upper_ok: observed.dominated_by(&upper),
        lower,
        upper,
        observed,
    })
}

/// Random `p` with `r` row pairs landing in `case`, or `None` after too many tries.
pub fn random_input<R: Rng>(case: BoundCase, r: usize, max_part: usize, rng: &mut R) -> Option<CaseInput> {
    for _ in 0..10_000 {
        let mut p: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=max_part)).collect();
        p.sort_unstable();
        let input = CaseInput::new(p).ok()?;
        if input.case() == case && case_bound(&input).is_ok() {
            return Some(input);
        }
    }
    None
}

/// Fills `B` column strict with integers, reads off its rows as `A_z`, and
/// keeps the result only if it satisfies the context of [`verify_bound`].
pub fn random_instance<R: Rng>(input: &CaseInput, spread: i64, rng: &mut R) -> Option<Diagram> {
    let lengths = input.row_lengths();
    let mut rows: Vec<Vec<Entry>> = lengths.iter().map(|&m| Vec::with_capacity(m)).collect();
    for column in b_columns(input) {
        let mut values: Vec<i64> = Vec::with_capacity(column.len());
        while values.len() < column.len() {
            let v = rng.gen_range(-spread..=spread);
            if !values.contains(&v) {
                values.push(v);
            }
        }
        values.sort_unstable_by(|a, b| b.cmp(a));
        for (&row, v) in column.iter().zip(values) {
            rows[row].push(Entry::int(v));
        }
    }
    let az = Diagram::new(rows);
    match verify_bound(&az, input) {
        Err(BoundError::ContextUnsatisfied(_)) => None,
        _ => Some(az),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn input(p: &[usize]) -> CaseInput {
        CaseInput::new(p.to_vec()).unwrap()
    }

    #[test]
    fn ee_le_example() {
        let i = input(&[2, 4]);
        assert_eq!(i.case(), BoundCase::EeLe);
        let (lower, upper) = case_bound(&i).unwrap();
        assert_eq!(upper.parts(), &[2, 2, 2]);
        assert_eq!(lower.parts(), &[3, 3]);
        assert_eq!(lower, b_column_lengths(&i));
    }

    #[test]
    fn zero_rows_give_empty_bounds() {
        let (lower, upper) = case_bound(&input(&[0, 0])).unwrap();
        assert_eq!(lower.size() + upper.size(), 0);
    }

    #[test]
    fn case_detection() {
        assert_eq!(input(&[2, 2]).case(), BoundCase::EeGt);
        assert_eq!(input(&[2, 5]).case(), BoundCase::EoLe);
        assert_eq!(input(&[2, 3]).case(), BoundCase::EoGt);
        assert_eq!(input(&[1, 4]).case(), BoundCase::OeLe);
        assert_eq!(input(&[3, 4]).case(), BoundCase::OeGt);
        assert_eq!(input(&[1, 3]).case(), BoundCase::OoLe);
        assert_eq!(input(&[3, 3]).case(), BoundCase::OoGt);
        assert!(matches!(case_bound_for(&input(&[2, 4]), BoundCase::OoGt), Err(BoundError::CaseMismatch { .. })));
    }

    #[test]
    fn closed_forms_match_column_counts() {
        for r in 2..=4 {
            let mut p = vec![1; r];
            loop {
                if let Ok(i) = CaseInput::new(p.clone()) {
                    if let Ok((lower, upper)) = case_bound(&i) {
                        assert_eq!(lower, b_column_lengths(&i), "p = {p:?}");
                        assert_eq!(upper, lower.transpose(), "p = {p:?}");
                    }
                }
                // next non-decreasing vector with entries in 1..=7
                let Some(k) = (0..r).rev().find(|&k| p[k] < 7) else { break };
                let v = p[k] + 1;
                for x in &mut p[k..] {
                    *x = v;
                }
            }
        }
    }

    #[test]
    fn corrupted_instance_is_rejected() {
        let i = input(&[2, 4]);
        let az = Diagram::new(vec![vec![Entry::int(0)], vec![Entry::int(0), Entry::int(1)], vec![Entry::int(0), Entry::int(1)], vec![Entry::int(5)]]);
        assert!(matches!(verify_bound(&az, &i), Err(BoundError::ContextUnsatisfied(_))));
    }

    #[test]
    fn random_instances_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for case in BoundCase::ALL {
            let i = random_input(case, 3, 8, &mut rng).unwrap();
            let az = (0..1000).find_map(|_| random_instance(&i, 12, &mut rng)).unwrap();
            let v = verify_bound(&az, &i).unwrap();
            assert!(v.passed(), "{v:?}");
        }
    }
}
