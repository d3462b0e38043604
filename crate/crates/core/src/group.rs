//! Row swapping, the middle operator `c`, and the component group action.
//!
//! # Swap rule
//!
//! Two adjacent rows (an upper row `X` over a lower row `Y`) are swapped one
//! coset at a time. Inside a coset the entries are matched like brackets:
//! scanning values upwards, each upper entry `x` is paired with the largest
//! still unpaired lower entry `y < x`. Every pair stays where it is and every
//! unpaired entry changes row. The swap is defined iff, in each coset, the
//! unpaired entries all come from the same row. This is exactly the
//! condition for the left-justified pair to be column strict after
//! rearrangement, it exchanges the two row lengths, it is an involution,
//! and it preserves the Knuth class of the reading word (so the RS shape of
//! every coset restriction is unchanged). An empty lower row forces the
//! whole upper row down.
//!
//! # The operator `c`
//!
//! `c` only touches the middle rows `r` and `-r`. For a generic class
//! `±z + Z` it applies the swap rule to the `z`-parts of the two middle rows
//! (`z` taken with sign `+`); for `Z` and `1/2 + Z` it negates the
//! sharp-element of row `r` when that class has odd size in row `r`.
//!
//! # Generators
//!
//! In type D the generators correspond to the distinct odd row lengths of the
//! pyramid, in type C to the distinct even ones. For a length `p`, `i` is the
//! innermost row of length `p`, and
//! `c_j = s_i ... s_{r-1} c s_{r-1} ... s_i`. The type C action goes through
//! `A+`: act in type D on the lifted table and remove the added boxes.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::Diagram;
use crate::entry::{Coset, Entry, PmClass, Sign};
use crate::frame::{row_index, Pyramid};
use crate::table::RowClass;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    C,
    D,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LieType::C => "C",
            LieType::D => "D",
        })
    }
}

/// Applies the swap rule to an upper row `top` and lower row `bottom`.
/// Returns the new `(top, bottom)`, each sorted, or `None` when undefined.
pub fn swap_pair(top: &[Entry], bottom: &[Entry]) -> Option<(Vec<Entry>, Vec<Entry>)> {
    let mut by_coset: BTreeMap<Coset, (Vec<i64>, Vec<i64>)> = BTreeMap::new();
    for e in top {
        by_coset.entry(e.coset).or_default().0.push(e.offset);
    }
    for e in bottom {
        by_coset.entry(e.coset).or_default().1.push(e.offset);
    }
    let mut new_top = Vec::with_capacity(bottom.len());
    let mut new_bottom = Vec::with_capacity(top.len());
    for (coset, (ups, downs)) in by_coset {
        let (paired_up, lone_up, paired_down, lone_down) = bracket_match(&ups, &downs);
        if !lone_up.is_empty() && !lone_down.is_empty() {
            return None;
        }
        let mk = |k: i64| Entry { coset, offset: k };
        new_top.extend(paired_up.into_iter().chain(lone_down).map(mk));
        new_bottom.extend(paired_down.into_iter().chain(lone_up).map(mk));
    }
    new_top.sort_unstable();
    new_bottom.sort_unstable();
    Some((new_top, new_bottom))
}

/// Bracket matching of upper offsets against strictly smaller lower offsets.
/// Returns `(paired upper, unpaired upper, paired lower, unpaired lower)`.
fn bracket_match(ups: &[i64], downs: &[i64]) -> (Vec<i64>, Vec<i64>, Vec<i64>, Vec<i64>) {
    // (value, 0 = upper, 1 = lower): at equal values uppers come first so a
    // lower entry is never paired with an equal upper one
    let mut events: Vec<(i64, u8)> = ups.iter().map(|&v| (v, 0)).chain(downs.iter().map(|&v| (v, 1))).collect();
    events.sort_unstable();
    let mut open: Vec<i64> = Vec::new();
    let (mut paired_up, mut lone_up, mut paired_down) = (Vec::new(), Vec::new(), Vec::new());
    for (v, kind) in events {
        if kind == 1 {
            open.push(v);
        } else if let Some(y) = open.pop() {
            paired_up.push(v);
            paired_down.push(y);
        } else {
            lone_up.push(v);
        }
    }
    (paired_up, lone_up, paired_down, open)
}

/// `s_i*`: swaps rows `i` and `i + 1` (and mirrors on rows `-(i+1)`, `-i`).
pub fn row_swap(a: &RowClass, i: usize) -> Option<RowClass> {
    let r = a.r();
    assert!(i >= 1 && i < r, "row swap s_{i} needs 1 <= i < r = {r}");
    let (upper, lower) = swap_pair(a.row(i as i64), a.row(i as i64 + 1))?;
    let mut top: Vec<Vec<Entry>> = a.table().top_rows().to_vec();
    top[i - 1] = upper;
    top[i] = lower;
    Some(RowClass::from_top(top))
}

/// `s_{r,-r}*` on a table whose middle rows are labelled `r` and `-r`.
pub fn middle_swap(d: &Diagram) -> Option<Diagram> {
    let n = d.num_rows();
    assert!(n >= 2 && n % 2 == 0, "middle swap needs an even number of rows");
    let (upper, lower) = swap_pair(&d.rows()[n / 2 - 1], &d.rows()[n / 2])?;
    Some(d.with_row(n / 2 - 1, upper).with_row(n / 2, lower))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SharpError {
    #[error("every ± class has an even number of entries in the row")]
    NoOddClass,
    #[error("more than one ± class has an odd number of entries in the row")]
    SeveralOddClasses,
}

/// Distinguished entry of the unique odd-size ± class of a row.
///
/// For `Z` and `1/2 + Z` group the entries of the class by absolute value and
/// take the smallest absolute value `a` held by an odd number of entries. The
/// sharp-element is `a` if `a` itself occurs an odd number of times and `-a`
/// otherwise. Negating it leaves `a` as the smallest odd level and flips the
/// parity of both counts, so negating the sharp-element is an involution on
/// rows. For a generic class it is the largest entry of the `+` thread, or of
/// the `-` thread when the `+` thread is empty.
pub fn sharp_element(row: &[Entry]) -> Result<Entry, SharpError> {
    let mut counts: BTreeMap<PmClass, usize> = BTreeMap::new();
    for e in row {
        *counts.entry(e.pm()).or_default() += 1;
    }
    let mut odd = counts.into_iter().filter(|&(_, c)| c % 2 == 1).map(|(k, _)| k);
    let class = odd.next().ok_or(SharpError::NoOddClass)?;
    if odd.next().is_some() {
        return Err(SharpError::SeveralOddClasses);
    }
    let in_class = |e: &&Entry| e.pm() == class;
    if !matches!(class, PmClass::Generic(_)) {
        let part: Vec<Entry> = row.iter().filter(in_class).copied().collect();
        return Ok(self_negative_sharp(&part));
    }
    let plus_thread = row.iter().filter(in_class).filter(|e| !matches!(e.coset, Coset::Generic(_, Sign::Minus))).max_by_key(|e| e.offset);
    Ok(*plus_thread.or_else(|| row.iter().filter(in_class).max_by_key(|e| e.offset)).expect("odd class is non-empty"))
}

fn doubled(e: Entry) -> i64 {
    match e.coset {
        Coset::Int => 2 * e.offset,
        Coset::Half => 2 * e.offset + 1,
        Coset::Generic(..) => unreachable!("generic entries have no absolute value"),
    }
}

/// Sharp-element of an odd-size list drawn from `Z` or from `1/2 + Z`.
fn self_negative_sharp(part: &[Entry]) -> Entry {
    let mut levels: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for &e in part {
        let v = doubled(e);
        let c = levels.entry(v.abs()).or_default();
        if v >= 0 {
            c.0 += 1;
        } else {
            c.1 += 1;
        }
    }
    let (&level, &(pos, _)) = levels.iter().find(|(_, &(p, n))| (p + n) % 2 == 1).expect("odd-size list has an odd level");
    let want = if level == 0 || pos % 2 == 1 { level } else { -level };
    *part.iter().find(|&&e| doubled(e) == want).expect("chosen level is present")
}

/// The middle operator `c`. Only rows `r` and `-r` change.
pub fn c_op(a: &RowClass) -> Option<RowClass> {
    let r = a.r();
    let middle = a.row(r as i64);
    let below = a.row(-(r as i64));
    let mut new_row: Vec<Entry> = Vec::with_capacity(middle.len());

    for class in a.table().as_diagram().slice(r - 1..r + 1).pm_classes() {
        let part: Vec<Entry> = middle.iter().copied().filter(|e| e.pm() == class).collect();
        match class {
            PmClass::Int | PmClass::Half => {
                let mut part = part;
                if part.len() % 2 == 1 {
                    let sharp = self_negative_sharp(&part);
                    let pos = part.iter().position(|&e| e == sharp).expect("sharp-element comes from the list");
                    part[pos] = sharp.neg();
                }
                new_row.extend(part);
            }
            PmClass::Generic(label) => {
                let z = Coset::Generic(label, Sign::Plus);
                let upper: Vec<Entry> = middle.iter().copied().filter(|e| e.coset == z).collect();
                let lower: Vec<Entry> = below.iter().copied().filter(|e| e.coset == z).collect();
                let (upper, lower) = swap_pair(&upper, &lower)?;
                new_row.extend(upper);
                new_row.extend(lower.into_iter().map(Entry::neg));
            }
        }
    }
    let mut top: Vec<Vec<Entry>> = a.table().top_rows().to_vec();
    new_row.sort_unstable();
    top[r - 1] = new_row;
    Some(RowClass::from_top(top))
}

/// The generators `c_1, ..., c_d` of the component group for a pyramid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    ty: LieType,
    r: usize,
    /// `(part, innermost row label of that length)`, parts strictly decreasing.
    gens: Vec<(usize, usize)>,
}

impl Generators {
    pub fn new(p: &Pyramid, ty: LieType) -> Generators {
        let wanted = |m: usize| match ty {
            LieType::D => m % 2 == 1,
            LieType::C => m % 2 == 0,
        };
        let mut innermost: BTreeMap<usize, usize> = BTreeMap::new();
        for (idx, &m) in p.top_lengths().iter().enumerate() {
            if wanted(m) {
                innermost.insert(m, idx + 1);
            }
        }
        let gens = innermost.into_iter().rev().collect();
        Generators { ty, r: p.r(), gens }
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn d(&self) -> usize {
        self.gens.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Row label `i_j` of generator `j` (1-based).
    pub fn row_of(&self, j: usize) -> usize {
        self.gens[j - 1].1
    }

    /// Jordan part carried by generator `j`.
    pub fn part_of(&self, j: usize) -> usize {
        self.gens[j - 1].0
    }
}

/// One letter of an [`OrbitWord`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Swap(usize),
    C,
    Gen(usize),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Swap(i) => write!(f, "s{i}"),
            Letter::C => f.write_str("c"),
            Letter::Gen(j) => write!(f, "g{j}"),
        }
    }
}

impl std::str::FromStr for Letter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unknown orbit letter {s:?}");
        if s == "c" {
            return Ok(Letter::C);
        }
        let (head, num) = s.split_at(1);
        let k: usize = num.parse().map_err(|_| bad())?;
        match head {
            "s" if k > 0 => Ok(Letter::Swap(k)),
            "g" if k > 0 => Ok(Letter::Gen(k)),
            _ => Err(bad()),
        }
    }
}

/// A formal product of letters, applied first letter first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitWord {
    pub letters: Vec<Letter>,
}

impl OrbitWord {
    pub fn new(letters: Vec<Letter>) -> OrbitWord {
        OrbitWord { letters }
    }

    pub fn gens(js: &[usize]) -> OrbitWord {
        OrbitWord { letters: js.iter().map(|&j| Letter::Gen(j)).collect() }
    }

    pub fn then(&self, letter: Letter) -> OrbitWord {
        let mut letters = self.letters.clone();
        letters.push(letter);
        OrbitWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.letters.iter().map(Letter::to_string).collect()
    }
}

impl fmt::Display for OrbitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&self.to_strings().join("."))
    }
}

/// Why a partial action failed.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Undefined {
    #[error("row swap s{0} is undefined")]
    Swap(usize),
    #[error("the middle operator c is undefined")]
    Middle,
    #[error("an added box of row {0} was moved")]
    AddedBoxMoved(usize),
}

fn apply_type_d(a: &RowClass, row: usize) -> Result<RowClass, Undefined> {
    let r = a.r();
    let mut cur = a.clone();
    for i in row..r {
        cur = row_swap(&cur, i).ok_or(Undefined::Swap(i))?;
    }
    cur = c_op(&cur).ok_or(Undefined::Middle)?;
    for i in (row..r).rev() {
        cur = row_swap(&cur, i).ok_or(Undefined::Swap(i))?;
    }
    Ok(cur)
}

/// Removes the boxes added by [`RowClass::plus`].
pub fn strip_plus(a: &RowClass) -> Result<RowClass, Undefined> {
    let r = a.r();
    let mut top: Vec<Vec<Entry>> = a.table().top_rows().to_vec();
    for i in 1..=r {
        let row = &mut top[row_index(r, i as i64)];
        let pos = row.iter().position(|&e| e == Entry::int(i as i64 - 1)).ok_or(Undefined::AddedBoxMoved(i))?;
        row.remove(pos);
    }
    Ok(RowClass::from_top(top))
}

/// `c_j` acting on `a` (`⊙_D` in type D, `⊙_C` via `A+` in type C).
pub fn generator_action(a: &RowClass, j: usize, gens: &Generators) -> Result<RowClass, Undefined> {
    assert!(j >= 1 && j <= gens.d(), "generator {j} out of range 1..={}", gens.d());
    assert_eq!(a.r(), gens.r(), "table and pyramid have different row counts");
    let row = gens.row_of(j);
    match gens.lie_type() {
        LieType::D => apply_type_d(a, row),
        LieType::C => strip_plus(&apply_type_d(&a.plus(), row)?),
    }
}

/// `c_j` acting in the type D manner on a table of any width, using the row
/// labels of `gens`. For type C generators this is the action on `A+`
/// before the added boxes are removed.
pub fn lifted_action(a: &RowClass, j: usize, gens: &Generators) -> Result<RowClass, Undefined> {
    assert!(j >= 1 && j <= gens.d(), "generator {j} out of range 1..={}", gens.d());
    apply_type_d(a, gens.row_of(j))
}

/// Applies a word letter by letter. `Swap` and `C` letters act on the table
/// as given (type D semantics); `Gen` letters use the generator action.
pub fn apply_word(a: &RowClass, word: &OrbitWord, gens: &Generators) -> Result<RowClass, (usize, Undefined)> {
    let mut cur = a.clone();
    for (pos, letter) in word.letters.iter().enumerate() {
        cur = match *letter {
            Letter::Swap(i) => row_swap(&cur, i).ok_or(Undefined::Swap(i)),
            Letter::C => c_op(&cur).ok_or(Undefined::Middle),
            Letter::Gen(j) => generator_action(&cur, j, gens),
        }
        .map_err(|e| (pos, e))?;
    }
    Ok(cur)
}

/// Closure of a class under the generators.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub seed: RowClass,
    pub d: usize,
    /// Members in discovery order, each with a word reaching it from the seed.
    pub members: Vec<(RowClass, OrbitWord)>,
    /// Words whose last generator was undefined.
    pub undefined: Vec<(OrbitWord, Undefined)>,
}

impl Orbit {
    pub fn is_complete(&self) -> bool {
        self.undefined.is_empty()
    }

    pub fn contains(&self, a: &RowClass) -> bool {
        self.members.iter().any(|(m, _)| m == a)
    }

    pub fn word_to(&self, a: &RowClass) -> Option<&OrbitWord> {
        self.members.iter().find(|(m, _)| m == a).map(|(_, w)| w)
    }
}

/// Breadth-first closure under `c_1, ..., c_d`. Undefined branches are
/// recorded and skipped.
pub fn orbit(a: &RowClass, gens: &Generators) -> Orbit {
    let mut seen: HashMap<RowClass, usize> = HashMap::new();
    let mut members = vec![(a.clone(), OrbitWord::default())];
    let mut undefined = Vec::new();
    seen.insert(a.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let (current, word) = members[idx].clone();
        for j in 1..=gens.d() {
            let next_word = word.then(Letter::Gen(j));
            match generator_action(&current, j, gens) {
                Ok(next) => {
                    if !seen.contains_key(&next) {
                        seen.insert(next.clone(), members.len());
                        members.push((next, next_word));
                        queue.push_back(members.len() - 1);
                    }
                }
                Err(why) => undefined.push((next_word, why)),
            }
        }
    }
    Orbit { seed: a.clone(), d: gens.d(), members, undefined }
}

/// All products of distinct generators, as words of increasing indices.
pub fn group_elements(d: usize) -> Vec<OrbitWord> {
    (0u32..1 << d).map(|mask| OrbitWord::gens(&(1..=d).filter(|j| mask & (1 << (j - 1)) != 0).collect::<Vec<_>>())).collect()
}
