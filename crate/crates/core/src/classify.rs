//! Membership conditions, the finite dimensionality decision, enumeration,
//! and the primitive ideal parameter sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::entry::{Coset, Entry, Label, PmClass, Sign};
use crate::frame::{row_label, FrameError, Pyramid};
use crate::group::{apply_word, group_elements, orbit, Generators, LieType, OrbitWord, Undefined};
use crate::rs::is_jre_cs;
use crate::table::{weight_from_table, RowClass, STable, TableError};

/// Which membership set is meant: `+` is `sTab⋄(P)`, `-` is `sTab⋄,+(P)`
/// (tested on `A+` over `P+`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Phi {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Phi {
    /// The sign whose membership set goes with a Lie type.
    pub fn for_type(ty: LieType) -> Phi {
        match ty {
            LieType::D => Phi::Plus,
            LieType::C => Phi::Minus,
        }
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phi::Plus => "+",
            Phi::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    M1,
    #[serde(rename = "M1'")]
    M1Prime,
    M2,
    M3,
    M4,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::M1 => "M1",
            Condition::M1Prime => "M1'",
            Condition::M2 => "M2",
            Condition::M3 => "M3",
            Condition::M4 => "M4",
        })
    }
}

/// One violated instance of a condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: Condition,
    /// Row label, when the failure is local to a row.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<i64>,
    pub class: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub phi: Phi,
    pub m1: bool,
    pub m2: bool,
    pub m3: bool,
    pub m4: bool,
    pub accepted: bool,
    pub failures: Vec<Failure>,
}

fn class_counts(row: &[Entry]) -> BTreeMap<PmClass, usize> {
    let mut counts = BTreeMap::new();
    for e in row {
        *counts.entry(e.pm()).or_insert(0) += 1;
    }
    counts
}

fn labelled_rows(a: &STable) -> impl Iterator<Item = (i64, &Vec<Entry>)> {
    let r = a.r();
    a.rows().iter().enumerate().map(move |(idx, row)| (row_label(r, idx), row))
}

/// (M1): at most one ± class with an odd number of entries in each row.
pub fn check_m1(a: &STable) -> Vec<Failure> {
    labelled_rows(a)
        .filter_map(|(label, row)| {
            let odd: Vec<String> = class_counts(row).into_iter().filter(|&(_, c)| c % 2 == 1).map(|(k, _)| k.to_string()).collect();
            (odd.len() > 1).then(|| Failure {
                condition: Condition::M1,
                row: Some(label),
                class: odd.join(" "),
                detail: format!("{} classes have odd size", odd.len()),
            })
        })
        .collect()
}

/// (M1'): the parity rule that replaces (M1) when `A+` is not used.
pub fn check_m1prime(a: &STable) -> Vec<Failure> {
    labelled_rows(a)
        .filter_map(|(label, row)| {
            let counts = class_counts(row);
            let integral = counts.get(&PmClass::Int).copied().unwrap_or(0);
            let odd: Vec<String> = counts.iter().filter(|&(k, &c)| *k != PmClass::Int && c % 2 == 1).map(|(k, _)| k.to_string()).collect();
            let bad = if integral % 2 == 0 { !odd.is_empty() } else { odd.len() > 1 };
            bad.then(|| Failure {
                condition: Condition::M1Prime,
                row: Some(label),
                class: odd.join(" "),
                detail: format!("{integral} integral entries and {} odd non-integral classes", odd.len()),
            })
        })
        .collect()
}

fn generic_counts(row: &[Entry]) -> BTreeMap<Label, (usize, usize)> {
    let mut counts: BTreeMap<Label, (usize, usize)> = BTreeMap::new();
    for e in row {
        if let Coset::Generic(label, sign) = e.coset {
            let c = counts.entry(label).or_default();
            match sign {
                Sign::Plus => c.0 += 1,
                Sign::Minus => c.1 += 1,
            }
        }
    }
    counts
}

/// (M2): in each row, `#(z + Z)` and `#(-z + Z)` differ by at most one.
/// Integral and half-integral classes are their own negatives and pass.
pub fn check_m2(a: &STable) -> Vec<Failure> {
    let mut out = Vec::new();
    for (label, row) in labelled_rows(a) {
        for (name, (plus, minus)) in generic_counts(row) {
            if plus.abs_diff(minus) > 1 {
                out.push(Failure {
                    condition: Condition::M2,
                    row: Some(label),
                    class: format!("±{name}"),
                    detail: format!("{plus} entries from {name} + Z against {minus} from -{name} + Z"),
                });
            }
        }
    }
    out
}

/// (M3): for each generic ± class and odd `k`, at most two rows hold exactly
/// `k` entries of the class.
pub fn check_m3(a: &STable) -> Vec<Failure> {
    let mut rows_with: BTreeMap<(Label, usize), Vec<i64>> = BTreeMap::new();
    for (label, row) in labelled_rows(a) {
        for (name, (plus, minus)) in generic_counts(row) {
            let k = plus + minus;
            if k % 2 == 1 {
                rows_with.entry((name, k)).or_default().push(label);
            }
        }
    }
    rows_with
        .into_iter()
        .filter(|(_, rows)| rows.len() > 2)
        .map(|((name, k), rows)| Failure {
            condition: Condition::M3,
            row: None,
            class: format!("±{name}"),
            detail: format!("rows {rows:?} each hold exactly {k} entries"),
        })
        .collect()
}

/// (M4): every single-coset restriction is convex and justified row
/// equivalent to column strict.
pub fn check_m4(a: &STable) -> Vec<Failure> {
    let mut out = Vec::new();
    for coset in a.cosets() {
        let d = a.restrict(coset);
        let class = Entry { coset, offset: 0 }.to_string();
        if !d.is_convex() {
            out.push(Failure { condition: Condition::M4, row: None, class: class.clone(), detail: format!("restriction with row lengths {:?} is not convex", d.row_lengths()) });
        }
        if !is_jre_cs(&d) {
            out.push(Failure { condition: Condition::M4, row: None, class, detail: "restriction is not justified row equivalent to column strict".into() });
        }
    }
    out
}

fn report(t: &STable, phi: Phi) -> MembershipReport {
    let (f1, f2, f3, f4) = (check_m1(t), check_m2(t), check_m3(t), check_m4(t));
    let (m1, m2, m3, m4) = (f1.is_empty(), f2.is_empty(), f3.is_empty(), f4.is_empty());
    let failures = [f1, f2, f3, f4].concat();
    MembershipReport { phi, m1, m2, m3, m4, accepted: m1 && m2 && m3 && m4, failures }
}

/// Membership in `sTab⋄(P)` (`phi = +`) or `sTab⋄,+(P)` (`phi = -`).
pub fn in_diamond(a: &STable, phi: Phi) -> MembershipReport {
    match phi {
        Phi::Plus => report(a, phi),
        Phi::Minus => report(&a.plus(), phi),
    }
}

pub fn accepts(a: &STable, phi: Phi) -> bool {
    let t = match phi {
        Phi::Plus => a.clone(),
        Phi::Minus => a.plus(),
    };
    // cheapest conditions first
    check_m1(&t).is_empty() && check_m2(&t).is_empty() && check_m3(&t).is_empty() && check_m4(&t).is_empty()
}

/// The same conditions with (M1) replaced by (M1'), evaluated on `A` itself.
pub fn noplus_conditions(a: &STable) -> bool {
    check_m1prime(a).is_empty() && check_m2(a).is_empty() && check_m3(a).is_empty() && check_m4(a).is_empty()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("alphabet is not closed under negation: {0} is missing")]
    AlphabetNotClosed(Entry),
    #[error("table rows do not form a pyramid: {0}")]
    NotAPyramid(#[from] FrameError),
    #[error(transparent)]
    Table(#[from] TableError),
}

/// The pyramid whose rows have the lengths of `a`.
pub fn pyramid_of(a: &STable) -> Result<Pyramid, ClassifyError> {
    Ok(Pyramid::from_rows(&a.top_rows().iter().map(Vec::len).collect::<Vec<_>>())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "finite-dimensional")]
    FiniteDimensional,
    #[serde(rename = "not-finite-dimensional")]
    NotFiniteDimensional,
    #[serde(rename = "undecided-by-partial-action")]
    Undecided,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::FiniteDimensional => "finite-dimensional",
            Verdict::NotFiniteDimensional => "not-finite-dimensional",
            Verdict::Undecided => "undecided-by-partial-action",
        })
    }
}

/// How a positive verdict was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `word` applied to the input lands in the membership set at `member`.
    Forward { member: RowClass, word: OrbitWord },
    /// `word` applied to `member` (in the membership set) gives the input.
    Reverse { member: RowClass, word: OrbitWord },
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub forward_orbit_size: usize,
    pub forward_complete: bool,
    /// Members of the membership set with the same entries as the input whose
    /// orbits were searched.
    pub reverse_candidates: usize,
    /// Undefined branches that prevented a negative verdict.
    pub blocked: Vec<(OrbitWord, Undefined)>,
}

/// Whether `L(Ā)` is finite dimensional: is `Ā` conjugate under the
/// component group to a member of `sRow⋄_φ`, with `φ` matched to the type.
pub fn is_finite_dimensional(a: &RowClass, ty: LieType) -> Result<Decision, ClassifyError> {
    let p = pyramid_of(a.table())?;
    let phi = Phi::for_type(ty);
    let gens = Generators::new(&p, ty);
    let forward = orbit(a, &gens);
    let mut decision = Decision {
        verdict: Verdict::NotFiniteDimensional,
        witness: None,
        forward_orbit_size: forward.members.len(),
        forward_complete: forward.is_complete(),
        reverse_candidates: 0,
        blocked: Vec::new(),
    };
    if let Some((member, word)) = forward.members.iter().find(|(m, _)| accepts(m.table(), phi)) {
        decision.verdict = Verdict::FiniteDimensional;
        decision.witness = Some(Witness::Forward { member: member.clone(), word: word.clone() });
        return Ok(decision);
    }
    if forward.is_complete() {
        return Ok(decision);
    }
    // The forward closure got stuck; look for members of the set whose
    // orbit reaches `a`. The entry multiset of the whole table is invariant.
    let candidates = fillings_with_entries(&p, a.table());
    for b in candidates.iter().filter(|b| accepts(b.table(), phi)) {
        decision.reverse_candidates += 1;
        let o = orbit(b, &gens);
        if let Some(word) = o.word_to(a) {
            decision.verdict = Verdict::FiniteDimensional;
            decision.witness = Some(Witness::Reverse { member: b.clone(), word: word.clone() });
            return Ok(decision);
        }
        decision.blocked.extend(o.undefined);
    }
    // No candidate at all, or only candidates with complete orbits missing
    // `a`, settles the question negatively.
    if !decision.blocked.is_empty() {
        decision.verdict = Verdict::Undecided;
    }
    decision.blocked.splice(0..0, forward.undefined);
    Ok(decision)
}

/// A finite alphabet of entries, sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<Entry>,
}

impl Alphabet {
    pub fn new(mut letters: Vec<Entry>) -> Result<Alphabet, ClassifyError> {
        letters.sort_unstable();
        letters.dedup();
        if let Some(missing) = letters.iter().map(|e| e.neg()).find(|n| letters.binary_search(n).is_err()) {
            return Err(ClassifyError::AlphabetNotClosed(missing));
        }
        Ok(Alphabet { letters })
    }

    pub fn letters(&self) -> &[Entry] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Multisets of size `k` from `letters`, each as a sorted vector.
pub(crate) fn multisets(letters: &[Entry], k: usize) -> Vec<Vec<Entry>> {
    fn go(letters: &[Entry], start: usize, k: usize, cur: &mut Vec<Entry>, out: &mut Vec<Vec<Entry>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..letters.len() {
            cur.push(letters[i]);
            go(letters, i, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(letters, 0, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Every row class over `p` with entries in the alphabet, in canonical order.
pub fn all_fillings(p: &Pyramid, alphabet: &Alphabet) -> Vec<RowClass> {
    let choices: Vec<Vec<Vec<Entry>>> = p.top_lengths().iter().map(|&m| multisets(alphabet.letters(), m)).collect();
    let first = &choices[0];
    let rest = &choices[1..];
    let found: BTreeSet<RowClass> = first
        .par_iter()
        .flat_map_iter(|row| {
            let mut out = Vec::new();
            let mut top = vec![row.clone()];
            product(rest, &mut top, &mut |top| out.push(RowClass::from_top(top.to_vec())));
            out
        })
        .collect();
    found.into_iter().collect()
}

fn product(choices: &[Vec<Vec<Entry>>], cur: &mut Vec<Vec<Entry>>, emit: &mut dyn FnMut(&[Vec<Entry>])) {
    let Some((head, tail)) = choices.split_first() else {
        emit(cur);
        return;
    };
    for row in head {
        cur.push(row.clone());
        product(tail, cur, emit);
        cur.pop();
    }
}

/// `sRow⋄_φ(P)` restricted to entries from the alphabet.
pub fn enumerate_diamond(p: &Pyramid, alphabet: &Alphabet, phi: Phi) -> Vec<RowClass> {
    let all = all_fillings(p, alphabet);
    all.into_par_iter().filter(|a| accepts(a.table(), phi)).collect()
}

/// Row classes over `p` whose whole table has the same entry multiset as `a`.
fn fillings_with_entries(p: &Pyramid, a: &STable) -> Vec<RowClass> {
    // budget per ± pair {x, -x}: how many of the pair sit in the top half
    let mut budget: HashMap<Entry, usize> = HashMap::new();
    for e in a.rows().iter().flatten() {
        let key = (*e).min(e.neg());
        *budget.entry(key).or_insert(0) += 1;
    }
    for v in budget.values_mut() {
        // each top occurrence of x puts -x in the bottom half
        *v /= 2;
    }
    let mut letters: Vec<Entry> = budget.keys().flat_map(|&k| [k, k.neg()]).collect();
    letters.sort_unstable();
    letters.dedup();
    let mut out = BTreeSet::new();
    let mut top = Vec::new();
    fill_budget(p.top_lengths(), &letters, &mut budget, &mut top, &mut out);
    out.into_iter().collect()
}

fn fill_budget(lengths: &[usize], letters: &[Entry], budget: &mut HashMap<Entry, usize>, top: &mut Vec<Vec<Entry>>, out: &mut BTreeSet<RowClass>) {
    let Some((&m, rest)) = lengths.split_first() else {
        if budget.values().all(|&v| v == 0) {
            out.insert(RowClass::from_top(top.clone()));
        }
        return;
    };
    fn rows(letters: &[Entry], start: usize, m: usize, budget: &mut HashMap<Entry, usize>, cur: &mut Vec<Entry>, emit: &mut dyn FnMut(&[Entry], &mut HashMap<Entry, usize>)) {
        if cur.len() == m {
            emit(cur, budget);
            return;
        }
        for i in start..letters.len() {
            let key = letters[i].min(letters[i].neg());
            if budget[&key] == 0 {
                continue;
            }
            *budget.get_mut(&key).unwrap() -= 1;
            cur.push(letters[i]);
            rows(letters, i, m, budget, cur, emit);
            cur.pop();
            *budget.get_mut(&key).unwrap() += 1;
        }
    }
    rows(letters, 0, m, budget, &mut Vec::new(), &mut |row, budget| {
        top.push(row.to_vec());
        fill_budget(rest, letters, budget, top, out);
        top.pop();
    });
}

/// For each generic label, the sign whose coset counts as `z+`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BulletChoice(pub BTreeMap<String, Sign>);

impl BulletChoice {
    pub fn sign_of(&self, label: Label) -> Sign {
        self.0.get(label.as_str()).copied().unwrap_or(Sign::Plus)
    }
}

/// `sRow•`: each top row has at least as many `z+` entries as `z-` entries.
pub fn bullet_filter(classes: &[RowClass], choice: &BulletChoice) -> Vec<RowClass> {
    classes.iter().filter(|a| bullet_holds(a, choice)).cloned().collect()
}

pub fn bullet_holds(a: &RowClass, choice: &BulletChoice) -> bool {
    a.table().top_rows().iter().all(|row| {
        generic_counts(row).into_iter().all(|(label, (plus, minus))| match choice.sign_of(label) {
            Sign::Plus => plus >= minus,
            Sign::Minus => minus >= plus,
        })
    })
}

/// Products of an odd number of distinct generators: `C̃ \ C` for the parity
/// subgroup `C`.
pub fn odd_elements(d: usize) -> Vec<OrbitWord> {
    group_elements(d).into_iter().filter(|w| w.len() % 2 == 1).collect()
}

/// Whether some element of `C̃ \ C` fixes `a`; returns that element.
pub fn fixed_by_odd(a: &RowClass, gens: &Generators) -> Option<OrbitWord> {
    odd_elements(gens.d()).into_iter().find(|w| apply_word(a, w, gens).is_ok_and(|b| &b == a))
}

/// `sRow•'`: members of `classes` fixed by an odd element.
pub fn bullet_prime_filter(classes: &[RowClass], gens: &Generators) -> Vec<RowClass> {
    classes.iter().filter(|a| fixed_by_odd(a, gens).is_some()).cloned().collect()
}

/// A row-wise non-decreasing representative read as a weight.
pub fn antidominant_rep(a: &RowClass, p: &Pyramid) -> Result<Vec<Entry>, ClassifyError> {
    Ok(weight_from_table(p, a.table())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogPart {
    /// Type C, or type D with only even parts: the whole bullet set.
    Bullet,
    /// Type D with odd parts, fixed by an odd element.
    BulletPrime,
    /// Type D with odd parts, not fixed by any odd element.
    BulletRest,
    /// `c_1` applied to a `BulletRest` member.
    FirstGeneratorImage,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub part: CatalogPart,
    pub class: RowClass,
    pub witness: OrbitWord,
    pub lambda: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalog {
    pub pyramid: Pyramid,
    pub ty: LieType,
    pub choice: BulletChoice,
    pub entries: Vec<CatalogEntry>,
    /// Images `c_1 · Ā` that were undefined (should not happen on the bullet set).
    pub undefined: Vec<(RowClass, Undefined)>,
}

/// The primitive ideal parameter set for `p`, restricted to the alphabet.
pub fn primitive_ideal_labels(p: &Pyramid, ty: LieType, alphabet: &Alphabet, choice: &BulletChoice) -> Result<Catalog, ClassifyError> {
    let phi = Phi::for_type(ty);
    let bullet = bullet_filter(&enumerate_diamond(p, alphabet, phi), choice);
    let gens = Generators::new(p, ty);
    let mut entries = Vec::new();
    let mut undefined = Vec::new();
    let mut push = |part, class: RowClass, witness: OrbitWord| -> Result<(), ClassifyError> {
        let lambda = antidominant_rep(&class, p)?;
        entries.push(CatalogEntry { part, class, witness, lambda });
        Ok(())
    };
    if ty == LieType::C || gens.d() == 0 {
        for a in bullet {
            push(CatalogPart::Bullet, a, OrbitWord::default())?;
        }
    } else {
        let mut images = Vec::new();
        for a in bullet {
            if let Some(w) = fixed_by_odd(&a, &gens) {
                push(CatalogPart::BulletPrime, a, w)?;
            } else {
                match apply_word(&a, &OrbitWord::gens(&[1]), &gens) {
                    Ok(b) => images.push(b),
                    Err((_, why)) => undefined.push((a.clone(), why)),
                }
                push(CatalogPart::BulletRest, a, OrbitWord::default())?;
            }
        }
        for b in images {
            push(CatalogPart::FirstGeneratorImage, b, OrbitWord::gens(&[1]))?;
        }
    }
    entries.sort_by(|x, y| (x.part as u8, &x.class).cmp(&(y.part as u8, &y.class)));
    Ok(Catalog { pyramid: p.clone(), ty, choice: choice.clone(), entries, undefined })
}
