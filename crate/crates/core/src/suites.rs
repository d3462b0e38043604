//! Property suites shared by `stab verify` and the acceptance tests.
//!
//! Each suite checks a family of invariants against independent oracles or
//! against each other, counts the instances checked, and keeps a few shrunk
//! reproducers for whatever failed. Random suites are deterministic in the
//! seed; exhaustive suites ignore it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{b_column_lengths, random_input, random_instance, verify_bound, BoundCase};
use crate::classify::{accepts, check_m2, check_m3, check_m4, all_fillings, enumerate_diamond, is_finite_dimensional, noplus_conditions, primitive_ideal_labels, Alphabet, BulletChoice, Phi, Verdict};
use crate::diagram::Diagram;
use crate::entry::{Coset, Entry, PmClass, Sign};
use crate::frame::{lengths_convex, Pyramid};
use crate::group::{apply_word, c_op, generator_action, lifted_action, middle_swap, orbit, row_swap, Generators, Letter, LieType, OrbitWord};
use crate::json::{catalog_to_json, class_to_json, to_pretty};
use crate::oracle::{oracle_jre_cs, oracle_profiles};
use crate::rs::{column_strict_arrangement, ctc, ell, is_column_strict, is_jre_cs, jre_cs_by_shape, rs_diagram};
use crate::table::RowClass;

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 7] = ["rs-oracles", "trecs", "m1prime", "split-lemmas", "cplus", "bounds", "stability"];

/// Reproducers kept per property.
const KEEP: usize = 3;

#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// `None`: the default size (exhaustive where the suite is exhaustive).
    /// `Some(n)`: `n` random instances per property, or the first `n`
    /// instances of an exhaustive family.
    pub samples: Option<usize>,
}

impl SuiteConfig {
    fn count(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub property: String,
    pub label: &'static str,
    pub detail: String,
    pub reproducer: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub findings: Vec<Finding>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> SuiteReport {
        SuiteReport { suite: suite.to_string(), checked: 0, failed: 0, findings: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("reports serialize")
    }

    fn absorb(&mut self, property: &str, outcome: Outcome) {
        self.checked += outcome.checked;
        self.failed += outcome.failures.len();
        self.notes.push(format!("{property}: {} checked, {} failed", outcome.checked, outcome.failures.len()));
        self.findings.extend(outcome.failures.into_iter().take(KEEP).map(|(detail, reproducer)| Finding {
            property: property.to_string(),
            label: outcome.label,
            detail,
            reproducer,
        }));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {}: {} checked, {} failed", self.suite, self.checked, self.failed)?;
        for note in &self.notes {
            writeln!(f, "  {note}")?;
        }
        for finding in &self.findings {
            writeln!(f, "  [{}] {}: {}", finding.label, finding.property, finding.detail)?;
            writeln!(f, "    reproducer: {}", finding.reproducer)?;
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite {0:?}; expected one of {SUITES:?}")]
pub struct UnknownSuite(pub String);

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, UnknownSuite> {
    Ok(match name {
        "rs-oracles" => rs_oracles(cfg),
        "trecs" => trecs(cfg),
        "m1prime" => m1prime(cfg),
        "split-lemmas" => split_lemmas(cfg),
        "cplus" => cplus(cfg),
        "bounds" => bounds(cfg),
        "stability" => stability(cfg),
        other => return Err(UnknownSuite(other.to_string())),
    })
}

/// Result of one property: instances checked and `(detail, reproducer)` per failure.
struct Outcome {
    label: &'static str,
    checked: usize,
    failures: Vec<(String, Value)>,
}

const COUNTEREXAMPLE: &str = "counterexample";
const DIVERGENCE: &str = "swap-rule divergence";

// ---------------------------------------------------------------- alphabets

fn zeta(k: i64) -> Entry {
    Entry::generic("zeta", Sign::Plus, k)
}

fn pi(k: i64) -> Entry {
    Entry::generic("pi", Sign::Plus, k)
}

/// Positive representatives of the `±` pairs the exhaustive suites draw from.
pub fn letter_pairs() -> Vec<Entry> {
    vec![Entry::int(1), Entry::int(2), Entry::int(3), Entry::half(0), Entry::half(1), zeta(0), zeta(1), pi(0)]
}

/// Maximal negation-closed alphabets with at most six letters: three pairs,
/// or zero and two pairs. Every smaller closed alphabet is contained in one.
pub fn standard_alphabets() -> Vec<Alphabet> {
    let pairs = letter_pairs();
    let n = pairs.len();
    let closed = |picked: &[Entry], zero: bool| {
        let mut letters: Vec<Entry> = picked.iter().flat_map(|&e| [e, e.neg()]).collect();
        if zero {
            letters.push(Entry::int(0));
        }
        Alphabet::new(letters).expect("closed under negation")
    };
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(closed(&[pairs[a], pairs[b]], true));
            for c in b + 1..n {
                out.push(closed(&[pairs[a], pairs[b], pairs[c]], false));
            }
        }
    }
    out
}

fn pyramids(list: &[&[usize]]) -> Vec<Pyramid> {
    list.iter().map(|rows| Pyramid::from_rows(rows).expect("valid pyramid")).collect()
}

/// Pyramids with at most two row pairs and at most `n` boxes in the top half.
fn small_pyramids(n: usize) -> Vec<Pyramid> {
    let mut out = Vec::new();
    for a in 1..=n {
        out.push(vec![a]);
        for b in a..=n - a {
            out.push(vec![a, b]);
        }
    }
    out.into_iter().map(|rows| Pyramid::from_rows(&rows).expect("valid pyramid")).collect()
}

/// Distinct fillings of `p` over every standard alphabet.
fn fillings_over_standard(p: &Pyramid) -> BTreeSet<RowClass> {
    standard_alphabets().iter().flat_map(|alpha| all_fillings(p, alpha)).collect()
}

fn diamond_over_standard(p: &Pyramid, phi: Phi) -> BTreeSet<RowClass> {
    standard_alphabets().iter().flat_map(|alpha| enumerate_diamond(p, alpha, phi)).collect()
}

// ---------------------------------------------------------------- shrinking

/// Greedy shrink: drops entries (and outer row pairs) while `fails` still
/// holds. The result is a local minimum.
pub fn shrink_class(a: &RowClass, fails: impl Fn(&RowClass) -> bool) -> RowClass {
    let mut best = a.clone();
    'outer: loop {
        let top = best.table().top_rows().to_vec();
        let mut candidates: Vec<Vec<Vec<Entry>>> = Vec::new();
        if top.len() > 1 {
            candidates.push(top[1..].to_vec());
        }
        for (i, row) in top.iter().enumerate() {
            for j in 0..row.len() {
                if j > 0 && row[j] == row[j - 1] {
                    continue;
                }
                let mut smaller = top.clone();
                smaller[i].remove(j);
                candidates.push(smaller);
            }
        }
        for c in candidates {
            let c = RowClass::from_top(c);
            if fails(&c) {
                best = c;
                continue 'outer;
            }
        }
        return best;
    }
}

fn is_pyramid(a: &RowClass) -> bool {
    let top: Vec<usize> = a.table().top_rows().iter().map(Vec::len).collect();
    Pyramid::from_rows(&top).is_ok()
}

// ---------------------------------------------------------------- random data

fn mixed_pool() -> Vec<Entry> {
    let mut pool: Vec<Entry> = (-3..=3).map(Entry::int).collect();
    pool.extend((-2..=1).map(Entry::half));
    for k in -2..=2 {
        pool.push(zeta(k));
        pool.push(zeta(k).neg());
    }
    for k in -1..=1 {
        pool.push(pi(k));
        pool.push(pi(k).neg());
    }
    pool
}

fn random_rows<R: Rng>(rng: &mut R, lengths: &[usize], pool: &[Entry]) -> Vec<Vec<Entry>> {
    lengths.iter().map(|&m| (0..m).map(|_| *pool.choose(rng).expect("non-empty pool")).collect()).collect()
}

fn random_class<R: Rng>(rng: &mut R, rows: std::ops::RangeInclusive<usize>, max_len: usize, pool: &[Entry]) -> RowClass {
    let r = rng.gen_range(rows);
    let lengths: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=max_len)).collect();
    RowClass::from_top(random_rows(rng, &lengths, pool))
}

fn random_word<R: Rng>(rng: &mut R, d: usize, max_len: usize) -> OrbitWord {
    let len = rng.gen_range(1..=max_len);
    OrbitWord::new((0..len).map(|_| Letter::Gen(rng.gen_range(1..=d))).collect())
}

fn empty_class(r: usize) -> RowClass {
    RowClass::from_top(vec![Vec::new(); r])
}

fn concat_all(parts: &[RowClass], r: usize) -> RowClass {
    parts.iter().fold(empty_class(r), |acc, p| acc.concat(p).expect("equal row counts"))
}

// ---------------------------------------------------------------- rs-oracles

fn oracle_alphabet() -> Vec<Entry> {
    vec![Entry::int(-1), Entry::int(0), Entry::int(1), Entry::int(2), Entry::half(0), Entry::half(1), zeta(0), zeta(0).neg()]
}

fn all_words(letters: &[Entry], max_len: usize) -> Vec<Vec<Entry>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w: &Vec<Entry>| letters.iter().map(move |&x| [w.as_slice(), &[x]].concat())).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `ell` and `ctc` from RS insertion against exhaustive subsequence search.
pub fn rs_oracles(cfg: &SuiteConfig) -> SuiteReport {
    let letters = oracle_alphabet();
    let words = match cfg.samples {
        None => all_words(&letters, 6),
        Some(n) => {
            let mut rng = cfg.rng(1);
            (0..n).map(|_| (0..rng.gen_range(0..=9)).map(|_| *letters.choose(&mut rng).expect("letters")).collect()).collect()
        }
    };
    let failures: Vec<(String, Value)> = words
        .par_iter()
        .filter_map(|w| {
            let max_k = w.len().max(1);
            let (ells, ctcs) = oracle_profiles(w, max_k);
            (1..=max_k).find_map(|k| {
                let (fast_ell, fast_ctc) = (ell(w, k), ctc(w, k));
                (fast_ell != ells[k - 1] || fast_ctc != ctcs[k - 1]).then(|| {
                    let word: Vec<String> = w.iter().map(Entry::to_string).collect();
                    (
                        format!("k = {k}: ell {fast_ell} vs {}, ctc {fast_ctc} vs {}", ells[k - 1], ctcs[k - 1]),
                        json!({ "word": word, "k": k }),
                    )
                })
            })
        })
        .collect();
    let mut report = SuiteReport::new("rs-oracles");
    report.absorb("RS statistics match subsequence search", Outcome { label: COUNTEREXAMPLE, checked: words.len(), failures });
    report
}

// ---------------------------------------------------------------- trecs

/// Unimodal sequences of positive row lengths with at most `max_boxes` boxes.
fn convex_frames(max_boxes: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() && lengths_convex(cur) {
            out.push(cur.clone());
        }
        for m in 1..=left {
            cur.push(m);
            if lengths_convex(cur) {
                go(left - m, cur, out);
            }
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_boxes, &mut Vec::new(), &mut out);
    out
}

/// A filling that is column strict before its rows are shuffled.
fn column_strict_filling<R: Rng>(rng: &mut R, lengths: &[usize]) -> Diagram {
    let width = lengths.iter().copied().max().unwrap_or(0);
    let mut rows: Vec<Vec<Entry>> = lengths.iter().map(|_| Vec::new()).collect();
    for col in 0..width {
        let members: Vec<usize> = (0..lengths.len()).filter(|&i| lengths[i] > col).collect();
        let coset = *[Coset::Int, Coset::Half, zeta(0).coset].choose(rng).expect("cosets");
        let mut offsets: BTreeSet<i64> = BTreeSet::new();
        while offsets.len() < members.len() {
            offsets.insert(rng.gen_range(-4..=4));
        }
        for (&row, k) in members.iter().zip(offsets.into_iter().rev()) {
            rows[row].push(Entry { coset, offset: k });
        }
    }
    for row in &mut rows {
        row.shuffle(rng);
    }
    Diagram::new(rows)
}

/// Shape test for justified row equivalence against backtracking search
/// and, on small diagrams, against trying every arrangement.
pub fn trecs(cfg: &SuiteConfig) -> SuiteReport {
    let frames = convex_frames(8);
    let per_frame = cfg.samples.map_or(80, |n| n.div_ceil(frames.len()).max(1));
    let mut rng = cfg.rng(2);
    let pool = oracle_alphabet();
    let mut cases = Vec::new();
    for lengths in &frames {
        for k in 0..per_frame {
            cases.push(if k % 2 == 0 {
                column_strict_filling(&mut rng, lengths)
            } else {
                Diagram::new(random_rows(&mut rng, lengths, &pool))
            });
        }
    }
    let failures: Vec<(String, Value)> = cases
        .par_iter()
        .filter_map(|d| {
            let by_shape = jre_cs_by_shape(d);
            let found = column_strict_arrangement(d);
            let rows: Vec<Vec<String>> = d.rows().iter().map(|r| r.iter().map(Entry::to_string).collect()).collect();
            let fail = |why: String| Some((why, json!({ "rows": rows })));
            if by_shape != found.is_some() {
                return fail(format!("shape test says {by_shape}, search says {}", found.is_some()));
            }
            if let Some(arr) = &found {
                if !is_column_strict(arr) || arr.sorted() != d.sorted() {
                    return fail("search returned an invalid arrangement".into());
                }
            }
            if d.num_boxes() <= 6 && oracle_jre_cs(d) != by_shape {
                return fail(format!("shape test says {by_shape}, exhaustive arrangement says {}", !by_shape));
            }
            None
        })
        .collect();
    let positives = cases.iter().filter(|d| is_jre_cs(d)).count();
    let mut report = SuiteReport::new("trecs");
    report.absorb("RS shape equals frame part exactly when column strict", Outcome { label: COUNTEREXAMPLE, checked: cases.len(), failures });
    report.notes.push(format!("{} convex frames, {positives} of {} fillings column strict up to row order", frames.len(), cases.len()));
    report
}

// ---------------------------------------------------------------- m1prime

fn noplus_mismatch(a: &RowClass) -> Option<String> {
    let with_plus = accepts(a.table(), Phi::Minus);
    let without = noplus_conditions(a.table());
    (with_plus != without).then(|| format!("conditions on A+ say {with_plus}, parity conditions on A say {without}"))
}

/// Where membership via `A+` and the parity conditions on `A` disagree.
#[derive(Clone, Debug)]
pub struct NoplusSurvey {
    pub checked: usize,
    /// Disagreements, smallest first.
    pub mismatches: Vec<RowClass>,
    /// Disagreements where `A` passes and `A+` fails.
    pub accepted_on_a_only: usize,
    /// How often each condition fails on `A+` among the disagreements.
    pub broken_on_plus: BTreeMap<&'static str, usize>,
    /// Disagreements whose type C orbit still meets the set.
    pub rescued_by_orbit: usize,
}

/// Exhaustive comparison over the small pyramids and standard alphabets.
pub fn noplus_survey(cfg: &SuiteConfig) -> NoplusSurvey {
    let mut all: BTreeSet<RowClass> = BTreeSet::new();
    for p in small_pyramids(6) {
        all.extend(fillings_over_standard(&p));
    }
    let mut cases: Vec<RowClass> = all.into_iter().collect();
    if let Some(n) = cfg.samples {
        cases.truncate(n);
    }
    let mut mismatches: Vec<RowClass> = cases.par_iter().filter(|a| noplus_mismatch(a).is_some()).cloned().collect();
    mismatches.sort_by_key(|a| (a.table().num_boxes(), a.clone()));
    let accepted_on_a_only = mismatches.iter().filter(|a| noplus_conditions(a.table())).count();
    let mut broken_on_plus = BTreeMap::new();
    for a in &mismatches {
        let t = a.table().plus();
        for (name, ok) in [("M2", check_m2(&t).is_empty()), ("M3", check_m3(&t).is_empty()), ("M4", check_m4(&t).is_empty())] {
            if !ok {
                *broken_on_plus.entry(name).or_default() += 1;
            }
        }
    }
    let rescued_by_orbit = mismatches.par_iter().filter(|a| verdict_of(a, LieType::C) == Some(Verdict::FiniteDimensional)).count();
    NoplusSurvey { checked: cases.len(), mismatches, accepted_on_a_only, broken_on_plus, rescued_by_orbit }
}

/// Membership via `A+` against the parity conditions on `A` itself, over
/// every filling of the small pyramids by the standard alphabets.
pub fn m1prime(cfg: &SuiteConfig) -> SuiteReport {
    let survey = noplus_survey(cfg);
    let bad: Vec<&RowClass> = survey.mismatches.iter().collect();
    let failures = shrink_all(&bad, |a| is_pyramid(a) && noplus_mismatch(a).is_some(), |a| noplus_mismatch(a).unwrap_or_default());
    let mut report = SuiteReport::new("m1prime");
    report.absorb("membership via A+ agrees with the parity conditions on A", Outcome { label: COUNTEREXAMPLE, checked: survey.checked, failures });
    let n = survey.mismatches.len();
    report.notes.push(format!("{} mismatches accepted on A only, {} on A+ only", survey.accepted_on_a_only, n - survey.accepted_on_a_only));
    report.notes.push(format!("conditions failing on A+ among the mismatches: {:?}", survey.broken_on_plus));
    report.notes.push(format!("informational: {} of {n} mismatches are still finite dimensional via their type C orbit", survey.rescued_by_orbit));
    report
}

/// Shrinks the first few failing classes, deduplicating the minima.
fn shrink_all(bad: &[&RowClass], fails: impl Fn(&RowClass) -> bool + Sync, why: impl Fn(&RowClass) -> String) -> Vec<(String, Value)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (idx, a) in bad.iter().enumerate() {
        if idx < 4 * KEEP {
            let small = shrink_class(a, &fails);
            if seen.insert(small.clone()) {
                out.push((why(&small), json!({ "table": class_to_json(&small) })));
            }
        }
    }
    // the remaining failures are counted, not shrunk
    out.extend(std::iter::repeat_with(|| (String::new(), Value::Null)).take(bad.len().saturating_sub(out.len())));
    out
}

// ---------------------------------------------------------------- splitting identities

fn pm_parts(a: &RowClass) -> Vec<(PmClass, RowClass)> {
    a.pm_classes().into_iter().map(|z| (z, a.restrict_pm(z))).collect()
}

fn swap_split(a: &RowClass) -> Option<String> {
    for i in 1..a.r() {
        let whole = row_swap(a, i);
        let parts: Vec<Option<RowClass>> = pm_parts(a).iter().map(|(_, part)| row_swap(part, i)).collect();
        let all_defined = parts.iter().all(Option::is_some);
        if whole.is_some() != all_defined {
            return Some(format!("s_{i}: whole table defined = {}, every class defined = {all_defined}", whole.is_some()));
        }
        if let Some(whole) = whole {
            let parts: Vec<RowClass> = parts.into_iter().flatten().collect();
            if concat_all(&parts, a.r()) != whole {
                return Some(format!("s_{i}: the classwise swaps do not reassemble the swapped table"));
            }
        }
    }
    None
}

fn word_split(a: &RowClass, w: &OrbitWord, gens: &Generators) -> Option<String> {
    let whole = apply_word(a, w, gens);
    let parts: Vec<Result<RowClass, _>> = pm_parts(a).iter().map(|(_, part)| apply_word(part, w, gens)).collect();
    let all_defined = parts.iter().all(Result::is_ok);
    if whole.is_ok() != all_defined {
        return Some(format!("{w}: whole table defined = {}, every class defined = {all_defined}", whole.is_ok()));
    }
    if let Ok(whole) = whole {
        let parts: Vec<RowClass> = parts.into_iter().flatten().collect();
        if concat_all(&parts, a.r()) != whole {
            return Some(format!("{w}: the classwise actions do not reassemble the acted table"));
        }
    }
    None
}

fn lifted_word(a: &RowClass, w: &OrbitWord, gens: &Generators) -> Option<RowClass> {
    let mut cur = a.clone();
    for letter in &w.letters {
        let Letter::Gen(j) = *letter else { unreachable!("generator words only") };
        cur = lifted_action(&cur, j, gens).ok()?;
    }
    Some(cur)
}

fn plus_commutes(a: &RowClass, w: &OrbitWord, gens: &Generators) -> Option<String> {
    let direct = apply_word(a, w, gens).ok();
    let lifted = lifted_word(&a.plus(), w, gens);
    match (direct, lifted) {
        (None, None) => None,
        (Some(x), Some(y)) if x.plus() == y => None,
        (Some(_), Some(_)) => Some(format!("{w}: acting then adding boxes differs from adding boxes then acting")),
        (x, y) => Some(format!("{w}: type C action defined = {}, lifted action defined = {}", x.is_some(), y.is_some())),
    }
}

fn middle_swap_agrees(a: &RowClass) -> Option<String> {
    let z = zeta(0).coset;
    let swapped = middle_swap(&a.table().as_diagram());
    let c = c_op(a);
    match (swapped, c) {
        (None, None) => None,
        (Some(x), Some(y)) if x.restrict(z).sorted() == y.table().restrict(z).sorted() => None,
        (Some(_), Some(_)) => Some("middle swap and c differ on the zeta coset".into()),
        (x, y) => Some(format!("middle swap defined = {}, c defined = {}", x.is_some(), y.is_some())),
    }
}

fn forced_moves(a: &RowClass) -> Option<String> {
    let r = a.r();
    for i in 1..r {
        if a.row(i as i64 + 1).is_empty() {
            match row_swap(a, i) {
                Some(b) if b.row(i as i64).is_empty() && b.row(i as i64 + 1) == a.row(i as i64) => {}
                _ => return Some(format!("s_{i} does not move row {i} down onto an empty row")),
            }
        }
    }
    if a.row(r as i64).is_empty() && c_op(a).as_ref() != Some(a) {
        return Some("c is not the identity on empty middle rows".into());
    }
    None
}

fn preserves_chains(a: &RowClass) -> Option<String> {
    for i in 1..a.r() {
        let Some(b) = row_swap(a, i) else { continue };
        for coset in a.table().cosets() {
            let before = rs_diagram(&a.restrict(coset)).shape();
            let after = rs_diagram(&b.restrict(coset)).shape();
            if before != after {
                return Some(format!("s_{i} changes the RS shape of the {} coset from {before} to {after}", Entry { coset, offset: 0 }));
            }
        }
    }
    None
}

fn random_generic_pyramid<R: Rng>(rng: &mut R) -> RowClass {
    let r = rng.gen_range(1..=3);
    let mut lengths: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
    lengths.sort_unstable();
    let pool: Vec<Entry> = (-2..=2).flat_map(|k| [zeta(k), zeta(k).neg()]).collect();
    RowClass::from_top(random_rows(rng, &lengths, &pool))
}

fn with_empty_row<R: Rng>(rng: &mut R, pool: &[Entry]) -> RowClass {
    let a = random_class(rng, 2..=3, 3, pool);
    let mut top = a.table().top_rows().to_vec();
    let k = rng.gen_range(1..top.len());
    top[k].clear();
    if rng.gen_bool(0.5) {
        top.last_mut().expect("rows").clear();
    }
    RowClass::from_top(top)
}

/// Members of the finite dimensionality set over a few pyramids, with the
/// generators of `ty`, for the action identities.
fn action_pool(rng: &mut ChaCha8Rng, ty: LieType) -> Vec<(RowClass, Generators)> {
    let alphabets = standard_alphabets();
    let phi = Phi::for_type(ty);
    let mut pool = Vec::new();
    for p in pyramids(&[&[1], &[2], &[1, 1], &[1, 2], &[2, 2], &[1, 3], &[2, 3], &[1, 1, 2]]) {
        let gens = Generators::new(&p, ty);
        if gens.d() == 0 {
            continue;
        }
        for alpha in alphabets.choose_multiple(rng, 6) {
            pool.extend(enumerate_diamond(&p, alpha, phi).into_iter().map(|a| (a, gens.clone())));
        }
    }
    pool
}

fn run_random<T: Sync>(cases: &[T], label: &'static str, check: impl Fn(&T) -> Option<String> + Sync, repro: impl Fn(&T) -> Value + Sync) -> Outcome {
    let failures = cases.par_iter().filter_map(|c| check(c).map(|why| (why, repro(c)))).collect();
    Outcome { label, checked: cases.len(), failures }
}

/// Shrinks each reproducer of a class-valued property in place.
fn shrink_outcome(mut o: Outcome, cases: &[RowClass], check: impl Fn(&RowClass) -> Option<String> + Sync) -> Outcome {
    let bad: Vec<&RowClass> = cases.iter().filter(|a| check(a).is_some()).collect();
    o.failures = shrink_all(&bad, |a| check(a).is_some(), |a| check(a).unwrap_or_default());
    o
}

/// Splitting, forced-move and statistic-preservation identities for the
/// row swaps and the generators.
pub fn split_lemmas(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.count(2000);
    let pool = mixed_pool();
    let mut report = SuiteReport::new("split-lemmas");
    let mut rng = cfg.rng(3);

    let classes: Vec<RowClass> = (0..n).map(|_| random_class(&mut rng, 2..=3, 3, &pool)).collect();
    let o = run_random(&classes, DIVERGENCE, swap_split, |a| json!({ "table": class_to_json(a) }));
    report.absorb("row swaps split over ± classes", shrink_outcome(o, &classes, swap_split));

    let o = run_random(&classes, DIVERGENCE, preserves_chains, |a| json!({ "table": class_to_json(a) }));
    report.absorb("row swaps preserve the coset RS shapes", shrink_outcome(o, &classes, preserves_chains));

    let forced: Vec<RowClass> = (0..n).map(|_| with_empty_row(&mut rng, &pool)).collect();
    let o = run_random(&forced, DIVERGENCE, forced_moves, |a| json!({ "table": class_to_json(a) }));
    report.absorb("moves onto empty rows are forced", o);

    let generic: Vec<RowClass> = (0..n).map(|_| random_generic_pyramid(&mut rng)).collect();
    let o = run_random(&generic, DIVERGENCE, middle_swap_agrees, |a| json!({ "table": class_to_json(a) }));
    report.absorb("middle swap agrees with c on one generic class", shrink_outcome(o, &generic, |a| if is_pyramid(a) { middle_swap_agrees(a) } else { None }));

    for (ty, property) in [(LieType::D, "generator words split over ± classes"), (LieType::C, "type C action commutes with adding boxes")] {
        let members = action_pool(&mut rng, ty);
        let cases: Vec<(RowClass, Generators, OrbitWord)> = (0..n)
            .map(|_| {
                let (a, gens) = members.choose(&mut rng).expect("non-empty pool").clone();
                let w = random_word(&mut rng, gens.d(), 3);
                (a, gens, w)
            })
            .collect();
        let check = |(a, gens, w): &(RowClass, Generators, OrbitWord)| match ty {
            LieType::D => word_split(a, w, gens),
            LieType::C => plus_commutes(a, w, gens),
        };
        let o = run_random(&cases, DIVERGENCE, check, |(a, _, w)| json!({ "table": class_to_json(a), "word": w.to_strings() }));
        report.absorb(property, o);
    }
    report
}

// ---------------------------------------------------------------- cplus

/// Each single-coset part of the top half is column strict up to row order.
pub fn top_half_ok(a: &RowClass) -> bool {
    let top = a.table().top_half();
    top.cosets().into_iter().all(|z| is_jre_cs(&top.restrict(z)))
}

/// Everything that should hold on the orbit of a member of the finite
/// dimensionality set: defined, involutive and commuting generators, and
/// column strict top halves.
pub fn orbit_problem(a: &RowClass, gens: &Generators) -> Option<String> {
    let o = orbit(a, gens);
    if let Some((w, why)) = o.undefined.first() {
        return Some(format!("{w} undefined: {why}"));
    }
    for (m, w) in &o.members {
        if !top_half_ok(m) {
            return Some(format!("top half of {w} · A is not column strict up to row order"));
        }
        for i in 1..=gens.d() {
            let x = generator_action(m, i, gens).ok()?;
            if generator_action(&x, i, gens).ok().as_ref() != Some(m) {
                return Some(format!("g{i} is not an involution at {w} · A"));
            }
            for j in i + 1..=gens.d() {
                let ij = generator_action(&x, j, gens).ok();
                let ji = generator_action(m, j, gens).ok().and_then(|y| generator_action(&y, i, gens).ok());
                if ij != ji {
                    return Some(format!("g{i} and g{j} do not commute at {w} · A"));
                }
            }
        }
    }
    None
}

const DESK_PYRAMIDS: [&[usize]; 5] = [&[1], &[2], &[1, 1], &[1, 2], &[2, 2]];
const WIDER_PYRAMIDS: [&[usize]; 3] = [&[3], &[1, 3], &[2, 3]];

/// Orbit members per `(pyramid, type)` over every standard alphabet.
fn orbit_cases(list: &[&[usize]]) -> Vec<(Pyramid, LieType, RowClass)> {
    let mut out = Vec::new();
    for p in pyramids(list) {
        for ty in [LieType::D, LieType::C] {
            out.extend(diamond_over_standard(&p, Phi::for_type(ty)).into_iter().map(|a| (p.clone(), ty, a)));
        }
    }
    out
}

fn orbit_outcome(cases: &[(Pyramid, LieType, RowClass)]) -> Outcome {
    let fails = |(p, ty, a): &(Pyramid, LieType, RowClass)| orbit_problem(a, &Generators::new(p, *ty));
    let bad: Vec<&(Pyramid, LieType, RowClass)> = cases.par_iter().filter(|c| fails(c).is_some()).collect();
    let mut failures = Vec::new();
    for (idx, (p, ty, a)) in bad.iter().enumerate() {
        if idx >= 4 * KEEP {
            failures.push((String::new(), Value::Null));
            continue;
        }
        let gens = Generators::new(p, *ty);
        let phi = Phi::for_type(*ty);
        let small = shrink_class(a, |b| {
            b.r() == a.r() && is_pyramid(b) && accepts(b.table(), phi) && orbit_problem(b, &Generators::new(&Pyramid::from_rows(&top_lengths(b)).expect("pyramid"), *ty)).is_some()
        });
        let small_gens = Generators::new(&Pyramid::from_rows(&top_lengths(&small)).expect("pyramid"), *ty);
        let why = orbit_problem(&small, &small_gens).or_else(|| orbit_problem(a, &gens)).unwrap_or_default();
        failures.push((format!("type {ty}: {why}"), json!({ "type": ty.to_string(), "table": class_to_json(&small) })));
    }
    Outcome { label: DIVERGENCE, checked: cases.len(), failures }
}

fn top_lengths(a: &RowClass) -> Vec<usize> {
    a.table().top_rows().iter().map(Vec::len).collect()
}

/// The generators act on the finite dimensionality sets of the small
/// pyramids, and every image keeps a column strict top half.
pub fn cplus(cfg: &SuiteConfig) -> SuiteReport {
    let mut cases = orbit_cases(&DESK_PYRAMIDS);
    if let Some(n) = cfg.samples {
        cases.truncate(n);
    }
    let mut report = SuiteReport::new("cplus");
    report.absorb("generator orbits are defined with column strict top halves", orbit_outcome(&cases));
    if cfg.samples.is_none() {
        let wider = orbit_outcome(&orbit_cases(&WIDER_PYRAMIDS));
        report.notes.push(format!(
            "informational, rows of length 3: {} members checked, {} with orbit problems",
            wider.checked,
            wider.failures.len()
        ));
        for (why, repro) in wider.failures.iter().filter(|(why, _)| !why.is_empty()).take(KEEP) {
            report.notes.push(format!("  {why}: {repro}"));
        }
    }
    report
}

// ---------------------------------------------------------------- bounds

/// Closed form bounds against the column counts of `B`, and dominance on
/// random instances satisfying the context.
pub fn bounds(cfg: &SuiteConfig) -> SuiteReport {
    let n = cfg.count(1000);
    let mut report = SuiteReport::new("bounds");
    for case in BoundCase::ALL {
        let mut rng = cfg.rng(100 + case as u64);
        let mut failures = Vec::new();
        let mut checked = 0;
        let mut attempts = 0;
        while checked < n && attempts < 100 * n {
            attempts += 1;
            let r = rng.gen_range(2..=4);
            let Some(input) = random_input(case, r, 6, &mut rng) else { continue };
            let Some(az) = random_instance(&input, 12, &mut rng) else { continue };
            checked += 1;
            let repro = || json!({ "p": input.p(), "rows": az.rows().iter().map(|r| r.iter().map(Entry::to_string).collect::<Vec<_>>()).collect::<Vec<_>>() });
            match verify_bound(&az, &input) {
                Err(e) => failures.push((e.to_string(), repro())),
                Ok(v) => {
                    if !v.passed() {
                        failures.push((format!("observed {} outside [{}, {}]", v.observed, v.lower, v.upper), repro()));
                    } else if v.lower != b_column_lengths(&input) || v.upper != v.lower.transpose() {
                        failures.push((format!("closed forms {} / {} disagree with the columns of B", v.lower, v.upper), repro()));
                    }
                }
            }
        }
        if checked < n {
            failures.push((format!("only {checked} of {n} instances generated"), Value::Null));
        }
        report.absorb(&format!("case {case}"), Outcome { label: COUNTEREXAMPLE, checked, failures });
    }
    report
}

// ---------------------------------------------------------------- stability

fn verdict_of(a: &RowClass, ty: LieType) -> Option<Verdict> {
    is_finite_dimensional(a, ty).ok().map(|d| d.verdict)
}

/// The decision is constant on orbits and the parameter catalogs are byte
/// stable across runs and alphabet orderings.
pub fn stability(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = SuiteReport::new("stability");
    let mut rng = cfg.rng(4);
    let alphabets = standard_alphabets();

    // seeds: members of the set, plus random fillings that mostly are not
    let mut seeds: Vec<(Pyramid, LieType, RowClass)> = orbit_cases(&DESK_PYRAMIDS);
    let extra = cfg.count(400);
    for p in pyramids(&DESK_PYRAMIDS) {
        let fillings: Vec<RowClass> = fillings_over_standard(&p).into_iter().collect();
        for a in fillings.choose_multiple(&mut rng, extra / DESK_PYRAMIDS.len()) {
            for ty in [LieType::D, LieType::C] {
                seeds.push((p.clone(), ty, a.clone()));
            }
        }
    }
    if let Some(n) = cfg.samples {
        seeds.truncate(n);
    }
    let failures: Vec<(String, Value)> = seeds
        .par_iter()
        .filter_map(|(p, ty, a)| {
            let o = orbit(a, &Generators::new(p, *ty));
            let first = verdict_of(a, *ty);
            let odd = o.members.iter().find(|(m, _)| verdict_of(m, *ty) != first)?;
            Some((
                format!("type {ty}: verdict {first:?} at A but {:?} at {} · A", verdict_of(&odd.0, *ty), odd.1),
                json!({ "type": ty.to_string(), "table": class_to_json(a) }),
            ))
        })
        .collect();
    report.absorb("verdict is constant on orbits", Outcome { label: DIVERGENCE, checked: seeds.len(), failures });

    let mut checked = 0;
    let mut failures = Vec::new();
    for p in pyramids(&DESK_PYRAMIDS) {
        for ty in [LieType::D, LieType::C] {
            for alpha in alphabets.choose_multiple(&mut rng, 4) {
                let choice = BulletChoice::default();
                let render = |alpha: &Alphabet| primitive_ideal_labels(&p, ty, alpha, &choice).map(|c| to_pretty(&catalog_to_json(&c)));
                let mut reversed: Vec<Entry> = alpha.letters().to_vec();
                reversed.reverse();
                let reversed = Alphabet::new(reversed).expect("same letters");
                let runs = [render(alpha), render(alpha), render(&reversed)];
                checked += 1;
                if runs.iter().any(|r| r.as_ref().ok() != runs[0].as_ref().ok()) {
                    failures.push((format!("catalog for {:?} type {ty} is not byte stable", p.top_lengths()), Value::Null));
                }
            }
        }
    }
    report.absorb("parameter catalogs are byte stable", Outcome { label: COUNTEREXAMPLE, checked, failures });
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteConfig {
        SuiteConfig { seed: 11, samples: Some(60) }
    }

    #[test]
    fn standard_alphabets_are_maximal_and_closed() {
        let alphas = standard_alphabets();
        assert_eq!(alphas.len(), 28 + 56);
        assert!(alphas.iter().all(|a| a.len() == 5 || a.len() == 6));
    }

    #[test]
    fn convex_frame_count() {
        // unimodal compositions of 1, 2, 3: 1 + 2 + 4
        assert_eq!(convex_frames(3).len(), 7);
        assert!(convex_frames(5).iter().all(|f| lengths_convex(f)));
    }

    #[test]
    fn generated_fillings_are_column_strict() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for lengths in convex_frames(6) {
            assert!(is_jre_cs(&column_strict_filling(&mut rng, &lengths)), "{lengths:?}");
        }
    }

    #[test]
    fn shrinking_finds_a_local_minimum() {
        let a = RowClass::from_top(vec![vec![Entry::int(4), Entry::int(5)], vec![Entry::int(1), Entry::int(2), Entry::int(3)]]);
        let small = shrink_class(&a, |b| b.table().top_rows().iter().flatten().any(|e| *e == Entry::int(2)));
        assert_eq!(small, RowClass::from_top(vec![vec![Entry::int(2)]]));
    }

    #[test]
    fn quick_runs_of_the_passing_suites() {
        for name in ["rs-oracles", "trecs", "split-lemmas", "cplus", "bounds"] {
            let report = run_suite(name, &quick()).unwrap();
            assert!(report.passed(), "{report}");
            assert!(report.checked > 0);
        }
        assert!(run_suite("nope", &quick()).is_err());
    }
}
