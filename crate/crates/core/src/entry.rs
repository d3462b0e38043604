//! Exact coset numbers.
//!
//! Only the class of a complex number modulo `Z` and its integer offset inside
//! that class matter for every condition in this crate, so an entry is stored
//! as a `(Coset, offset)` pair. Transcendental values such as `pi` become
//! opaque [`Label`]s: `Generic(pi, +, k)` stands for `pi + k` and
//! `Generic(pi, -, k)` for `-pi + k`.
//!
//! Two entries are comparable iff they lie in the same coset, and then
//! `a <= b` iff `b - a` is a nonnegative integer.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

/// Interned name of an indeterminate outside `1/2 Z`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(&'static str);

fn interner() -> &'static Mutex<HashMap<String, &'static str>> {
    static INTERNER: OnceLock<Mutex<HashMap<String, &'static str>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Label {
    pub fn new(name: &str) -> Label {
        let mut map = interner().lock().expect("label interner poisoned");
        if let Some(s) = map.get(name) {
            return Label(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        map.insert(name.to_owned(), leaked);
        Label(leaked)
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

/// A class of `C / Z` that can occur as an entry.
///
/// The derived order (`Int < Half < Generic`, then label, then `+ < -`) is the
/// total key used for canonical row sorting; it is unrelated to the partial
/// order on values.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Coset {
    Int,
    Half,
    Generic(Label, Sign),
}

impl Coset {
    pub fn neg(self) -> Coset {
        match self {
            Coset::Generic(l, s) => Coset::Generic(l, s.flip()),
            c => c,
        }
    }

    pub fn pm(self) -> PmClass {
        match self {
            Coset::Int => PmClass::Int,
            Coset::Half => PmClass::Half,
            Coset::Generic(l, _) => PmClass::Generic(l),
        }
    }

    /// Whether the class lies in `1/2 Z`.
    pub fn is_half_integral(self) -> bool {
        matches!(self, Coset::Int | Coset::Half)
    }
}

/// A class `{z + Z} ∪ {-z + Z}`; `Int` and `Half` are their own negatives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum PmClass {
    Int,
    Half,
    Generic(Label),
}

impl PmClass {
    /// The cosets making up this class (one for `Int`/`Half`, two otherwise).
    pub fn cosets(self) -> Vec<Coset> {
        match self {
            PmClass::Int => vec![Coset::Int],
            PmClass::Half => vec![Coset::Half],
            PmClass::Generic(l) => vec![Coset::Generic(l, Sign::Plus), Coset::Generic(l, Sign::Minus)],
        }
    }

    pub fn is_half_integral(self) -> bool {
        matches!(self, PmClass::Int | PmClass::Half)
    }
}

impl fmt::Display for PmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PmClass::Int => f.write_str("Z"),
            PmClass::Half => f.write_str("1/2+Z"),
            PmClass::Generic(l) => write!(f, "±{l}+Z"),
        }
    }
}

/// Outcome of comparing two entries under the coset partial order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl Relation {
    pub fn reverse(self) -> Relation {
        match self {
            Relation::Less => Relation::Greater,
            Relation::Greater => Relation::Less,
            r => r,
        }
    }
}

/// An element of `C` remembered as a coset of `Z` plus an integer offset.
///
/// `Int k` is `k`, `Half k` is `k + 1/2`, `Generic(z, +, k)` is `z + k` and
/// `Generic(z, -, k)` is `-z + k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Entry {
    pub coset: Coset,
    pub offset: i64,
}

impl Entry {
    pub const fn int(k: i64) -> Entry {
        Entry { coset: Coset::Int, offset: k }
    }

    /// The value `k + 1/2`.
    pub const fn half(k: i64) -> Entry {
        Entry { coset: Coset::Half, offset: k }
    }

    pub fn generic(label: &str, sign: Sign, offset: i64) -> Entry {
        Entry { coset: Coset::Generic(Label::new(label), sign), offset }
    }

    /// Builds `±label + offset` from an already interned label.
    pub const fn with_label(label: Label, sign: Sign, offset: i64) -> Entry {
        Entry { coset: Coset::Generic(label, sign), offset }
    }

    pub fn neg(self) -> Entry {
        match self.coset {
            Coset::Int => Entry::int(-self.offset),
            Coset::Half => Entry::half(-self.offset - 1),
            Coset::Generic(l, s) => Entry::with_label(l, s.flip(), -self.offset),
        }
    }

    pub fn pm(self) -> PmClass {
        self.coset.pm()
    }

    pub fn is_integral(self) -> bool {
        self.coset == Coset::Int
    }

    pub fn is_half_integral(self) -> bool {
        self.coset.is_half_integral()
    }

    pub fn compare(self, other: Entry) -> Relation {
        if self.coset != other.coset {
            return Relation::Incomparable;
        }
        match self.offset.cmp(&other.offset) {
            Ordering::Less => Relation::Less,
            Ordering::Equal => Relation::Equal,
            Ordering::Greater => Relation::Greater,
        }
    }

    /// Strictly below in the partial order: `other - self` is a positive integer.
    pub fn lt(self, other: Entry) -> bool {
        self.coset == other.coset && self.offset < other.offset
    }

    pub fn gt(self, other: Entry) -> bool {
        other.lt(self)
    }

    /// Same entry shifted by an integer.
    pub fn shift(self, by: i64) -> Entry {
        Entry { coset: self.coset, offset: self.offset + by }
    }
}

impl fmt::Debug for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coset {
            Coset::Int => write!(f, "{}", self.offset),
            Coset::Half => write!(f, "{}/2", 2 * self.offset + 1),
            Coset::Generic(l, s) => {
                let lead = if s == Sign::Minus { "-" } else { "" };
                match self.offset.cmp(&0) {
                    Ordering::Equal => write!(f, "{lead}{l}"),
                    Ordering::Greater => write!(f, "{lead}{l}+{}", self.offset),
                    Ordering::Less => write!(f, "{lead}{l}{}", self.offset),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zeta(sign: Sign, k: i64) -> Entry {
        Entry::generic("zeta", sign, k)
    }

    #[test]
    fn compare_examples() {
        assert_eq!(Entry::int(3).compare(Entry::int(5)), Relation::Less);
        assert_eq!(Entry::half(0).compare(Entry::int(0)), Relation::Incomparable);
        assert_eq!(zeta(Sign::Plus, 2).compare(zeta(Sign::Minus, 2)), Relation::Incomparable);
        assert_eq!(zeta(Sign::Plus, 2).compare(zeta(Sign::Plus, -1)), Relation::Greater);
    }

    #[test]
    fn negation_rules() {
        assert_eq!(Entry::int(4).neg(), Entry::int(-4));
        // -(1/2) = -1 + 1/2
        assert_eq!(Entry::half(0).neg(), Entry::half(-1));
        assert_eq!(zeta(Sign::Plus, 3).neg(), zeta(Sign::Minus, -3));
        assert_eq!(Entry::half(0).neg().pm(), PmClass::Half);
        assert_eq!(zeta(Sign::Minus, 0).pm(), zeta(Sign::Plus, 7).pm());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Entry::half(-1).to_string(), "-1/2");
        assert_eq!(Entry::half(1).to_string(), "3/2");
        assert_eq!(zeta(Sign::Minus, -2).to_string(), "-zeta-2");
        assert_eq!(zeta(Sign::Plus, 1).to_string(), "zeta+1");
    }

    pub(crate) fn arb_entry() -> impl Strategy<Value = Entry> {
        (0..4u8, prop::bool::ANY, -6i64..6).prop_map(|(tag, plus, k)| {
            let sign = if plus { Sign::Plus } else { Sign::Minus };
            match tag {
                0 => Entry::int(k),
                1 => Entry::half(k),
                2 => Entry::generic("zeta", sign, k),
                _ => Entry::generic("xi", sign, k),
            }
        })
    }

    proptest! {
        #[test]
        fn negation_is_involution(a in arb_entry()) {
            prop_assert_eq!(a.neg().neg(), a);
        }

        #[test]
        fn compare_is_antisymmetric(a in arb_entry(), b in arb_entry()) {
            prop_assert_eq!(a.compare(b), b.compare(a).reverse());
        }

        #[test]
        fn negation_reverses_order(a in arb_entry(), b in arb_entry()) {
            prop_assert_eq!(a.neg().compare(b.neg()), a.compare(b).reverse());
        }
    }
}
