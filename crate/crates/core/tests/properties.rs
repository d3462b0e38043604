use proptest::prelude::*;
use proptest::sample::select;

use stab_core::classify::{accepts, bullet_filter, bullet_holds, enumerate_diamond, Alphabet, BulletChoice, Phi};
use stab_core::group::{c_op, generator_action, row_swap};
use stab_core::json::{class_to_json, table_from_json};
use stab_core::oracle::{oracle_ctc, oracle_ell};
use stab_core::rs::{column_strict_arrangement, ctc, ell, jre_cs_by_shape, rs_word};
use stab_core::suites::standard_alphabets;
use stab_core::{Coset, Diagram, Entry, Generators, LieType, PmClass, Pyramid, RowClass, Sign};

fn pool() -> Vec<Entry> {
    let mut v: Vec<Entry> = (-3..=3).map(Entry::int).collect();
    v.extend((-2..=1).map(Entry::half));
    for k in -2..=2 {
        v.push(Entry::generic("zeta", Sign::Plus, k));
        v.push(Entry::generic("zeta", Sign::Minus, k));
    }
    v
}

fn entry() -> impl Strategy<Value = Entry> {
    select(pool())
}

fn word(max: usize) -> impl Strategy<Value = Vec<Entry>> {
    prop::collection::vec(entry(), 0..=max)
}

fn class(rows: std::ops::RangeInclusive<usize>, width: usize) -> impl Strategy<Value = RowClass> {
    prop::collection::vec(prop::collection::vec(entry(), 0..=width), rows).prop_map(RowClass::from_top)
}

/// Unimodal row lengths, so the left justification is convex.
fn convex_diagram() -> impl Strategy<Value = Diagram> {
    (prop::collection::vec(1usize..=3, 1..=4), 0usize..4).prop_flat_map(|(mut up, peak)| {
        up.sort_unstable();
        let mut lengths = up.clone();
        let mut down = up[..peak.min(up.len())].to_vec();
        down.reverse();
        lengths.extend(down);
        lengths.into_iter().map(|m| prop::collection::vec(entry(), m)).collect::<Vec<_>>().prop_map(Diagram::new)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rs_shape_has_the_word_length(w in word(12)) {
        prop_assert_eq!(rs_word(&w).shape().size(), w.len());
    }

    #[test]
    fn rs_statistics_match_the_oracle(w in word(9), k in 1usize..4) {
        prop_assert_eq!(ell(&w, k), oracle_ell(&w, k));
        prop_assert_eq!(ctc(&w, k), oracle_ctc(&w, k));
    }

    #[test]
    fn shape_test_agrees_with_search(d in convex_diagram()) {
        prop_assert_eq!(jre_cs_by_shape(&d), column_strict_arrangement(&d).is_some());
    }

    #[test]
    fn row_swaps_are_involutions(a in class(2..=3, 3), i in 1usize..3) {
        prop_assume!(i < a.r());
        if let Some(b) = row_swap(&a, i) {
            prop_assert_eq!(row_swap(&b, i), Some(a));
        }
    }

    #[test]
    fn c_is_an_involution(a in class(1..=3, 3)) {
        if let Some(b) = c_op(&a) {
            prop_assert_eq!(c_op(&b), Some(a));
        }
    }

    #[test]
    fn swaps_keep_each_coset_count(a in class(2..=3, 3)) {
        if let Some(b) = row_swap(&a, 1) {
            for z in a.table().cosets() {
                prop_assert_eq!(a.restrict(z).num_boxes(), b.restrict(z).num_boxes());
            }
        }
    }

    #[test]
    fn tables_round_trip_through_json(a in class(1..=3, 3)) {
        prop_assert_eq!(table_from_json(&class_to_json(&a)).unwrap().row_class(), a);
    }

    #[test]
    fn a_plus_only_adds_integral_boxes(a in class(1..=3, 3)) {
        let plus = a.plus();
        for z in a.table().cosets().into_iter().filter(|&z| z != Coset::Int) {
            prop_assert_eq!(plus.restrict(z).sorted(), a.restrict(z).sorted());
        }
        prop_assert_eq!(plus.table().num_boxes(), a.table().num_boxes() + 2 * a.r());
    }

    #[test]
    fn bullet_filter_is_idempotent(a in class(1..=2, 3)) {
        let once = bullet_filter(std::slice::from_ref(&a), &BulletChoice::default());
        prop_assert_eq!(bullet_filter(&once, &BulletChoice::default()), once);
    }
}

#[test]
fn integral_and_half_integral_restrictions_of_a_member_are_members() {
    for p in [Pyramid::from_rows(&[1, 2]).unwrap(), Pyramid::from_rows(&[2, 2]).unwrap()] {
        for alpha in standard_alphabets().iter().step_by(5) {
            for phi in [Phi::Plus, Phi::Minus] {
                for a in enumerate_diamond(&p, alpha, phi) {
                    for z in [PmClass::Int, PmClass::Half] {
                        assert!(accepts(a.restrict_pm(z).table(), phi), "{a} restricted to {z}");
                    }
                }
            }
        }
    }
}

#[test]
fn choice_is_irrelevant_for_balanced_rows() {
    let z = |s, k| Entry::generic("zeta", s, k);
    let balanced = RowClass::from_top(vec![vec![z(Sign::Plus, 0), z(Sign::Minus, 1)], vec![Entry::int(1)]]);
    let flipped = BulletChoice([("zeta".to_string(), Sign::Minus)].into_iter().collect());
    assert_eq!(bullet_holds(&balanced, &BulletChoice::default()), bullet_holds(&balanced, &flipped));
    assert!(bullet_holds(&balanced, &flipped));
}

#[test]
fn generators_are_involutions_on_small_members() {
    let alpha = Alphabet::new(vec![Entry::int(0), Entry::int(1), Entry::int(-1), Entry::half(0), Entry::half(-1)]).unwrap();
    for rows in [[1, 2], [2, 2]] {
        let p = Pyramid::from_rows(&rows).unwrap();
        for ty in [LieType::C, LieType::D] {
            let gens = Generators::new(&p, ty);
            for a in enumerate_diamond(&p, &alpha, Phi::for_type(ty)) {
                for j in 1..=gens.d() {
                    let b = generator_action(&a, j, &gens).unwrap();
                    assert_eq!(generator_action(&b, j, &gens).unwrap(), a);
                }
            }
        }
    }
}
