use std::cmp::Ordering;

use goodstein_core::goodstein::{self, bignum, BaseSchedule};
use goodstein_core::ordinal::{self, compare, Ordinal};
use goodstein_core::{gen, numeral, Natural};
use proptest::prelude::*;

const SHAPE: gen::OrdinalShape = gen::OrdinalShape {
    depth: 4,
    max_coefficient: 6,
    width: 3,
};

fn ordinal_strategy() -> impl Strategy<Value = Ordinal> {
    any::<u64>().prop_map(|seed| gen::random_ordinal(&mut gen::rng(seed), SHAPE))
}

fn nat(n: u64) -> Natural {
    Natural::from(n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn compare_is_a_total_order(a in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        prop_assert_eq!(compare(&a, &b), compare(&b, &a).reverse());
        prop_assert_eq!(compare(&a, &b) == Ordering::Equal, a == b);
        if compare(&a, &b) != Ordering::Greater && compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn render_parse_round_trip(a in ordinal_strategy()) {
        prop_assert_eq!(Ordinal::parse(&a.render()).unwrap(), a);
    }

    #[test]
    fn addition_is_associative(a in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        let left = ordinal::add(&ordinal::add(&a, &b), &c);
        let right = ordinal::add(&a, &ordinal::add(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn addition_is_strictly_monotone_on_the_right(a in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        let (lo, hi) = if compare(&b, &c) == Ordering::Less { (b, c) } else { (c, b) };
        prop_assume!(lo != hi);
        prop_assert_eq!(compare(&ordinal::add(&a, &lo), &ordinal::add(&a, &hi)), Ordering::Less);
        prop_assert_ne!(compare(&ordinal::add(&a, &lo), &a), Ordering::Less);
    }

    #[test]
    fn omega_power_left_distributes(e in ordinal_strategy(), b in ordinal_strategy(), c in ordinal_strategy()) {
        let left = ordinal::omega_power_mul(&e, &ordinal::add(&b, &c));
        let right = ordinal::add(&ordinal::omega_power_mul(&e, &b), &ordinal::omega_power_mul(&e, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn length_is_subadditive(a in ordinal_strategy(), b in ordinal_strategy()) {
        let sum = ordinal::add(&a, &b);
        prop_assert!(ordinal::length(&sum) <= ordinal::length(&a) + ordinal::length(&b));
    }

    #[test]
    fn tower_height_is_least(a in ordinal_strategy()) {
        let t = ordinal::tower_height(&a);
        prop_assert_eq!(compare(&a, &ordinal::omega_tower(t).unwrap()), Ordering::Less);
        if t > 0 {
            prop_assert_ne!(compare(&a, &ordinal::omega_tower(t - 1).unwrap()), Ordering::Less);
        }
    }

    #[test]
    fn decompose_evaluates_back(m in 0u64..1_000_000, b in 2u64..12) {
        let h = numeral::decompose(&nat(m), &nat(b)).unwrap();
        prop_assert_eq!(numeral::evaluate(&h, 256).unwrap(), nat(m));
        let back = numeral::from_ordinal(&numeral::to_ordinal(&h), &nat(b)).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn base_shift_matches_digit_arithmetic(m in 0u64..100_000, b in 2u64..6, extra in 0u64..3) {
        let c = b + extra;
        let h = numeral::decompose(&nat(m), &nat(b)).unwrap();
        let shifted = numeral::base_shift(&h, &nat(c)).unwrap();
        let expected = bignum::base_change(&nat(m), &nat(b), &nat(c), 1 << 16);
        match expected {
            Ok(v) => prop_assert_eq!(numeral::evaluate(&shifted, 1 << 16).unwrap(), v),
            Err(_) => prop_assert!(numeral::evaluate(&shifted, 1 << 16).is_err()),
        }
    }

    #[test]
    fn decrement_subtracts_one_and_descends(m in 1u64..1_000_000, b in 2u64..12) {
        let h = numeral::decompose(&nat(m), &nat(b)).unwrap();
        let d = numeral::decrement(&h, 1 << 20).unwrap();
        prop_assert_eq!(numeral::evaluate(&d, 256).unwrap(), nat(m - 1));
        prop_assert_eq!(d.clone(), numeral::decompose(&nat(m - 1), &nat(b)).unwrap());
        prop_assert_eq!(compare(&numeral::to_ordinal(&h), &numeral::to_ordinal(&d)), Ordering::Greater);
    }

    #[test]
    fn constant_schedule_counts_down(m in 0u64..500, b in 2u64..10) {
        let trace = goodstein::run_general(&nat(m), &BaseSchedule::Constant(nat(b)), m + 2, 1 << 20).unwrap();
        prop_assert!(trace.terminated);
        prop_assert_eq!(trace.termination_index, Some(m));
        prop_assert!(goodstein::check_descent(&trace).passed());
    }

    #[test]
    fn domination_certificates_pass(seed in any::<u64>()) {
        let shape = gen::OrdinalShape { depth: 3, max_coefficient: 4, width: 3 };
        let alphas = gen::random_descending(&mut gen::rng(seed), 8, shape);
        let (_, _, cert) = goodstein::ordinals_to_goodstein(&alphas, 1 << 20).unwrap();
        prop_assert!(cert.all_pass());
        prop_assert_eq!(cert.records.len(), alphas.len());
    }
}

#[test]
fn special_sequence_from_four_matches_plain_arithmetic() {
    let trace = goodstein::run_special(&nat(4), 40, 1 << 20).unwrap();
    let mut value = nat(4);
    for (i, h) in trace.steps.iter().enumerate().skip(1) {
        value = bignum::step(&value, &nat(i as u64 + 1), &nat(i as u64 + 2), 1 << 16).unwrap();
        assert_eq!(numeral::evaluate(h, 1 << 16).unwrap(), value, "step {i}");
    }
}
