mod common;

use proptest::prelude::*;
use riesz_spectra::interval::{a_exact, a_geq, b_exact, fold_counts, frac, lift, Endpoint, IntervalSet};

fn set_strategy(den: i64, max_pairs: usize) -> impl Strategy<Value = IntervalSet> {
    prop::collection::btree_set(0..=den, 2..=2 * max_pairs).prop_map(move |cuts| {
        let cuts: Vec<i64> = cuts.into_iter().collect();
        let pairs = cuts
            .chunks_exact(2)
            .map(|c| (Endpoint::ratio(c[0], den), Endpoint::ratio(c[1], den)))
            .collect();
        IntervalSet::from_pairs(pairs).unwrap()
    })
}

fn unit() -> IntervalSet {
    IntervalSet::from_ratios(&[((0, 1), (1, 1))]).unwrap()
}

#[test]
fn fractional_parts() {
    assert_eq!(frac(&Endpoint::ratio(-1, 3)).unwrap(), Endpoint::ratio(2, 3));
    let x = common::sqrt(2).mul_int(5).frac().unwrap();
    assert!((x.to_f64() - 0.0710678118654755).abs() < 1e-15);
}

#[test]
fn lift_of_folded_piece() {
    let a = IntervalSet::from_ratios(&[((0, 1), (1, 10))]).unwrap();
    let l = lift(5, &a).unwrap();
    assert_eq!(l.len(), 5);
    assert_eq!(l.measure(), Endpoint::ratio(1, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inclusion_exclusion(a in set_strategy(48, 4), b in set_strategy(48, 4)) {
        let lhs = a.union(&b).unwrap().measure().add(&a.intersection(&b).unwrap().measure());
        prop_assert_eq!(lhs, a.measure().add(&b.measure()));
        let sd = a.symmetric_difference(&b).unwrap().measure();
        prop_assert_eq!(sd, a.difference(&b).unwrap().measure().add(&b.difference(&a).unwrap().measure()));
    }

    #[test]
    fn rotation_preserves_measure(s in set_strategy(40, 3), k in 0i64..40) {
        let rot = s.rotate(&Endpoint::ratio(k, 40)).unwrap();
        prop_assert_eq!(rot.measure(), s.measure());
        prop_assert!(rot.is_subset(&unit()).unwrap());
    }

    #[test]
    fn fold_levels_nest_and_count(s in set_strategy(60, 4), n in 1u64..=9) {
        let counts = fold_counts(n, &s).unwrap();
        prop_assert!(counts.max_count() <= n);
        let mut total = Endpoint::zero();
        for level in 1..=n {
            let upper = a_geq(n, &s, level).unwrap();
            if level < n {
                prop_assert!(a_geq(n, &s, level + 1).unwrap().is_subset(&upper).unwrap());
            }
            total = total.add(&upper.measure());
            let b = b_exact(n, &s, level).unwrap();
            prop_assert_eq!(b.measure(), a_exact(n, &s, level).unwrap().measure().mul_int(level as i64));
        }
        prop_assert_eq!(total, s.measure());
    }

    #[test]
    fn complement_rule(s in set_strategy(42, 3), n in 1u64..=7) {
        let sc = unit().difference(&s).unwrap();
        let cell = IntervalSet::single(Endpoint::zero(), Endpoint::ratio(1, n as i64)).unwrap();
        for level in 1..=n {
            let lhs = a_geq(n, &sc, level).unwrap();
            let rhs = cell.difference(&a_geq(n, &s, n + 1 - level).unwrap()).unwrap();
            prop_assert!(lhs.set_eq(&rhs).unwrap());
        }
    }

    #[test]
    fn json_round_trip(s in set_strategy(97, 4)) {
        let text = serde_json::to_string(&s).unwrap();
        let back: IntervalSet = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }
}
