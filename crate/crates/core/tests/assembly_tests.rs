mod common;

use common::{single_interval, sqrt, two_intervals};
use riesz_spectra::assembly::{
    lemma2_combine, prime_permuted_combine, subset_spectrum, theorem1_at_prime, theorem1_construct, theorem2_complement,
    Theorem1Plan, Theorem2Case,
};
use riesz_spectra::interval::{a_geq, Endpoint};
use riesz_spectra::spectrum::{AvdoninGenerator, Spectrum};
use riesz_spectra::Error;

#[test]
fn two_interval_plan() {
    let (a, b) = two_intervals();
    let plan = theorem1_construct(&a, &b, 1000).unwrap();
    assert_eq!(plan.n, 7);
    assert_eq!(plan.k_ell, vec![1, 1]);
    plan.check_ledger(1024.0).unwrap();
    for level in 1..=plan.n {
        assert!(plan.per_level[level as usize - 1].a_set.set_eq(&a_geq(7, &plan.s, level).unwrap()).unwrap());
    }
    let text = serde_json::to_string(&plan).unwrap();
    let back: Theorem1Plan = serde_json::from_str(&text).unwrap();
    assert_eq!(back, plan);
}

#[test]
fn subsets_reassemble() {
    let (a, b) = two_intervals();
    let plan = theorem1_construct(&a, &b, 1000).unwrap();
    for j in [vec![1], vec![2], vec![1, 2]] {
        let sub = subset_spectrum(&plan, &j).unwrap();
        assert_eq!(sub.k_j, j.len() as u64);
        assert_eq!(sub.omega.len(), 2 * j.len());
        let mut perm = sub.permutation.clone();
        perm.sort_unstable();
        assert_eq!(perm, (1..=7).collect::<Vec<_>>());
    }
    assert!(matches!(subset_spectrum(&plan, &[3]), Err(Error::InvalidInput(_))));
    let full = subset_spectrum(&plan, &[1, 2]).unwrap();
    assert_eq!(full.lambda_j.window_numerators(500.0).unwrap(), plan.union_spectrum().window_numerators(500.0).unwrap());
}

#[test]
fn wrong_prime_is_rejected() {
    let (a, b) = single_interval();
    assert!(matches!(theorem1_at_prime(&a, &b, 4, &AvdoninGenerator::default()), Err(Error::NotPrime(4))));
    assert!(theorem1_at_prime(&a, &b, 3, &AvdoninGenerator::default()).is_err());
}

#[test]
fn combiners_agree_on_identity() {
    let levels = vec![Spectrum::coset(3, 0), Spectrum::coset(6, 0), Spectrum::empty()];
    let a = lemma2_combine(3, &levels, 1).unwrap();
    let b = prime_permuted_combine(3, &levels, &[1, 2, 3]).unwrap();
    assert_eq!(a.window_numerators(100.0).unwrap(), b.window_numerators(100.0).unwrap());
    assert!(matches!(
        prime_permuted_combine(3, &[Spectrum::coset(3, 0), Spectrum::coset(3, 1), Spectrum::empty()], &[1, 2, 3]),
        Err(Error::LevelNotInNZ { level: 2, modulus: 3 })
    ));
}

#[test]
fn complement_cases() {
    let r = theorem2_complement(2, &[Endpoint::one()], &[Endpoint::one().add(&sqrt(2).div_int(2))]).unwrap();
    assert_eq!(r.case, Theorem2Case::Aligned);
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains("\"case\":\"aligned\""));
    let r = theorem2_complement(3, &[Endpoint::ratio(3, 2)], &[Endpoint::ratio(5, 2)]).unwrap();
    assert_eq!(r.m, 2);
    assert!(matches!(
        theorem2_complement(2, &[Endpoint::ratio(3, 2)], &[Endpoint::from_integer(3)]),
        Err(Error::InvalidInput(_))
    ));
}

