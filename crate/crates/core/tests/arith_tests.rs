mod common;

use common::{single_interval, sqrt, surd, two_intervals};
use riesz_spectra::arith::{
    admissible, find_ordering_prime, is_prime, ordering_witness, primes_up_to, rational_relation_probe,
};
use riesz_spectra::interval::Endpoint;
use riesz_spectra::Error;

#[test]
fn sieve_matches_trial_division() {
    let sieve = primes_up_to(5000).unwrap();
    let trial: Vec<u64> = (2..=5000).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)).collect();
    assert_eq!(sieve, trial);
    assert!(sieve.iter().all(|&p| is_prime(p)));
}

#[test]
fn single_interval_prime() {
    let (a, b) = single_interval();
    let res = find_ordering_prime(&a, &b, 1000).unwrap();
    assert_eq!(res.n, 5);
    assert!(admissible(5, &a, &b).unwrap().is_some());
    assert!(ordering_witness(3, &a, &b).unwrap().is_none() || admissible(3, &a, &b).unwrap().is_none());
}

#[test]
fn two_interval_prime() {
    let (a, b) = two_intervals();
    let res = find_ordering_prime(&a, &b, 1000).unwrap();
    assert_eq!(res.n, 7);
    let w = res.ordering_witness;
    assert!(w.windows(2).all(|p| p[0].try_lt(&p[1]).unwrap()));
}

#[test]
fn dependent_endpoints_are_flagged() {
    // b - a = 1/3 is rational.
    let a = vec![surd((1, 4), 2, (0, 1))];
    let b = vec![surd((1, 4), 2, (1, 3))];
    assert!(matches!(find_ordering_prime(&a, &b, 1000), Err(Error::IndependenceSuspect { .. })));
}

#[test]
fn relation_probe_finds_small_relations() {
    let rel = rational_relation_probe(&[sqrt(2), sqrt(8)], 5).unwrap().unwrap();
    assert_eq!(rel, vec![0, 2, -1]);
    let (a, b) = two_intervals();
    let mut v = a;
    v.extend(b);
    assert!(rational_relation_probe(&v, 6).unwrap().is_none());
    assert!(rational_relation_probe(&[Endpoint::ratio(1, 3)], 3).unwrap().is_some());
}
