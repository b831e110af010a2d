//! Primes, the prime search for an admissible folding modulus, equidistribution
//! diagnostics along primes and a bounded search for rational relations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{grid_separation_ok, pow2, Endpoint, DEFAULT_PRECISION_BITS};

/// Largest sieve limit accepted by [`primes_up_to`].
pub const SIEVE_BUDGET: u64 = 200_000_000;
/// Default bound on the coefficients tried by the relation probe.
pub const DEFAULT_PROBE_MAX_COEFF: u64 = 10;
/// Default bound on the size of the relation search box.
pub const DEFAULT_PROBE_BUDGET: u64 = 20_000_000;

pub fn primes_up_to(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::invalid("prime limit must be at least 2"));
    }
    if limit > SIEVE_BUDGET {
        return Err(Error::ResourceLimit(format!("sieve limit {limit} exceeds budget {SIEVE_BUDGET}")));
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    Ok(primes)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeSearchResult {
    #[serde(rename = "N")]
    pub n: u64,
    pub candidates_scanned: u64,
    /// `{N a_1}, ..., {N a_L}, {N b_L}, ..., {N b_1}` in increasing order.
    #[serde(skip)]
    pub ordering_witness: Vec<Endpoint>,
}

impl PrimeSearchResult {
    pub fn witness_f64(&self) -> Vec<f64> {
        self.ordering_witness.iter().map(Endpoint::to_f64).collect()
    }
}

#[derive(Clone, Debug)]
pub struct PrimeSearchOptions {
    pub prime_limit: u64,
    /// Return the `skip`-th passing prime (0 = smallest).
    pub skip: usize,
    pub probe_max_coeff: u64,
    pub probe_budget: u64,
}

impl PrimeSearchOptions {
    pub fn new(prime_limit: u64) -> Self {
        PrimeSearchOptions {
            prime_limit,
            skip: 0,
            probe_max_coeff: DEFAULT_PROBE_MAX_COEFF,
            probe_budget: DEFAULT_PROBE_BUDGET,
        }
    }
}

/// Check `0 < a_1 < b_1 < ... < a_L < b_L < 1`.
pub fn validate_endpoints(a: &[Endpoint], b: &[Endpoint]) -> Result<()> {
    if a.is_empty() || a.len() != b.len() {
        return Err(Error::invalid("need L ≥ 1 intervals with matching left/right endpoints"));
    }
    let mut prev = Endpoint::zero();
    for (l, r) in a.iter().zip(b) {
        if !prev.try_lt(l)? || !l.try_lt(r)? {
            return Err(Error::invalid("endpoints must satisfy 0 < a_1 < b_1 < ... < a_L < b_L < 1"));
        }
        prev = r.clone();
    }
    if !prev.try_lt(&Endpoint::one())? {
        return Err(Error::invalid("endpoints must be below 1"));
    }
    Ok(())
}

/// Ordering witness for `N`, or `None` when the chain
/// `0 < {N a_1} < ... < {N a_L} < {N b_L} < ... < {N b_1} < 1` fails.
pub fn ordering_witness(n: u64, a: &[Endpoint], b: &[Endpoint]) -> Result<Option<Vec<Endpoint>>> {
    let mut chain = Vec::with_capacity(a.len() + b.len());
    for x in a {
        chain.push(x.mul_int(n as i64).frac()?);
    }
    for x in b.iter().rev() {
        chain.push(x.mul_int(n as i64).frac()?);
    }
    let mut prev = Endpoint::zero();
    for x in &chain {
        if !prev.try_lt(x)? {
            return Ok(None);
        }
        prev = x.clone();
    }
    Ok(Some(chain))
}

/// Full admissibility test for a candidate modulus.
pub fn admissible(n: u64, a: &[Endpoint], b: &[Endpoint]) -> Result<Option<Vec<Endpoint>>> {
    let l = a.len() as u64;
    if n < 2 * l + 1 {
        return Ok(None);
    }
    let Some(witness) = ordering_witness(n, a, b)? else {
        return Ok(None);
    };
    let mut all = Vec::with_capacity(2 * a.len());
    for (x, y) in a.iter().zip(b) {
        all.push(x.clone());
        all.push(y.clone());
    }
    if !grid_separation_ok(n, &all)? {
        return Ok(None);
    }
    for (x, y) in a.iter().zip(b) {
        if y.mul_int(n as i64).floor()? - x.mul_int(n as i64).floor()? < BigInt::from(1) {
            return Ok(None);
        }
    }
    Ok(Some(witness))
}

pub fn find_ordering_prime(a: &[Endpoint], b: &[Endpoint], prime_limit: u64) -> Result<PrimeSearchResult> {
    find_ordering_prime_with(a, b, &PrimeSearchOptions::new(prime_limit))
}

pub fn find_ordering_prime_with(a: &[Endpoint], b: &[Endpoint], opts: &PrimeSearchOptions) -> Result<PrimeSearchResult> {
    validate_endpoints(a, b)?;
    let values: Vec<Endpoint> = a.iter().chain(b).cloned().collect();
    let max_coeff = clamp_max_coeff(values.len(), opts.probe_max_coeff, opts.probe_budget);
    if max_coeff >= 1 {
        if let Some(relation) = rational_relation_probe_with(&values, max_coeff, opts.probe_budget)? {
            return Err(Error::IndependenceSuspect { relation });
        }
    }
    let primes = primes_up_to(opts.prime_limit.max(2))?;
    let mut passed = 0usize;
    for (idx, &p) in primes.iter().enumerate() {
        if p > opts.prime_limit {
            break;
        }
        if let Some(witness) = admissible(p, a, b)? {
            if passed == opts.skip {
                return Ok(PrimeSearchResult { n: p, candidates_scanned: idx as u64 + 1, ordering_witness: witness });
            }
            passed += 1;
        }
    }
    Err(Error::NotFound { prime_limit: opts.prime_limit })
}

/// Largest coefficient bound whose search box `(2c+1)^(m+1)` fits the budget.
pub fn clamp_max_coeff(m: usize, max_coeff: u64, budget: u64) -> u64 {
    let mut c = max_coeff;
    while c > 0 && box_size(m, c).map_or(true, |s| s > budget) {
        c -= 1;
    }
    c
}

fn box_size(m: usize, c: u64) -> Option<u64> {
    (2 * c + 1).checked_pow(m as u32 + 1)
}

pub fn rational_relation_probe(values: &[Endpoint], max_coeff: u64) -> Result<Option<Vec<i64>>> {
    rational_relation_probe_with(values, max_coeff, DEFAULT_PROBE_BUDGET)
}

/// Search for `(q, q_1, ..., q_m)` with `|q_i| ≤ max_coeff`, not all value
/// coefficients zero, such that `q + Σ q_i v_i` vanishes to working precision.
/// Shells of growing max-norm are searched in turn; within a shell the
/// lexicographically smallest vector whose first nonzero value coefficient is
/// positive is returned.
pub fn rational_relation_probe_with(values: &[Endpoint], max_coeff: u64, budget: u64) -> Result<Option<Vec<i64>>> {
    if values.is_empty() {
        return Err(Error::invalid("relation probe needs at least one value"));
    }
    if max_coeff == 0 {
        return Err(Error::invalid("max_coeff must be at least 1"));
    }
    let m = values.len();
    match box_size(m, max_coeff) {
        Some(s) if s <= budget => {}
        _ => {
            return Err(Error::ResourceLimit(format!(
                "relation search box (2·{max_coeff}+1)^{} exceeds budget {budget}",
                m + 1
            )))
        }
    }
    let approx: Vec<f64> = values.iter().map(Endpoint::to_f64).collect();
    let bits = values.iter().filter_map(Endpoint::precision_bits).min().unwrap_or(DEFAULT_PRECISION_BITS);
    let threshold = BigRational::new(BigInt::from(1), pow2(bits / 2));
    let c_max = max_coeff as i64;
    for c in 1..=c_max {
        let mut best: Option<Vec<i64>> = None;
        let mut coeffs = vec![-c; m];
        loop {
            if let Some(candidate) = shell_candidate(&coeffs, &approx, c) {
                if best.as_ref().map_or(true, |b| candidate < *b) && vanishes(&candidate, values, &threshold) {
                    best = Some(candidate);
                }
            }
            let mut i = m;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if coeffs[i] < c {
                    coeffs[i] += 1;
                    for x in &mut coeffs[i + 1..] {
                        *x = -c;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

fn shell_candidate(coeffs: &[i64], approx: &[f64], c: i64) -> Option<Vec<i64>> {
    let first = coeffs.iter().find(|&&x| x != 0)?;
    if *first < 0 {
        return None;
    }
    let s: f64 = coeffs.iter().zip(approx).map(|(&k, &v)| k as f64 * v).sum();
    let q = -s.round();
    if (s + q).abs() > 1e-6 || q.abs() > c as f64 {
        return None;
    }
    let q = q as i64;
    let norm = coeffs.iter().map(|x| x.abs()).max().unwrap_or(0).max(q.abs());
    if norm != c {
        return None;
    }
    let mut v = Vec::with_capacity(coeffs.len() + 1);
    v.push(q);
    v.extend_from_slice(coeffs);
    Some(v)
}

fn vanishes(candidate: &[i64], values: &[Endpoint], threshold: &BigRational) -> bool {
    let mut acc = Endpoint::from_integer(candidate[0]);
    for (&k, v) in candidate[1..].iter().zip(values) {
        acc = acc.add(&v.mul_int(k));
    }
    acc.is_zero() || (!acc.is_exact() && acc.value().abs() < *threshold)
}

/// Box-grid star-discrepancy estimate of `({p a_1}, ..., {p a_d})` over primes
/// `p ≤ prime_limit`, using anchored boxes with corners on a `boxes^d` grid.
pub fn weyl_discrepancy(a: &[f64], prime_limit: u64, boxes: usize) -> Result<f64> {
    let primes = primes_up_to(prime_limit)?;
    discrepancy_of_orbit(a, &primes, boxes)
}

/// Largest number of histogram cells accepted by the discrepancy estimate.
pub const DISCREPANCY_CELL_BUDGET: usize = 16_000_000;

pub fn discrepancy_of_orbit(a: &[f64], primes: &[u64], boxes: usize) -> Result<f64> {
    let d = a.len();
    if d == 0 || boxes == 0 {
        return Err(Error::invalid("need a nonempty direction and at least one box"));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("direction must be finite"));
    }
    let cells = (boxes as u64).checked_pow(d as u32).filter(|&c| c as usize <= DISCREPANCY_CELL_BUDGET);
    let Some(cells) = cells else {
        return Err(Error::ResourceLimit(format!("{boxes}^{d} grid cells exceed budget")));
    };
    if primes.is_empty() {
        return Err(Error::invalid("no primes to sample"));
    }
    let mut hist = vec![0u64; cells as usize];
    for &p in primes {
        let mut idx = 0usize;
        for &x in a {
            let f = frac_f64(p as f64 * x);
            let cell = ((f * boxes as f64) as usize).min(boxes - 1);
            idx = idx * boxes + cell;
        }
        hist[idx] += 1;
    }
    // Inclusive prefix sums along every axis.
    let mut stride = 1usize;
    for _ in 0..d {
        for i in 0..hist.len() {
            if (i / stride) % boxes != 0 {
                hist[i] += hist[i - stride];
            }
        }
        stride *= boxes;
    }
    let total = primes.len() as f64;
    let mut worst = 0.0f64;
    for (i, &count) in hist.iter().enumerate() {
        let mut vol = 1.0;
        let mut rest = i;
        for _ in 0..d {
            vol *= ((rest % boxes) + 1) as f64 / boxes as f64;
            rest /= boxes;
        }
        worst = worst.max((count as f64 / total - vol).abs());
    }
    Ok(worst)
}

/// `|mean over primes of e^{2πi h p a}|` for `p ≤ prime_limit`.
pub fn weyl_sum(a: f64, h: i64, prime_limit: u64) -> Result<f64> {
    let primes = primes_up_to(prime_limit)?;
    let (mut re, mut im) = (0.0, 0.0);
    for &p in &primes {
        let phase = 2.0 * std::f64::consts::PI * frac_f64(h as f64 * p as f64 * a);
        re += phase.cos();
        im += phase.sin();
    }
    Ok((re * re + im * im).sqrt() / primes.len() as f64)
}

/// Fraction of primes `p ≤ prime_limit` with `{p a} ∈ [lo, hi)`, evaluated exactly.
pub fn prime_orbit_fraction(a: &Endpoint, prime_limit: u64, lo: &Endpoint, hi: &Endpoint) -> Result<f64> {
    let primes = primes_up_to(prime_limit)?;
    let mut hits = 0u64;
    for &p in &primes {
        let f = a.mul_int(p as i64).frac()?;
        if lo.try_le(&f)? && f.try_lt(hi)? {
            hits += 1;
        }
    }
    Ok(hits as f64 / primes.len() as f64)
}

fn frac_f64(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: u64) -> Endpoint {
        Endpoint::sqrt(n, DEFAULT_PRECISION_BITS)
    }

    #[test]
    fn small_sieves() {
        assert_eq!(primes_up_to(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(2).unwrap(), vec![2]);
        assert!(primes_up_to(1).is_err());
        assert!(matches!(primes_up_to(SIEVE_BUDGET + 1), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn prime_for_sqrt_pair() {
        let a = [sq(2).sub(&Endpoint::one())];
        let b = [sq(3).sub(&Endpoint::one())];
        let r = find_ordering_prime(&a, &b, 100).unwrap();
        assert_eq!(r.n, 5);
        assert_eq!(r.candidates_scanned, 3);
        let w = r.witness_f64();
        assert!((w[0] - 0.07107).abs() < 1e-5);
        assert!((w[1] - 0.66025).abs() < 1e-5);
    }

    #[test]
    fn rational_endpoints_are_rejected() {
        let r = find_ordering_prime(&[Endpoint::ratio(1, 4)], &[Endpoint::ratio(3, 4)], 1000);
        assert!(matches!(r, Err(Error::NotFound { .. }) | Err(Error::IndependenceSuspect { .. })));
        assert!(matches!(find_ordering_prime(&[], &[], 100), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn relation_probe_examples() {
        assert_eq!(rational_relation_probe(&[Endpoint::ratio(1, 2)], 2).unwrap(), Some(vec![-1, 2]));
        let x = sq(2).sub(&Endpoint::one());
        assert_eq!(rational_relation_probe(&[x.clone(), x.mul_int(2)], 3).unwrap(), Some(vec![0, 2, -1]));
        let y = sq(3).sub(&Endpoint::one());
        assert_eq!(rational_relation_probe(&[x, y], 10).unwrap(), None);
    }

    #[test]
    fn probe_budget() {
        let v = vec![Endpoint::ratio(1, 3); 6];
        assert!(matches!(rational_relation_probe(&v, 10), Err(Error::ResourceLimit(_))));
        assert_eq!(clamp_max_coeff(2, 10, 20_000_000), 10);
        assert!(clamp_max_coeff(6, 10, 20_000_000) < 10);
    }

    #[test]
    fn rational_direction_concentrates() {
        assert!(weyl_discrepancy(&[0.5], 100_000, 32).unwrap() > 0.4);
    }

    #[test]
    fn weyl_sum_of_irrational_is_small() {
        assert!(weyl_sum(std::f64::consts::SQRT_2, 1, 100_000).unwrap() < 0.05);
        assert!((weyl_sum(0.5, 1, 1000).unwrap() - 1.0).abs() < 0.05);
    }
}
