//! Square minors of the character matrix `[e^{-2πi jk/N}]`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::linalg::{min_singular_value, unit_root, CMat};

/// Default cap on the number of minors enumerated by [`chebotarev_check`].
pub const ENUMERATION_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MinorSpec {
    #[serde(rename = "N")]
    pub n: u64,
    pub rows: Vec<u64>,
    pub cols: Vec<u64>,
}

impl MinorSpec {
    pub fn new(n: u64, rows: Vec<u64>, cols: Vec<u64>) -> Result<Self> {
        let spec = MinorSpec { n, rows, cols };
        spec.validate()?;
        Ok(spec)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn validate(&self) -> Result<()> {
        let k = self.rows.len();
        if self.n == 0 || k == 0 || k != self.cols.len() || k as u64 > self.n {
            return Err(Error::invalid("minor needs 1 ≤ |rows| = |cols| ≤ N"));
        }
        for list in [&self.rows, &self.cols] {
            if list.windows(2).any(|w| w[0] >= w[1]) || list.iter().any(|&x| x >= self.n) {
                return Err(Error::invalid("minor indices must be strictly increasing in 0..N"));
            }
        }
        Ok(())
    }

    /// Lexicographic key used for deterministic tie-breaking.
    fn key(&self) -> (usize, &[u64], &[u64]) {
        (self.rows.len(), &self.rows, &self.cols)
    }
}

pub fn minor_matrix(spec: &MinorSpec) -> Result<CMat> {
    spec.validate()?;
    let n = spec.n;
    Ok(CMat::from_fn(spec.size(), spec.size(), |l, r| {
        // Reduce jk mod N exactly before evaluating the exponential.
        let jk = ((spec.rows[l] as u128 * spec.cols[r] as u128) % n as u128) as i64;
        unit_root(-jk, n)
    }))
}

pub fn min_singular(spec: &MinorSpec) -> Result<f64> {
    min_singular_value(minor_matrix(spec)?.as_ref())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChebotarevReport {
    pub worst_spec: MinorSpec,
    pub worst_sigma: f64,
    pub specs_checked: u64,
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: u64, k: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if k as u64 > n {
        return out;
    }
    let mut cur: Vec<u64> = (0..k as u64).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - i) as u64 {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

fn better(a: (f64, MinorSpec), b: (f64, MinorSpec)) -> (f64, MinorSpec) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => {
            if a.1.key() <= b.1.key() {
                a
            } else {
                b
            }
        }
    }
}

pub fn chebotarev_check(n: u64, max_size: usize) -> Result<ChebotarevReport> {
    chebotarev_check_with_budget(n, max_size, ENUMERATION_BUDGET)
}

/// Smallest singular value over all square minors of size `≤ max_size`.
pub fn chebotarev_check_with_budget(n: u64, max_size: usize, budget: u64) -> Result<ChebotarevReport> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    if max_size == 0 || max_size as u64 > n {
        return Err(Error::invalid(format!("max_size must lie in 1..={n}")));
    }
    let mut total: u64 = 0;
    for k in 1..=max_size as u64 {
        let c = binomial(n, k);
        total = total.saturating_add(c.saturating_mul(c));
    }
    if total > budget {
        return Err(Error::ResourceLimit(format!("{total} minors exceed enumeration budget {budget}")));
    }
    let mut best: Option<(f64, MinorSpec)> = None;
    for k in 1..=max_size {
        let sets = subsets(n, k);
        let found = sets
            .par_iter()
            .map(|rows| -> Result<(f64, MinorSpec)> {
                let mut local: Option<(f64, MinorSpec)> = None;
                for cols in &sets {
                    let spec = MinorSpec { n, rows: rows.clone(), cols: cols.clone() };
                    let s = min_singular(&spec)?;
                    local = Some(match local {
                        None => (s, spec),
                        Some(prev) => better(prev, (s, spec)),
                    });
                }
                local.ok_or_else(|| Error::invalid("no minors"))
            })
            .try_reduce_with(|a, b| Ok(better(a, b)));
        if let Some(found) = found {
            let found = found?;
            best = Some(match best {
                None => found,
                Some(prev) => better(prev, found),
            });
        }
    }
    let (worst_sigma, worst_spec) = best.ok_or_else(|| Error::invalid("no minors enumerated"))?;
    Ok(ChebotarevReport { worst_spec, worst_sigma, specs_checked: total })
}

/// `min σ_min²` over the supplied fiber column sets, pairing a set of size `n`
/// with the first `n` shifts (reduced mod `N`) as rows.
pub fn c_prime_bound(n: u64, shifts: &[u64], fiber_sets: &[Vec<u64>]) -> Result<f64> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let reduced: Vec<u64> = shifts.iter().map(|s| s % n).collect();
    let mut seen = reduced.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != reduced.len() {
        return Err(Error::invalid("shifts must be distinct mod N"));
    }
    let mut best = f64::INFINITY;
    for cols in fiber_sets {
        if cols.is_empty() {
            continue;
        }
        if cols.len() > reduced.len() {
            return Err(Error::invalid("fiber set larger than the shift list"));
        }
        let mut rows = reduced[..cols.len()].to_vec();
        rows.sort_unstable();
        let mut cols = cols.clone();
        cols.sort_unstable();
        let s = min_singular(&MinorSpec::new(n, rows, cols)?)?;
        best = best.min(s * s);
    }
    if best.is_infinite() {
        return Err(Error::invalid("no nonempty fiber sets supplied"));
    }
    Ok(best)
}

/// Plain entry for cross-checks: `e^{-2πi jk/N}`.
pub fn character(j: u64, k: u64, n: u64) -> Complex64 {
    unit_root(-(((j as u128 * k as u128) % n as u128) as i64), n)
}
