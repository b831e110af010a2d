//! Combination of level spectra and the two main constructions: hierarchical
//! spectra for unions of intervals, and complements of the integer spectrum.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::{find_ordering_prime_with, is_prime, ordering_witness, validate_endpoints, PrimeSearchOptions};
use crate::error::{Error, Result};
use crate::interval::round_to_bits;
use crate::interval::{fold_counts, Endpoint, FoldCounts, IntervalSet};
use crate::spectrum::{rational_grid_spectrum, AvdoninGenerator, IntervalGenerator, Spectrum, DEFAULT_WINDOW};

/// Window used for the cheap disjointness assertion in the combiners.
const COMBINE_CHECK_WINDOW: f64 = 256.0;

fn check_level(n: u64, level: usize, spectrum: &Spectrum) -> Result<()> {
    if !spectrum.is_empty() && !spectrum.within_multiples_of(n, DEFAULT_WINDOW)? {
        return Err(Error::LevelNotInNZ { level, modulus: n });
    }
    Ok(())
}

/// `∪_{n=1..N} (Λ_n + n - 1 + base_shift)`.
pub fn lemma2_combine(n: u64, levels: &[Spectrum], base_shift: u8) -> Result<Spectrum> {
    if levels.len() as u64 != n {
        return Err(Error::invalid(format!("expected {n} levels, got {}", levels.len())));
    }
    if base_shift > 1 {
        return Err(Error::invalid("base_shift must be 0 or 1"));
    }
    let shifts: Vec<u64> = (1..=n).map(|k| k - 1 + base_shift as u64).collect();
    combine_with_shifts(n, levels, &shifts)
}

/// `∪_{n=1..N} (Λ_n + j_n)` for a permutation `j` of `1..=N` and prime `N`.
pub fn prime_permuted_combine(n: u64, levels: &[Spectrum], j: &[u64]) -> Result<Spectrum> {
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let mut sorted = j.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=n).collect::<Vec<_>>() {
        return Err(Error::NotPermutation(n as usize));
    }
    if levels.len() as u64 != n {
        return Err(Error::invalid(format!("expected {n} levels, got {}", levels.len())));
    }
    combine_with_shifts(n, levels, j)
}

fn combine_with_shifts(n: u64, levels: &[Spectrum], shifts: &[u64]) -> Result<Spectrum> {
    let mut out = Spectrum::empty();
    for (idx, (level, &s)) in levels.iter().zip(shifts).enumerate() {
        check_level(n, idx + 1, level)?;
        if !level.is_empty() {
            out = out.union(&level.shift_int(s as i64));
        }
    }
    out.window_numerators(COMBINE_CHECK_WINDOW)?;
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelInfo {
    pub level: u64,
    pub a_set: IntervalSet,
    pub spectrum: Spectrum,
    /// 1-based interval index the level is attached to.
    pub associated_interval: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Plan {
    #[serde(rename = "N")]
    pub n: u64,
    pub a: Vec<Endpoint>,
    pub b: Vec<Endpoint>,
    #[serde(rename = "S")]
    pub s: IntervalSet,
    pub per_level: Vec<LevelInfo>,
    #[serde(rename = "K_ell")]
    pub k_ell: Vec<u64>,
    #[serde(rename = "K")]
    pub k: u64,
    /// `{N b_ℓ} - {N a_ℓ}`.
    pub beta: Vec<Endpoint>,
    pub lambda_ell: Vec<Spectrum>,
    pub generator: String,
    #[serde(default)]
    pub candidates_scanned: Option<u64>,
}

impl Theorem1Plan {
    pub fn num_intervals(&self) -> usize {
        self.a.len()
    }

    /// `∪_ℓ Λ_ℓ`.
    pub fn union_spectrum(&self) -> Spectrum {
        Spectrum::union_all(&self.lambda_ell)
    }

    /// `∪_n (Λ^(n) + n)` from the level table.
    pub fn level_union(&self) -> Result<Spectrum> {
        let levels: Vec<Spectrum> = self.per_level.iter().map(|l| l.spectrum.clone()).collect();
        lemma2_combine(self.n, &levels, 1)
    }

    /// Intervals `[a_ℓ, b_ℓ)` for `ℓ ∈ J` (1-based).
    pub fn subset_set(&self, j: &[usize]) -> Result<IntervalSet> {
        IntervalSet::from_pairs(j.iter().map(|&l| (self.a[l - 1].clone(), self.b[l - 1].clone())).collect())
    }

    /// First level of the block of full cells attached to interval `ℓ` (1-based).
    fn block_start(&self, l: usize) -> u64 {
        self.k_ell[..l - 1].iter().sum::<u64>() + 1
    }

    /// Window check: the `Λ_ℓ` are disjoint and their union equals the level union.
    pub fn check_ledger(&self, window: f64) -> Result<()> {
        let union = self.union_spectrum().window_numerators(window)?;
        let levels = self.level_union()?.window_numerators(window)?;
        if union != levels {
            return Err(Error::PatternMismatch("union of Λ_ℓ differs from the level union".into()));
        }
        Ok(())
    }
}

pub fn theorem1_construct(a: &[Endpoint], b: &[Endpoint], prime_limit: u64) -> Result<Theorem1Plan> {
    theorem1_construct_with(a, b, &PrimeSearchOptions::new(prime_limit), &AvdoninGenerator::default())
}

pub fn theorem1_construct_with(
    a: &[Endpoint],
    b: &[Endpoint],
    opts: &PrimeSearchOptions,
    generator: &dyn IntervalGenerator,
) -> Result<Theorem1Plan> {
    let found = find_ordering_prime_with(a, b, opts)?;
    let mut plan = theorem1_at_prime(a, b, found.n, generator)?;
    plan.candidates_scanned = Some(found.candidates_scanned);
    Ok(plan)
}

fn cell(n: u64) -> Result<IntervalSet> {
    IntervalSet::single(Endpoint::zero(), Endpoint::ratio(1, n as i64))
}

/// The construction at a fixed prime `N`, without the prime search.
pub fn theorem1_at_prime(a: &[Endpoint], b: &[Endpoint], n: u64, generator: &dyn IntervalGenerator) -> Result<Theorem1Plan> {
    validate_endpoints(a, b)?;
    if !is_prime(n) {
        return Err(Error::NotPrime(n));
    }
    let l = a.len();
    let ni = n as i64;
    let s = IntervalSet::from_pairs(a.iter().cloned().zip(b.iter().cloned()).collect())?;
    let mut k_ell = Vec::with_capacity(l);
    for (idx, (x, y)) in a.iter().zip(b).enumerate() {
        let k = y.mul_int(ni).floor()? - x.mul_int(ni).floor()?;
        if k < BigInt::one() {
            return Err(Error::DegenerateCoverage { interval: idx + 1, modulus: n });
        }
        k_ell.push(k.to_u64().ok_or_else(|| Error::invalid("cell count overflow"))?);
    }
    if ordering_witness(n, a, b)?.is_none() {
        return Err(Error::PatternMismatch(format!("fractional parts at N = {n} are not nested")));
    }
    let k: u64 = k_ell.iter().sum();
    if k + l as u64 > n {
        return Err(Error::PatternMismatch(format!("K + L = {} exceeds N = {n}", k + l as u64)));
    }
    let fa: Vec<Endpoint> = a.iter().map(|x| x.mul_int(ni).frac()).collect::<Result<_>>()?;
    let fb: Vec<Endpoint> = b.iter().map(|x| x.mul_int(ni).frac()).collect::<Result<_>>()?;
    let beta: Vec<Endpoint> = fa.iter().zip(&fb).map(|(x, y)| y.sub(x)).collect();

    let fc = fold_counts(n, &s)?;
    let full = cell(n)?;
    let mut per_level = Vec::with_capacity(n as usize);
    let mut lambda_ell = vec![Spectrum::empty(); l];
    let mut owner = 1usize;
    let mut block_end = k_ell[0];
    for level in 1..=n {
        let a_set = fc.at_least(level)?;
        let (expected, spectrum, assoc) = if level <= k {
            while level > block_end {
                owner += 1;
                block_end += k_ell[owner - 1];
            }
            (full.clone(), Spectrum::coset(n, 0), Some(owner))
        } else if level <= k + l as u64 {
            let idx = (level - k) as usize;
            let piece = IntervalSet::single(fa[idx - 1].div_int(ni), fb[idx - 1].div_int(ni))?;
            let sp = generator.generate(&beta[idx - 1].value())?.dilate(&BigRational::from_integer(n.into()))?;
            (piece, sp, Some(idx))
        } else {
            (IntervalSet::empty(), Spectrum::empty(), None)
        };
        if !a_set.set_eq(&expected)? {
            return Err(Error::PatternMismatch(format!("level {level} does not match the nested pattern")));
        }
        check_level(n, level as usize, &spectrum)?;
        if let Some(owner) = assoc {
            lambda_ell[owner - 1] = lambda_ell[owner - 1].union(&spectrum.shift_int(level as i64));
        }
        per_level.push(LevelInfo { level, a_set, spectrum, associated_interval: assoc });
    }
    Ok(Theorem1Plan {
        n,
        a: a.to_vec(),
        b: b.to_vec(),
        s,
        per_level,
        k_ell,
        k,
        beta,
        lambda_ell,
        generator: generator.name().to_string(),
        candidates_scanned: None,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaEntry {
    /// Position `n` in the Ω ordering (1-based).
    pub index: usize,
    pub shift: u64,
    /// Unshifted set; `E(base)` should serve `a_set`.
    pub base: Spectrum,
    pub a_set: IntervalSet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubsetPlan {
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(rename = "K_J")]
    pub k_j: u64,
    pub omega: Vec<OmegaEntry>,
    pub lambda_j: Spectrum,
    pub s_j: IntervalSet,
    /// Full permutation of `1..=N` used to reassemble `Λ^J`.
    pub permutation: Vec<u64>,
}

pub fn subset_spectrum(plan: &Theorem1Plan, j: &[usize]) -> Result<SubsetPlan> {
    subset_spectrum_in_window(plan, j, DEFAULT_WINDOW)
}

pub fn subset_spectrum_in_window(plan: &Theorem1Plan, j: &[usize], window: f64) -> Result<SubsetPlan> {
    if j.is_empty() {
        return Err(Error::EmptySubset);
    }
    let l = plan.num_intervals();
    let mut js = j.to_vec();
    js.sort_unstable();
    js.dedup();
    if js.len() != j.len() || js.iter().any(|&x| x == 0 || x > l) {
        return Err(Error::invalid(format!("J must list distinct indices in 1..={l}")));
    }
    let n = plan.n;
    let mut omega = Vec::new();
    for &ell in &js {
        let start = plan.block_start(ell);
        for s in start..start + plan.k_ell[ell - 1] {
            omega.push(OmegaEntry { index: omega.len() + 1, shift: s, base: Spectrum::coset(n, 0), a_set: cell(n)? });
        }
    }
    let k_j = omega.len() as u64;
    for &ell in &js {
        let level = &plan.per_level[(plan.k + ell as u64 - 1) as usize];
        omega.push(OmegaEntry {
            index: omega.len() + 1,
            shift: plan.k + ell as u64,
            base: level.spectrum.clone(),
            a_set: level.a_set.clone(),
        });
    }
    let s_j = plan.subset_set(&js)?;
    let fc: FoldCounts = fold_counts(n, &s_j)?;
    for level in 1..=n {
        let recomputed = fc.at_least(level)?;
        let expected = match omega.get(level as usize - 1) {
            Some(entry) => entry.a_set.clone(),
            None => IntervalSet::empty(),
        };
        if !recomputed.set_eq(&expected)? {
            return Err(Error::PatternMismatch(format!("Ω_{level} does not serve A^J_≥{level}")));
        }
    }
    // Pad the shifts to a permutation and reassemble through the prime variant.
    let mut permutation: Vec<u64> = omega.iter().map(|e| e.shift).collect();
    let used = permutation.clone();
    permutation.extend((1..=n).filter(|s| !used.contains(s)));
    let mut levels: Vec<Spectrum> = omega.iter().map(|e| e.base.clone()).collect();
    levels.resize(n as usize, Spectrum::empty());
    let combined = prime_permuted_combine(n, &levels, &permutation)?;
    let lambda_j = Spectrum::union_all(js.iter().map(|&ell| &plan.lambda_ell[ell - 1]));
    if combined.window_numerators(window)? != lambda_j.window_numerators(window)? {
        return Err(Error::PatternMismatch("Ω reassembly differs from Λ^J".into()));
    }
    Ok(SubsetPlan { j: js, k_j, omega, lambda_j, s_j, permutation })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem2Case {
    /// `{a} ≤ {b}`: the fractional level is one piece.
    Aligned,
    /// `{b} < {a}`: the fractional level wraps around the cell.
    WrapAround,
    /// Two or more intervals.
    MultiInterval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem2Result {
    #[serde(rename = "N")]
    pub n: u64,
    pub a: Vec<Endpoint>,
    pub b: Vec<Endpoint>,
    /// `(1/N)([0,1) ∪ ⋃[a_ℓ,b_ℓ))`.
    pub folded_set: IntervalSet,
    /// `[0,1) ∪ ⋃[a_ℓ,b_ℓ)`.
    pub target_set: IntervalSet,
    #[serde(rename = "M")]
    pub m: u64,
    pub case: Theorem2Case,
    pub levels: Vec<LevelInfo>,
    pub lambda_prime: Spectrum,
    /// `ℤ ∪ Λ′`.
    pub lambda_full: Spectrum,
}

#[derive(Clone, Debug)]
pub struct Theorem2Options {
    /// Prime limit for nested hierarchical constructions.
    pub prime_limit: u64,
}

impl Default for Theorem2Options {
    fn default() -> Self {
        Theorem2Options { prime_limit: 100_000 }
    }
}

pub fn theorem2_complement(n: u64, a: &[Endpoint], b: &[Endpoint]) -> Result<Theorem2Result> {
    theorem2_complement_with(n, a, b, &Theorem2Options::default(), &AvdoninGenerator::default())
}

pub fn theorem2_complement_with(
    n: u64,
    a: &[Endpoint],
    b: &[Endpoint],
    opts: &Theorem2Options,
    generator: &dyn IntervalGenerator,
) -> Result<Theorem2Result> {
    if n < 2 || a.is_empty() || a.len() != b.len() {
        return Err(Error::invalid("need N ≥ 2 and L ≥ 1 intervals"));
    }
    let ni = n as i64;
    let mut prev = Endpoint::one();
    for (idx, (x, y)) in a.iter().zip(b).enumerate() {
        let ok_left = if idx == 0 { prev.try_le(x)? } else { prev.try_lt(x)? };
        if !ok_left || !x.try_lt(y)? {
            return Err(Error::invalid("endpoints must satisfy 1 ≤ a_1 < b_1 < ... < a_L < b_L ≤ N"));
        }
        prev = y.clone();
    }
    if Endpoint::from_integer(ni).try_lt(&prev)? {
        return Err(Error::invalid("endpoints must satisfy b_L ≤ N"));
    }
    let mut pairs = vec![(Endpoint::zero(), Endpoint::one())];
    pairs.extend(a.iter().cloned().zip(b.iter().cloned()));
    let target_set = IntervalSet::from_pairs(pairs)?;
    let inv_n = BigRational::new(BigInt::one(), n.into());
    let folded_set = target_set.scale(&inv_n);
    let fc = fold_counts(n, &folded_set)?;
    let full = cell(n)?;

    let mut level_spectra = Vec::with_capacity(n as usize);
    let mut level_sets = Vec::with_capacity(n as usize);
    let mut m = 0u64;
    for level in 1..=n {
        let set = fc.at_least(level)?;
        if set.set_eq(&full)? {
            m = level;
        }
        level_sets.push(set);
    }
    let case;
    if a.len() == 1 {
        let fa = a[0].frac()?;
        let fb = b[0].frac()?;
        case = if fa.try_le(&fb)? { Theorem2Case::Aligned } else { Theorem2Case::WrapAround };
        for (idx, set) in level_sets.iter().enumerate() {
            let level = idx as u64 + 1;
            let spectrum = if level <= m {
                Spectrum::coset(n, 0)
            } else if level == m + 1 && !set.is_empty() {
                let (expected, beta) = match case {
                    Theorem2Case::Aligned => (IntervalSet::single(fa.div_int(ni), fb.div_int(ni))?, fb.sub(&fa)),
                    _ => (
                        IntervalSet::from_pairs(vec![
                            (Endpoint::zero(), fb.div_int(ni)),
                            (fa.div_int(ni), Endpoint::ratio(1, ni)),
                        ])?,
                        Endpoint::one().add(&fb).sub(&fa),
                    ),
                };
                if !set.set_eq(&expected)? {
                    return Err(Error::PatternMismatch(format!("level {level} is not the expected fractional piece")));
                }
                // E(Nℤ) is 1/N-periodic, so a wrapped piece is served like the
                // contiguous arc of the same length.
                generator.generate(&beta.value())?.dilate(&BigRational::from_integer(n.into()))?
            } else {
                if !set.is_empty() {
                    return Err(Error::PatternMismatch(format!("level {level} should be empty")));
                }
                Spectrum::empty()
            };
            level_spectra.push(spectrum);
        }
    } else {
        case = Theorem2Case::MultiInterval;
        for (idx, set) in level_sets.iter().enumerate() {
            let level = idx + 1;
            let spectrum = if set.is_empty() {
                Spectrum::empty()
            } else if level as u64 <= m {
                Spectrum::coset(n, 0)
            } else {
                level_spectrum_general(n, level, set, opts)?
            };
            level_spectra.push(spectrum);
        }
    }
    if m == 0 {
        return Err(Error::PatternMismatch("the first level must be the whole cell".into()));
    }
    let full_spectrum = lemma2_combine(n, &level_spectra, 0)?;
    let mut upper = level_spectra.clone();
    upper[0] = Spectrum::empty();
    let lambda_prime = lemma2_combine(n, &upper, 0)?.dilate(&inv_n)?;
    let lambda_full = full_spectrum.dilate(&inv_n)?;
    assert_off_integers(&lambda_prime)?;
    let levels = level_sets
        .into_iter()
        .zip(level_spectra)
        .enumerate()
        .map(|(idx, (a_set, spectrum))| LevelInfo { level: idx as u64 + 1, a_set, spectrum, associated_interval: None })
        .collect();
    Ok(Theorem2Result { n, a: a.to_vec(), b: b.to_vec(), folded_set, target_set, m, case, levels, lambda_prime, lambda_full })
}

/// Structural check that no element of `Λ` is an integer, with a window fallback.
fn assert_off_integers(spectrum: &Spectrum) -> Result<()> {
    let den = spectrum.den();
    let structural = spectrum.terms().iter().all(|t| t.modulus % den == 0 && t.offset % den != 0);
    if structural {
        return Ok(());
    }
    if spectrum.window_numerators(DEFAULT_WINDOW)?.iter().any(|k| k.rem_euclid(den as i64) == 0) {
        return Err(Error::PatternMismatch("Λ′ meets ℤ".into()));
    }
    Ok(())
}

/// Spectrum `⊂ Nℤ` for a level set `A ⊆ [0, 1/N)` of a multi-interval instance.
fn level_spectrum_general(n: u64, level: usize, set: &IntervalSet, opts: &Theorem2Options) -> Result<Spectrum> {
    let scale_up = BigRational::from_integer(n.into());
    let u = set.scale(&scale_up);
    let endpoints = u.endpoints();
    if endpoints.iter().all(Endpoint::is_exact) {
        let q = endpoints.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.rational_part().denom()));
        let q = q.to_u64().filter(|&q| q <= 1 << 20).ok_or_else(|| Error::UnsupportedASet {
            level,
            reason: "grid denominator too large".into(),
        })?;
        let mut cells = Vec::new();
        for k in 0..q {
            let c = IntervalSet::single(Endpoint::ratio(k as i64, q as i64), Endpoint::ratio(k as i64 + 1, q as i64))?;
            if c.is_subset(&u)? {
                cells.push(k);
            }
        }
        return rational_grid_spectrum(q, &cells)?.dilate(&scale_up);
    }
    // Rotate so that the set avoids 0, then build a hierarchical spectrum for it.
    let r = rotation_point(&u).map_err(|e| Error::UnsupportedASet { level, reason: e.to_string() })?;
    let rotated = u.rotate(&r)?;
    let (a, b): (Vec<Endpoint>, Vec<Endpoint>) = rotated.intervals().iter().map(|iv| (iv.left.clone(), iv.right.clone())).unzip();
    let plan = theorem1_construct(&a, &b, opts.prime_limit)
        .map_err(|e| Error::UnsupportedASet { level, reason: e.to_string() })?;
    plan.union_spectrum().dilate(&scale_up)
}

/// A dyadic point inside the widest gap of `u` on the circle `[0,1)`.
fn rotation_point(u: &IntervalSet) -> Result<Endpoint> {
    let ivs = u.intervals();
    let first = ivs.first().ok_or_else(|| Error::invalid("empty set"))?;
    let last = ivs.last().expect("nonempty");
    let mut gaps: Vec<(Endpoint, Endpoint)> = ivs.windows(2).map(|w| (w[0].right.clone(), w[1].left.clone())).collect();
    gaps.push((last.right.clone(), first.left.add(&Endpoint::one())));
    let mut best: Option<(f64, &(Endpoint, Endpoint))> = None;
    for g in &gaps {
        let width = g.1.sub(&g.0).to_f64();
        if best.map_or(true, |(w, _)| width > w) {
            best = Some((width, g));
        }
    }
    let (width, (lo, hi)) = best.expect("at least one gap");
    if width <= 0.0 {
        return Err(Error::invalid("set covers the whole circle"));
    }
    let mid = round_to_bits(&lo.add(hi).div_int(2).value(), 64);
    let r = Endpoint::rational(mid);
    if !(lo.try_lt(&r)? && r.try_lt(hi)?) {
        return Err(Error::invalid("no rational rotation point found"));
    }
    let one = Endpoint::one();
    Ok(if one.try_le(&r)? { r.sub(&one) } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::DEFAULT_PRECISION_BITS;

    fn sq(n: u64) -> Endpoint {
        Endpoint::sqrt(n, DEFAULT_PRECISION_BITS)
    }

    #[test]
    fn consecutive_shift_examples() {
        let s = lemma2_combine(3, &[Spectrum::coset(3, 0), Spectrum::coset(3, 0), Spectrum::empty()], 1).unwrap();
        assert_eq!(s, Spectrum::coset(3, 1).union(&Spectrum::coset(3, 2)));
        assert_eq!(lemma2_combine(1, &[Spectrum::integers()], 0).unwrap(), Spectrum::integers());
        let z = lemma2_combine(2, &[Spectrum::coset(2, 0), Spectrum::coset(2, 0)], 1).unwrap();
        assert_eq!(z.window_numerators(5.0).unwrap(), (-5..=5).collect::<Vec<_>>());
        assert!(matches!(
            lemma2_combine(2, &[Spectrum::integers(), Spectrum::empty()], 1),
            Err(Error::LevelNotInNZ { level: 1, modulus: 2 })
        ));
    }

    #[test]
    fn permuted_examples() {
        let five = || Spectrum::coset(5, 0);
        let levels = vec![five(), five(), Spectrum::empty(), Spectrum::empty(), Spectrum::empty()];
        let s = prime_permuted_combine(5, &levels, &[3, 1, 2, 4, 5]).unwrap();
        assert_eq!(s.window_numerators(20.0).unwrap(), Spectrum::coset(5, 3).union(&Spectrum::coset(5, 1)).window_numerators(20.0).unwrap());
        let id = prime_permuted_combine(5, &levels, &[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(id, lemma2_combine(5, &levels, 1).unwrap());
        assert!(matches!(prime_permuted_combine(4, &levels[..4], &[1, 2, 3, 4]), Err(Error::NotPrime(4))));
        assert!(matches!(prime_permuted_combine(5, &levels, &[1, 1, 2, 4, 5]), Err(Error::NotPermutation(5))));
    }

    #[test]
    fn theorem1_single_interval() {
        let a = [sq(2).sub(&Endpoint::one())];
        let b = [sq(3).sub(&Endpoint::one())];
        let plan = theorem1_construct(&a, &b, 100).unwrap();
        assert_eq!(plan.n, 5);
        assert_eq!(plan.k, 1);
        assert_eq!(plan.k_ell, vec![1]);
        assert!((plan.beta[0].to_f64() - 0.589_186).abs() < 1e-5);
        assert_eq!(plan.per_level[0].a_set, cell(5).unwrap());
        assert!(plan.per_level[2].a_set.is_empty());
        plan.check_ledger(512.0).unwrap();
        let nums = plan.lambda_ell[0].window_numerators(20.0).unwrap();
        assert!(nums.iter().all(|k| matches!(k.rem_euclid(5), 1 | 2)));
    }

    #[test]
    fn degenerate_and_invalid_inputs() {
        let a = [Endpoint::ratio(41, 100)];
        let b = [Endpoint::ratio(45, 100)];
        assert!(matches!(
            theorem1_at_prime(&a, &b, 5, &AvdoninGenerator::default()),
            Err(Error::DegenerateCoverage { interval: 1, modulus: 5 })
        ));
        assert!(matches!(theorem1_construct(&b, &a, 100), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn subset_full_reproduces_union() {
        let a = [sq(2).sub(&Endpoint::one())];
        let b = [sq(3).sub(&Endpoint::one())];
        let plan = theorem1_construct(&a, &b, 100).unwrap();
        let sub = subset_spectrum(&plan, &[1]).unwrap();
        assert_eq!(sub.k_j, 1);
        assert_eq!(sub.omega.len(), 2);
        assert_eq!(sub.lambda_j.window_numerators(300.0).unwrap(), plan.union_spectrum().window_numerators(300.0).unwrap());
        assert!(matches!(subset_spectrum(&plan, &[]), Err(Error::EmptySubset)));
    }

    #[test]
    fn theorem2_grid_case() {
        let r = theorem2_complement(2, &[Endpoint::one()], &[Endpoint::from_integer(2)]).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.lambda_prime.enumerate(1.0).unwrap(), vec![-0.5, 0.5]);
        assert_eq!(r.lambda_full.window_numerators(2.0).unwrap(), (-4..=4).collect::<Vec<_>>());
        assert!(theorem2_complement(2, &[Endpoint::ratio(1, 2)], &[Endpoint::one()]).is_err());
    }

    #[test]
    fn theorem2_irrational_case() {
        let s = sq(2).div_int(2);
        let r = theorem2_complement(2, &[Endpoint::one()], &[Endpoint::one().add(&s)]).unwrap();
        assert_eq!(r.m, 1);
        assert_eq!(r.case, Theorem2Case::Aligned);
        let nums = r.lambda_prime.window_numerators(50.0).unwrap();
        assert!(nums.iter().all(|k| k.rem_euclid(2) == 1));
    }

    #[test]
    fn theorem2_wrap_case() {
        // [1.7, 2.2) at N = 3: {a} = 0.7 > {b} = 0.2.
        let r = theorem2_complement(3, &[Endpoint::ratio(17, 10)], &[Endpoint::ratio(22, 10)]).unwrap();
        assert_eq!(r.case, Theorem2Case::WrapAround);
        assert_eq!(r.m, 1);
        assert!(r.lambda_prime.window_numerators(30.0).unwrap().iter().all(|k| k.rem_euclid(3) != 0));
        assert_eq!(r.lambda_full.density(), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn theorem2_multi_interval_grid() {
        let r = theorem2_complement(
            3,
            &[Endpoint::one(), Endpoint::from_integer(2)],
            &[Endpoint::ratio(3, 2), Endpoint::ratio(5, 2)],
        )
        .unwrap();
        assert_eq!(r.case, Theorem2Case::MultiInterval);
        assert_eq!(r.lambda_full.density(), BigRational::from_integer(2.into()));
        r.lambda_full.window_numerators(100.0).unwrap();
    }
}
