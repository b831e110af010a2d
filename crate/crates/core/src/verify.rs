//! Finite-section certification: Gram bounds, density residuals, the finite
//! frame/Riesz duality and an empirical probe of the folding inequality.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dft_minor::c_prime_bound;
use crate::error::{Error, Result};
use crate::interval::{fiber_pieces, IntervalSet};
use crate::linalg::{extreme_eigenvalues, hermitian_eigenvalues, unit_root, CMat, Solver};
use crate::spectrum::Spectrum;

pub const DEFAULT_LOWER_FLOOR: f64 = 1e-3;
pub const DEFAULT_DECAY_FLOOR: f64 = 1e-4;
pub const DEFAULT_MAX_DROP: f64 = 0.10;
pub const DEFAULT_DENSITY_C0: f64 = 4.0;
pub const DEFAULT_SCHEDULE: [f64; 4] = [256.0, 512.0, 1024.0, 2048.0];
pub const DEFAULT_PROBE_WINDOW: f64 = 8192.0;
pub const TRUNCATION_LIMIT: f64 = 0.01;

/// `e^{2πi k x / den}` evaluated from the exact fractional part of `k x / den`.
struct PhaseTable {
    num: BigInt,
    den: BigInt,
}

impl PhaseTable {
    fn new(x: &num_rational::BigRational, den: u64) -> Self {
        let q = x / BigInt::from(den);
        PhaseTable { num: q.numer().clone(), den: q.denom().clone() }
    }

    fn at(&self, k: i64) -> Complex64 {
        let r = (&self.num * BigInt::from(k)).mod_floor(&self.den);
        let t = crate::interval::rational_to_f64(&num_rational::BigRational::new(r, self.den.clone()));
        let theta = 2.0 * PI * t;
        Complex64::new(theta.cos(), theta.sin())
    }
}

/// `g(k) = ∫_S e^{2πi k x / den} dx` for `k = 0..=max_k`.
fn gram_symbol(s: &IntervalSet, den: u64, max_k: i64) -> Vec<Complex64> {
    let tables: Vec<(PhaseTable, PhaseTable)> = s
        .intervals()
        .iter()
        .map(|iv| (PhaseTable::new(&iv.left.value(), den), PhaseTable::new(&iv.right.value(), den)))
        .collect();
    let measure = s.measure().to_f64();
    (0..=max_k)
        .into_par_iter()
        .map(|k| {
            if k == 0 {
                return Complex64::new(measure, 0.0);
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in &tables {
                acc += b.at(k) - a.at(k);
            }
            acc / Complex64::new(0.0, 2.0 * PI * k as f64 / den as f64)
        })
        .collect()
}

fn gram_from_numerators(nums: &[i64], symbol: &[Complex64]) -> CMat {
    let n = nums.len();
    CMat::from_fn(n, n, |i, j| {
        let d = nums[i] - nums[j];
        let g = symbol[d.unsigned_abs() as usize];
        if d >= 0 {
            g
        } else {
            g.conj()
        }
    })
}

/// Gram matrix `⟨e_λ, e_μ⟩_{L²(S)}` over the frequencies of `Λ` in `[-T, T]`,
/// ordered increasingly.
pub fn gram_matrix(spectrum: &Spectrum, s: &IntervalSet, window: f64) -> Result<CMat> {
    let nums = spectrum.window_numerators(window)?;
    if nums.is_empty() {
        return Err(Error::EmptyWindow(window));
    }
    let span = nums[nums.len() - 1] - nums[0];
    let symbol = gram_symbol(s, spectrum.den(), span);
    Ok(gram_from_numerators(&nums, &symbol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    FailTrend,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    #[serde(rename = "T")]
    pub window: f64,
    pub count: usize,
    pub lower: f64,
    pub upper: f64,
    pub solver: Solver,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramReport {
    #[serde(rename = "T")]
    pub window: f64,
    pub count: usize,
    pub lower_est: f64,
    pub upper_est: f64,
    pub history: Vec<HistoryEntry>,
    /// Relative drop of the lower estimate over the last doubling.
    pub last_drop: Option<f64>,
    /// Least-squares slope of `log Â` against `log T`.
    pub decay_slope: Option<f64>,
    pub below_floor: bool,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct BoundsOptions {
    pub lower_floor: f64,
    pub decay_floor: f64,
    pub max_drop: f64,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        BoundsOptions { lower_floor: DEFAULT_LOWER_FLOOR, decay_floor: DEFAULT_DECAY_FLOOR, max_drop: DEFAULT_MAX_DROP }
    }
}

pub fn riesz_bounds_estimate(spectrum: &Spectrum, s: &IntervalSet, schedule: &[f64]) -> Result<GramReport> {
    riesz_bounds_estimate_with(spectrum, s, schedule, &BoundsOptions::default())
}

pub fn riesz_bounds_estimate_with(
    spectrum: &Spectrum,
    s: &IntervalSet,
    schedule: &[f64],
    opts: &BoundsOptions,
) -> Result<GramReport> {
    if schedule.is_empty() || schedule.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::invalid("schedule must be nonempty and strictly increasing"));
    }
    let t_max = *schedule.last().expect("nonempty");
    let nums = spectrum.window_numerators(t_max)?;
    let span = if nums.is_empty() { 0 } else { nums[nums.len() - 1] - nums[0] };
    let symbol = gram_symbol(s, spectrum.den(), span);
    let history = schedule
        .par_iter()
        .map(|&t| {
            let b = spectrum.numerator_bound(t);
            let lo = nums.partition_point(|&k| k < -b);
            let hi = nums.partition_point(|&k| k <= b);
            if lo == hi {
                return Err(Error::EmptyWindow(t));
            }
            let g = gram_from_numerators(&nums[lo..hi], &symbol);
            let (lower, upper, solver) = extreme_eigenvalues(g.as_ref())?;
            Ok(HistoryEntry { window: t, count: hi - lo, lower, upper, solver })
        })
        .collect::<Result<Vec<_>>>()?;
    let last = history.last().expect("nonempty");
    let last_drop = (history.len() >= 2).then(|| {
        let prev = history[history.len() - 2].lower;
        if prev > 0.0 {
            (prev - last.lower) / prev
        } else {
            0.0
        }
    });
    let decay_slope = fit_slope(&history);
    let below_floor = last.lower < opts.decay_floor;
    let pass = last.lower >= opts.lower_floor && last_drop.map_or(true, |d| d < opts.max_drop);
    Ok(GramReport {
        window: last.window,
        count: last.count,
        lower_est: last.lower,
        upper_est: last.upper,
        history: history.clone(),
        last_drop,
        decay_slope,
        below_floor,
        verdict: if pass { Verdict::Pass } else { Verdict::FailTrend },
    })
}

fn fit_slope(history: &[HistoryEntry]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = history
        .iter()
        .map(|h| (h.window.ln(), h.lower.max(f64::MIN_POSITIVE).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityRow {
    #[serde(rename = "T")]
    pub window: f64,
    pub count: usize,
    pub expected: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub c0: f64,
    pub rows: Vec<DensityRow>,
    pub pass: bool,
}

pub fn density_check(spectrum: &Spectrum, s: &IntervalSet, windows: &[f64]) -> Result<DensityReport> {
    density_check_with(spectrum, s, windows, DEFAULT_DENSITY_C0)
}

/// `r(T) = #(Λ ∩ [-T, T]) - 2T |S|`.
pub fn density_check_with(spectrum: &Spectrum, s: &IntervalSet, windows: &[f64], c0: f64) -> Result<DensityReport> {
    let measure = s.measure().to_f64();
    let rows = windows
        .iter()
        .map(|&t| {
            let count = spectrum.window_numerators(t)?.len();
            let expected = 2.0 * t * measure;
            Ok(DensityRow { window: t, count, expected, residual: count as f64 - expected })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.residual.abs() <= c0);
    Ok(DensityReport { c0, rows, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub alpha_frame: f64,
    pub alpha_riesz: f64,
}

fn check_subset(n: usize, xs: &[usize], name: &str) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &x in xs {
        if x >= n {
            return Err(Error::InvalidSubset(format!("{name} contains {x}, outside 0..{n}")));
        }
        if std::mem::replace(&mut mask[x], true) {
            return Err(Error::InvalidSubset(format!("{name} repeats {x}")));
        }
    }
    Ok(mask)
}

/// Smallest eigenvalue of `A A*` (`rows_first`) or `A* A`, where `A` is the
/// DFT block with the given rows and columns.
fn dft_block_lower(n: usize, rows: &[usize], cols: &[usize], rows_first: bool) -> Result<f64> {
    let scale = 1.0 / n as f64;
    let entry = |r: usize, c: usize| unit_root((r * c) as i64, n as u64);
    let (outer, inner) = if rows_first { (rows, cols) } else { (cols, rows) };
    let m = CMat::from_fn(outer.len(), outer.len(), |i, j| {
        let mut acc = Complex64::new(0.0, 0.0);
        for &k in inner {
            let (x, y) = if rows_first { (entry(outer[i], k), entry(outer[j], k)) } else { (entry(k, outer[i]), entry(k, outer[j])) };
            acc += if rows_first { x * y.conj() } else { x.conj() * y };
        }
        acc * scale
    });
    Ok(hermitian_eigenvalues(m.as_ref())?.first().copied().unwrap_or(0.0).max(0.0))
}

/// Lower frame bound of `{P e_n}_{n∈J}` in `M` and lower Riesz bound of
/// `{(I-P) e_n}_{n∉J}` in `M^⊥`, for the DFT basis of `ℂ^N` and the coordinate
/// projection `P` onto `M_dim`.
pub fn duality_finite_test(n: usize, j: &[usize], m_dim: &[usize]) -> Result<DualityReport> {
    if n == 0 {
        return Err(Error::InvalidSubset("dimension must be positive".into()));
    }
    let jm = check_subset(n, j, "J")?;
    let mm = check_subset(n, m_dim, "M_dim")?;
    if m_dim.is_empty() || m_dim.len() == n {
        return Err(Error::InvalidSubset("M_dim must be a nonempty proper subset".into()));
    }
    let j_in: Vec<usize> = (0..n).filter(|&k| jm[k]).collect();
    let j_out: Vec<usize> = (0..n).filter(|&k| !jm[k]).collect();
    let m_in: Vec<usize> = (0..n).filter(|&k| mm[k]).collect();
    let m_out: Vec<usize> = (0..n).filter(|&k| !mm[k]).collect();
    // Frame operator on M: rows are coordinates of M, columns the vectors in J.
    let alpha_frame = if j_in.len() == n { 1.0 } else { dft_block_lower(n, &m_in, &j_in, true)? };
    let alpha_riesz = if j_out.is_empty() { 1.0 } else { dft_block_lower(n, &m_out, &j_out, false)? };
    Ok(DualityReport { alpha_frame, alpha_riesz })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldingReport {
    pub empirical_c: f64,
    /// Normalized lower frame estimates of the level spectra; `null` for empty levels.
    pub per_level_alpha: Vec<Option<f64>>,
    pub sigma_min_used: f64,
    pub trials: usize,
    pub samples: usize,
    pub skipped: usize,
    #[serde(rename = "T")]
    pub window: f64,
    /// Largest ratio of the truncated tail to the captured energy.
    pub truncation_tail: f64,
    pub truncation_warning: bool,
    /// Smallest captured fraction of `‖f_{≥n}‖²` over all of `ℤ` (Parseval control).
    pub full_fiber_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct FoldingOptions {
    pub window: f64,
    /// Every cell piece is split into this many equal subpieces.
    pub refine: usize,
}

impl Default for FoldingOptions {
    fn default() -> Self {
        FoldingOptions { window: DEFAULT_PROBE_WINDOW, refine: 2 }
    }
}

/// Piece `[left, right)` of the cell `[0, 1/N)` with the translates hitting `S`.
#[derive(Clone, Debug)]
struct ProbePiece {
    left: f64,
    right: f64,
    hits: Vec<u64>,
}

/// Precomputed data for evaluating the folding ratios of piecewise-constant functions.
pub struct FoldingSetup {
    n: u64,
    pieces: Vec<ProbePiece>,
    /// `∫_piece e^{-2πiλt} dt` for every `λ` in the window; index `λ + bound`.
    integrals: Vec<Vec<Complex64>>,
    bound: i64,
    /// For each level, the window indices of `Λ_ℓ + j_ℓ`.
    level_members: Vec<Vec<usize>>,
    shifts: Vec<u64>,
    window: f64,
}

/// Ratios for one test function at one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FoldingSample {
    pub level: u64,
    /// `Σ_{λ∈Λ} |⟨f_{≥n}, e_λ⟩|² / ‖f_n‖²`.
    pub ratio: f64,
    /// `N Σ_{λ∈Λ_ℓ+j_ℓ} |⟨h_{n,ℓ}, e_λ⟩|² / ‖h_{n,ℓ}‖²` for `ℓ ≤ n`.
    pub level_alpha: Vec<Option<f64>>,
    pub tail: f64,
    pub full_ratio: f64,
}

impl FoldingSetup {
    pub fn new(n: u64, s: &IntervalSet, levels: &[Spectrum], j: &[u64], opts: &FoldingOptions) -> Result<Self> {
        if levels.len() as u64 != n || j.len() as u64 != n {
            return Err(Error::invalid(format!("expected {n} levels and {n} shifts")));
        }
        let mut sorted = j.to_vec();
        sorted.sort_unstable();
        if sorted != (1..=n).collect::<Vec<_>>() {
            return Err(Error::NotPermutation(n as usize));
        }
        if opts.refine == 0 || !(opts.window >= 1.0) {
            return Err(Error::invalid("refine must be positive and the window at least 1"));
        }
        let mut pieces = Vec::new();
        for p in fiber_pieces(n, s)? {
            if p.hits.is_empty() {
                continue;
            }
            let (l, r) = (p.left.to_f64(), p.right.to_f64());
            for k in 0..opts.refine {
                let a = l + (r - l) * k as f64 / opts.refine as f64;
                let b = l + (r - l) * (k + 1) as f64 / opts.refine as f64;
                pieces.push(ProbePiece { left: a, right: b, hits: p.hits.clone() });
            }
        }
        let bound = opts.window.floor() as i64;
        let integrals = pieces
            .par_iter()
            .map(|p| {
                (-bound..=bound)
                    .map(|lam| {
                        if lam == 0 {
                            return Complex64::new(p.right - p.left, 0.0);
                        }
                        let e = |x: f64| {
                            let th = -2.0 * PI * (lam as f64 * x).fract();
                            Complex64::new(th.cos(), th.sin())
                        };
                        (e(p.right) - e(p.left)) / Complex64::new(0.0, -2.0 * PI * lam as f64)
                    })
                    .collect()
            })
            .collect();
        let mut level_members = Vec::with_capacity(levels.len());
        for (idx, (level, &shift)) in levels.iter().zip(j).enumerate() {
            if level.is_empty() {
                level_members.push(Vec::new());
                continue;
            }
            if level.den() != 1 || !level.within_multiples_of(n, opts.window)? {
                return Err(Error::LevelNotInNZ { level: idx + 1, modulus: n });
            }
            let nums = level.shift_int(shift as i64).window_numerators(opts.window)?;
            level_members.push(nums.into_iter().map(|k| (k + bound) as usize).collect());
        }
        Ok(FoldingSetup { n, pieces, integrals, bound, level_members, shifts: j.to_vec(), window: opts.window })
    }

    pub fn num_pieces(&self) -> usize {
        self.pieces.len()
    }

    /// Number of translates hitting `S` above each piece.
    pub fn piece_counts(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.hits.len()).collect()
    }

    /// Draws complex Gaussian values: one per piece and hit.
    pub fn random_values(&self, rng: &mut ChaCha8Rng) -> Vec<Vec<Complex64>> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        self.pieces
            .iter()
            .map(|p| {
                p.hits
                    .iter()
                    .map(|_| {
                        let x: f64 = StandardNormal.sample(rng);
                        let y: f64 = StandardNormal.sample(rng);
                        Complex64::new(x * r, y * r)
                    })
                    .collect()
            })
            .collect()
    }

    /// Ratios for every `n` with `‖f_n‖ > 0`.
    pub fn evaluate(&self, values: &[Vec<Complex64>]) -> Result<Vec<FoldingSample>> {
        if values.len() != self.pieces.len() || values.iter().zip(&self.pieces).any(|(v, p)| v.len() != p.hits.len()) {
            return Err(Error::invalid("value layout does not match the pieces"));
        }
        let n = self.n as usize;
        // F_p(r) = Σ_k v_{p,k} e^{-2πi r k/N}
        let folded: Vec<Vec<Complex64>> = values
            .iter()
            .zip(&self.pieces)
            .map(|(v, p)| {
                (0..n)
                    .map(|r| {
                        v.iter()
                            .zip(&p.hits)
                            .map(|(x, &k)| x * unit_root(-((r as u64 * k) as i64), self.n))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let width: Vec<f64> = self.pieces.iter().map(|p| p.right - p.left).collect();
        let energy: Vec<f64> = values.iter().map(|v| v.iter().map(|x| x.norm_sqr()).sum()).collect();
        let len = (2 * self.bound + 1) as usize;
        let mut out = Vec::new();
        for level in 1..=n {
            let active: Vec<usize> = (0..self.pieces.len()).filter(|&p| self.pieces[p].hits.len() >= level).collect();
            let f_n: f64 = active
                .iter()
                .filter(|&&p| self.pieces[p].hits.len() == level)
                .map(|&p| width[p] * energy[p])
                .sum();
            if f_n <= 0.0 {
                continue;
            }
            let f_geq: f64 = active.iter().map(|&p| width[p] * energy[p]).sum();
            let coeffs: Vec<f64> = (0..len)
                .map(|idx| {
                    let lam = idx as i64 - self.bound;
                    let r = lam.rem_euclid(n as i64) as usize;
                    let c: Complex64 = active.iter().map(|&p| self.integrals[p][idx] * folded[p][r]).sum();
                    c.norm_sqr()
                })
                .collect();
            let captured: f64 = coeffs.iter().sum();
            let on_lambda: f64 = self.level_members.iter().flatten().map(|&i| coeffs[i]).sum();
            let level_alpha = (1..=level)
                .map(|ell| {
                    let members = &self.level_members[ell - 1];
                    let r = (self.shifts[ell - 1] % self.n) as usize;
                    let h_norm: f64 = active.iter().map(|&p| width[p] * folded[p][r].norm_sqr()).sum();
                    if members.is_empty() || h_norm <= 0.0 {
                        return None;
                    }
                    let sum: f64 = members.iter().map(|&i| coeffs[i]).sum();
                    Some(self.n as f64 * sum / h_norm)
                })
                .collect();
            out.push(FoldingSample {
                level: level as u64,
                ratio: on_lambda / f_n,
                level_alpha,
                tail: ((f_geq - captured) / captured).max(0.0),
                full_ratio: captured / f_geq,
            });
        }
        Ok(out)
    }

    /// `c'` from the DFT minors selected by the fiber patterns and shifts.
    pub fn c_prime(&self) -> Result<f64> {
        let mut patterns: Vec<Vec<u64>> = self.pieces.iter().map(|p| p.hits.clone()).collect();
        patterns.sort();
        patterns.dedup();
        c_prime_bound(self.n, &self.shifts, &patterns)
    }
}

pub fn folding_probe(n: u64, s: &IntervalSet, levels: &[Spectrum], j: &[u64], trials: usize, seed: u64) -> Result<FoldingReport> {
    folding_probe_with(n, s, levels, j, trials, seed, &FoldingOptions::default())
}

pub fn folding_probe_with(
    n: u64,
    s: &IntervalSet,
    levels: &[Spectrum],
    j: &[u64],
    trials: usize,
    seed: u64,
    opts: &FoldingOptions,
) -> Result<FoldingReport> {
    if trials == 0 {
        return Err(Error::invalid("trials must be positive"));
    }
    let setup = FoldingSetup::new(n, s, levels, j, opts)?;
    if setup.num_pieces() == 0 {
        return Err(Error::invalid("S has measure zero"));
    }
    let samples: Vec<Vec<FoldingSample>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            setup.evaluate(&setup.random_values(&mut rng))
        })
        .collect::<Result<_>>()?;
    let flat: Vec<&FoldingSample> = samples.iter().flatten().collect();
    let skipped = trials * n as usize - flat.len();
    let empirical_c = flat.iter().map(|x| x.ratio).fold(f64::INFINITY, f64::min);
    let truncation_tail = flat.iter().map(|x| x.tail).fold(0.0, f64::max);
    let full_fiber_ratio = flat.iter().map(|x| x.full_ratio).fold(f64::INFINITY, f64::min);
    let mut per_level_alpha: Vec<Option<f64>> = vec![None; n as usize];
    for x in &flat {
        for (ell, a) in x.level_alpha.iter().enumerate() {
            if let Some(a) = a {
                let slot = &mut per_level_alpha[ell];
                *slot = Some(slot.map_or(*a, |b: f64| b.min(*a)));
            }
        }
    }
    let sigma_min_used = setup.c_prime()?.sqrt();
    Ok(FoldingReport {
        empirical_c: if empirical_c.is_finite() { empirical_c } else { 0.0 },
        per_level_alpha,
        sigma_min_used,
        trials,
        samples: flat.len(),
        skipped,
        window: setup.window,
        truncation_tail,
        truncation_warning: truncation_tail > TRUNCATION_LIMIT,
        full_fiber_ratio: if full_fiber_ratio.is_finite() { full_fiber_ratio } else { 0.0 },
    })
}

/// Checks that `Λ ∩ ℤ` is empty on a window, using exact numerators.
pub fn window_avoids_integers(spectrum: &Spectrum, window: f64) -> Result<bool> {
    let den = spectrum.den() as i64;
    Ok(spectrum.window_numerators(window)?.iter().all(|k| k.rem_euclid(den) != 0))
}

/// Phase `e^{2πi λ b}` for an exact frequency `λ = k/den` and endpoint value `b`.
pub fn frequency_phase(k: i64, den: u64, b: &num_rational::BigRational) -> Complex64 {
    PhaseTable::new(b, den).at(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> IntervalSet {
        IntervalSet::from_ratios(&[((0, 1), (1, 2))]).unwrap()
    }

    fn unit() -> IntervalSet {
        IntervalSet::from_ratios(&[((0, 1), (1, 1))]).unwrap()
    }

    #[test]
    fn integers_on_unit_interval_give_identity() {
        let g = gram_matrix(&Spectrum::integers(), &unit(), 8.0).unwrap();
        assert_eq!(g.nrows(), 17);
        for i in 0..17 {
            for j in 0..17 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn even_integers_on_half_interval() {
        let g = gram_matrix(&Spectrum::coset(2, 0), &half(), 8.0).unwrap();
        assert_eq!(g.nrows(), 9);
        for i in 0..9 {
            for j in 0..9 {
                let want = if i == j { 0.5 } else { 0.0 };
                assert!((g[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn integers_on_half_interval_closed_form() {
        let g = gram_matrix(&Spectrum::integers(), &half(), 8.0).unwrap();
        for i in 0..17 {
            for j in 0..17 {
                let k = i as f64 - j as f64;
                let want = if i == j {
                    Complex64::new(0.5, 0.0)
                } else {
                    (Complex64::new(0.0, PI * k).exp() - 1.0) / Complex64::new(0.0, 2.0 * PI * k)
                };
                assert!((g[(i, j)] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn empty_window_is_an_error() {
        let sp = Spectrum::coset(10, 5);
        assert!(matches!(gram_matrix(&sp, &unit(), 2.0), Err(Error::EmptyWindow(_))));
    }

    #[test]
    fn bounds_examples() {
        let r = riesz_bounds_estimate(&Spectrum::integers(), &unit(), &[16.0, 32.0, 64.0]).unwrap();
        assert!(r.history.iter().all(|h| (h.lower - 1.0).abs() < 1e-12 && (h.upper - 1.0).abs() < 1e-12));
        assert_eq!(r.verdict, Verdict::Pass);
        let r = riesz_bounds_estimate(&Spectrum::integers(), &half(), &[8.0, 16.0, 32.0]).unwrap();
        assert!(r.history.windows(2).all(|w| w[1].lower < w[0].lower));
        assert_eq!(r.verdict, Verdict::FailTrend);
        assert!(r.below_floor);
        assert!(riesz_bounds_estimate(&Spectrum::integers(), &half(), &[8.0, 8.0]).is_err());
    }

    #[test]
    fn density_examples() {
        let r = density_check(&Spectrum::integers(), &unit(), &[5.0, 10.0]).unwrap();
        assert!(r.rows.iter().all(|row| row.residual == 1.0));
        let r = density_check(&Spectrum::coset(2, 0), &half(), &[5.0, 10.0, 11.0]).unwrap();
        assert!(r.pass && r.rows.iter().all(|row| row.residual.abs() <= 1.0));
    }

    #[test]
    fn duality_examples() {
        let r = duality_finite_test(2, &[0], &[0]).unwrap();
        assert!((r.alpha_frame - 0.5).abs() < 1e-15 && (r.alpha_riesz - 0.5).abs() < 1e-15);
        let r = duality_finite_test(5, &[0, 1, 2, 3, 4], &[1, 3]).unwrap();
        assert_eq!((r.alpha_frame, r.alpha_riesz), (1.0, 1.0));
        assert!(matches!(duality_finite_test(4, &[0, 4], &[1]), Err(Error::InvalidSubset(_))));
        assert!(matches!(duality_finite_test(4, &[0], &[]), Err(Error::InvalidSubset(_))));
        assert!(matches!(duality_finite_test(2, &[0], &[0, 1]), Err(Error::InvalidSubset(_))));
    }

    #[test]
    fn folding_parseval_case() {
        let levels = vec![Spectrum::coset(3, 0); 3];
        let setup = FoldingSetup::new(3, &unit(), &levels, &[1, 2, 3], &FoldingOptions { window: 2048.0, refine: 1 }).unwrap();
        let values = vec![vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0), Complex64::new(-1.0, 0.5)]];
        let samples = setup.evaluate(&values).unwrap();
        assert_eq!(samples.len(), 1);
        assert_eq!(samples[0].level, 3);
        assert!(samples[0].ratio > 1.0 - 1e-2 && samples[0].ratio <= 1.0 + 1e-12);
        let zero = vec![vec![Complex64::new(0.0, 0.0); 3]];
        assert!(setup.evaluate(&zero).unwrap().is_empty());
    }
}
