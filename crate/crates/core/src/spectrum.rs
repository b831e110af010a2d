//! Frequency sets as finite unions of (filtered) arithmetic cosets.
//!
//! A [`Spectrum`] stores integer *numerators*; the frequency of numerator `k`
//! is `k / den`. Terms are cosets `mℤ + j` of numerators, optionally thinned
//! by the rounding generator `{m·(round(n/β) + phase) + j : n ∈ ℤ}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::format_rational;
use crate::json::ratstr;

/// Default window for set-level assertions on spectra.
pub const DEFAULT_WINDOW: f64 = 2048.0;

/// Default lower bound on the density accepted by the rounding generator.
pub fn default_beta_floor() -> BigRational {
    BigRational::new(1.into(), 64.into())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Filter {
    All,
    Avdonin {
        #[serde(with = "ratstr")]
        beta: BigRational,
        phase: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CosetTerm {
    pub modulus: u64,
    pub offset: u64,
    pub filter: Filter,
}

impl CosetTerm {
    pub fn all(modulus: u64, offset: i64) -> Self {
        assert!(modulus > 0);
        CosetTerm { modulus, offset: offset.rem_euclid(modulus as i64) as u64, filter: Filter::All }
    }

    /// Density of the term in numerator units.
    pub fn density(&self) -> BigRational {
        let m = BigRational::from_integer(self.modulus.into());
        match &self.filter {
            Filter::All => m.recip(),
            Filter::Avdonin { beta, .. } => beta / m,
        }
    }

    /// Sorted numerators of this term lying in `[lo, hi]`.
    pub fn numerators(&self, lo: i64, hi: i64) -> Result<Vec<i64>> {
        if lo > hi {
            return Ok(Vec::new());
        }
        let m = self.modulus as i64;
        let j = self.offset as i64;
        let rlo = Integer::div_ceil(&(lo - j), &m);
        let rhi = Integer::div_floor(&(hi - j), &m);
        match &self.filter {
            Filter::All => Ok((rlo..=rhi).map(|r| m * r + j).collect()),
            Filter::Avdonin { beta, phase } => {
                let (rlo, rhi) = (rlo - phase, rhi - phase);
                if rlo > rhi {
                    return Ok(Vec::new());
                }
                let b = beta.to_f64().ok_or_else(|| Error::invalid("beta out of range"))?;
                let nlo = ((rlo as f64 - 0.5) * b).floor() as i64 - 2;
                let nhi = ((rhi as f64 + 0.5) * b).ceil() as i64 + 2;
                let rounder = Rounder::new(beta);
                let mut out = Vec::new();
                for n in nlo..=nhi {
                    let r = rounder.round(n)?;
                    if r >= rlo && r <= rhi {
                        out.push(m * (r + phase) + j);
                    }
                }
                Ok(out)
            }
        }
    }

    fn scaled(&self, factor: u64) -> Self {
        CosetTerm { modulus: self.modulus * factor, offset: self.offset * factor, filter: self.filter.clone() }
    }

    fn shifted(&self, s: i64) -> Self {
        let m = self.modulus as i64;
        let (carry, offset) = (self.offset as i64 + s).div_mod_floor(&m);
        let filter = match &self.filter {
            Filter::All => Filter::All,
            Filter::Avdonin { beta, phase } => Filter::Avdonin { beta: beta.clone(), phase: phase + carry },
        };
        CosetTerm { modulus: self.modulus, offset: offset as u64, filter }
    }
}

/// Exact `round_half_up(n / β)` via `floor((2nP + Q) / 2Q)` where `1/β = P/Q`.
pub struct Rounder {
    p: BigInt,
    q: BigInt,
}

impl Rounder {
    pub fn new(beta: &BigRational) -> Self {
        let inv = beta.recip();
        Rounder { p: inv.numer().clone(), q: inv.denom().clone() }
    }

    pub fn round(&self, n: i64) -> Result<i64> {
        let num = BigInt::from(2 * n) * &self.p + &self.q;
        let den = BigInt::from(2) * &self.q;
        num.div_floor(&den).to_i64().ok_or_else(|| Error::ResourceLimit("frequency index overflow".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpectrumJson", into = "SpectrumJson")]
pub struct Spectrum {
    den: u64,
    terms: Vec<CosetTerm>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SpectrumJson {
    scale: String,
    terms: Vec<CosetTerm>,
}

impl From<Spectrum> for SpectrumJson {
    fn from(s: Spectrum) -> Self {
        SpectrumJson { scale: format!("1/{}", s.den), terms: s.terms }
    }
}

impl TryFrom<SpectrumJson> for Spectrum {
    type Error = Error;

    fn try_from(j: SpectrumJson) -> Result<Self> {
        let scale = crate::interval::parse_rational(&j.scale)?;
        if !scale.is_positive() {
            return Err(Error::invalid("spectrum scale must be positive"));
        }
        for t in &j.terms {
            if t.modulus == 0 || t.offset >= t.modulus {
                return Err(Error::invalid("coset terms need 0 ≤ offset < modulus"));
            }
            if let Filter::Avdonin { beta, .. } = &t.filter {
                if !beta.is_positive() || *beta > BigRational::one() {
                    return Err(Error::invalid("avdonin beta must lie in (0, 1]"));
                }
            }
        }
        let den = scale.denom().to_u64().ok_or_else(|| Error::invalid("scale denominator too large"))?;
        let p = scale.numer().to_u64().ok_or_else(|| Error::invalid("scale numerator too large"))?;
        let raw = Spectrum { den: 1, terms: j.terms };
        let scaled = Spectrum { den, terms: raw.terms.iter().map(|t| t.scaled(p)).collect() };
        Ok(scaled.reduced())
    }
}

impl Spectrum {
    pub fn empty() -> Self {
        Spectrum { den: 1, terms: Vec::new() }
    }

    pub fn integers() -> Self {
        Self::coset(1, 0)
    }

    /// Integer coset `mℤ + j`.
    pub fn coset(modulus: u64, offset: i64) -> Self {
        Spectrum { den: 1, terms: vec![CosetTerm::all(modulus, offset)] }
    }

    pub fn from_terms(den: u64, terms: Vec<CosetTerm>) -> Result<Self> {
        if den == 0 {
            return Err(Error::invalid("scale denominator must be positive"));
        }
        if terms.iter().any(|t| t.modulus == 0 || t.offset >= t.modulus) {
            return Err(Error::invalid("coset terms need 0 ≤ offset < modulus"));
        }
        Ok(Spectrum { den, terms })
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn scale(&self) -> BigRational {
        BigRational::new(BigInt::one(), self.den.into())
    }

    pub fn terms(&self) -> &[CosetTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Counting density `lim #(Λ ∩ [-T,T]) / 2T`.
    pub fn density(&self) -> BigRational {
        let sum = self.terms.iter().fold(BigRational::zero(), |acc, t| acc + t.density());
        sum * BigRational::from_integer(self.den.into())
    }

    fn reduced(mut self) -> Self {
        let mut g = self.den;
        for t in &self.terms {
            g = g.gcd(&t.modulus).gcd(&t.offset);
        }
        if g > 1 {
            self.den /= g;
            for t in &mut self.terms {
                t.modulus /= g;
                t.offset /= g;
            }
        }
        self
    }

    fn rescaled_to(&self, den: u64) -> Self {
        debug_assert_eq!(den % self.den, 0);
        let f = den / self.den;
        Spectrum { den, terms: self.terms.iter().map(|t| t.scaled(f)).collect() }
    }

    /// Formal union; overlaps surface when enumerating.
    pub fn union(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let mut terms = self.rescaled_to(den).terms;
        terms.extend(other.rescaled_to(den).terms);
        Spectrum { den, terms }.reduced()
    }

    pub fn union_all<'a>(items: impl IntoIterator<Item = &'a Spectrum>) -> Self {
        items.into_iter().fold(Spectrum::empty(), |acc, s| acc.union(s))
    }

    /// `c Λ` for a positive rational `c`.
    pub fn dilate(&self, c: &BigRational) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::invalid("dilation factor must be positive"));
        }
        let p = c.numer().to_u64().ok_or_else(|| Error::invalid("dilation numerator too large"))?;
        let q = c.denom().to_u64().ok_or_else(|| Error::invalid("dilation denominator too large"))?;
        let den = self.den.checked_mul(q).ok_or_else(|| Error::invalid("scale overflow"))?;
        Ok(Spectrum { den, terms: self.terms.iter().map(|t| t.scaled(p)).collect() }.reduced())
    }

    /// `Λ + a`; `a` must be a multiple of the scale.
    pub fn shift(&self, a: &BigRational) -> Result<Self> {
        let s = a * BigRational::from_integer(self.den.into());
        if !s.is_integer() {
            return Err(Error::IncompatibleShift { shift: format_rational(a), scale: format!("1/{}", self.den) });
        }
        let s = s.to_integer().to_i64().ok_or_else(|| Error::invalid("shift too large"))?;
        Ok(self.shift_numerators(s))
    }

    pub fn shift_int(&self, a: i64) -> Self {
        self.shift_numerators(a * self.den as i64)
    }

    fn shift_numerators(&self, s: i64) -> Self {
        Spectrum { den: self.den, terms: self.terms.iter().map(|t| t.shifted(s)).collect() }
    }

    /// Numerator window `[-floor(T·den), floor(T·den)]`.
    pub fn numerator_bound(&self, window: f64) -> i64 {
        (window * self.den as f64 + 1e-9).floor() as i64
    }

    /// Sorted distinct numerators in `[lo, hi]`; fails if two terms meet.
    pub fn numerators_in(&self, lo: i64, hi: i64) -> Result<Vec<i64>> {
        let mut all = Vec::new();
        for t in &self.terms {
            all.extend(t.numerators(lo, hi)?);
        }
        all.sort_unstable();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::OverlappingTerms { value: w[0] });
        }
        Ok(all)
    }

    /// Numerators of the frequencies in `[-T, T]`.
    pub fn window_numerators(&self, window: f64) -> Result<Vec<i64>> {
        if !(window >= 0.0) || !window.is_finite() {
            return Err(Error::invalid("window must be a finite nonnegative number"));
        }
        let b = self.numerator_bound(window);
        self.numerators_in(-b, b)
    }

    /// Frequencies in `[-T, T]`, ascending.
    pub fn enumerate(&self, window: f64) -> Result<Vec<f64>> {
        let den = self.den as f64;
        Ok(self.window_numerators(window)?.into_iter().map(|k| k as f64 / den).collect())
    }

    /// Exact frequencies in `[-T, T]`.
    pub fn enumerate_exact(&self, window: f64) -> Result<Vec<BigRational>> {
        let den = BigInt::from(self.den);
        Ok(self
            .window_numerators(window)?
            .into_iter()
            .map(|k| BigRational::new(k.into(), den.clone()))
            .collect())
    }

    /// Whether all frequencies are integer multiples of `n`; decided from the
    /// term structure, with a window check as fallback.
    pub fn within_multiples_of(&self, n: u64, window: f64) -> Result<bool> {
        let step = n.checked_mul(self.den).ok_or_else(|| Error::invalid("modulus overflow"))?;
        if self.terms.iter().all(|t| t.modulus % step == 0 && t.offset % step == 0) {
            return Ok(true);
        }
        Ok(self.window_numerators(window)?.iter().all(|k| k.rem_euclid(step as i64) == 0))
    }
}

/// Pluggable single-interval generator: a spectrum in `ℤ` of density `β`
/// for an interval of length `β`.
pub trait IntervalGenerator: Sync {
    fn generate(&self, beta: &BigRational) -> Result<Spectrum>;
    fn name(&self) -> &'static str;
}

/// Integer rounding `λ_n = round_half_up(n/β)`.
#[derive(Clone, Debug)]
pub struct AvdoninGenerator {
    pub floor: BigRational,
}

impl Default for AvdoninGenerator {
    fn default() -> Self {
        AvdoninGenerator { floor: default_beta_floor() }
    }
}

impl IntervalGenerator for AvdoninGenerator {
    fn generate(&self, beta: &BigRational) -> Result<Spectrum> {
        avdonin_with_floor(beta, &self.floor)
    }

    fn name(&self) -> &'static str {
        "avdonin-rounding"
    }
}

pub fn avdonin_interval_spectrum(beta: &BigRational) -> Result<Spectrum> {
    avdonin_with_floor(beta, &default_beta_floor())
}

pub fn avdonin_with_floor(beta: &BigRational, floor: &BigRational) -> Result<Spectrum> {
    if !beta.is_positive() || *beta >= BigRational::one() {
        return Err(Error::invalid(format!("beta {} must lie in (0,1)", format_rational(beta))));
    }
    if beta < floor {
        return Err(Error::DegenerateBeta { beta: format_rational(beta), floor: format_rational(floor) });
    }
    let inv = beta.recip();
    if inv.is_integer() {
        let m = inv.to_integer().to_u64().ok_or_else(|| Error::invalid("beta too small"))?;
        return Ok(Spectrum::coset(m, 0));
    }
    Ok(Spectrum { den: 1, terms: vec![CosetTerm { modulus: 1, offset: 0, filter: Filter::Avdonin { beta: beta.clone(), phase: 0 } }] })
}

/// `∪_{n=1..m} (qℤ + n)` for `m = |cells|` grid cells of width `1/q`.
pub fn rational_grid_spectrum(q: u64, cells: &[u64]) -> Result<Spectrum> {
    if q == 0 || cells.is_empty() {
        return Err(Error::invalid("need q ≥ 1 and at least one cell"));
    }
    let mut sorted = cells.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != cells.len() || sorted.iter().any(|&k| k >= q) {
        return Err(Error::invalid("cells must be distinct indices in 0..q"));
    }
    let terms = (1..=cells.len() as i64).map(|n| CosetTerm::all(q, n)).collect();
    Ok(Spectrum { den: 1, terms })
}
