//! Exact-or-high-precision real numbers used as interval endpoints.
//!
//! An [`Endpoint`] is an exact rational plus an optional rational
//! *approximation* of an irrational summand. Arithmetic on both parts is exact,
//! so no rounding accumulates; only the approximation itself carries error
//! (below `2^-bits`). Orderings between values whose irrational parts differ are
//! decided on the exact difference of the approximations, and any gap smaller
//! than `2^-(bits/2)` is reported as ambiguous instead of guessed.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default number of bits used for irrational approximations.
pub const DEFAULT_PRECISION_BITS: u32 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Approx {
    value: BigRational,
    bits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    rational: BigRational,
    approx: Option<Approx>,
}

pub(crate) fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

fn ambiguity_threshold(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), pow2(bits / 2))
}

/// Round `value` to the nearest multiple of `2^-bits` (ties away from zero).
pub(crate) fn round_to_bits(value: &BigRational, bits: u32) -> BigRational {
    let scaled = value * BigRational::from_integer(pow2(bits));
    BigRational::new(scaled.round().to_integer(), pow2(bits))
}

impl Endpoint {
    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(value: i64) -> Self {
        Self::rational(BigRational::from_integer(value.into()))
    }

    pub fn from_bigint(value: BigInt) -> Self {
        Self::rational(BigRational::from_integer(value))
    }

    /// `num / den` exactly. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn rational(value: BigRational) -> Self {
        Endpoint { rational: value, approx: None }
    }

    /// `rational + approx`, where `approx` stands in for an irrational number
    /// known to within `2^-bits`.
    pub fn with_irrational(rational: BigRational, approx: BigRational, bits: u32) -> Self {
        let approx = (!approx.is_zero()).then_some(Approx { value: approx, bits });
        Endpoint { rational, approx }
    }

    /// `coefficient * sqrt(radicand) + offset`. Perfect squares stay exact.
    pub fn scaled_sqrt(coefficient: BigRational, radicand: u64, offset: BigRational, bits: u32) -> Self {
        let root = BigUint::from(radicand).sqrt();
        if &root * &root == BigUint::from(radicand) {
            let exact = coefficient * BigRational::from_integer(BigInt::from(root)) + offset;
            return Self::rational(exact);
        }
        let scaled = (BigUint::from(radicand) << (2 * bits as usize)).sqrt();
        let approx = BigRational::new(BigInt::from(scaled), pow2(bits));
        Self::with_irrational(offset, coefficient * approx, bits)
    }

    /// `sqrt(radicand)` at `bits` of precision.
    pub fn sqrt(radicand: u64, bits: u32) -> Self {
        Self::scaled_sqrt(BigRational::one(), radicand, BigRational::zero(), bits)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn irrational_part(&self) -> Option<&BigRational> {
        self.approx.as_ref().map(|a| &a.value)
    }

    pub fn precision_bits(&self) -> Option<u32> {
        self.approx.as_ref().map(|a| a.bits)
    }

    pub fn is_exact(&self) -> bool {
        self.approx.is_none()
    }

    /// Best rational value: exact part plus the approximation.
    pub fn value(&self) -> BigRational {
        match &self.approx {
            Some(a) => &self.rational + &a.value,
            None => self.rational.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.value())
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        let s = BigRational::from_integer(sign.into());
        let rational = &self.rational + &other.rational * &s;
        let approx = match (&self.approx, &other.approx) {
            (None, None) => None,
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(Approx { value: &b.value * &s, bits: b.bits }),
            (Some(a), Some(b)) => Some(Approx { value: &a.value + &b.value * &s, bits: a.bits.min(b.bits) }),
        };
        Endpoint { rational, approx: approx.filter(|a| !a.value.is_zero()) }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Self {
        Endpoint::zero().sub(self)
    }

    pub fn mul_rational(&self, factor: &BigRational) -> Self {
        if factor.is_zero() {
            return Endpoint::zero();
        }
        Endpoint {
            rational: &self.rational * factor,
            approx: self.approx.as_ref().map(|a| Approx { value: &a.value * factor, bits: a.bits }),
        }
    }

    pub fn mul_int(&self, factor: i64) -> Self {
        self.mul_rational(&BigRational::from_integer(factor.into()))
    }

    /// Exact division by a nonzero integer.
    pub fn div_int(&self, divisor: i64) -> Self {
        assert!(divisor != 0, "division of an endpoint by zero");
        self.mul_rational(&BigRational::new(BigInt::one(), divisor.into()))
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Endpoint { rational: &self.rational + r, approx: self.approx.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.approx.is_none() && self.rational.is_zero()
    }

    fn min_bits(&self, other: &Self) -> Option<u32> {
        match (self.precision_bits(), other.precision_bits()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Order two values, failing when they cannot be separated at working precision.
    pub fn try_cmp(&self, other: &Self) -> Result<Ordering> {
        let same_irrational = match (&self.approx, &other.approx) {
            (None, None) => true,
            (Some(a), Some(b)) => a.value == b.value,
            _ => false,
        };
        if same_irrational {
            return Ok(self.rational.cmp(&other.rational));
        }
        let diff = self.value() - other.value();
        let bits = self.min_bits(other).unwrap_or(DEFAULT_PRECISION_BITS);
        if diff.abs() < ambiguity_threshold(bits) {
            return Err(Error::AmbiguousEndpoint(format!(
                "{} vs {} differ by less than 2^-{}",
                self,
                other,
                bits / 2
            )));
        }
        Ok(if diff.is_positive() { Ordering::Greater } else { Ordering::Less })
    }

    pub fn try_lt(&self, other: &Self) -> Result<bool> {
        Ok(self.try_cmp(other)? == Ordering::Less)
    }

    pub fn try_le(&self, other: &Self) -> Result<bool> {
        Ok(self.try_cmp(other)? != Ordering::Greater)
    }

    pub fn try_eq(&self, other: &Self) -> Result<bool> {
        Ok(self.try_cmp(other)? == Ordering::Equal)
    }

    pub fn try_max(&self, other: &Self) -> Result<Self> {
        Ok(if self.try_lt(other)? { other.clone() } else { self.clone() })
    }

    pub fn try_min(&self, other: &Self) -> Result<Self> {
        Ok(if self.try_lt(other)? { self.clone() } else { other.clone() })
    }

    /// Greatest integer not above the value.
    pub fn floor(&self) -> Result<BigInt> {
        let Some(approx) = &self.approx else {
            return Ok(self.rational.floor().to_integer());
        };
        let v = self.value();
        let fl = v.floor().to_integer();
        let below = &v - BigRational::from_integer(fl.clone());
        let above = BigRational::from_integer(&fl + 1) - &v;
        let thr = ambiguity_threshold(approx.bits);
        if below < thr || above < thr {
            return Err(Error::AmbiguousEndpoint(format!(
                "{} lies within 2^-{} of an integer",
                self,
                approx.bits / 2
            )));
        }
        Ok(fl)
    }

    /// Fractional part `x - floor(x)` in `[0, 1)`.
    pub fn frac(&self) -> Result<Self> {
        let fl = self.floor()?;
        Ok(self.add_rational(&BigRational::from_integer(-fl)))
    }
}

/// Fractional part of a real number.
pub fn frac(x: &Endpoint) -> Result<Endpoint> {
    x.frac()
}

impl From<i64> for Endpoint {
    fn from(v: i64) -> Self {
        Endpoint::from_integer(v)
    }
}

impl From<BigRational> for Endpoint {
    fn from(v: BigRational) -> Self {
        Endpoint::rational(v)
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.approx {
            None => write!(f, "{}", self.rational),
            Some(_) => write!(f, "{:.17}~", self.to_f64()),
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Scale down huge numerators/denominators before converting.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = (nb.max(db) - 60).max(0) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
    n / d
}

/// Parse `"p/q"`, an integer, or a decimal such as `"-0.125"` / `"1.5e-3"` exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let q: BigInt = q.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a number: {s:?}")));
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(all.parse::<BigInt>().unwrap_or_default());
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let factor = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= BigRational::from_integer(factor);
    } else {
        value /= BigRational::from_integer(factor);
    }
    Ok(if negative { -value } else { value })
}

/// Exact textual form: a terminating decimal when the denominator is `2^a 5^b`,
/// otherwise `"p/q"`.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let den = r.denom();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let (mut d, mut a, mut b) = (den.clone(), 0usize, 0usize);
    while d.is_even() {
        d /= &two;
        a += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        b += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let digits = a.max(b);
    let scaled = r * BigRational::from_integer(num_traits::pow(BigInt::from(10u32), digits));
    let n = scaled.to_integer();
    let (sign, mag) = (n.sign(), n.magnitude().to_string());
    let padded = format!("{:0>width$}", mag, width = digits + 1);
    let (ip, fp) = padded.split_at(padded.len() - digits);
    format!("{}{}.{}", if sign == Sign::Minus { "-" } else { "" }, ip, fp)
}

/// Approximation of `text` rounded to `bits` fractional bits, unless the text is
/// an explicit `"p/q"` fraction (kept exact).
pub fn parse_irrational(text: &str, bits: u32) -> Result<BigRational> {
    let exact = parse_rational(text)?;
    if text.contains('/') {
        Ok(exact)
    } else {
        Ok(round_to_bits(&exact, bits))
    }
}

impl Endpoint {
    /// JSON-ready pair `(rat, irr)`.
    pub fn to_strings(&self) -> (String, Option<String>) {
        let rat = if self.rational.is_integer() {
            self.rational.numer().to_string()
        } else {
            format!("{}/{}", self.rational.numer(), self.rational.denom())
        };
        let irr = self.approx.as_ref().map(|a| {
            let den = a.value.denom();
            let dyadic = (den & (den - BigInt::one())).is_zero() && den.bits() as u32 <= a.bits + 1;
            if dyadic {
                format_rational(&a.value)
            } else {
                format!("{}/{}", a.value.numer(), a.value.denom())
            }
        });
        (rat, irr)
    }

    pub fn from_strings(rat: &str, irr: Option<&str>, bits: u32) -> Result<Self> {
        let rational = parse_rational(rat)?;
        Ok(match irr {
            None => Endpoint::rational(rational),
            Some(text) => Endpoint::with_irrational(rational, parse_irrational(text, bits)?, bits),
        })
    }
}

/// Merge sort with a fallible comparator; stable.
pub(crate) fn try_sort_by<T: Clone>(items: Vec<T>, cmp: &impl Fn(&T, &T) -> Result<Ordering>) -> Result<Vec<T>> {
    if items.len() <= 1 {
        return Ok(items);
    }
    let mut left = items;
    let right = left.split_off(left.len() / 2);
    let left = try_sort_by(left, cmp)?;
    let right = try_sort_by(right, cmp)?;
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        if cmp(&right[j], &left[i])? == Ordering::Less {
            out.push(right[j].clone());
            j += 1;
        } else {
            out.push(left[i].clone());
            i += 1;
        }
    }
    out.extend_from_slice(&left[i..]);
    out.extend_from_slice(&right[j..]);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2_minus_1() -> Endpoint {
        Endpoint::sqrt(2, DEFAULT_PRECISION_BITS).sub(&Endpoint::one())
    }

    #[test]
    fn frac_of_integers_and_negatives() {
        assert!(frac(&Endpoint::zero()).unwrap().is_zero());
        assert_eq!(frac(&Endpoint::ratio(-1, 4)).unwrap(), Endpoint::ratio(3, 4));
        assert_eq!(frac(&Endpoint::from_integer(7)).unwrap(), Endpoint::zero());
    }

    #[test]
    fn frac_of_scaled_irrational() {
        let x = sqrt2_minus_1().mul_int(5);
        let f = frac(&x).unwrap().to_f64();
        // 5*sqrt(2) - 7
        assert!((f - 0.071_067_811_865_475_24).abs() < 1e-5);
        assert!((f - (5.0 * std::f64::consts::SQRT_2 - 7.0)).abs() < 1e-15);
    }

    #[test]
    fn perfect_squares_are_exact() {
        assert_eq!(Endpoint::sqrt(9, 64), Endpoint::from_integer(3));
    }

    #[test]
    fn identical_irrationals_compare_exactly() {
        let a = sqrt2_minus_1();
        let b = a.add(&Endpoint::ratio(1, 1_000_000));
        assert_eq!(a.try_cmp(&b).unwrap(), Ordering::Less);
        assert_eq!(a.try_cmp(&a.clone()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn near_ties_are_ambiguous() {
        let a = Endpoint::sqrt(2, 200);
        let b = Endpoint::sqrt(2, 180);
        assert!(matches!(a.try_cmp(&b), Err(Error::AmbiguousEndpoint(_))));
        // An exact rational within 2^-100 of sqrt(2) is ambiguous too.
        let r = Endpoint::rational(a.value());
        assert!(matches!(a.try_cmp(&r), Err(Error::AmbiguousEndpoint(_))));
    }

    #[test]
    fn cancelling_irrationals_become_exact() {
        let a = Endpoint::sqrt(3, 200);
        let d = a.add(&Endpoint::ratio(1, 2)).sub(&a);
        assert!(d.is_exact());
        assert_eq!(d, Endpoint::ratio(1, 2));
    }

    #[test]
    fn parse_decimal_and_fraction() {
        assert_eq!(parse_rational("-0.25").unwrap(), BigRational::new((-1).into(), 4.into()));
        assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("1.5e-3").unwrap(), BigRational::new(3.into(), 2000.into()));
        assert_eq!(parse_rational("12").unwrap(), BigRational::from_integer(12.into()));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn format_is_exact() {
        assert_eq!(format_rational(&BigRational::new((-3).into(), 8.into())), "-0.375");
        assert_eq!(format_rational(&BigRational::new(1.into(), 3.into())), "1/3");
        assert_eq!(format_rational(&BigRational::new(1.into(), 20.into())), "0.05");
    }

    #[test]
    fn string_round_trip_keeps_value() {
        let x = Endpoint::scaled_sqrt(BigRational::new(2.into(), 3.into()), 2, BigRational::new((-7).into(), 20.into()), 200);
        let (rat, irr) = x.to_strings();
        let y = Endpoint::from_strings(&rat, irr.as_deref(), 200).unwrap();
        assert_eq!(x, y);
        let z = x.div_int(7);
        let (rat, irr) = z.to_strings();
        assert_eq!(Endpoint::from_strings(&rat, irr.as_deref(), 200).unwrap(), z);
    }

    #[test]
    fn sort_with_fallible_comparator() {
        let v = vec![Endpoint::ratio(3, 4), Endpoint::sqrt(2, 200).sub(&Endpoint::one()), Endpoint::ratio(1, 8)];
        let sorted = try_sort_by(v, &|a: &Endpoint, b: &Endpoint| a.try_cmp(b)).unwrap();
        let f: Vec<f64> = sorted.iter().map(Endpoint::to_f64).collect();
        assert!(f.windows(2).all(|w| w[0] < w[1]));
    }
}
